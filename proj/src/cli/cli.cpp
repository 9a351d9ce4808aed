#include "mastercount/cli/cli.hpp"

#include "mastercount/ibp/laporta.hpp"
#include "mastercount/kernel/expr_parser.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace mastercount::cli {

namespace {

using kernel::BigFloat;
using kernel::BigRat;
using nlohmann::ordered_json;

struct Options {
    int prec = 50;
    bool json = false;
    long sigma = 1, beta = 1, alpha = 1;
    std::string eps = "1/4";
    std::string z = "3/10";
    int seed_dots = 2;
    int seed_nums = 1;
    std::string table;
    bool equal_mass = false;
    bool with_main_relation = false;
    std::string target;
    std::string spec;
    std::string basis;
};

int default_precision() {
    const char* env = std::getenv(kPrecisionEnv);
    if (!env || !*env) return 50;
    try {
        std::size_t used = 0;
        int p = std::stoi(env, &used);
        if (used == std::string(env).size()) return p;
    } catch (const std::exception&) {
    }
    throw domain_error(std::string(kPrecisionEnv) + " must be an integer");
}

BigRat rational_flag(const std::string& name, const std::string& text) {
    try {
        return kernel::parse_rat(text);
    } catch (const Error& e) {
        throw domain_error("--" + name + ": " + e.what() + " (got '" + text + "')");
    }
}

void check_config(const Options& o) {
    if (o.prec < 10) throw domain_error("precision must be at least 10 digits");
    if (o.seed_dots < 2 || o.seed_nums < 1) throw domain_error("seed bounds need --seed-dots >= 2 and --seed-nums >= 1");
}

BigFloat threshold(int prec) { return kernel::pow10(-prec + 10, kernel::bits_for_digits(prec)); }

std::string short_float(const BigFloat& x) { return x.is_zero() ? "0" : x.to_string(3); }

// ---- sunset ----

int sunset_repr(const Options& o, std::ostream& out) {
    sunset::SunsetIndices idx{o.sigma, o.beta, o.alpha};
    sunset::HyperCombo h = sunset::build_representation(idx);
    sunset::HyperCombo c = sunset::collapse(h);
    if (o.json) {
        ordered_json j;
        j["indices"] = {{"sigma", idx.sigma}, {"beta", idx.beta}, {"alpha", idx.alpha}};
        j["representation"] = sunset::to_json(h);
        j["collapsed"] = sunset::to_json(c);
        out << j.dump(2) << "\n";
        return 0;
    }
    auto print = [&](const sunset::HyperCombo& x) {
        for (std::size_t i = 0; i < x.terms.size(); ++i) {
            const auto& t = x.terms[i];
            out << "  term " << i + 1 << ": ";
            if (!t.coeff.is_one()) out << "(" << t.coeff.to_string() << ")*";
            out << t.gamma.to_string() << " * " << t.f.to_string() << "\n";
        }
    };
    out << idx.to_string() << " with M2 = 1, z = 4*m2/M2\n";
    print(h);
    out << "after collapse:\n";
    print(c);
    return 0;
}

std::string poly_text(const kernel::Poly& p) { return kernel::RatFunc(p).to_string(); }

int sunset_relation(const Options& o, std::ostream& out) {
    sunset::RelationSolution sol = sunset::find_relation();
    sunset::Relation rel = sunset::assemble_main(sol);
    sunset::Relation eq = sunset::equal_mass_specialize(rel);
    if (o.json) {
        ordered_json j = sunset::to_json(o.equal_mass ? eq : rel);
        if (!o.equal_mass) {
            j["lambdas"] = {poly_text(sol.lambdas[0]), poly_text(sol.lambdas[1]), poly_text(sol.lambdas[2])};
            j["mu"] = poly_text(sol.mu);
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    if (o.equal_mass) {
        out << eq.to_string() << "\n";
        return 0;
    }
    out << "lambda = (" << poly_text(sol.lambdas[0]) << ", " << poly_text(sol.lambdas[1]) << ", "
        << poly_text(sol.lambdas[2]) << ")\n";
    out << "mu = " << poly_text(sol.mu) << "\n";
    out << "relation: " << rel.to_string() << "\n";
    out << "equal mass: " << eq.to_string() << "\n";
    return 0;
}

int sunset_verify(const Options& o, std::ostream& out) {
    BigRat eps = rational_flag("eps", o.eps), z0 = rational_flag("z", o.z);
    BigFloat r = sunset::verify_main_numeric(eps, z0, o.prec);
    bool ok = r < threshold(o.prec);
    if (o.json) {
        ordered_json j{{"eps", o.eps}, {"z", o.z}, {"prec", o.prec}, {"residual", short_float(r)}, {"pass", ok}};
        out << j.dump(2) << "\n";
    } else {
        out << "residual = " << short_float(r) << " (threshold 1e" << (-o.prec + 10) << ") " << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

int sunset_eval(const Options& o, std::ostream& out) {
    BigRat eps = rational_flag("eps", o.eps), z0 = rational_flag("z", o.z);
    sunset::SunsetIndices idx{o.sigma, o.beta, o.alpha};
    BigFloat v = sunset::eval_J(idx, eps, z0, o.prec);
    if (o.json)
        out << ordered_json{{"integral", idx.to_string()}, {"eps", o.eps}, {"z", o.z}, {"value", v.to_string(o.prec)}}.dump(2) << "\n";
    else
        out << idx.to_string() << " = " << v.to_string(o.prec) << "\n";
    return 0;
}

// ---- hyper ----

hyper::PFQ parse_spec(const std::string& text, std::ostream& err) {
    try {
        return hyper::parse_pfq(text);
    } catch (const kernel::ParseError& e) {
        err << kernel::caret_diagnostic(text, e) << "\n";
        throw;
    }
}

int hyper_eval(const Options& o, std::ostream& out, std::ostream& err) {
    hyper::PFQ f = parse_spec(o.spec, err);
    BigRat eps = rational_flag("eps", o.eps), z0 = rational_flag("z", o.z);
    BigFloat v = hyper::series_sum(f, z0, sunset::n_from_eps(eps), o.prec);
    if (o.json)
        out << ordered_json{{"pfq", f.to_string()}, {"z", o.z}, {"eps", o.eps}, {"value", v.to_string(o.prec)}}.dump(2) << "\n";
    else
        out << v.to_string(o.prec) << "\n";
    return 0;
}

int hyper_reduce(const Options& o, std::ostream& out, std::ostream& err) {
    hyper::PFQ f = parse_spec(o.spec, err);
    std::vector<hyper::PFQ> bases;
    if (!o.basis.empty())
        bases.push_back(parse_spec(o.basis, err));
    else
        bases = {sunset::basis_Fx(), sunset::basis_Fy()};
    std::string failures;
    for (const auto& b : bases) {
        hyper::ReducedForm r;
        try {
            r = hyper::reduce_shifts(f, b);
        } catch (const Error& e) {
            failures += std::string(failures.empty() ? "" : "; ") + b.to_string() + ": " + e.what();
            continue;
        }
        if (o.json) {
            ordered_json ops = ordered_json::array();
            for (const auto& c : r.op.coeffs()) ops.push_back(c.to_string());
            out << ordered_json{{"pfq", f.to_string()},  {"basis", r.basis.to_string()}, {"op", ops},
                                {"remainder", r.remainder.to_string()}, {"steps", r.steps}}
                       .dump(2)
                << "\n";
        } else {
            out << f.to_string() << " = (" << r.op.to_string() << ") " << r.basis.to_string();
            if (!r.remainder.is_zero()) out << " + " << r.remainder.to_string();
            out << "\nsteps = " << r.steps << "\n";
        }
        return 0;
    }
    throw domain_error(o.basis.empty() ? "not reducible onto the sunset bases (" + failures + ")" : failures);
}

int hyper_count(const Options& o, std::ostream& out, std::ostream& err) {
    hyper::PFQ f = parse_spec(o.spec, err);
    int c = hyper::basis_count(f);
    if (o.json)
        out << ordered_json{{"pfq", f.to_string()}, {"collapsed", hyper::cancel_params(f).to_string()}, {"count", c}}.dump(2) << "\n";
    else
        out << c << "\n";
    return 0;
}

// ---- ibp ----

ibp::ReductionTable load_table(const Options& o) {
    ibp::SeedBounds b{o.seed_dots, o.seed_nums};
    if (!o.table.empty() && std::filesystem::exists(o.table)) {
        std::ifstream in(o.table);
        ibp::ReductionTable t;
        try {
            t = ibp::table_from_json(ordered_json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw domain_error("cannot read table " + o.table + ": " + e.what());
        }
        if (t.bounds == b && !t.relation) return t;
    }
    ibp::ReductionTable t = ibp::laporta(b);
    if (t.nontrivial_masters().size() != 3) throw contradiction_error("IBP reduction does not give three masters");
    if (!o.table.empty()) {
        std::ofstream f(o.table);
        if (!f) throw domain_error("cannot write table " + o.table);
        f << ibp::to_json(t).dump(1) << "\n";
    }
    return t;
}

ibp::ReductionTable table_for(const Options& o) {
    ibp::ReductionTable t = load_table(o);
    if (o.with_main_relation) t = ibp::apply_external_relation(t, sunset::assemble_main(sunset::find_relation()));
    return t;
}

std::string integral_name(const ibp::FamilyIndex& a) {
    return a == ibp::kGammaModule ? "Gamma-module" : "I(" + ibp::key(a) + ")";
}

int ibp_masters(const Options& o, std::ostream& out) {
    ibp::ReductionTable t = table_for(o);
    std::size_t nontrivial = t.nontrivial_masters().size();
    std::size_t expected = o.with_main_relation ? 2 : 3;
    if (o.json) {
        ordered_json ms = ordered_json::array();
        for (const auto& m : t.masters) ms.push_back(m == ibp::kGammaModule ? "gamma_module" : ibp::key(m));
        out << ordered_json{{"masters", ms}, {"nontrivial", nontrivial}}.dump(2) << "\n";
    } else {
        for (const auto& m : t.masters) {
            out << integral_name(m);
            if (m == ibp::kGammaModule) out << "  (Gamma-expressible right-hand side of the main relation)";
            else if (ibp::sector_mask(m) != 0b111) out << "  (Gamma-expressible double tadpole)";
            else out << "  = " << ibp::to_sunset(m).to_string();
            out << "\n";
        }
        out << "non-Gamma masters: " << nontrivial << "\n";
    }
    return nontrivial == expected ? 0 : 3;
}

ibp::FamilyIndex target_flag(const Options& o) {
    if (o.target.empty()) throw domain_error("--target a1,a2,a3,a4,a5 is required");
    return ibp::parse_key(o.target);
}

int ibp_reduce(const Options& o, std::ostream& out) {
    ibp::FamilyIndex target = target_flag(o);
    ibp::ReductionTable t = table_for(o);
    ibp::Reduction red = ibp::reduce(t, target);
    if (o.json) {
        ordered_json list = ordered_json::array();
        for (const auto& [m, c] : red) list.push_back({m == ibp::kGammaModule ? "gamma_module" : ibp::key(m), c.to_string()});
        out << ordered_json{{"target", ibp::key(target)}, {"reduction", list}}.dump(2) << "\n";
        return 0;
    }
    out << integral_name(target) << " =";
    if (red.empty()) out << " 0";
    for (std::size_t i = 0; i < red.size(); ++i)
        out << (i ? "\n    + " : " ") << "(" << red[i].second.to_string() << ") * " << integral_name(red[i].first);
    out << "\n";
    return 0;
}

int ibp_check(const Options& o, std::ostream& out) {
    ibp::FamilyIndex target = target_flag(o);
    BigRat eps = rational_flag("eps", o.eps), z0 = rational_flag("z", o.z);
    ibp::ReductionTable t = table_for(o);
    BigFloat r = ibp::cross_check(t, target, eps, z0, o.prec);
    bool ok = r < threshold(o.prec);
    if (o.json)
        out << ordered_json{{"target", ibp::key(target)}, {"residual", short_float(r)}, {"pass", ok}}.dump(2) << "\n";
    else
        out << integral_name(target) << ": residual = " << short_float(r) << " " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Master-integral counting for the two-loop on-shell sunset", "mastercount"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* c) {
        c->add_option("--prec", o.prec, "decimal digits (default $" + std::string(kPrecisionEnv) + " or 50)");
        c->add_flag("--json", o.json, "machine-readable output");
    };
    auto indices = [&](CLI::App* c) {
        c->add_option("--sigma", o.sigma, "power of the massless line");
        c->add_option("--beta", o.beta, "power of the m line");
        c->add_option("--alpha", o.alpha, "power of the M line");
    };
    auto point = [&](CLI::App* c) {
        c->add_option("--eps", o.eps, "n = 4 - 2 eps, as p/q");
        c->add_option("--z", o.z, "z = 4 m^2/M^2, as p/q");
    };
    auto table = [&](CLI::App* c) {
        c->add_option("--seed-dots", o.seed_dots, "max dots in seeds");
        c->add_option("--seed-nums", o.seed_nums, "max numerator powers in seeds");
        c->add_option("--table", o.table, "reduction table cache (JSON)");
        c->add_flag("--with-main-relation", o.with_main_relation, "inject the main relation after reduction");
    };

    std::function<int()> action;
    auto bind = [&](CLI::App* c, std::function<int()> f) { c->callback([&action, f] { action = f; }); };

    CLI::App* sunset_cmd = app.add_subcommand("sunset", "hypergeometric representation and the master relation");
    sunset_cmd->require_subcommand(1);
    CLI::App* repr = sunset_cmd->add_subcommand("repr", "two-term pFq representation of J(sigma,beta,alpha)");
    common(repr);
    indices(repr);
    bind(repr, [&] { return sunset_repr(o, out); });
    CLI::App* relation = sunset_cmd->add_subcommand("relation", "rediscover the relation among the three masters");
    common(relation);
    relation->add_flag("--equal-mass", o.equal_mass, "specialize to m = M");
    bind(relation, [&] { return sunset_relation(o, out); });
    CLI::App* verify = sunset_cmd->add_subcommand("verify", "numeric residual of the relation");
    common(verify);
    point(verify);
    bind(verify, [&] { return sunset_verify(o, out); });
    CLI::App* seval = sunset_cmd->add_subcommand("eval", "J(sigma,beta,alpha) from the series");
    common(seval);
    indices(seval);
    point(seval);
    bind(seval, [&] { return sunset_eval(o, out); });

    CLI::App* hyper_cmd = app.add_subcommand("hyper", "generalized hypergeometric functions");
    hyper_cmd->require_subcommand(1);
    CLI::App* heval = hyper_cmd->add_subcommand("eval", "sum the series");
    common(heval);
    point(heval);
    heval->add_option("spec", o.spec, "e.g. \"2F1[1,1;2]\"")->required();
    bind(heval, [&] { return hyper_eval(o, out, err); });
    CLI::App* hreduce = hyper_cmd->add_subcommand("reduce", "differential reduction onto a basis function");
    common(hreduce);
    hreduce->add_option("spec", o.spec, "function to reduce")->required();
    hreduce->add_option("--basis", o.basis, "target basis (default: the two sunset bases)");
    bind(hreduce, [&] { return hyper_reduce(o, out, err); });
    CLI::App* hcount = hyper_cmd->add_subcommand("count", "number of basis elements");
    common(hcount);
    hcount->add_option("spec", o.spec, "function")->required();
    bind(hcount, [&] { return hyper_count(o, out, err); });

    CLI::App* ibp_cmd = app.add_subcommand("ibp", "integration-by-parts reduction");
    ibp_cmd->require_subcommand(1);
    CLI::App* ireduce = ibp_cmd->add_subcommand("reduce", "reduce an integral to masters");
    common(ireduce);
    table(ireduce);
    ireduce->add_option("--target", o.target, "a1,a2,a3,a4,a5");
    bind(ireduce, [&] { return ibp_reduce(o, out); });
    CLI::App* imasters = ibp_cmd->add_subcommand("masters", "list master integrals");
    common(imasters);
    table(imasters);
    bind(imasters, [&] { return ibp_masters(o, out); });
    CLI::App* icheck = ibp_cmd->add_subcommand("check", "compare a reduction with the series");
    common(icheck);
    table(icheck);
    point(icheck);
    icheck->add_option("--target", o.target, "a1,a2,a3,a4,a5");
    bind(icheck, [&] { return ibp_check(o, out); });

    try {
        o.prec = default_precision();
        app.parse(argc, argv);
        check_config(o);
        return action ? action() : 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::domain: return 2;
            case ErrorKind::verification: return 1;
            case ErrorKind::contradiction: return 3;
        }
        return 2;
    }
}

}  // namespace mastercount::cli
