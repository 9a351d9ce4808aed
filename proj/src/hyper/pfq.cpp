#include "mastercount/hyper/pfq.hpp"

#include "mastercount/kernel/expr_parser.hpp"

#include <algorithm>
#include <cctype>

namespace mastercount::hyper {

using kernel::ParseError;

PFQ::PFQ(std::vector<ParamExpr> upper, std::vector<ParamExpr> lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
    std::sort(upper_.begin(), upper_.end());
    std::sort(lower_.begin(), lower_.end());
}

PFQ PFQ::with_upper_shifted(std::size_t which, long delta) const {
    auto u = upper_;
    u.at(which) = u.at(which) + BigRat(delta);
    return PFQ(std::move(u), lower_);
}

PFQ PFQ::with_lower_shifted(std::size_t which, long delta) const {
    auto l = lower_;
    l.at(which) = l.at(which) + BigRat(delta);
    return PFQ(upper_, std::move(l));
}

std::string PFQ::to_string() const {
    std::string s = std::to_string(p()) + "F" + std::to_string(q()) + "[";
    for (std::size_t i = 0; i < upper_.size(); ++i) s += (i ? "," : "") + upper_[i].to_string();
    s += "; ";
    for (std::size_t i = 0; i < lower_.size(); ++i) s += (i ? "," : "") + lower_[i].to_string();
    return s + "]";
}

namespace {

class PfqParser {
public:
    explicit PfqParser(std::string_view s) : s_(s) {}

    PFQ parse() {
        long p = number("expected p in pFq");
        skip();
        if (i_ >= s_.size() || (s_[i_] != 'F' && s_[i_] != 'f')) throw ParseError("expected 'F'", i_);
        ++i_;
        long q = number("expected q in pFq");
        expect('[');
        std::size_t upper_start = i_;
        auto upper = list(';');
        std::vector<ParamExpr> lower;
        // "1F0[a]" may omit the separator
        if (s_[i_ - 1] == ';') lower = list(']');
        skip();
        if (i_ != s_.size()) throw ParseError("trailing characters", i_);
        if (static_cast<long>(upper.size()) != p)
            throw ParseError("expected " + std::to_string(p) + " upper parameters, got " + std::to_string(upper.size()),
                             upper_start);
        if (static_cast<long>(lower.size()) != q)
            throw ParseError("expected " + std::to_string(q) + " lower parameters, got " + std::to_string(lower.size()),
                             upper_start);
        return PFQ(std::move(upper), std::move(lower));
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    void expect(char c) {
        skip();
        if (i_ >= s_.size() || s_[i_] != c) throw ParseError(std::string("expected '") + c + "'", i_);
        ++i_;
    }
    long number(const char* what) {
        skip();
        std::size_t start = i_;
        long v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = 10 * v + (s_[i_++] - '0');
        if (i_ == start) throw ParseError(what, i_);
        return v;
    }
    // Comma separated parameters up to `close`; an empty list is allowed.
    std::vector<ParamExpr> list(char close) {
        std::vector<ParamExpr> out;
        skip();
        if (i_ < s_.size() && (s_[i_] == close || (close == ';' && s_[i_] == ']'))) {
            ++i_;
            return out;
        }
        for (;;) {
            std::size_t start = i_;
            int depth = 0;
            while (i_ < s_.size() && !(depth == 0 && (s_[i_] == ',' || s_[i_] == ';' || s_[i_] == ']'))) {
                if (s_[i_] == '(') ++depth;
                if (s_[i_] == ')') --depth;
                ++i_;
            }
            if (i_ >= s_.size()) throw ParseError(std::string("expected '") + close + "'", i_);
            std::string_view piece = s_.substr(start, i_ - start);
            try {
                out.push_back(ParamExpr::parse(piece));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), start + e.position());
            } catch (const Error& e) {
                throw ParseError(e.what(), start);
            }
            char c = s_[i_++];
            if (c == close || (close == ';' && c == ']')) return out;
            if (c != ',') throw ParseError(std::string("expected ',' or '") + close + "'", i_ - 1);
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

PFQ parse_pfq(std::string_view text) { return PfqParser(text).parse(); }

nlohmann::json to_json(const ParamExpr& e) {
    return {{"c0", kernel::to_string(e.c0)}, {"c1", kernel::to_string(e.c1)}};
}

ParamExpr param_from_json(const nlohmann::json& j) {
    return {kernel::parse_rat(j.at("c0").get<std::string>()), kernel::parse_rat(j.at("c1").get<std::string>())};
}

nlohmann::json to_json(const PFQ& f) {
    nlohmann::json up = nlohmann::json::array(), lo = nlohmann::json::array();
    for (const auto& e : f.upper()) up.push_back(to_json(e));
    for (const auto& e : f.lower()) lo.push_back(to_json(e));
    return {{"upper", up}, {"lower", lo}};
}

PFQ pfq_from_json(const nlohmann::json& j) {
    std::vector<ParamExpr> up, lo;
    for (const auto& e : j.at("upper")) up.push_back(param_from_json(e));
    for (const auto& e : j.at("lower")) lo.push_back(param_from_json(e));
    return PFQ(std::move(up), std::move(lo));
}

PFQ cancel_params(const PFQ& f) {
    std::vector<ParamExpr> up, lo = f.lower();
    for (const auto& a : f.upper()) {
        auto it = std::find(lo.begin(), lo.end(), a);
        if (it != lo.end())
            lo.erase(it);
        else
            up.push_back(a);
    }
    return PFQ(std::move(up), std::move(lo));
}

}  // namespace mastercount::hyper
