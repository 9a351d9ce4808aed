#pragma once

#include "mastercount/hyper/param.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mastercount::hyper {

/// Generalized hypergeometric function pFq(upper; lower; z).
///
/// Parameter lists are kept sorted, so structurally equal functions compare
/// equal regardless of how they were written.
class PFQ {
public:
    PFQ() = default;
    PFQ(std::vector<ParamExpr> upper, std::vector<ParamExpr> lower);

    const std::vector<ParamExpr>& upper() const { return upper_; }
    const std::vector<ParamExpr>& lower() const { return lower_; }
    int p() const { return static_cast<int>(upper_.size()); }
    int q() const { return static_cast<int>(lower_.size()); }
    /// Order of the hypergeometric differential equation, max(p, q + 1).
    int order() const { return std::max(p(), q() + 1); }

    /// Copies with one parameter moved by an integer.
    PFQ with_upper_shifted(std::size_t which, long delta) const;
    PFQ with_lower_shifted(std::size_t which, long delta) const;

    friend bool operator==(const PFQ& a, const PFQ& b) { return a.upper_ == b.upper_ && a.lower_ == b.lower_; }
    friend bool operator!=(const PFQ& a, const PFQ& b) { return !(a == b); }

    /// Grammar form "2F1[3-n,1/2; n/2]".
    std::string to_string() const;

private:
    std::vector<ParamExpr> upper_;
    std::vector<ParamExpr> lower_;
};

/// Parses `pFq[u1,...,up; l1,...,lq]`; throws kernel::ParseError with a position.
PFQ parse_pfq(std::string_view text);

nlohmann::json to_json(const ParamExpr& e);
ParamExpr param_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PFQ& f);
PFQ pfq_from_json(const nlohmann::json& j);

/// Removes upper/lower pairs that are structurally equal.
PFQ cancel_params(const PFQ& f);

}  // namespace mastercount::hyper
