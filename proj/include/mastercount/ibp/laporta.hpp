#pragma once

#include "mastercount/ibp/identity.hpp"
#include "mastercount/sunset/relation.hpp"

#include "json.hpp"

#include <map>
#include <optional>

namespace mastercount::ibp {

using kernel::BigFloat;

/// Stands for the Gamma-expressible right-hand side of an external relation
/// in a table. I(0,0,0,0,0) is scaleless, so it never names a real master.
inline constexpr FamilyIndex kGammaModule{0, 0, 0, 0, 0};

struct SeedBounds {
    int dots = 2;
    int nums = 1;
    friend bool operator==(const SeedBounds&, const SeedBounds&) = default;
};

using Reduction = std::vector<std::pair<FamilyIndex, RatFunc>>;

struct ReductionTable {
    SeedBounds bounds;
    std::vector<FamilyIndex> masters;  // ascending integral_less
    std::map<FamilyIndex, Reduction> entries;
    /// Set once an external relation has been injected; its RHS is the value of kGammaModule.
    std::optional<sunset::Relation> relation;

    bool is_master(const FamilyIndex& a) const;
    /// Masters other than the Gamma module and the Gamma-expressible double tadpole.
    std::vector<FamilyIndex> nontrivial_masters() const;
    friend bool operator==(const ReductionTable&, const ReductionTable&) = default;
};

/// Seeds of the two non-zero sectors within the bounds.
std::vector<FamilyIndex> seeds(const SeedBounds& b);

/// Laporta elimination. Identities are generated on `threads` workers
/// (0: hardware concurrency); elimination is sequential, so the table does
/// not depend on the thread count. Throws (contradiction) "IBP inconsistency"
/// if a double-tadpole reduction disagrees with its Gamma-function closed form.
ReductionTable laporta(const SeedBounds& b, unsigned threads = 0);

/// Eliminates J(1,1,2) = I(1,2,1,0,0) with the relation; its RHS becomes the Gamma module.
ReductionTable apply_external_relation(const ReductionTable& t, const sunset::Relation& rel);

/// Master decomposition of a target; throws a domain error if the table cannot reduce it.
Reduction reduce(const ReductionTable& t, const FamilyIndex& target);

/// Numeric value of a master at M^2 = 1 (top sector through the series
/// representation, double tadpoles and the Gamma module in closed form).
BigFloat eval_master(const ReductionTable& t, const FamilyIndex& m, const BigRat& eps, const BigRat& z0, int prec);

/// |direct - reduced| / |direct| for a target with positive indices and no numerators.
BigFloat cross_check(const ReductionTable& t, const FamilyIndex& target, const BigRat& eps, const BigRat& z0, int prec);

nlohmann::ordered_json to_json(const ReductionTable& t);
ReductionTable table_from_json(const nlohmann::ordered_json& j);

}  // namespace mastercount::ibp
