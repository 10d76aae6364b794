#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relkit/algebra.hpp"
#include "relkit/binrel.hpp"

namespace relkit {

/// A union of a nonempty family of reflexive admissible relations.
///
/// The family matters for how the value was built, but every operation below
/// satisfies union_view(op(...)) = op on the union views, so verdicts never
/// depend on the presentation.
class UAdmRel {
 public:
  UAdmRel() = default;
  /// Requires a nonempty family of reflexive relations on one universe.
  /// Admissibility is not rechecked here; use checked() for untrusted input.
  explicit UAdmRel(std::vector<BinRel> components);

  static UAdmRel checked(const FiniteAlgebra& algebra, std::vector<BinRel> components);
  static UAdmRel single(BinRel component);

  const std::vector<BinRel>& components() const noexcept { return components_; }
  const BinRel& union_view() const noexcept { return union_; }
  std::size_t universe() const noexcept { return union_.universe(); }

 private:
  std::vector<BinRel> components_;
  BinRel union_;
};

/// Union of two congruences; both are checked.
UAdmRel from_congruences(const FiniteAlgebra& algebra, const BinRel& beta, const BinRel& gamma);

/// Drops components contained in another one, then sorts by pair list.
UAdmRel canonicalize(const UAdmRel& s);

/// All pairwise compositions s_g ∘ t_f.
UAdmRel compose(const UAdmRel& s, const UAdmRel& t);
UAdmRel intersect(const UAdmRel& s, const UAdmRel& t);
/// theta ∩ s componentwise; theta must be reflexive and admissible.
UAdmRel intersect_tolerance(const FiniteAlgebra& algebra, const BinRel& theta, const UAdmRel& s);
UAdmRel unite(const UAdmRel& s, const UAdmRel& t);
UAdmRel converse(const UAdmRel& s);
/// Family of compositions of L components, L the first length at which the
/// union stops growing. Throws Error if the family exceeds `cap` members.
UAdmRel transitive_closure(const UAdmRel& s, std::size_t cap = 100'000);
/// The single component admissible_closure(union view).
UAdmRel bar(const FiniteAlgebra& algebra, const UAdmRel& s);

/// A reflexive r is U-admissible iff the admissible closure of every one of
/// its pairs stays inside r.
bool is_u_admissible(const FiniteAlgebra& algebra, const BinRel& r);

/// Best-effort small family whose union is r: principal closures of the
/// pairs of r, with redundant members removed greedily. nullopt if r is not
/// U-admissible.
std::optional<UAdmRel> greedy_decomposition(const FiniteAlgebra& algebra, const BinRel& r);

/// Distinct unions of at most `max_components` members of `base`, one
/// representative family per union view. Families are produced level by
/// level (number of components), and in index order inside a level.
struct UEnumeration {
  std::vector<UAdmRel> families;
  /// True when the next level would add nothing, so every union of any
  /// number of base members is listed.
  bool saturated = false;
  bool capped = false;
  std::string note;
};

UEnumeration enumerate_unions(const std::vector<BinRel>& base, std::size_t max_components,
                              std::size_t cap = 1'000'000);

}  // namespace relkit
