#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "relkit/algebra.hpp"
#include "relkit/binrel.hpp"

namespace relkit {

// Composition is read left to right: (a,c) in R∘S iff a R b S c for some b.
// Every binary operation below throws Error on a universe-size mismatch.

BinRel compose(const BinRel& r, const BinRel& s);

/// Which end of an alternating composition is anchored.
///   Right: S∘T∘S... with m factors, starting from S        (S ∘_m T)
///   Left:  ...T∘S∘T with m factors, ending at T            (S _m∘ T)
/// so Left equals S ∘_m T for even m and T ∘_m S for odd m.
enum class Anchor { Right, Left };

BinRel compose_alternating(const BinRel& s, const BinRel& t, int m, Anchor anchor);

/// R∘R∘...∘R with h factors.
BinRel relational_power(const BinRel& r, int h);

BinRel intersect(const BinRel& r, const BinRel& s);
BinRel unite(const BinRel& r, const BinRel& s);
BinRel converse(const BinRel& r);

/// Least transitive relation containing r, by repeated squaring.
BinRel transitive_closure(const BinRel& r);

/// Equivalence relation generated by r.
BinRel equivalence_closure(const BinRel& r);

/// Compatibility with every operation. Reflexivity is not part of the test.
bool is_admissible(const FiniteAlgebra& algebra, const BinRel& r);
bool is_reflexive_admissible(const FiniteAlgebra& algebra, const BinRel& r);
bool is_tolerance(const FiniteAlgebra& algebra, const BinRel& r);
bool is_congruence(const FiniteAlgebra& algebra, const BinRel& r);

/// Least reflexive admissible relation containing the seed: the subalgebra
/// of A^2 generated by the seed together with the diagonal.
BinRel admissible_closure(const FiniteAlgebra& algebra, std::span<const Pair> seed);
BinRel admissible_closure(const FiniteAlgebra& algebra, const BinRel& seed);

/// Least congruence containing the seed.
BinRel congruence_closure(const FiniteAlgebra& algebra, std::span<const Pair> seed);
BinRel congruence_closure(const FiniteAlgebra& algebra, const BinRel& seed);

/// Least tolerance containing the seed.
BinRel tolerance_closure(const FiniteAlgebra& algebra, std::span<const Pair> seed);
BinRel tolerance_closure(const FiniteAlgebra& algebra, const BinRel& seed);

enum class RelationKind { Congruence, Tolerance, ReflexiveAdmissible };

enum class EnumerationMethod {
  Auto,          // AllReflexive up to the threshold, SeedClosures above it
  AllReflexive,  // filter all 2^(n^2-n) reflexive relations
  SeedClosures,  // closures of all seed sets of at most seed_size pairs
};

struct EnumerationOptions {
  EnumerationMethod method = EnumerationMethod::Auto;
  std::size_t threshold = 5;
  std::size_t seed_size = 2;
  std::size_t cap = 1'000'000;
  /// After SeedClosures, keep adding closure(R + one pair) until nothing new
  /// appears, which makes the list complete. It costs one closure per
  /// (member, missing pair); above 4e6 such steps the list stays partial.
  bool saturate = true;
};

struct Enumeration {
  std::vector<BinRel> relations;  // canonical order, no duplicates
  bool complete = true;           // every relation of the kind is listed
  std::string note;
};

Enumeration enumerate(const FiniteAlgebra& algebra, RelationKind kind,
                      const EnumerationOptions& options = {});

const char* to_string(RelationKind kind) noexcept;

}  // namespace relkit
