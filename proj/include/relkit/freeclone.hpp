#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "relkit/algebra.hpp"
#include "relkit/binrel.hpp"

namespace relkit {

/// One element of the k-ary term clone: the table of a term operation
/// A^k -> A and a term that produces it.
struct TermTable {
  int arity = 0;
  std::vector<std::uint8_t> table;
  Term witness;
};

/// The k-ary term clone of a finite algebra, which is the free algebra on k
/// generators of the variety the algebra generates.
///
/// The projections come first. Tables are indexed like operation
/// tables (last argument fastest) and stored one byte per entry.
class Clone {
 public:
  const FiniteAlgebra& algebra() const noexcept { return algebra_; }
  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t table_length() const noexcept { return length_; }
  /// False when generation stopped at the cap before reaching a fixpoint.
  bool complete() const noexcept { return complete_; }
  /// Number of breadth-first rounds that added elements.
  int rounds() const noexcept { return rounds_; }
  /// Id of the i-th projection. Projections coincide only when |A| = 1.
  std::size_t generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }

  std::span<const std::uint8_t> table(std::size_t id) const noexcept {
    return {tables_.data() + id * length_, length_};
  }
  std::optional<std::size_t> find(std::span<const std::uint8_t> table) const;

  /// Term built from the recorded derivation; first-found in BFS order.
  Term witness(std::size_t id) const;
  TermTable element(std::size_t id) const;

  /// Header lines, then one "<hex table> <witness>" line per element.
  std::string dump() const;

  /// The clone as an algebra on {0..size-1}, operations acting pointwise.
  /// Throws Error if the clone is incomplete or the tables exceed `caps`.
  FiniteAlgebra as_algebra(const Caps& caps = {}) const;

 private:
  friend Clone generate_clone(const FiniteAlgebra&, int, std::size_t);

  struct Derivation {
    int op = -1;  // -1 for projections
    std::vector<std::uint32_t> children;
  };

  std::size_t insert(std::vector<std::uint8_t> table, Derivation how);

  FiniteAlgebra algebra_;
  int arity_ = 0;
  std::size_t length_ = 0;
  bool complete_ = true;
  int rounds_ = 0;
  std::vector<std::size_t> generators_;
  std::vector<std::uint8_t> tables_;
  std::vector<Derivation> parent_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Breadth-first closure of the projections under the basic operations.
/// Round r applies every operation (in name order) to the tuples of known
/// elements that use at least one element from round r-1, in lexicographic
/// order of child ids. Requires |A| <= 256.
Clone generate_clone(const FiniteAlgebra& algebra, int arity, std::size_t cap);

/// Table of t(v_{pattern[0]}, ..., v_{pattern[k-1]}) as an m-ary operation,
/// where t is k-ary with the given table and each pattern entry is < m.
std::vector<std::uint8_t> substitute_table(std::span<const std::uint8_t> table, std::size_t n,
                                           std::span<const int> pattern, int m);

/// Table of the m-ary projection onto variable i.
std::vector<std::uint8_t> projection_table(std::size_t n, int m, int i);

/// lhs(v_{lp}) = rhs(v_{rp}) over m variables, for k-ary tables of the clone.
bool identity_holds(const Clone& clone, std::size_t lhs, std::span<const int> lhs_pattern,
                    std::size_t rhs, std::span<const int> rhs_pattern, int m);

/// Term-level version, checked on A directly: lhs = rhs for every
/// assignment of the variables occurring in either term.
bool identity_holds(const FiniteAlgebra& algebra, const Term& lhs, const Term& rhs);

/// The clone as an algebra together with the principal relations used by
/// the free-algebra arguments. Generators are the projections 0, 1, 2.
struct FreeAlgebra {
  FiniteAlgebra algebra;
  Element x = 0;
  Element y = 1;
  Element z = 2;

  BinRel cg(Element a, Element b) const;
  BinRel tg(Element a, Element b) const;
  /// Least reflexive admissible relation containing (a,b).
  BinRel adm(Element a, Element b) const;
};

FreeAlgebra free_algebra(const Clone& clone, const Caps& caps = {});

}  // namespace relkit
