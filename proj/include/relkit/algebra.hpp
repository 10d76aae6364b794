#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relkit/common.hpp"
#include "relkit/term.hpp"

namespace relkit {

/// One basic operation. The table is row-major with the last argument
/// varying fastest, so it has exactly size^arity entries.
struct Operation {
  std::string name;
  int arity = 0;
  std::vector<Element> table;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// A finite algebra on {0..size-1}. Operations are kept sorted by name;
/// every routine that needs a deterministic operation order relies on it.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(std::size_t size, std::vector<Operation> ops);

  std::size_t size() const noexcept { return size_; }
  const std::vector<Operation>& operations() const noexcept { return ops_; }

  std::optional<std::size_t> find_operation(std::string_view name) const;
  const Operation& operation(std::string_view name) const;

  /// Checked application: unknown name, arity mismatch and out-of-range
  /// arguments raise Error.
  Element apply(std::string_view name, std::span<const Element> args) const;

  /// Unchecked application by operation index; the hot path for closures.
  Element at(std::size_t op, std::span<const Element> args) const noexcept {
    const Operation& o = ops_[op];
    std::size_t idx = 0;
    for (Element a : args) idx = idx * size_ + a;
    return o.table[idx];
  }

  bool same_signature(const FiniteAlgebra& other) const;

  /// "n<size>-<hash>" where the hash is FNV-1a over names, arities and tables.
  std::string fingerprint() const;

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Operation> ops_;
};

/// size^exponent, or nullopt when it exceeds `limit`.
std::optional<std::size_t> checked_power(std::size_t base, std::size_t exponent,
                                         std::size_t limit);

/// Pairs (a, b) are encoded as a * |B| + b; operations act componentwise.
FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                      const Caps& caps = {});

/// A^k with mixed-radix encoding, first coordinate most significant.
FiniteAlgebra power(const FiniteAlgebra& a, int k, const Caps& caps = {});

Element eval_term(const FiniteAlgebra& algebra, const Term& term,
                  std::span<const Element> args);

}  // namespace relkit
