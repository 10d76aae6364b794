#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace relkit {

/// Elements of a finite universe are the integers 0..n-1.
using Element = std::uint32_t;
using Pair = std::pair<Element, Element>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource limits shared by all modules.
///
/// Defaults can be overridden from the environment variable RELKIT_CAPS,
/// written as a comma separated list of key=value entries, for example
/// `RELKIT_CAPS=clone3=100000,seed=3`. Recognised keys are the member names
/// below plus the short aliases `seed` (seed_size) and `ucomp` (u_components).
struct Caps {
  std::size_t universe = 1'000'000;
  std::size_t table_entries = std::size_t{1} << 26;
  std::size_t clone3 = 50'000;
  std::size_t clone4 = 200'000;
  // Universes up to this size enumerate every reflexive relation.
  std::size_t exhaustive_threshold = 5;
  std::size_t seed_size = 2;
  std::size_t u_components = 3;
  std::size_t candidates = 1'000'000;
  std::size_t assignments = 500'000'000;

  /// Defaults with RELKIT_CAPS applied.
  static Caps from_env();

  /// Apply a `key=value,...` override list. Throws Error on unknown keys.
  void apply(std::string_view overrides);

  std::size_t clone_cap(int arity) const noexcept {
    return arity <= 3 ? clone3 : clone4;
  }
};

}  // namespace relkit
