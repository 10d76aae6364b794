#pragma once

// Brute-force reference implementations used only by the tests. They work
// on plain pair sets and the checked FiniteAlgebra::apply, and share no code
// with the library routines they are compared against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relkit/algebra.hpp"
#include "relkit/binrel.hpp"
#include "relkit/io.hpp"

namespace oracle {

using relkit::Element;
using relkit::FiniteAlgebra;
using PairSet = std::set<std::pair<Element, Element>>;

inline const std::vector<std::string>& small_fixtures() {
  static const std::vector<std::string> names{"lattice2", "z2", "boolean2", "lattice_2x2", "baker4"};
  return names;
}

inline PairSet to_set(const relkit::BinRel& r) {
  PairSet s;
  for (auto p : r.pairs()) s.insert(p);
  return s;
}

inline relkit::BinRel to_rel(std::size_t n, const PairSet& s) {
  relkit::BinRel r(n);
  for (auto [a, b] : s) r.insert(a, b);
  return r;
}

inline PairSet compose(const PairSet& r, const PairSet& s) {
  PairSet out;
  for (auto [a, b] : r) {
    for (auto [c, d] : s) {
      if (b == c) out.insert({a, d});
    }
  }
  return out;
}

inline PairSet diagonal(std::size_t n) {
  PairSet s;
  for (Element a = 0; a < n; ++a) s.insert({a, a});
  return s;
}

/// Calls fn for every tuple in {0..n-1}^k.
inline void tuples(std::size_t n, int k, const std::function<void(const std::vector<Element>&)>& fn) {
  std::vector<Element> t(static_cast<std::size_t>(k), 0);
  while (true) {
    fn(t);
    int i = k - 1;
    while (i >= 0 && ++t[static_cast<std::size_t>(i)] == n) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// Applies every operation to every tuple of pairs drawn from r.
inline PairSet one_step(const FiniteAlgebra& A, const PairSet& r) {
  PairSet out = r;
  std::vector<std::pair<Element, Element>> list(r.begin(), r.end());
  for (const auto& op : A.operations()) {
    if (op.arity == 0) {
      Element c = A.apply(op.name, {});
      out.insert({c, c});
      continue;
    }
    tuples(list.size(), op.arity, [&](const std::vector<Element>& idx) {
      std::vector<Element> l;
      std::vector<Element> rr;
      for (Element i : idx) {
        l.push_back(list[i].first);
        rr.push_back(list[i].second);
      }
      out.insert({A.apply(op.name, l), A.apply(op.name, rr)});
    });
  }
  return out;
}

inline bool admissible(const FiniteAlgebra& A, const PairSet& r) { return one_step(A, r) == r; }

inline PairSet admissible_closure(const FiniteAlgebra& A, PairSet r) {
  for (auto d : diagonal(A.size())) r.insert(d);
  while (true) {
    PairSet next = one_step(A, r);
    if (next == r) return r;
    r = std::move(next);
  }
}

inline PairSet symmetric(PairSet r) {
  PairSet out = r;
  for (auto [a, b] : r) out.insert({b, a});
  return out;
}

inline PairSet transitive(PairSet r) {
  while (true) {
    PairSet next = r;
    for (auto p : compose(r, r)) next.insert(p);
    if (next == r) return r;
    r = std::move(next);
  }
}

/// Least congruence: alternate admissible closure of the symmetric hull with
/// transitive closure until nothing changes.
inline PairSet congruence_closure(const FiniteAlgebra& A, PairSet r) {
  while (true) {
    PairSet next = transitive(admissible_closure(A, symmetric(r)));
    if (next == r) return r;
    r = std::move(next);
  }
}

/// All reflexive relations on n elements that pass `keep`.
inline std::vector<PairSet> filter_reflexive(std::size_t n, const std::function<bool(const PairSet&)>& keep) {
  std::vector<std::pair<Element, Element>> off;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (a != b) off.push_back({a, b});
    }
  }
  std::vector<PairSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << off.size()); ++mask) {
    PairSet r = diagonal(n);
    for (std::size_t i = 0; i < off.size(); ++i) {
      if ((mask >> i) & 1u) r.insert(off[i]);
    }
    if (keep(r)) out.push_back(std::move(r));
  }
  return out;
}

/// Every partition of {0..n-1} as an equivalence relation (restricted growth strings).
inline std::vector<PairSet> all_equivalences(std::size_t n) {
  std::vector<PairSet> out;
  std::vector<int> block(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      PairSet r;
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (block[a] == block[b]) r.insert({a, b});
        }
      }
      out.push_back(std::move(r));
      return;
    }
    for (int b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0) return out;
  block[0] = 0;
  rec(1, 1);
  return out;
}

inline relkit::BinRel random_relation(std::mt19937_64& rng, std::size_t n, double density) {
  relkit::BinRel r(n);
  std::bernoulli_distribution coin(density);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (coin(rng)) r.insert(a, b);
    }
  }
  return r;
}

/// Nonconstant monotone Boolean functions of three variables, as tables
/// indexed by 4x + 2y + z.
inline std::set<std::vector<std::uint8_t>> monotone_nonconstant() {
  std::set<std::vector<std::uint8_t>> out;
  for (int f = 0; f < 256; ++f) {
    std::vector<std::uint8_t> t(8);
    for (int i = 0; i < 8; ++i) t[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((f >> i) & 1);
    bool monotone = true;
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        if ((a & b) == a && t[static_cast<std::size_t>(a)] > t[static_cast<std::size_t>(b)]) monotone = false;
      }
    }
    if (monotone && f != 0 && f != 255) out.insert(t);
  }
  return out;
}

/// The GF(2) span of the three projections.
inline std::set<std::vector<std::uint8_t>> linear_span() {
  std::set<std::vector<std::uint8_t>> out;
  for (unsigned c = 0; c < 8; ++c) {
    std::vector<std::uint8_t> t(8);
    for (unsigned i = 0; i < 8; ++i) t[i] = static_cast<std::uint8_t>(std::popcount(c & i) & 1);
    out.insert(t);
  }
  return out;
}

}  // namespace oracle
