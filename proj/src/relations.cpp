#include "relkit/relations.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace relkit {

namespace {

void require_same(const BinRel& r, const BinRel& s) {
  if (r.universe() != s.universe()) {
    throw Error("relation size mismatch: " + std::to_string(r.universe()) + " vs " +
                std::to_string(s.universe()));
  }
}

void require_universe(const FiniteAlgebra& algebra, const BinRel& r) {
  if (r.universe() != algebra.size()) {
    throw Error("relation on " + std::to_string(r.universe()) +
                " elements used with an algebra of size " + std::to_string(algebra.size()));
  }
}

// Iterates over all tuples (i_0..i_{r-1}) with lo[p] <= i_p < hi[p], in
// lexicographic order. Returns false if fn asked to stop.
template <typename Fn>
bool for_each_tuple(std::span<const std::size_t> lo, std::span<const std::size_t> hi,
                    std::vector<std::size_t>& idx, Fn&& fn) {
  const std::size_t r = lo.size();
  for (std::size_t p = 0; p < r; ++p) {
    if (lo[p] >= hi[p]) return true;
  }
  idx.assign(lo.begin(), lo.end());
  while (true) {
    if (!fn(idx)) return false;
    std::size_t p = r;
    while (p > 0) {
      --p;
      if (++idx[p] < hi[p]) break;
      idx[p] = lo[p];
      if (p == 0) return true;
    }
    if (r == 0) return true;
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Element{0});
  }
  Element find(Element a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  bool unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<Element> parent_;
};

}  // namespace

BinRel compose(const BinRel& r, const BinRel& s) {
  require_same(r, s);
  const std::size_t n = r.universe();
  BinRel out(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto dst = out.row(static_cast<Element>(a));
    r.for_each_in_row(static_cast<Element>(a), [&](Element b) {
      auto src = s.row(b);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    });
  }
  return out;
}

BinRel compose_alternating(const BinRel& s, const BinRel& t, int m, Anchor anchor) {
  require_same(s, t);
  if (m < 1) throw Error("alternating composition needs m >= 1");
  const BinRel* first = &s;
  const BinRel* second = &t;
  if (anchor == Anchor::Left && m % 2 == 1) std::swap(first, second);
  BinRel out = *first;
  for (int i = 1; i < m; ++i) out = compose(out, i % 2 == 1 ? *second : *first);
  return out;
}

BinRel relational_power(const BinRel& r, int h) {
  if (h < 1) throw Error("relational power needs h >= 1");
  BinRel out = r;
  for (int i = 1; i < h; ++i) out = compose(out, r);
  return out;
}

BinRel intersect(const BinRel& r, const BinRel& s) {
  require_same(r, s);
  return r & s;
}

BinRel unite(const BinRel& r, const BinRel& s) {
  require_same(r, s);
  return r | s;
}

BinRel converse(const BinRel& r) {
  BinRel out(r.universe());
  for (std::size_t a = 0; a < r.universe(); ++a) {
    r.for_each_in_row(static_cast<Element>(a),
                      [&](Element b) { out.insert(b, static_cast<Element>(a)); });
  }
  return out;
}

BinRel transitive_closure(const BinRel& r) {
  BinRel current = r;
  while (true) {
    BinRel next = current | compose(current, current);
    if (next == current) return current;
    current = std::move(next);
  }
}

BinRel equivalence_closure(const BinRel& r) {
  return transitive_closure(r | converse(r) | BinRel::diagonal(r.universe()));
}

bool is_admissible(const FiniteAlgebra& algebra, const BinRel& r) {
  require_universe(algebra, r);
  const std::vector<Pair> pairs = r.pairs();
  const std::size_t n = algebra.size();
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;
  std::vector<std::size_t> idx;
  for (std::size_t o = 0; o < algebra.operations().size(); ++o) {
    const Operation& op = algebra.operations()[o];
    const auto arity = static_cast<std::size_t>(op.arity);
    if (arity == 0) {
      if (!r.contains(op.table[0], op.table[0])) return false;
      continue;
    }
    lo.assign(arity, 0);
    hi.assign(arity, pairs.size());
    bool ok = for_each_tuple(lo, hi, idx, [&](const std::vector<std::size_t>& t) {
      std::size_t ia = 0;
      std::size_t ib = 0;
      for (std::size_t p : t) {
        ia = ia * n + pairs[p].first;
        ib = ib * n + pairs[p].second;
      }
      return r.contains(op.table[ia], op.table[ib]);
    });
    if (!ok) return false;
  }
  return true;
}

bool is_reflexive_admissible(const FiniteAlgebra& algebra, const BinRel& r) {
  return r.is_reflexive() && is_admissible(algebra, r);
}

bool is_tolerance(const FiniteAlgebra& algebra, const BinRel& r) {
  return r.is_reflexive() && r.is_symmetric() && is_admissible(algebra, r);
}

bool is_congruence(const FiniteAlgebra& algebra, const BinRel& r) {
  return r.is_reflexive() && r.is_symmetric() && r.is_transitive() &&
         is_admissible(algebra, r);
}

BinRel admissible_closure(const FiniteAlgebra& algebra, const BinRel& seed) {
  require_universe(algebra, seed);
  const std::size_t n = algebra.size();
  BinRel rel = seed | BinRel::diagonal(n);
  std::vector<Pair> list = rel.pairs();
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;
  std::vector<std::size_t> idx;
  // Semi-naive closure: each round only evaluates tuples that use at least one
  // pair found in the previous round. Position p is the first such pair.
  std::size_t done = 0;
  while (done < list.size()) {
    const std::size_t end = list.size();
    for (std::size_t o = 0; o < algebra.operations().size(); ++o) {
      const Operation& op = algebra.operations()[o];
      const auto arity = static_cast<std::size_t>(op.arity);
      for (std::size_t p = 0; p < arity; ++p) {
        lo.assign(arity, 0);
        hi.assign(arity, end);
        for (std::size_t q = 0; q < p; ++q) hi[q] = done;
        lo[p] = done;
        for_each_tuple(lo, hi, idx, [&](const std::vector<std::size_t>& t) {
          std::size_t ia = 0;
          std::size_t ib = 0;
          for (std::size_t i : t) {
            ia = ia * n + list[i].first;
            ib = ib * n + list[i].second;
          }
          const Element c = op.table[ia];
          const Element d = op.table[ib];
          if (!rel.contains(c, d)) {
            rel.insert(c, d);
            list.emplace_back(c, d);
          }
          return true;
        });
      }
    }
    done = end;
  }
  return rel;
}

BinRel admissible_closure(const FiniteAlgebra& algebra, std::span<const Pair> seed) {
  return admissible_closure(algebra, BinRel::from_pairs(algebra.size(), seed));
}

BinRel congruence_closure(const FiniteAlgebra& algebra, const BinRel& seed) {
  require_universe(algebra, seed);
  const std::size_t n = algebra.size();
  UnionFind uf(n);
  std::deque<Pair> queue;
  for (auto [a, b] : seed.pairs()) {
    if (uf.unite(a, b)) queue.emplace_back(a, b);
  }
  // Closing under basic translations is enough for a congruence; pairs are
  // queued only when they merge two blocks.
  std::vector<Element> args;
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (std::size_t o = 0; o < algebra.operations().size(); ++o) {
      const Operation& op = algebra.operations()[o];
      const auto arity = static_cast<std::size_t>(op.arity);
      if (arity == 0) continue;
      const std::size_t others = *checked_power(n, arity - 1, std::numeric_limits<std::size_t>::max());
      args.assign(arity, 0);
      for (std::size_t pos = 0; pos < arity; ++pos) {
        for (std::size_t t = 0; t < others; ++t) {
          std::size_t rest = t;
          for (std::size_t q = arity; q-- > 0;) {
            if (q == pos) continue;
            args[q] = static_cast<Element>(rest % n);
            rest /= n;
          }
          args[pos] = a;
          const Element c = algebra.at(o, args);
          args[pos] = b;
          const Element d = algebra.at(o, args);
          if (uf.unite(c, d)) queue.emplace_back(c, d);
        }
      }
    }
  }
  BinRel out(n);
  std::vector<Element> root(n);
  for (std::size_t a = 0; a < n; ++a) root[a] = uf.find(static_cast<Element>(a));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (root[a] == root[b]) out.insert(static_cast<Element>(a), static_cast<Element>(b));
    }
  }
  return out;
}

BinRel congruence_closure(const FiniteAlgebra& algebra, std::span<const Pair> seed) {
  return congruence_closure(algebra, BinRel::from_pairs(algebra.size(), seed));
}

BinRel tolerance_closure(const FiniteAlgebra& algebra, const BinRel& seed) {
  require_universe(algebra, seed);
  // Swapping coordinates is an automorphism of A^2, so the subalgebra
  // generated by a symmetric set is symmetric.
  return admissible_closure(algebra, seed | converse(seed));
}

BinRel tolerance_closure(const FiniteAlgebra& algebra, std::span<const Pair> seed) {
  return tolerance_closure(algebra, BinRel::from_pairs(algebra.size(), seed));
}

const char* to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Congruence: return "congruence";
    case RelationKind::Tolerance: return "tolerance";
    case RelationKind::ReflexiveAdmissible: return "reflexive-admissible";
  }
  return "?";
}

namespace {

bool has_kind(const FiniteAlgebra& algebra, RelationKind kind, const BinRel& r) {
  switch (kind) {
    case RelationKind::Congruence:
      return r.is_symmetric() && r.is_transitive() && is_admissible(algebra, r);
    case RelationKind::Tolerance:
      return r.is_symmetric() && is_admissible(algebra, r);
    case RelationKind::ReflexiveAdmissible:
      return is_admissible(algebra, r);
  }
  return false;
}

BinRel close_by_kind(const FiniteAlgebra& algebra, RelationKind kind, const BinRel& seed) {
  switch (kind) {
    case RelationKind::Congruence: return congruence_closure(algebra, seed);
    case RelationKind::Tolerance: return tolerance_closure(algebra, seed);
    case RelationKind::ReflexiveAdmissible: return admissible_closure(algebra, seed);
  }
  return seed;
}

Enumeration enumerate_all_reflexive(const FiniteAlgebra& algebra, RelationKind kind,
                                    const EnumerationOptions& options) {
  const std::size_t n = algebra.size();
  std::vector<Pair> off;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) off.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    }
  }
  if (off.size() > 24) {
    throw Error("enumerate: all-reflexive sweep over " + std::to_string(n) +
                " elements needs 2^" + std::to_string(off.size()) + " candidates");
  }
  Enumeration out;
  const std::uint64_t total = std::uint64_t{1} << off.size();
  const BinRel diag = BinRel::diagonal(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    BinRel r = diag;
    for (std::size_t i = 0; i < off.size(); ++i) {
      if ((mask >> i) & 1u) r.insert(off[i].first, off[i].second);
    }
    if (!has_kind(algebra, kind, r)) continue;
    if (out.relations.size() >= options.cap) {
      out.complete = false;
      out.note = "cap of " + std::to_string(options.cap) + " relations reached";
      break;
    }
    out.relations.push_back(std::move(r));
  }
  std::sort(out.relations.begin(), out.relations.end(), canonical_less);
  return out;
}

Enumeration enumerate_seed_closures(const FiniteAlgebra& algebra, RelationKind kind,
                                    const EnumerationOptions& options) {
  const std::size_t n = algebra.size();
  std::vector<Pair> off;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) off.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    }
  }
  Enumeration out;
  std::unordered_set<BinRel, BinRelHash> seen;
  auto add = [&](BinRel r) {
    if (seen.size() >= options.cap && !seen.contains(r)) {
      out.complete = false;
      out.note = "cap of " + std::to_string(options.cap) + " relations reached";
      return false;
    }
    seen.insert(std::move(r));
    return true;
  };
  const BinRel diag = BinRel::diagonal(n);
  add(close_by_kind(algebra, kind, diag));
  std::vector<std::size_t> pick;
  bool capped = false;
  for (std::size_t k = 1; k <= options.seed_size && k <= off.size() && !capped; ++k) {
    pick.resize(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      BinRel seed = diag;
      for (std::size_t i : pick) seed.insert(off[i].first, off[i].second);
      if (!add(close_by_kind(algebra, kind, seed))) {
        capped = true;
        break;
      }
      std::size_t p = k;
      while (p > 0 && pick[p - 1] == off.size() - k + (p - 1)) --p;
      if (p == 0) break;
      ++pick[p - 1];
      for (std::size_t q = p; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
  }
  out.relations.assign(seen.begin(), seen.end());
  std::sort(out.relations.begin(), out.relations.end(), canonical_less);
  if (!out.complete) return out;

  // Every closed set is reached from the least one by adding one pair at a
  // time, so closing the list under that step makes it complete.
  if (!options.saturate) {
    out.complete = false;
    out.note = "seed closures of size <= " + std::to_string(options.seed_size) + " only";
    return out;
  }
  std::vector<BinRel> work = out.relations;
  std::size_t steps = 0;
  bool grew = false;
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (auto [a, b] : off) {
      if (work[i].contains(a, b)) continue;
      if (++steps > 4'000'000) {
        out.complete = false;
        out.note = "saturation stopped after 4000000 closure steps";
        break;
      }
      BinRel seed = work[i];
      seed.insert(a, b);
      BinRel c = close_by_kind(algebra, kind, seed);
      if (seen.contains(c)) continue;
      if (!add(c)) break;
      work.push_back(std::move(c));
      grew = true;
    }
    if (!out.complete) break;
  }
  if (grew) {
    out.relations.assign(seen.begin(), seen.end());
    std::sort(out.relations.begin(), out.relations.end(), canonical_less);
  }
  return out;
}

}  // namespace

Enumeration enumerate(const FiniteAlgebra& algebra, RelationKind kind,
                      const EnumerationOptions& options) {
  if (options.cap == 0) throw Error("enumerate: cap must be positive");
  EnumerationMethod method = options.method;
  if (method == EnumerationMethod::Auto) {
    method = algebra.size() <= options.threshold ? EnumerationMethod::AllReflexive
                                                 : EnumerationMethod::SeedClosures;
  }
  return method == EnumerationMethod::AllReflexive
             ? enumerate_all_reflexive(algebra, kind, options)
             : enumerate_seed_closures(algebra, kind, options);
}

}  // namespace relkit
