#include "relkit/uadmissible.hpp"

#include <algorithm>
#include <unordered_set>

#include "relkit/relations.hpp"

namespace relkit {

UAdmRel::UAdmRel(std::vector<BinRel> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error("U-admissible relation needs at least one component");
  const std::size_t n = components_.front().universe();
  union_ = BinRel(n);
  for (const BinRel& c : components_) {
    if (c.universe() != n) throw Error("U-admissible relation: components differ in size");
    if (!c.is_reflexive()) throw Error("U-admissible relation: component is not reflexive");
    union_ |= c;
  }
}

UAdmRel UAdmRel::checked(const FiniteAlgebra& algebra, std::vector<BinRel> components) {
  for (const BinRel& c : components) {
    if (c.universe() != algebra.size() || !is_reflexive_admissible(algebra, c)) {
      throw Error("U-admissible relation: component " + c.to_string() +
                  " is not reflexive and admissible");
    }
  }
  return UAdmRel(std::move(components));
}

UAdmRel UAdmRel::single(BinRel component) {
  std::vector<BinRel> v;
  v.push_back(std::move(component));
  return UAdmRel(std::move(v));
}

UAdmRel from_congruences(const FiniteAlgebra& algebra, const BinRel& beta, const BinRel& gamma) {
  if (!is_congruence(algebra, beta) || !is_congruence(algebra, gamma)) {
    throw Error("from_congruences: argument is not a congruence");
  }
  return UAdmRel({beta, gamma});
}

UAdmRel canonicalize(const UAdmRel& s) {
  std::vector<BinRel> in = s.components();
  std::sort(in.begin(), in.end(), canonical_less);
  in.erase(std::unique(in.begin(), in.end()), in.end());
  std::vector<BinRel> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < in.size() && !covered; ++j) {
      covered = j != i && in[i].subset_of(in[j]);
    }
    if (!covered) out.push_back(in[i]);
  }
  std::sort(out.begin(), out.end(),
            [](const BinRel& a, const BinRel& b) { return a.pairs() < b.pairs(); });
  return UAdmRel(std::move(out));
}

UAdmRel compose(const UAdmRel& s, const UAdmRel& t) {
  std::vector<BinRel> out;
  out.reserve(s.components().size() * t.components().size());
  for (const BinRel& a : s.components()) {
    for (const BinRel& b : t.components()) out.push_back(compose(a, b));
  }
  return canonicalize(UAdmRel(std::move(out)));
}

UAdmRel intersect(const UAdmRel& s, const UAdmRel& t) {
  std::vector<BinRel> out;
  for (const BinRel& a : s.components()) {
    for (const BinRel& b : t.components()) out.push_back(intersect(a, b));
  }
  return canonicalize(UAdmRel(std::move(out)));
}

UAdmRel intersect_tolerance(const FiniteAlgebra& algebra, const BinRel& theta, const UAdmRel& s) {
  if (!is_reflexive_admissible(algebra, theta)) {
    throw Error("intersect_tolerance: " + theta.to_string() + " is not reflexive and admissible");
  }
  std::vector<BinRel> out;
  for (const BinRel& a : s.components()) out.push_back(intersect(theta, a));
  return canonicalize(UAdmRel(std::move(out)));
}

UAdmRel unite(const UAdmRel& s, const UAdmRel& t) {
  std::vector<BinRel> out = s.components();
  out.insert(out.end(), t.components().begin(), t.components().end());
  return canonicalize(UAdmRel(std::move(out)));
}

UAdmRel converse(const UAdmRel& s) {
  std::vector<BinRel> out;
  for (const BinRel& a : s.components()) out.push_back(converse(a));
  return canonicalize(UAdmRel(std::move(out)));
}

UAdmRel transitive_closure(const UAdmRel& s, std::size_t cap) {
  // Components are reflexive, so every word of length L contains the words
  // of length < L; the level-L family alone carries the union of all of them.
  const BinRel target = transitive_closure(s.union_view());
  UAdmRel level = canonicalize(s);
  while (level.union_view() != target) {
    std::vector<BinRel> next;
    for (const BinRel& w : level.components()) {
      for (const BinRel& c : s.components()) next.push_back(compose(w, c));
    }
    level = canonicalize(UAdmRel(std::move(next)));
    if (level.components().size() > cap) {
      throw Error("transitive_closure: family exceeds " + std::to_string(cap) + " components");
    }
  }
  return level;
}

UAdmRel bar(const FiniteAlgebra& algebra, const UAdmRel& s) {
  return UAdmRel::single(admissible_closure(algebra, s.union_view()));
}

bool is_u_admissible(const FiniteAlgebra& algebra, const BinRel& r) {
  if (r.universe() != algebra.size() || !r.is_reflexive()) return false;
  for (const Pair& p : r.pairs()) {
    if (p.first == p.second) continue;
    if (!admissible_closure(algebra, std::span<const Pair>(&p, 1)).subset_of(r)) return false;
  }
  return true;
}

std::optional<UAdmRel> greedy_decomposition(const FiniteAlgebra& algebra, const BinRel& r) {
  if (!is_u_admissible(algebra, r)) return std::nullopt;
  std::vector<BinRel> parts;
  for (const Pair& p : r.pairs()) {
    if (p.first != p.second) parts.push_back(admissible_closure(algebra, std::span<const Pair>(&p, 1)));
  }
  if (parts.empty()) return UAdmRel::single(BinRel::diagonal(r.universe()));
  std::vector<BinRel> kept = canonicalize(UAdmRel(parts)).components();
  // Try to drop members, largest-first kept last, while the union survives.
  for (std::size_t i = kept.size(); i-- > 0;) {
    BinRel rest(r.universe());
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) rest |= kept[j];
    }
    if (kept.size() > 1 && rest == r) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return UAdmRel(std::move(kept));
}

UEnumeration enumerate_unions(const std::vector<BinRel>& base, std::size_t max_components,
                              std::size_t cap) {
  UEnumeration out;
  if (base.empty() || max_components == 0) {
    out.saturated = base.empty();
    return out;
  }
  std::unordered_set<BinRel, BinRelHash> seen;
  std::vector<std::vector<std::size_t>> picks;
  std::size_t level_begin = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (seen.insert(base[i]).second) picks.push_back({i});
  }
  out.families.reserve(picks.size());
  std::size_t depth = 1;
  // The union of a family extended by base[d] depends only on the old union,
  // so extending one representative per union view loses nothing.
  while (true) {
    const std::size_t level_end = picks.size();
    std::vector<std::vector<std::size_t>> next;
    bool truncated = false;
    for (std::size_t f = level_begin; f < level_end && !out.capped && !truncated; ++f) {
      BinRel view = base[picks[f][0]];
      for (std::size_t i : picks[f]) view |= base[i];
      for (std::size_t d = 0; d < base.size(); ++d) {
        BinRel u = view | base[d];
        if (seen.contains(u)) continue;
        if (depth >= max_components) {
          truncated = true;
          break;
        }
        if (seen.size() >= cap) {
          out.capped = true;
          out.note = "cap of " + std::to_string(cap) + " families reached";
          break;
        }
        seen.insert(u);
        std::vector<std::size_t> pick = picks[f];
        pick.push_back(d);
        next.push_back(std::move(pick));
      }
    }
    if (truncated) break;
    if (next.empty() && !out.capped) {
      out.saturated = true;
      break;
    }
    if (out.capped) {
      picks.insert(picks.end(), next.begin(), next.end());
      break;
    }
    level_begin = level_end;
    picks.insert(picks.end(), next.begin(), next.end());
    ++depth;
  }
  for (const auto& pick : picks) {
    std::vector<BinRel> comps;
    for (std::size_t i : pick) comps.push_back(base[i]);
    out.families.emplace_back(std::move(comps));
  }
  if (!out.saturated && !out.capped) {
    out.note = "unions of at most " + std::to_string(max_components) + " components";
  }
  return out;
}

}  // namespace relkit
