#include "relkit/identities.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

#include "relkit/freeclone.hpp"

namespace relkit {

const char* to_string(VerdictStatus s) noexcept {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::NoCounterexampleTruncated: return "no counterexample found (truncated)";
  }
  return "?";
}

void check_binding(const FiniteAlgebra& algebra, const Variable& var, const Binding& b) {
  auto fail = [&](const std::string& why) {
    throw Error("variable '" + var.name + "' (" + to_string(var.cls) + "): " + why);
  };
  if (b.relation.universe() != algebra.size()) fail("relation has the wrong universe size");
  BinRel all(algebra.size());
  for (const BinRel& c : b.components) {
    if (c.universe() != algebra.size()) fail("component has the wrong universe size");
    if (!is_reflexive_admissible(algebra, c)) {
      fail("component " + c.to_string() + " is not reflexive and admissible");
    }
    all |= c;
  }
  if (!b.components.empty() && all != b.relation) fail("relation is not the union of its components");
  switch (var.cls) {
    case RelClass::Congruence:
      if (!is_congruence(algebra, b.relation)) fail("not a congruence");
      break;
    case RelClass::Tolerance:
      if (!is_tolerance(algebra, b.relation)) fail("not a tolerance");
      break;
    case RelClass::ReflexiveAdmissible:
      if (!is_reflexive_admissible(algebra, b.relation)) fail("not reflexive and admissible");
      break;
    case RelClass::UAdmissible:
      if (b.components.empty() && !is_u_admissible(algebra, b.relation)) fail("not U-admissible");
      break;
    case RelClass::U2Admissible:
      if (b.components.empty() || b.components.size() > 2) fail("needs one or two components");
      break;
    case RelClass::UnionOfTwoCongruences:
      if (b.components.empty() || b.components.size() > 2) fail("needs one or two components");
      for (const BinRel& c : b.components) {
        if (!is_congruence(algebra, c)) fail("component " + c.to_string() + " is not a congruence");
      }
      break;
  }
}

// -------------------------------------------------------------- evaluation

namespace {

/// Flat evaluation program. Each node is computed once the last variable it
/// depends on (in declaration order) is bound.
struct Program {
  struct Node {
    Expr::Kind kind = Expr::Kind::Var;
    int a = -1;
    int b = -1;
    int param = 0;
    int var = -1;
    int level = -1;
  };
  std::vector<Node> nodes;
  int lhs = -1;
  int rhs = -1;
  std::vector<std::vector<int>> by_level;  // nodes to compute after binding var i
  std::vector<int> constants;

  Program(const IdentitySpec& spec) {
    std::unordered_map<std::string, int> memo;
    lhs = add(*spec.lhs, spec, memo);
    rhs = add(*spec.rhs, spec, memo);
    by_level.resize(spec.vars.size());
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
      const Node& n = nodes[static_cast<std::size_t>(i)];
      if (n.level < 0) {
        constants.push_back(i);
      } else {
        by_level[static_cast<std::size_t>(n.level)].push_back(i);
      }
    }
  }

  int add(const Expr& e, const IdentitySpec& spec, std::unordered_map<std::string, int>& memo) {
    std::string key = std::to_string(static_cast<int>(e.kind)) + "#" + to_string(e);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Node n;
    n.kind = e.kind;
    n.param = e.param;
    if (e.kind == Expr::Kind::Var) {
      auto i = spec.find_var(e.name);
      if (!i) throw Error("spec: unbound variable '" + e.name + "'");
      n.var = static_cast<int>(*i);
      n.level = n.var;
    }
    if (!e.kids.empty()) {
      n.a = add(*e.kids[0], spec, memo);
      n.level = std::max(n.level, nodes[static_cast<std::size_t>(n.a)].level);
    }
    if (e.kids.size() > 1) {
      n.b = add(*e.kids[1], spec, memo);
      n.level = std::max(n.level, nodes[static_cast<std::size_t>(n.b)].level);
    }
    nodes.push_back(n);
    const int id = static_cast<int>(nodes.size()) - 1;
    memo.emplace(std::move(key), id);
    return id;
  }

  void compute(int id, const FiniteAlgebra& algebra, const std::vector<const Binding*>& binding,
               std::vector<BinRel>& values) const {
    const Node& n = nodes[static_cast<std::size_t>(id)];
    auto A = [&]() -> const BinRel& { return values[static_cast<std::size_t>(n.a)]; };
    auto B = [&]() -> const BinRel& { return values[static_cast<std::size_t>(n.b)]; };
    BinRel& out = values[static_cast<std::size_t>(id)];
    switch (n.kind) {
      case Expr::Kind::Var: out = binding[static_cast<std::size_t>(n.var)]->relation; break;
      case Expr::Kind::Diagonal: out = BinRel::diagonal(algebra.size()); break;
      case Expr::Kind::Full: out = BinRel::full(algebra.size()); break;
      case Expr::Kind::Meet: out = A() & B(); break;
      case Expr::Kind::Join: out = A() | B(); break;
      case Expr::Kind::Compose: out = relkit::compose(A(), B()); break;
      case Expr::Kind::AltRight: out = compose_alternating(A(), B(), n.param, Anchor::Right); break;
      case Expr::Kind::AltLeft: out = compose_alternating(A(), B(), n.param, Anchor::Left); break;
      case Expr::Kind::Converse: out = relkit::converse(A()); break;
      case Expr::Kind::Star: out = relkit::transitive_closure(A()); break;
      case Expr::Kind::Bar: out = admissible_closure(algebra, A()); break;
      case Expr::Kind::Power: out = relational_power(A(), n.param); break;
    }
  }
};

bool satisfied(const IdentitySpec& spec, const BinRel& lhs, const BinRel& rhs) {
  return spec.mode == IdentitySpec::Mode::Inclusion ? lhs.subset_of(rhs) : lhs == rhs;
}

std::optional<Pair> witness_pair(const IdentitySpec& spec, const BinRel& lhs, const BinRel& rhs) {
  for (const Pair& p : lhs.pairs()) {
    if (!rhs.contains(p.first, p.second)) return p;
  }
  if (spec.mode == IdentitySpec::Mode::Equality) {
    for (const Pair& p : rhs.pairs()) {
      if (!lhs.contains(p.first, p.second)) return p;
    }
  }
  return std::nullopt;
}

void require_assignment(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                        const std::vector<Binding>& assignment) {
  if (assignment.size() != spec.vars.size()) {
    throw Error("assignment has " + std::to_string(assignment.size()) + " values for " +
                std::to_string(spec.vars.size()) + " variables");
  }
  for (const Binding& b : assignment) {
    if (b.relation.universe() != algebra.size()) throw Error("assignment: relation size mismatch");
  }
}

UAdmRel as_family(const Binding& b) {
  if (b.components.empty()) return UAdmRel::single(b.relation);
  return UAdmRel(b.components);
}

UAdmRel eval_family(const FiniteAlgebra& algebra, const Expr& e, const IdentitySpec& spec,
                    const std::vector<Binding>& assignment) {
  auto kid = [&](std::size_t i) { return eval_family(algebra, *e.kids[i], spec, assignment); };
  switch (e.kind) {
    case Expr::Kind::Var: return as_family(assignment[*spec.find_var(e.name)]);
    case Expr::Kind::Diagonal: return UAdmRel::single(BinRel::diagonal(algebra.size()));
    case Expr::Kind::Full: return UAdmRel::single(BinRel::full(algebra.size()));
    case Expr::Kind::Meet: {
      UAdmRel a = kid(0);
      UAdmRel b = kid(1);
      if (a.components().size() == 1) return intersect_tolerance(algebra, a.components()[0], b);
      if (b.components().size() == 1) return intersect_tolerance(algebra, b.components()[0], a);
      return intersect(a, b);
    }
    case Expr::Kind::Join: return unite(kid(0), kid(1));
    case Expr::Kind::Compose: return compose(kid(0), kid(1));
    case Expr::Kind::AltRight:
    case Expr::Kind::AltLeft: {
      UAdmRel s = kid(0);
      UAdmRel t = kid(1);
      const UAdmRel* first = &s;
      const UAdmRel* second = &t;
      if (e.kind == Expr::Kind::AltLeft && e.param % 2 == 1) std::swap(first, second);
      UAdmRel out = *first;
      for (int i = 1; i < e.param; ++i) out = compose(out, i % 2 == 1 ? *second : *first);
      return out;
    }
    case Expr::Kind::Converse: return converse(kid(0));
    case Expr::Kind::Star: return transitive_closure(kid(0));
    case Expr::Kind::Bar: return bar(algebra, kid(0));
    case Expr::Kind::Power: {
      UAdmRel r = kid(0);
      UAdmRel out = r;
      for (int i = 1; i < e.param; ++i) out = compose(out, r);
      return out;
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace

Evaluation evaluate(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                    const std::vector<Binding>& assignment) {
  require_assignment(algebra, spec, assignment);
  Program prog(spec);
  std::vector<const Binding*> ptrs;
  for (const Binding& b : assignment) ptrs.push_back(&b);
  std::vector<BinRel> values(prog.nodes.size());
  for (int id = 0; id < static_cast<int>(prog.nodes.size()); ++id) prog.compute(id, algebra, ptrs, values);
  Evaluation out;
  out.lhs = values[static_cast<std::size_t>(prog.lhs)];
  out.rhs = values[static_cast<std::size_t>(prog.rhs)];
  out.satisfied = satisfied(spec, out.lhs, out.rhs);
  return out;
}

Evaluation evaluate_families(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                             const std::vector<Binding>& assignment) {
  require_assignment(algebra, spec, assignment);
  Evaluation out;
  out.lhs = eval_family(algebra, *spec.lhs, spec, assignment).union_view();
  out.rhs = eval_family(algebra, *spec.rhs, spec, assignment).union_view();
  out.satisfied = satisfied(spec, out.lhs, out.rhs);
  return out;
}

// -------------------------------------------------------------- candidates

Candidates class_candidates(const FiniteAlgebra& algebra, RelClass cls, const CheckOptions& options) {
  EnumerationOptions eo;
  eo.method = options.strategy == Strategy::Generated ? EnumerationMethod::SeedClosures
                                                       : EnumerationMethod::Auto;
  eo.threshold = options.caps.exhaustive_threshold;
  eo.seed_size = options.caps.seed_size;
  eo.cap = options.caps.candidates;

  Candidates out;
  auto plain = [&](RelationKind kind) {
    Enumeration e = enumerate(algebra, kind, eo);
    out.complete = e.complete;
    out.note = e.note;
    for (BinRel& r : e.relations) out.values.push_back({r, {r}});
  };
  auto unions = [&](RelationKind kind, std::size_t max_components, bool full_class) {
    Enumeration e = enumerate(algebra, kind, eo);
    UEnumeration u = enumerate_unions(e.relations, max_components, options.caps.candidates);
    // U2 and union-of-two-congruence classes are exactly the unions of at
    // most two members; the U class needs saturation.
    out.complete = e.complete && !u.capped && (!full_class || u.saturated);
    if (!e.complete) out.note = e.note;
    if (!u.note.empty() && (u.capped || full_class)) {
      out.note += (out.note.empty() ? "" : "; ") + u.note;
    }
    for (const UAdmRel& f : u.families) out.values.push_back({f.union_view(), f.components()});
  };
  switch (cls) {
    case RelClass::Congruence: plain(RelationKind::Congruence); break;
    case RelClass::Tolerance:
      plain(options.theta_congruence ? RelationKind::Congruence : RelationKind::Tolerance);
      break;
    case RelClass::ReflexiveAdmissible: plain(RelationKind::ReflexiveAdmissible); break;
    case RelClass::UAdmissible:
      unions(RelationKind::ReflexiveAdmissible, options.caps.u_components, true);
      break;
    case RelClass::U2Admissible: unions(RelationKind::ReflexiveAdmissible, 2, false); break;
    case RelClass::UnionOfTwoCongruences: unions(RelationKind::Congruence, 2, false); break;
  }
  return out;
}

// ------------------------------------------------------------ quantifying

namespace {

struct Found {
  std::vector<std::size_t> index;  // per variable
  BinRel lhs;
  BinRel rhs;
};

class Scanner {
 public:
  Scanner(const FiniteAlgebra& algebra, const IdentitySpec& spec, const Program& prog,
          const std::vector<const Candidates*>& cands)
      : algebra_(algebra), spec_(spec), prog_(prog), cands_(cands),
        values_(prog.nodes.size()), binding_(spec.vars.size(), nullptr),
        index_(spec.vars.size(), 0) {
    for (int id : prog_.constants) prog_.compute(id, algebra_, binding_, values_);
  }

  /// Scans all assignments whose first variable has index `first`, in order.
  /// Stops after `budget` assignments; returns the first violation.
  std::optional<Found> scan_subtree(std::size_t first, std::uint64_t& budget) {
    return descend(0, first, budget);
  }

  std::optional<Found> check_point(const std::vector<std::size_t>& idx) {
    for (std::size_t v = 0; v < idx.size(); ++v) {
      bind(v, idx[v]);
    }
    return leaf();
  }

 private:
  void bind(std::size_t v, std::size_t i) {
    index_[v] = i;
    binding_[v] = &cands_[v]->values[i];
    for (int id : prog_.by_level[v]) prog_.compute(id, algebra_, binding_, values_);
  }

  std::optional<Found> leaf() {
    const BinRel& l = values_[static_cast<std::size_t>(prog_.lhs)];
    const BinRel& r = values_[static_cast<std::size_t>(prog_.rhs)];
    if (satisfied(spec_, l, r)) return std::nullopt;
    return Found{index_, l, r};
  }

  std::optional<Found> descend(std::size_t v, std::size_t only, std::uint64_t& budget) {
    if (v == spec_.vars.size()) {
      if (budget == 0) return std::nullopt;
      --budget;
      return leaf();
    }
    const std::size_t count = cands_[v]->values.size();
    std::size_t lo = 0;
    std::size_t hi = count;
    if (v == 0) {
      lo = only;
      hi = only + 1;
    }
    for (std::size_t i = lo; i < hi && budget > 0; ++i) {
      bind(v, i);
      if (auto f = descend(v + 1, 0, budget)) return f;
    }
    return std::nullopt;
  }

  const FiniteAlgebra& algebra_;
  const IdentitySpec& spec_;
  const Program& prog_;
  const std::vector<const Candidates*>& cands_;
  std::vector<BinRel> values_;
  std::vector<const Binding*> binding_;
  std::vector<std::size_t> index_;
};

std::uint64_t saturating_product(const std::vector<std::size_t>& counts) {
  std::uint64_t total = 1;
  for (std::size_t c : counts) {
    if (c == 0) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / c) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= c;
  }
  return total;
}

}  // namespace

Verdict check_for_all(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                      const CheckOptions& options) {
  spec.validate();
  Verdict verdict;
  std::map<RelClass, Candidates> cache;
  std::vector<const Candidates*> cands;
  bool complete = true;
  for (const Variable& var : spec.vars) {
    auto it = cache.find(var.cls);
    if (it == cache.end()) {
      it = cache.emplace(var.cls, class_candidates(algebra, var.cls, options)).first;
      if (!it->second.complete) {
        complete = false;
        verdict.coverage_notes.push_back(std::string(to_string(var.cls)) + ": " +
                                         (it->second.note.empty() ? "incomplete" : it->second.note));
      }
    }
    cands.push_back(&it->second);
    verdict.candidate_counts.push_back(it->second.values.size());
  }
  Program prog(spec);
  const std::uint64_t total = saturating_product(verdict.candidate_counts);
  std::optional<Found> found;
  std::uint64_t checked = 0;

  if (options.strategy == Strategy::Sampled) {
    complete = false;
    verdict.coverage_notes.push_back("sampled " + std::to_string(options.samples) +
                                     " assignments with seed " + std::to_string(options.seed));
    if (total > 0) {
      std::mt19937_64 rng(options.seed);
      Scanner scanner(algebra, spec, prog, cands);
      std::vector<std::size_t> idx(spec.vars.size());
      for (std::size_t s = 0; s < options.samples && !found; ++s) {
        for (std::size_t v = 0; v < idx.size(); ++v) {
          idx[v] = static_cast<std::size_t>(rng() % cands[v]->values.size());
        }
        ++checked;
        found = scanner.check_point(idx);
      }
    }
  } else if (total > 0) {
    const std::uint64_t budget_total = options.caps.assignments;
    if (total > budget_total) {
      complete = false;
      verdict.coverage_notes.push_back("assignment cap " + std::to_string(budget_total) +
                                       " below " + std::to_string(total) + " assignments");
    }
    const std::size_t outer = cands[0]->values.size();
    const std::uint64_t per_outer = total / outer;
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(outer)));
    // Workers take outer indices in order; a hit at index i makes every
    // index above i irrelevant, so the smallest hit is the scan-order first.
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{outer};
    std::mutex mu;
    std::optional<Found> best_found;
    auto worker = [&] {
      Scanner scanner(algebra, spec, prog, cands);
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= outer || i > best.load()) return;
        // Budget is assigned per outer index so the covered prefix does not
        // depend on the number of workers.
        const std::uint64_t before = static_cast<std::uint64_t>(i) * per_outer;
        if (before >= budget_total) return;
        std::uint64_t budget = std::min<std::uint64_t>(per_outer, budget_total - before);
        if (auto f = scanner.scan_subtree(i, budget)) {
          std::lock_guard lock(mu);
          if (i < best.load()) {
            best.store(i);
            best_found = std::move(f);
          }
          return;
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    found = std::move(best_found);
    if (found) {
      // Position of the counterexample in scan order, counted from 1.
      std::uint64_t rank = 0;
      for (std::size_t v = 0; v < found->index.size(); ++v) {
        rank = rank * verdict.candidate_counts[v] + found->index[v];
      }
      checked = rank + 1;
    } else {
      checked = std::min(total, budget_total);
    }
  }
  verdict.assignments_checked = checked;
  if (found) {
    verdict.status = VerdictStatus::Refuted;
    for (std::size_t v = 0; v < found->index.size(); ++v) {
      verdict.counterexample.push_back(cands[v]->values[found->index[v]]);
    }
    verdict.witness = witness_pair(spec, found->lhs, found->rhs);
    verdict.lhs = std::move(found->lhs);
    verdict.rhs = std::move(found->rhs);
  } else {
    verdict.status = complete ? VerdictStatus::Holds : VerdictStatus::NoCounterexampleTruncated;
  }
  return verdict;
}

// ------------------------------------------------------------ free instance

FreeInstance free_instance(const FiniteAlgebra& algebra, const IdentitySpec& spec, const Caps& caps) {
  if (spec.seeds.empty()) throw Error("spec " + spec.name + " has no free-algebra instance");
  if (spec.mode != IdentitySpec::Mode::Inclusion) {
    throw Error("free-algebra instance needs an inclusion");
  }
  Clone clone = generate_clone(algebra, 3, caps.clone_cap(3));
  FreeAlgebra F = free_algebra(clone, caps);
  const Element x = F.x;
  const Element y = F.y;
  const Element z = F.z;
  const std::size_t n = F.algebra.size();

  auto closure = [&](RelClass cls, std::vector<Pair> seed) {
    BinRel s = BinRel::from_pairs(n, seed);
    switch (cls) {
      case RelClass::Congruence:
      case RelClass::UnionOfTwoCongruences: return congruence_closure(F.algebra, s);
      case RelClass::Tolerance: return tolerance_closure(F.algebra, s);
      default: return admissible_closure(F.algebra, s);
    }
  };
  std::vector<Binding> assignment;
  for (std::size_t i = 0; i < spec.vars.size(); ++i) {
    const RelClass cls = spec.vars[i].cls;
    Binding b;
    switch (spec.seeds[i]) {
      case SeedRole::XZ: b.components = {closure(cls, {{x, z}})}; break;
      case SeedRole::XY: b.components = {closure(cls, {{x, y}})}; break;
      case SeedRole::YZ: b.components = {closure(cls, {{y, z}})}; break;
      case SeedRole::XYAndYZ: b.components = {closure(cls, {{x, y}, {y, z}})}; break;
      case SeedRole::XYOrYZ:
      case SeedRole::XYOrZY: {
        const Pair second = spec.seeds[i] == SeedRole::XYOrYZ ? Pair{y, z} : Pair{z, y};
        if (is_union_class(cls)) {
          b.components = {closure(cls, {{x, y}}), closure(cls, {second})};
        } else {
          b.components = {closure(cls, {{x, y}, second})};
        }
        break;
      }
    }
    b.relation = BinRel(n);
    for (const BinRel& c : b.components) b.relation |= c;
    assignment.push_back(std::move(b));
  }
  Evaluation e = evaluate(F.algebra, spec, assignment);
  FreeInstance out;
  out.lhs_contains_xz = e.lhs.contains(x, z);
  out.rhs_contains_xz = e.rhs.contains(x, z);
  out.free_size = n;
  return out;
}

}  // namespace relkit
