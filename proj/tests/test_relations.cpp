#include <doctest.h>

#include "oracles.hpp"
#include "relkit/io.hpp"
#include "relkit/relations.hpp"

using namespace relkit;

namespace {

BinRel rel(std::size_t n, std::initializer_list<Pair> extra) {
  BinRel r = BinRel::diagonal(n);
  for (auto [a, b] : extra) r.insert(a, b);
  return r;
}

/// Kernels of the two projections of the 4-element square (a = 2i + j).
std::pair<BinRel, BinRel> kernels() {
  BinRel e1(4);
  BinRel e2(4);
  for (Element a = 0; a < 4; ++a) {
    for (Element b = 0; b < 4; ++b) {
      if (a / 2 == b / 2) e1.insert(a, b);
      if (a % 2 == b % 2) e2.insert(a, b);
    }
  }
  return {e1, e2};
}

}  // namespace

TEST_CASE("pair list literals") {
  BinRel r = rel(3, {{0, 1}});
  CHECK(r.to_string() == "[(0,0),(0,1),(1,1),(2,2)]");
  CHECK(parse_pair_list(3, " [ (0,0), (0,1),(1,1) ,(2,2)] ") == r);
  CHECK(parse_pair_list(3, "[]").empty());
  CHECK_THROWS_AS(parse_pair_list(3, "[(0,3)]"), Error);
  CHECK_THROWS_AS(parse_pair_list(3, "[(0,1)"), Error);
}

TEST_CASE("composition examples") {
  BinRel r = rel(3, {{0, 1}});
  BinRel s = rel(3, {{1, 2}});
  CHECK(compose(r, s) == rel(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(compose(r, BinRel::diagonal(3)) == r);
  auto [e1, e2] = kernels();
  CHECK(compose(e1, e2) == BinRel::full(4));
  CHECK(unite(e1, e2).count() == 12);
  CHECK_THROWS_AS(compose(r, BinRel(4)), Error);
}

TEST_CASE("alternating compositions count their factors") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    BinRel s = oracle::random_relation(rng, 5, 0.2);
    BinRel t = oracle::random_relation(rng, 5, 0.2);
    CHECK(compose_alternating(s, t, 1, Anchor::Right) == s);
    CHECK(compose_alternating(s, t, 3, Anchor::Right) == compose(compose(s, t), s));
    CHECK(compose_alternating(s, t, 3, Anchor::Left) == compose(compose(t, s), t));
    CHECK(compose_alternating(s, t, 4, Anchor::Left) == compose_alternating(s, t, 4, Anchor::Right));
    CHECK(compose_alternating(s, t, 5, Anchor::Left) == compose_alternating(t, s, 5, Anchor::Right));
  }
}

TEST_CASE("relational powers") {
  BinRel r = rel(3, {{0, 1}, {1, 2}});
  CHECK(relational_power(r, 1) == r);
  CHECK(relational_power(r, 2) == rel(3, {{0, 1}, {1, 2}, {0, 2}}));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    BinRel q = oracle::random_relation(rng, 6, 0.15) | BinRel::diagonal(6);
    for (int h = 1; h < 5; ++h) CHECK(relational_power(q, h).subset_of(relational_power(q, h + 1)));
  }
}

TEST_CASE("converse, meet and join") {
  CHECK(converse(rel(2, {{0, 1}})) == rel(2, {{1, 0}}));
  BinRel r = rel(3, {{0, 2}});
  CHECK(intersect(r, BinRel::full(3)) == r);
  CHECK(unite(r, r) == r);
}

TEST_CASE("transitive closure examples") {
  CHECK(transitive_closure(rel(3, {{0, 1}, {1, 2}})) == rel(3, {{0, 1}, {1, 2}, {0, 2}}));
  BinRel t = rel(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(transitive_closure(t) == t);
}

TEST_CASE("relation algebra laws on random relations") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      BinRel r = oracle::random_relation(rng, n, 0.3);
      BinRel s = oracle::random_relation(rng, n, 0.3);
      BinRel t = oracle::random_relation(rng, n, 0.3);
      CHECK(compose(compose(r, s), t) == compose(r, compose(s, t)));
      CHECK(compose(BinRel::diagonal(n), r) == r);
      CHECK(compose(r, BinRel::diagonal(n)) == r);
      CHECK(converse(converse(r)) == r);
      CHECK(converse(compose(r, s)) == compose(converse(s), converse(r)));
      CHECK(oracle::to_set(compose(r, s)) == oracle::compose(oracle::to_set(r), oracle::to_set(s)));

      BinRel rs = transitive_closure(r);
      CHECK(r.subset_of(rs));
      CHECK(transitive_closure(rs) == rs);
      CHECK(rs == oracle::to_rel(n, oracle::transitive(oracle::to_set(r))));
      BinRel big = r | s;
      CHECK(rs.subset_of(transitive_closure(big)));
    }
  }
}

TEST_CASE("admissibility examples") {
  FiniteAlgebra L = load_algebra("lattice2");
  CHECK(is_admissible(L, BinRel::diagonal(2)));
  CHECK(is_admissible(L, rel(2, {{0, 1}})));
  BinRel bare(2);
  bare.insert(0, 1);
  CHECK_FALSE(is_reflexive_admissible(L, bare));
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    CHECK(is_admissible(A, BinRel::diagonal(A.size())));
    CHECK(is_congruence(A, BinRel::full(A.size())));
  }
}

TEST_CASE("closure examples") {
  FiniteAlgebra L = load_algebra("lattice2");
  std::vector<Pair> none;
  std::vector<Pair> one{{0, 1}};
  CHECK(admissible_closure(L, none) == BinRel::diagonal(2));
  CHECK(admissible_closure(L, one) == rel(2, {{0, 1}}));
  CHECK(congruence_closure(L, one) == BinRel::full(2));
  CHECK(congruence_closure(L, none) == BinRel::diagonal(2));
  CHECK(tolerance_closure(L, one) == BinRel::full(2));
}

TEST_CASE("closures agree with the fixpoint oracles") {
  std::mt19937_64 rng(5);
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    const std::size_t n = A.size();
    for (int trial = 0; trial < 25; ++trial) {
      BinRel seed = oracle::random_relation(rng, n, trial % 5 == 0 ? 0.3 : 0.08);
      auto s = oracle::to_set(seed);
      BinRel adm = admissible_closure(A, seed);
      CHECK(adm == oracle::to_rel(n, oracle::admissible_closure(A, s)));
      CHECK(is_reflexive_admissible(A, adm));
      CHECK(admissible_closure(A, adm) == adm);
      // Closures of reflexive admissible relations are the relations themselves
      // and nothing else is a fixed point.
      CHECK((admissible_closure(A, seed) == seed) == (seed.is_reflexive() && oracle::admissible(A, s)));
      BinRel cg = congruence_closure(A, seed);
      CHECK(cg == oracle::to_rel(n, oracle::congruence_closure(A, s)));
      CHECK(is_congruence(A, cg));
      BinRel tg = tolerance_closure(A, seed);
      CHECK(tg == oracle::to_rel(n, oracle::admissible_closure(A, oracle::symmetric(s))));
      CHECK(is_tolerance(A, tg));
    }
  }
}

TEST_CASE("admissible relations are closed under meet, composition, converse and closure") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    Enumeration e = enumerate(A, RelationKind::ReflexiveAdmissible);
    REQUIRE(e.complete);
    for (const BinRel& r : e.relations) {
      CHECK(is_admissible(A, converse(r)));
      CHECK(is_admissible(A, transitive_closure(r)));
      for (const BinRel& s : e.relations) {
        CHECK(is_admissible(A, intersect(r, s)));
        CHECK(is_admissible(A, compose(r, s)));
      }
    }
  }
}

TEST_CASE("powers of a meet with a congruence stay inside its closure") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    Enumeration cong = enumerate(A, RelationKind::Congruence);
    Enumeration adm = enumerate(A, RelationKind::ReflexiveAdmissible);
    for (const BinRel& alpha : cong.relations) {
      for (const BinRel& sigma : adm.relations) {
        for (int h = 1; h <= 3; ++h) {
          CHECK(relational_power(intersect(alpha, sigma), h).subset_of(transitive_closure(alpha)));
        }
      }
    }
  }
}

TEST_CASE("enumeration examples") {
  FiniteAlgebra L = load_algebra("lattice2");
  Enumeration c = enumerate(L, RelationKind::Congruence);
  CHECK(c.relations.size() == 2);
  Enumeration r = enumerate(L, RelationKind::ReflexiveAdmissible);
  REQUIRE(r.relations.size() == 4);
  CHECK(r.relations[0] == BinRel::diagonal(2));
  CHECK(r.relations[3] == BinRel::full(2));
  FiniteAlgebra Z = load_algebra("z2");
  CHECK(enumerate(Z, RelationKind::ReflexiveAdmissible).relations.size() == 2);
}

TEST_CASE("z2cube has 16 congruences, by filtering every equivalence relation") {
  FiniteAlgebra Z = load_algebra("z2cube");
  std::size_t oracle_count = 0;
  for (const auto& eq : oracle::all_equivalences(Z.size())) {
    if (oracle::admissible(Z, eq)) ++oracle_count;
  }
  CHECK(oracle::all_equivalences(8).size() == 4140);
  CHECK(oracle_count == 16);
  Enumeration e = enumerate(Z, RelationKind::Congruence);
  CHECK(e.complete);
  CHECK(e.relations.size() == oracle_count);
}

TEST_CASE("seed closures match the all-reflexive filter") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    for (RelationKind kind :
         {RelationKind::Congruence, RelationKind::Tolerance, RelationKind::ReflexiveAdmissible}) {
      EnumerationOptions all;
      all.method = EnumerationMethod::AllReflexive;
      EnumerationOptions seeds;
      seeds.method = EnumerationMethod::SeedClosures;
      seeds.seed_size = 1;
      Enumeration a = enumerate(A, kind, all);
      Enumeration b = enumerate(A, kind, seeds);
      CHECK(a.complete);
      CHECK(b.complete);
      CHECK(a.relations == b.relations);
      // Independent count from the brute-force filter.
      auto brute = oracle::filter_reflexive(A.size(), [&](const oracle::PairSet& r) {
        if (!oracle::admissible(A, r)) return false;
        if (kind == RelationKind::ReflexiveAdmissible) return true;
        if (oracle::symmetric(r) != r) return false;
        return kind == RelationKind::Tolerance || oracle::transitive(r) == r;
      });
      CHECK(a.relations.size() == brute.size());
    }
  }
}

TEST_CASE("enumeration order and limits") {
  FiniteAlgebra A = load_algebra("lattice_2x2");
  Enumeration e = enumerate(A, RelationKind::ReflexiveAdmissible);
  CHECK(std::is_sorted(e.relations.begin(), e.relations.end(), canonical_less));
  EnumerationOptions tight;
  tight.cap = 3;
  Enumeration c = enumerate(A, RelationKind::ReflexiveAdmissible, tight);
  CHECK_FALSE(c.complete);
  EnumerationOptions raw;
  raw.method = EnumerationMethod::SeedClosures;
  raw.seed_size = 0;
  raw.saturate = false;
  CHECK_FALSE(enumerate(A, RelationKind::Congruence, raw).complete);
  CHECK_THROWS_AS(enumerate(load_algebra("z2cube"), RelationKind::Congruence,
                            EnumerationOptions{EnumerationMethod::AllReflexive}),
                  Error);
}

TEST_CASE("join of congruences is the closure of their union on z2cube") {
  FiniteAlgebra Z = load_algebra("z2cube");
  Enumeration e = enumerate(Z, RelationKind::Congruence);
  for (const BinRel& a : e.relations) {
    for (const BinRel& b : e.relations) {
      BinRel join = congruence_closure(Z, unite(a, b));
      CHECK(transitive_closure(unite(a, b)) == join);
    }
  }
}
