#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "relkit/io.hpp"
#include "relkit/relations.hpp"
#include "relkit/uadmissible.hpp"

using namespace relkit;

namespace {

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

BinRel up(std::size_t n, Element a, Element b) {
  BinRel r = BinRel::diagonal(n);
  r.insert(a, b);
  return r;
}

/// Distinct unions of nonempty subfamilies of base, by brute force.
std::set<oracle::PairSet> all_union_views(const std::vector<BinRel>& base) {
  std::set<oracle::PairSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << base.size()); ++mask) {
    BinRel u(base.front().universe());
    for (std::size_t i = 0; i < base.size(); ++i) {
      if ((mask >> i) & 1u) u |= base[i];
    }
    out.insert(oracle::to_set(u));
  }
  return out;
}

void check_components(const FiniteAlgebra& A, const UAdmRel& s) {
  for (const BinRel& c : s.components()) CHECK(is_reflexive_admissible(A, c));
}

}  // namespace

TEST_CASE("unions of two congruences") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  const BinRel d = BinRel::diagonal(4);
  CHECK(from_congruences(P, d, d).union_view() == d);
  CHECK(from_congruences(P, d, BinRel::full(4)).union_view() == BinRel::full(4));
  auto [e1, e2] = kernels();
  UAdmRel s = from_congruences(P, e1, e2);
  CHECK(s.union_view().count() == 12);
  CHECK(converse(s).union_view() == s.union_view());
  CHECK_THROWS_AS(from_congruences(P, up(4, 0, 1), d), Error);
}

TEST_CASE("construction rejects bad families") {
  CHECK_THROWS_AS(UAdmRel(std::vector<BinRel>{}), Error);
  BinRel bare(2);
  bare.insert(0, 1);
  CHECK_THROWS_AS(UAdmRel::single(bare), Error);
  CHECK_THROWS_AS(UAdmRel({BinRel::diagonal(2), BinRel::diagonal(3)}), Error);
  FiniteAlgebra Z = load_algebra("z2");
  CHECK_THROWS_AS(UAdmRel::checked(Z, {up(2, 0, 1)}), Error);
}

TEST_CASE("composition of families") {
  FiniteAlgebra L = load_algebra("lattice2");
  UAdmRel s({up(2, 0, 1), up(2, 1, 0)});
  UAdmRel delta = UAdmRel::single(BinRel::diagonal(2));
  CHECK(compose(s, delta).union_view() == s.union_view());
  UAdmRel ss = compose(s, s);
  CHECK(ss.union_view() == BinRel::full(2));
  CHECK(ss.components().size() <= 4);
  check_components(L, ss);
}

TEST_CASE("intersection with a tolerance") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  auto [e1, e2] = kernels();
  UAdmRel s = from_congruences(P, e1, e2);
  CHECK(intersect_tolerance(P, BinRel::full(4), s).union_view() == s.union_view());
  UAdmRel dd = intersect_tolerance(P, BinRel::diagonal(4), s);
  REQUIRE(dd.components().size() == 1);
  CHECK(dd.components()[0] == BinRel::diagonal(4));
  Enumeration cong = enumerate(P, RelationKind::Congruence);
  for (const BinRel& a : cong.relations) {
    UAdmRel m = intersect_tolerance(P, a, s);
    CHECK(m.union_view() == (intersect(a, e1) | intersect(a, e2)));
    check_components(P, m);
  }
}

TEST_CASE("closure and bar") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  auto [e1, e2] = kernels();
  UAdmRel s = from_congruences(P, e1, e2);
  UAdmRel star = transitive_closure(s);
  CHECK(star.union_view() == BinRel::full(4));
  CHECK(star.union_view() == transitive_closure(s.union_view()));
  check_components(P, star);
  FiniteAlgebra L = load_algebra("lattice2");
  UAdmRel b = bar(L, UAdmRel({up(2, 0, 1), up(2, 1, 0)}));
  REQUIRE(b.components().size() == 1);
  CHECK(b.components()[0] == BinRel::full(2));
}

TEST_CASE("the union of the kernels is not idempotent under composition") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  auto [e1, e2] = kernels();
  UAdmRel s = from_congruences(P, e1, e2);
  UAdmRel ss = compose(s, s);
  CHECK(ss.union_view() == BinRel::full(4));
  CHECK(ss.union_view().count() == 16);
  CHECK(ss.union_view() != s.union_view());
}

TEST_CASE("canonical form") {
  const BinRel d = BinRel::diagonal(2);
  CHECK(canonicalize(UAdmRel({d, BinRel::full(2)})).components() == std::vector<BinRel>{BinRel::full(2)});
  CHECK(canonicalize(UAdmRel({up(2, 0, 1), up(2, 0, 1)})).components().size() == 1);
  UAdmRel s({up(2, 1, 0), d, up(2, 0, 1)});
  CHECK(canonicalize(s).union_view() == s.union_view());
  CHECK(canonicalize(s).components().size() == 2);
}

TEST_CASE("union views commute with every family operation") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    Enumeration adm = enumerate(A, RelationKind::ReflexiveAdmissible);
    Enumeration tol = enumerate(A, RelationKind::Tolerance);
    UEnumeration u = enumerate_unions(adm.relations, 2);
    const auto& F = u.families;
    const std::size_t step = std::max<std::size_t>(1, F.size() / 12);
    for (std::size_t i = 0; i < F.size(); i += step) {
      const UAdmRel& s = F[i];
      CHECK(converse(s).union_view() == converse(s.union_view()));
      CHECK(transitive_closure(s).union_view() == transitive_closure(s.union_view()));
      check_components(A, transitive_closure(s));
      for (std::size_t j = 0; j < F.size(); j += step) {
        const UAdmRel& t = F[j];
        CHECK(compose(s, t).union_view() == compose(s.union_view(), t.union_view()));
        CHECK(intersect(s, t).union_view() == intersect(s.union_view(), t.union_view()));
        CHECK(unite(s, t).union_view() == unite(s.union_view(), t.union_view()));
        check_components(A, compose(s, t));
        check_components(A, intersect(s, t));
      }
      for (const BinRel& theta : tol.relations) {
        CHECK(intersect_tolerance(A, theta, s).union_view() == intersect(theta, s.union_view()));
      }
    }
  }
}

TEST_CASE("union enumeration matches the power-set oracle") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    Enumeration adm = enumerate(A, RelationKind::ReflexiveAdmissible);
    auto views = all_union_views(adm.relations);
    UEnumeration u = enumerate_unions(adm.relations, adm.relations.size());
    CHECK(u.saturated);
    CHECK(u.families.size() == views.size());
    std::set<oracle::PairSet> got;
    for (const UAdmRel& f : u.families) got.insert(oracle::to_set(f.union_view()));
    CHECK(got == views);
    // A reflexive relation is a union of admissible ones iff it passes the
    // principal-closure test.
    auto u_adm = oracle::filter_reflexive(A.size(), [&](const oracle::PairSet& r) {
      return is_u_admissible(A, oracle::to_rel(A.size(), r));
    });
    CHECK(std::set<oracle::PairSet>(u_adm.begin(), u_adm.end()) == views);
  }
}

TEST_CASE("union enumeration bookkeeping") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  Enumeration adm = enumerate(P, RelationKind::ReflexiveAdmissible);
  UEnumeration u3 = enumerate_unions(adm.relations, 3);
  CHECK(u3.families.size() == 47);
  CHECK(u3.saturated);
  UEnumeration u1 = enumerate_unions(adm.relations, 1);
  CHECK(u1.families.size() == adm.relations.size());
  CHECK_FALSE(u1.saturated);
  UEnumeration capped = enumerate_unions(adm.relations, 3, 20);
  CHECK(capped.capped);
}

TEST_CASE("greedy decomposition") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  auto [e1, e2] = kernels();
  auto d = greedy_decomposition(P, e1 | e2);
  REQUIRE(d.has_value());
  CHECK(d->union_view() == (e1 | e2));
  check_components(P, *d);
  BinRel bad = BinRel::diagonal(4);
  bad.insert(0, 3);
  CHECK_FALSE(is_u_admissible(P, bad));
  CHECK_FALSE(greedy_decomposition(P, bad).has_value());
}
