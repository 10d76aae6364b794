#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "relkit/identities.hpp"
#include "relkit/io.hpp"
#include "relkit/relations.hpp"
#include "relkit/uadmissible.hpp"

using namespace relkit;

namespace {

std::vector<RelClass> classes_of(const IdentitySpec& s) {
  std::vector<RelClass> out;
  for (const auto& v : s.vars) out.push_back(v.cls);
  return out;
}

Binding plain(const BinRel& r) { return {r, {r}}; }

std::pair<BinRel, BinRel> kernels(std::size_t n) {
  BinRel e1(n * n);
  BinRel e2(n * n);
  for (Element a = 0; a < n * n; ++a) {
    for (Element b = 0; b < n * n; ++b) {
      if (a / n == b / n) e1.insert(a, b);
      if (a % n == b % n) e2.insert(a, b);
    }
  }
  return {e1, e2};
}

/// Replays a refutation: every value passes its class check and the spec
/// fails on it.
void replay(const FiniteAlgebra& A, const IdentitySpec& spec, const Verdict& v) {
  REQUIRE(v.refuted());
  REQUIRE(v.counterexample.size() == spec.vars.size());
  for (std::size_t i = 0; i < spec.vars.size(); ++i) {
    CHECK_NOTHROW(check_binding(A, spec.vars[i], v.counterexample[i]));
  }
  Evaluation e = evaluate(A, spec, v.counterexample);
  CHECK_FALSE(e.satisfied);
  CHECK(e.lhs == v.lhs);
  CHECK(e.rhs == v.rhs);
  REQUIRE(v.witness.has_value());
  if (spec.mode == IdentitySpec::Mode::Inclusion) {
    CHECK(e.lhs.contains(v.witness->first, v.witness->second));
    CHECK_FALSE(e.rhs.contains(v.witness->first, v.witness->second));
  } else {
    CHECK(e.lhs.contains(v.witness->first, v.witness->second) !=
          e.rhs.contains(v.witness->first, v.witness->second));
  }
}

/// Builtins with their default parameters that are cheap on 2- and 4-element
/// algebras.
std::vector<IdentitySpec> small_builtins() {
  std::vector<IdentitySpec> out;
  for (const char* name : {"cdist2", "cdist3", "modular2", "cor1", "cor1p", "cor1pp", "cor2", "cor3",
                           "cor4", "cor4p", "gen1", "gen2", "gen3", "maj3", "arith3", "arith4",
                           "baker4", "p12b1", "p12b2", "vrIncl", "malIncl"}) {
    out.push_back(builtin(name));
  }
  BuiltinParams p;
  p.f = {1, 2};
  out.push_back(builtin("malA", p));
  return out;
}

}  // namespace

TEST_CASE("builtin classes and modes") {
  CHECK(classes_of(builtin("cdist2")) == std::vector{RelClass::Tolerance, RelClass::UAdmissible});
  CHECK(classes_of(builtin("cdist3")) ==
        std::vector{RelClass::Congruence, RelClass::UnionOfTwoCongruences});
  CHECK(builtin("cdist2").mode == IdentitySpec::Mode::Inclusion);
  CHECK(builtin("gen3").mode == IdentitySpec::Mode::Equality);
  BuiltinParams p;
  p.f = {1, 2};
  IdentitySpec a = builtin("malA", p);
  CHECK(to_string(*a.rhs) == "alpha & R1 ; alpha & R2");
  CHECK(a.name == "malA(f=1,2)");
  for (const auto& name : builtin_names()) {
    BuiltinParams q;
    q.f = {1, 2};
    IdentitySpec s = builtin(name, q);
    CHECK_NOTHROW(s.validate());
  }
  CHECK_THROWS_AS(builtin("nope"), Error);
  BuiltinParams bad;
  bad.h = 0;
  CHECK_THROWS_AS(builtin("cdist2", bad), Error);
  BuiltinParams badf;
  badf.f = {1, 3};
  CHECK_THROWS_AS(builtin("malA", badf), Error);
}

TEST_CASE("literals round trip") {
  for (const auto& name : builtin_names()) {
    BuiltinParams p;
    p.f = {2, 1, 2};
    IdentitySpec s = builtin(name, p);
    std::string lit = to_literal(s);
    IdentitySpec back = parse_spec(lit);
    CHECK(to_literal(back) == lit);
    CHECK(classes_of(back) == classes_of(s));
    CHECK(back.mode == s.mode);
  }
  IdentitySpec s = parse_spec("tol:T & (uadm:s ; uadm:s) <= pow(T & s, 2)");
  CHECK(s.vars.size() == 2);
  CHECK(s.vars[0].name == "T");
  CHECK(classes_of(s) == classes_of(builtin("cdist2")));
  CHECK(resolve_spec("cdist2").name == "cdist2(h=2)");
  CHECK(resolve_spec("cong:a <= all").name.empty());
}

TEST_CASE("parse errors name the column") {
  auto column_of = [](const char* text) -> std::string {
    try {
      parse_spec(text);
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  };
  CHECK(column_of("tol:T & (uadm:s ; ") .find("column") != std::string::npos);
  CHECK(column_of("tol:T & uadm:s") .find("column") != std::string::npos);
  CHECK(column_of("foo:T <= T").find("column") != std::string::npos);
  CHECK_FALSE(column_of("tol:T <= cong:T").empty());
  CHECK_FALSE(column_of("tol:T <= S").empty());
  CHECK_FALSE(column_of("adm:R ;^0 adm:S <= all").empty());
  CHECK_FALSE(column_of("pow(adm:R, 0) <= all").empty());
}

TEST_CASE("with_classes") {
  IdentitySpec s = with_classes(builtin("cdist2"), {{"sigma", RelClass::ReflexiveAdmissible}});
  CHECK(classes_of(s) == std::vector{RelClass::Tolerance, RelClass::ReflexiveAdmissible});
  CHECK_THROWS_AS(with_classes(builtin("cdist2"), {{"tau", RelClass::Congruence}}), Error);
}

TEST_CASE("trivial evaluations") {
  FiniteAlgebra L = load_algebra("lattice2");
  const BinRel d = BinRel::diagonal(2);
  const BinRel all = BinRel::full(2);
  IdentitySpec mod = builtin("modular2");
  Evaluation e = evaluate(L, mod, {plain(all), plain(d)});
  CHECK(e.satisfied);
  CHECK(e.lhs == d);
  IdentitySpec maj = builtin("maj3");
  Evaluation m = evaluate(L, maj, {plain(all), plain(all), plain(all)});
  CHECK(m.satisfied);
  CHECK(m.lhs == all);
  CHECK(m.rhs == all);
}

TEST_CASE("bindings are checked") {
  FiniteAlgebra Z = load_algebra("z2");
  IdentitySpec s = builtin("cdist2");
  BinRel up = BinRel::diagonal(2);
  up.insert(0, 1);
  try {
    check_binding(Z, s.vars[1], plain(up));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("sigma") != std::string::npos);
  }
  CHECK_THROWS_AS(evaluate(Z, s, {plain(BinRel::full(2)), plain(BinRel::diagonal(3))}), Error);
  CHECK_THROWS_AS(evaluate(Z, s, {plain(BinRel::full(2))}), Error);
}

TEST_CASE("the union of the kernels refutes idempotence") {
  FiniteAlgebra P = load_algebra("lattice_2x2");
  auto [e1, e2] = kernels(2);
  IdentitySpec s = parse_spec("uadm:s ; uadm:s == uadm:s");
  Binding b{e1 | e2, {e1, e2}};
  Evaluation e = evaluate(P, s, {b});
  CHECK_FALSE(e.satisfied);
  CHECK(e.rhs.count() == 12);
  CHECK(e.lhs.count() == 16);
  Verdict v = check_for_all(P, s);
  replay(P, s, v);
  Verdict v2 = check_for_all(P, with_classes(s, {{"s", RelClass::U2Admissible}}));
  replay(P, with_classes(s, {{"s", RelClass::U2Admissible}}), v2);
}

TEST_CASE("quantified checks") {
  FiniteAlgebra L = load_algebra("lattice2");
  Verdict v = check_for_all(L, builtin("cdist2"));
  CHECK(v.holds());
  CHECK(v.coverage_notes.empty());

  FiniteAlgebra C = load_algebra("z2cube");
  BuiltinParams p;
  p.k = 4;
  IdentitySpec c3 = builtin("cdist3", p);
  Verdict r = check_for_all(C, c3);
  replay(C, c3, r);

  BuiltinParams w;
  w.weak = true;
  IdentitySpec c1 = builtin("cor1", w);
  CHECK(classes_of(c1) == std::vector{RelClass::Congruence, RelClass::UnionOfTwoCongruences});
  Verdict r1 = check_for_all(C, c1);
  replay(C, c1, r1);
  // The violating sigma is a union of two congruences that are not comparable.
  REQUIRE(r1.counterexample[1].components.size() == 2);
}

TEST_CASE("every refutation on the small fixtures replays") {
  for (const auto& name : {"lattice2", "z2", "boolean2"}) {
    FiniteAlgebra A = load_algebra(name);
    for (const IdentitySpec& s : small_builtins()) {
      Verdict v = check_for_all(A, s);
      CHECK(v.status != VerdictStatus::NoCounterexampleTruncated);
      if (v.refuted()) replay(A, s, v);
    }
  }
}

TEST_CASE("family evaluation agrees with union views") {
  std::mt19937_64 rng(7);
  for (const auto& name : {"lattice2", "z2", "lattice_2x2", "baker4"}) {
    FiniteAlgebra A = load_algebra(name);
    for (const IdentitySpec& s : small_builtins()) {
      std::vector<Candidates> cands;
      for (const auto& var : s.vars) cands.push_back(class_candidates(A, var.cls, {}));
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<Binding> asg;
        for (const auto& c : cands) {
          std::uniform_int_distribution<std::size_t> pick(0, c.values.size() - 1);
          asg.push_back(c.values[pick(rng)]);
        }
        Evaluation a = evaluate(A, s, asg);
        Evaluation b = evaluate_families(A, s, asg);
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
        CHECK(a.satisfied == b.satisfied);
      }
    }
  }
}

TEST_CASE("candidates belong to their class") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    for (RelClass cls : {RelClass::Congruence, RelClass::Tolerance, RelClass::ReflexiveAdmissible,
                         RelClass::UAdmissible, RelClass::U2Admissible,
                         RelClass::UnionOfTwoCongruences}) {
      Candidates c = class_candidates(A, cls, {});
      CHECK(c.complete);
      Variable v{"v", cls};
      for (const Binding& b : c.values) CHECK_NOTHROW(check_binding(A, v, b));
    }
  }
  FiniteAlgebra P = load_algebra("lattice_2x2");
  CHECK(class_candidates(P, RelClass::UAdmissible, {}).values.size() == 47);
  CheckOptions cong_only;
  cong_only.theta_congruence = true;
  CHECK(class_candidates(P, RelClass::Tolerance, cong_only).values.size() ==
        class_candidates(P, RelClass::Congruence, {}).values.size());
}

TEST_CASE("jobs do not change the verdict") {
  FiniteAlgebra C = load_algebra("z2cube");
  FiniteAlgebra P = load_algebra("lattice_2x2");
  BuiltinParams w;
  w.weak = true;
  std::vector<std::pair<const FiniteAlgebra*, IdentitySpec>> runs{
      {&C, builtin("cdist3")}, {&C, builtin("cor1", w)}, {&P, parse_spec("uadm:s ; uadm:s == uadm:s")},
      {&P, builtin("maj3")}, {&P, builtin("arith3")}};
  for (const auto& [A, s] : runs) {
    CheckOptions one;
    CheckOptions many;
    many.jobs = 4;
    Verdict a = check_for_all(*A, s, one);
    Verdict b = check_for_all(*A, s, many);
    CHECK(a.status == b.status);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.witness == b.witness);
    REQUIRE(a.counterexample.size() == b.counterexample.size());
    for (std::size_t i = 0; i < a.counterexample.size(); ++i) {
      CHECK(a.counterexample[i].relation == b.counterexample[i].relation);
      CHECK(a.counterexample[i].components == b.counterexample[i].components);
    }
  }
}

TEST_CASE("truncated and sampled coverage never claims to hold") {
  FiniteAlgebra L = load_algebra("lattice_2x2");
  CheckOptions tiny;
  tiny.caps.assignments = 5;
  Verdict v = check_for_all(L, builtin("cdist2"), tiny);
  CHECK(v.status == VerdictStatus::NoCounterexampleTruncated);
  CHECK_FALSE(v.coverage_notes.empty());

  CheckOptions few;
  few.caps.candidates = 3;
  CHECK_FALSE(check_for_all(L, builtin("maj3"), few).holds());

  CheckOptions sampled;
  sampled.strategy = Strategy::Sampled;
  sampled.samples = 50;
  sampled.seed = 11;
  Verdict s1 = check_for_all(L, builtin("cdist2"), sampled);
  CHECK_FALSE(s1.holds());
  Verdict s2 = check_for_all(L, builtin("cdist2"), sampled);
  CHECK(s1.status == s2.status);
  CHECK(s1.assignments_checked == s2.assignments_checked);

  FiniteAlgebra C = load_algebra("z2cube");
  CheckOptions csample = sampled;
  csample.samples = 400;
  Verdict r = check_for_all(C, builtin("cdist3"), csample);
  if (r.refuted()) replay(C, builtin("cdist3"), r);
}

TEST_CASE("narrowing a class keeps a universal verdict") {
  const std::vector<RelClass> narrower{RelClass::ReflexiveAdmissible, RelClass::U2Admissible,
                                       RelClass::UnionOfTwoCongruences, RelClass::Congruence};
  for (const auto& name : {"lattice2", "z2", "boolean2", "lattice_2x2"}) {
    FiniteAlgebra A = load_algebra(name);
    for (const char* b : {"cdist2", "maj3", "arith3", "baker4", "vrIncl", "gen1"}) {
      IdentitySpec s = builtin(b);
      Verdict wide = check_for_all(A, s);
      if (!wide.holds()) continue;
      for (RelClass cls : narrower) {
        std::map<std::string, RelClass> m;
        for (const auto& v : s.vars) {
          if (v.cls == RelClass::UAdmissible) m[v.name] = cls;
        }
        if (m.empty()) continue;
        CHECK(check_for_all(A, with_classes(s, m)).holds());
      }
    }
  }
}

TEST_CASE("equality and inclusion forms agree") {
  BuiltinParams eq;
  eq.equality = true;
  for (const auto& name : {"lattice2", "z2", "boolean2", "lattice_2x2", "baker4"}) {
    FiniteAlgebra A = load_algebra(name);
    for (const char* b : {"cor1", "cor1pp", "cor2", "cor3", "cor4", "cor4p", "gen1", "gen2"}) {
      IdentitySpec inc = builtin(b);
      IdentitySpec equ = builtin(b, eq);
      CHECK(equ.mode == IdentitySpec::Mode::Equality);
      CAPTURE(name);
      CAPTURE(b);
      CHECK(check_for_all(A, inc).holds() == check_for_all(A, equ).holds());
    }
  }
}

TEST_CASE("p12b2 alternation length") {
  FiniteAlgebra L = load_algebra("lattice_2x2");
  Candidates tol = class_candidates(L, RelClass::Tolerance, {});
  Candidates u = class_candidates(L, RelClass::UAdmissible, {});
  for (int m : {2, 4}) {
    BuiltinParams p;
    p.m = m;
    p.n = 2;
    IdentitySpec s = builtin("p12b2", p);
    // Theta & (sigma ;^m tau) on the left; the alternation node carries m.
    const Expr& alt = *s.lhs->kids[1];
    CHECK(alt.kind == Expr::Kind::AltRight);
    CHECK(alt.param == m);
    const Binding& theta = tol.values.back();
    const Binding& sigma = u.values[u.values.size() / 2];
    const Binding& tau = u.values[u.values.size() / 3];
    Evaluation e = evaluate(L, s, {theta, sigma, tau});
    CHECK(e.lhs == intersect(theta.relation,
                             compose_alternating(sigma.relation, tau.relation, m, Anchor::Right)));
  }
}

TEST_CASE("generic instances in the free algebra") {
  FreeInstance l = free_instance(load_algebra("lattice2"), builtin("cdist2"));
  CHECK(l.lhs_contains_xz);
  CHECK(l.rhs_contains_xz);
  CHECK(l.free_size == 18);
  FreeInstance z = free_instance(load_algebra("z2"), builtin("cdist3"));
  CHECK(z.lhs_contains_xz);
  CHECK_FALSE(z.rhs_contains_xz);
  CHECK(z.free_size == 8);
  CHECK_THROWS_AS(free_instance(load_algebra("lattice2"), parse_spec("cong:a <= all")), Error);
  BuiltinParams eq;
  eq.equality = true;
  CHECK_THROWS_AS(free_instance(load_algebra("lattice2"), builtin("cor1", eq)), Error);
}
