#include <doctest.h>

#include "oracles.hpp"
#include "relkit/algebra.hpp"
#include "relkit/io.hpp"
#include "relkit/relations.hpp"
#include "relkit/term.hpp"

using namespace relkit;

namespace {

FiniteAlgebra baker2() {
  // f(x,y,z) = x meet (y join z) on {0,1}
  std::vector<Element> t;
  for (Element x = 0; x < 2; ++x) {
    for (Element y = 0; y < 2; ++y) {
      for (Element z = 0; z < 2; ++z) t.push_back(x & (y | z));
    }
  }
  return FiniteAlgebra(2, {Operation{"f", 3, t}});
}

FiniteAlgebra three_element() {
  return FiniteAlgebra(3, {Operation{"s", 1, {1, 2, 0}}});
}

}  // namespace

TEST_CASE("apply on the bundled 2-element lattice") {
  FiniteAlgebra L = load_algebra("lattice2");
  std::vector<Element> args{0, 1};
  CHECK(L.apply("meet", args) == 0);
  CHECK(L.apply("join", args) == 1);
}

TEST_CASE("apply rejects bad input") {
  FiniteAlgebra L = load_algebra("lattice2");
  std::vector<Element> one{0};
  std::vector<Element> out_of_range{0, 2};
  CHECK_THROWS_AS(L.apply("meet", one), Error);
  CHECK_THROWS_AS(L.apply("meet", out_of_range), Error);
  CHECK_THROWS_AS(L.apply("nope", one), Error);
}

TEST_CASE("Baker reduct on two elements") {
  FiniteAlgebra B = baker2();
  std::vector<Element> args{1, 0, 1};
  CHECK(B.apply("f", args) == 1);
}

TEST_CASE("malformed algebra documents") {
  CHECK_THROWS_AS(algebra_from_json("{"), Error);
  CHECK_THROWS_AS(algebra_from_json(R"({"size": 2, "ops": [{"name": "f", "arity": 2, "table": [0,1,1]}]})"),
                  Error);
  CHECK_THROWS_AS(algebra_from_json(R"({"size": 2, "ops": [{"name": "f", "arity": 1, "table": [0,2]}]})"),
                  Error);
  CHECK_THROWS_AS(load_algebra("no_such_fixture"), Error);
}

TEST_CASE("JSON round trip and fingerprint") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    FiniteAlgebra B = algebra_from_json(algebra_to_json(A));
    CHECK(A == B);
    CHECK(A.fingerprint() == B.fingerprint());
  }
  CHECK(load_algebra("lattice2").fingerprint() != load_algebra("z2").fingerprint());
}

TEST_CASE("product encoding") {
  FiniteAlgebra L = load_algebra("lattice2");
  FiniteAlgebra P = product(L, L);
  CHECK(P.size() == 4);
  // (0,1) meet (1,0) = (0,0)
  std::vector<Element> args{1, 2};
  CHECK(P.apply("meet", args) == 0);

  FiniteAlgebra Z = load_algebra("z2");
  FiniteAlgebra Z2 = product(Z, Z);
  for (const auto& op : Z.operations()) {
    if (op.arity == 2) {
      std::vector<Element> a{1, 2};
      CHECK(Z2.apply(op.name, a) == 3);
    }
  }
  CHECK(P == load_algebra("lattice_2x2"));
}

TEST_CASE("powers and the universe cap") {
  FiniteAlgebra L = load_algebra("lattice2");
  CHECK(power(L, 3).size() == 8);
  CHECK(power(L, 8).size() == 256);
  CHECK_THROWS_AS(power(three_element(), 27), Error);
  CHECK(checked_power(3, 27, 1'000'000) == std::nullopt);
  CHECK(checked_power(2, 10, 1'000'000) == 1024u);
}

TEST_CASE("term evaluation") {
  FiniteAlgebra L = load_algebra("lattice2");
  std::vector<Element> args{1, 0, 0};
  CHECK(eval_term(L, Term::variable(0), args) == 1);
  Term maj = Term::parse("join(join(meet(x,y),meet(x,z)),meet(y,z))");
  std::vector<Element> t{1, 0, 1};
  CHECK(eval_term(L, maj, t) == 1);
  FiniteAlgebra B = baker2();
  Term f = Term::parse("f(x,z,z)");
  oracle::tuples(2, 3, [&](const std::vector<Element>& v) {
    CHECK(eval_term(B, f, v) == (v[0] & v[2]));
  });
}

TEST_CASE("term printing round trips") {
  for (const char* s : {"x", "f(x,y,z)", "join(meet(x,w),x4)", "zero()"}) {
    CHECK(Term::parse(s).to_string() == s);
  }
  Term t = Term::parse("f(x,y,z)");
  Term u = t.substitute({Term::variable(0), Term::variable(1), Term::variable(0)});
  CHECK(u.to_string() == "f(x,y,x)");
  CHECK_THROWS_AS(t.substitute({Term::variable(0)}), Error);
  CHECK_THROWS_AS(Term::parse("f(x,"), Error);
}

TEST_CASE("apply agrees with depth-1 terms on every tuple") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    for (const auto& op : A.operations()) {
      std::vector<Term> vars;
      for (int i = 0; i < op.arity; ++i) vars.push_back(Term::variable(i));
      Term t = Term::apply(op.name, vars);
      oracle::tuples(A.size(), op.arity, [&](const std::vector<Element>& v) {
        CHECK(A.apply(op.name, v) == eval_term(A, t, v));
      });
    }
  }
}

TEST_CASE("projection kernels of a product are congruences") {
  for (const auto& name : oracle::small_fixtures()) {
    FiniteAlgebra A = load_algebra(name);
    if (A.size() > 2) continue;
    FiniteAlgebra P = product(A, A);
    const std::size_t n = A.size();
    BinRel eta1(P.size());
    BinRel eta2(P.size());
    for (Element a = 0; a < P.size(); ++a) {
      for (Element b = 0; b < P.size(); ++b) {
        if (a / n == b / n) eta1.insert(a, b);
        if (a % n == b % n) eta2.insert(a, b);
      }
    }
    CHECK(is_congruence(P, eta1));
    CHECK(is_congruence(P, eta2));
  }
}
