#include <algorithm>
#include <cctype>
#include <set>

#include "relkit/identities.hpp"

namespace relkit {

const char* to_string(RelClass cls) noexcept {
  switch (cls) {
    case RelClass::Congruence: return "congruence";
    case RelClass::Tolerance: return "tolerance";
    case RelClass::ReflexiveAdmissible: return "reflexive-admissible";
    case RelClass::UAdmissible: return "U-admissible";
    case RelClass::U2Admissible: return "U2-admissible";
    case RelClass::UnionOfTwoCongruences: return "union-of-two-congruences";
  }
  return "?";
}

const char* class_prefix(RelClass cls) noexcept {
  switch (cls) {
    case RelClass::Congruence: return "cong";
    case RelClass::Tolerance: return "tol";
    case RelClass::ReflexiveAdmissible: return "adm";
    case RelClass::UAdmissible: return "uadm";
    case RelClass::U2Admissible: return "u2";
    case RelClass::UnionOfTwoCongruences: return "ucong2";
  }
  return "?";
}

std::optional<RelClass> class_from_prefix(std::string_view p) {
  for (RelClass c : {RelClass::Congruence, RelClass::Tolerance, RelClass::ReflexiveAdmissible,
                     RelClass::UAdmissible, RelClass::U2Admissible,
                     RelClass::UnionOfTwoCongruences}) {
    if (p == class_prefix(c)) return c;
  }
  return std::nullopt;
}

bool is_union_class(RelClass cls) noexcept {
  return cls == RelClass::UAdmissible || cls == RelClass::U2Admissible ||
         cls == RelClass::UnionOfTwoCongruences;
}

namespace {

ExprPtr make(Expr::Kind kind, std::vector<ExprPtr> kids, int param = 0) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->kids = std::move(kids);
  e->param = param;
  return e;
}

}  // namespace

ExprPtr Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->name = std::move(name);
  return e;
}
ExprPtr Expr::diagonal() { return make(Kind::Diagonal, {}); }
ExprPtr Expr::full() { return make(Kind::Full, {}); }
ExprPtr Expr::meet(ExprPtr a, ExprPtr b) { return make(Kind::Meet, {std::move(a), std::move(b)}); }
ExprPtr Expr::join(ExprPtr a, ExprPtr b) { return make(Kind::Join, {std::move(a), std::move(b)}); }
ExprPtr Expr::compose(ExprPtr a, ExprPtr b) {
  return make(Kind::Compose, {std::move(a), std::move(b)});
}
ExprPtr Expr::alt(ExprPtr a, ExprPtr b, int m, Anchor anchor) {
  return make(anchor == Anchor::Right ? Kind::AltRight : Kind::AltLeft, {std::move(a), std::move(b)},
              m);
}
ExprPtr Expr::converse(ExprPtr a) { return make(Kind::Converse, {std::move(a)}); }
ExprPtr Expr::star(ExprPtr a) { return make(Kind::Star, {std::move(a)}); }
ExprPtr Expr::bar(ExprPtr a) { return make(Kind::Bar, {std::move(a)}); }
ExprPtr Expr::power(ExprPtr a, int h) { return make(Kind::Power, {std::move(a)}, h); }

ExprPtr compose_chain(const std::vector<ExprPtr>& factors) {
  if (factors.empty()) throw Error("compose_chain: no factors");
  ExprPtr out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = Expr::compose(out, factors[i]);
  return out;
}

// ---------------------------------------------------------------- printing

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Join: return 1;
    case Expr::Kind::Compose:
    case Expr::Kind::AltRight:
    case Expr::Kind::AltLeft: return 2;
    case Expr::Kind::Meet: return 3;
    case Expr::Kind::Converse:
    case Expr::Kind::Star: return 4;
    default: return 5;
  }
}

void print(const Expr& e, const IdentitySpec* spec, std::set<std::string>& seen, std::string& out);

void print_kid(const Expr& kid, int min_prec, const IdentitySpec* spec,
               std::set<std::string>& seen, std::string& out) {
  if (precedence(kid) < min_prec) {
    out += '(';
    print(kid, spec, seen, out);
    out += ')';
  } else {
    print(kid, spec, seen, out);
  }
}

void print(const Expr& e, const IdentitySpec* spec, std::set<std::string>& seen, std::string& out) {
  const int p = precedence(e);
  switch (e.kind) {
    case Expr::Kind::Var:
      if (spec && seen.insert(e.name).second) {
        if (auto i = spec->find_var(e.name)) {
          out += class_prefix(spec->vars[*i].cls);
          out += ':';
        }
      }
      out += e.name;
      return;
    case Expr::Kind::Diagonal: out += "id"; return;
    case Expr::Kind::Full: out += "all"; return;
    case Expr::Kind::Bar:
      out += "bar(";
      print(*e.kids[0], spec, seen, out);
      out += ')';
      return;
    case Expr::Kind::Power:
      out += "pow(";
      print(*e.kids[0], spec, seen, out);
      out += ", " + std::to_string(e.param) + ')';
      return;
    case Expr::Kind::Converse:
    case Expr::Kind::Star:
      print_kid(*e.kids[0], p, spec, seen, out);
      out += e.kind == Expr::Kind::Converse ? "^~" : "^*";
      return;
    default: break;
  }
  const char* op = "";
  std::string tmp;
  switch (e.kind) {
    case Expr::Kind::Join: op = " | "; break;
    case Expr::Kind::Meet: op = " & "; break;
    case Expr::Kind::Compose: op = " ; "; break;
    case Expr::Kind::AltRight:
      tmp = " ;^" + std::to_string(e.param) + " ";
      op = tmp.c_str();
      break;
    case Expr::Kind::AltLeft:
      tmp = " ;_" + std::to_string(e.param) + " ";
      op = tmp.c_str();
      break;
    default: break;
  }
  print_kid(*e.kids[0], p, spec, seen, out);
  out += op;
  print_kid(*e.kids[1], p + 1, spec, seen, out);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  std::set<std::string> seen;
  print(e, nullptr, seen, out);
  return out;
}

std::string to_literal(const IdentitySpec& spec) {
  std::string out;
  std::set<std::string> seen;
  print(*spec.lhs, &spec, seen, out);
  out += spec.mode == IdentitySpec::Mode::Inclusion ? " <= " : " == ";
  print(*spec.rhs, &spec, seen, out);
  return out;
}

std::optional<std::size_t> IdentitySpec::find_var(std::string_view n) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == n) return i;
  }
  return std::nullopt;
}

namespace {

void collect(const Expr& e, std::vector<std::string>& names) {
  if (e.kind == Expr::Kind::Var) {
    names.push_back(e.name);
    return;
  }
  if ((e.kind == Expr::Kind::AltLeft || e.kind == Expr::Kind::AltRight ||
       e.kind == Expr::Kind::Power) &&
      e.param < 1) {
    throw Error("spec: parameter must be at least 1");
  }
  for (const ExprPtr& k : e.kids) collect(*k, names);
}

}  // namespace

void IdentitySpec::validate() const {
  if (!lhs || !rhs) throw Error("spec: missing side");
  std::vector<std::string> names;
  collect(*lhs, names);
  collect(*rhs, names);
  for (const std::string& n : names) {
    if (!find_var(n)) throw Error("spec: variable '" + n + "' has no class");
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (std::find(names.begin(), names.end(), vars[i].name) == names.end()) {
      throw Error("spec: variable '" + vars[i].name + "' is declared but unused");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[j].name == vars[i].name) throw Error("spec: duplicate variable '" + vars[i].name + "'");
    }
  }
  if (!seeds.empty() && seeds.size() != vars.size()) throw Error("spec: seed list size mismatch");
}

IdentitySpec with_classes(IdentitySpec spec, const std::map<std::string, RelClass>& classes) {
  for (const auto& [name, cls] : classes) {
    auto i = spec.find_var(name);
    if (!i) throw Error("class override: spec has no variable '" + name + "'");
    spec.vars[*i].cls = cls;
  }
  return spec;
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  IdentitySpec parse() {
    IdentitySpec spec;
    spec_ = &spec;
    spec.lhs = expr();
    skip();
    if (starts("<=")) {
      spec.mode = IdentitySpec::Mode::Inclusion;
    } else if (starts("==")) {
      spec.mode = IdentitySpec::Mode::Equality;
    } else {
      fail("expected '<=' or '=='");
    }
    pos_ += 2;
    spec.rhs = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    spec.validate();
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("spec literal, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool starts(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a positive integer");
    int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (v < 1) {
      pos_ = start;
      fail("expected a positive integer");
    }
    return v;
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) fail("expected a relation variable or constant");
    return std::string(text_.substr(start, pos_ - start));
  }

  ExprPtr expr() {
    ExprPtr e = comp();
    while (peek('|')) {
      ++pos_;
      e = Expr::join(e, comp());
    }
    return e;
  }

  ExprPtr comp() {
    ExprPtr e = meet();
    while (peek(';')) {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        int m = integer();
        e = Expr::alt(e, meet(), m, Anchor::Right);
      } else if (pos_ < text_.size() && text_[pos_] == '_') {
        ++pos_;
        int m = integer();
        e = Expr::alt(e, meet(), m, Anchor::Left);
      } else {
        e = Expr::compose(e, meet());
      }
    }
    return e;
  }

  ExprPtr meet() {
    ExprPtr e = postfix();
    while (peek('&')) {
      ++pos_;
      e = Expr::meet(e, postfix());
    }
    return e;
  }

  ExprPtr postfix() {
    ExprPtr e = atom();
    while (peek('^')) {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '~') {
        e = Expr::converse(e);
      } else if (pos_ < text_.size() && text_[pos_] == '*') {
        e = Expr::star(e);
      } else {
        fail("expected '~' or '*' after '^'");
      }
      ++pos_;
    }
    return e;
  }

  ExprPtr atom() {
    if (peek('(')) {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    skip();
    const std::size_t at = pos_;
    std::string word = identifier();
    if (word == "id") return Expr::diagonal();
    if (word == "all") return Expr::full();
    if (word == "bar") {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return Expr::bar(e);
    }
    if (word == "pow") {
      expect('(');
      ExprPtr e = expr();
      expect(',');
      int h = integer();
      expect(')');
      return Expr::power(e, h);
    }
    std::optional<RelClass> cls;
    if (pos_ < text_.size() && text_[pos_] == ':') {
      cls = class_from_prefix(word);
      if (!cls) {
        pos_ = at;
        fail("unknown class prefix '" + word + "' (use cong, tol, adm, uadm, u2, ucong2)");
      }
      ++pos_;
      word = identifier();
      if (word == "id" || word == "all" || word == "bar" || word == "pow") {
        fail("'" + word + "' is reserved");
      }
    }
    auto i = spec_->find_var(word);
    if (cls) {
      if (i && spec_->vars[*i].cls != *cls) {
        pos_ = at;
        fail("variable '" + word + "' declared with two classes");
      }
      if (!i) spec_->vars.push_back({word, *cls});
    } else if (!i) {
      pos_ = at;
      fail("variable '" + word + "' needs a class prefix on its first occurrence");
    }
    return Expr::var(word);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  IdentitySpec* spec_ = nullptr;
};

}  // namespace

IdentitySpec parse_spec(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------- builtins

namespace {

using K = RelClass;
using E = Expr;

ExprPtr v(const char* n) { return E::var(n); }

IdentitySpec make_spec(std::string name, std::vector<Variable> vars, ExprPtr lhs, ExprPtr rhs,
                       IdentitySpec::Mode mode, std::vector<SeedRole> seeds) {
  IdentitySpec s;
  s.name = std::move(name);
  s.vars = std::move(vars);
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  s.mode = mode;
  s.seeds = std::move(seeds);
  s.validate();
  return s;
}

void need(bool ok, std::string_view name, const std::string& what) {
  if (!ok) throw Error("builtin " + std::string(name) + ": " + what);
}

const std::vector<std::string> kNames = {
    "cdist2", "cdist3", "modular2", "cor1",  "cor1p",  "cor1pp", "cor2",    "cor3",
    "cor4",   "cor4p",  "gen1",     "gen2",  "gen3",   "maj3",   "arith3",  "arith4",
    "baker4", "p12b1",  "p12b2",    "p12c2", "vrIncl", "malIncl", "malA"};

}  // namespace

std::vector<std::string> builtin_names() { return kNames; }

IdentitySpec builtin(std::string_view name, const BuiltinParams& p) {
  using Mode = IdentitySpec::Mode;
  using SR = SeedRole;
  const Mode inc = Mode::Inclusion;
  const Mode eq = Mode::Equality;
  const K theta_cls = p.weak ? K::Congruence : K::Tolerance;
  const K u_cls = p.weak ? K::UnionOfTwoCongruences : K::UAdmissible;
  auto Th = [] { return v("Theta"); };
  auto s = [] { return v("sigma"); };
  auto t = [] { return v("tau"); };
  auto u = [] { return v("upsilon"); };
  auto ThS = [&] { return E::meet(Th(), s()); };
  auto ThT = [&] { return E::meet(Th(), t()); };
  const std::string n(name);

  if (n == "cdist2") {
    need(p.h >= 1, n, "h must be >= 1");
    return make_spec("cdist2(h=" + std::to_string(p.h) + ")", {{"Theta", theta_cls}, {"sigma", u_cls}},
                     E::meet(Th(), E::compose(s(), s())), E::power(ThS(), p.h), inc,
                     {SR::XZ, SR::XYOrYZ});
  }
  if (n == "cdist3") {
    need(p.k >= 1, n, "k must be >= 1");
    return make_spec("cdist3(k=" + std::to_string(p.k) + ")",
                     {{"alpha", K::Congruence}, {"sigma", K::UnionOfTwoCongruences}},
                     E::meet(v("alpha"), E::compose(s(), s())),
                     E::power(E::meet(v("alpha"), s()), p.k), inc, {SR::XZ, SR::XYOrYZ});
  }
  if (n == "modular2") {
    need(p.k >= 1, n, "k must be >= 1");
    auto R = [] { return v("R"); };
    return make_spec("modular2(k=" + std::to_string(p.k) + ")",
                     {{"Theta", theta_cls}, {"R", K::ReflexiveAdmissible}},
                     E::meet(Th(), E::compose(R(), R())), E::power(E::meet(Th(), R()), p.k), inc,
                     {SR::XZ, SR::XYAndYZ});
  }
  const std::vector<Variable> ts = {{"Theta", theta_cls}, {"sigma", u_cls}};
  const std::vector<Variable> tst = {{"Theta", theta_cls}, {"sigma", u_cls}, {"tau", u_cls}};
  const std::string suffix = p.equality ? "(eq)" : "";
  if (n == "cor1") {
    if (p.equality) {
      return make_spec(n + suffix, ts, E::star(E::meet(Th(), E::compose(s(), s()))), E::star(ThS()),
                       eq, {});
    }
    return make_spec(n, ts, E::meet(Th(), E::compose(s(), s())), E::star(ThS()), inc,
                     {SR::XZ, SR::XYOrYZ});
  }
  if (n == "cor1p") {
    need(!p.equality, n, "no equality form");
    return make_spec(n, ts, E::meet(Th(), E::compose(s(), s())),
                     E::star(E::compose(ThS(), E::meet(Th(), E::converse(s())))), inc,
                     {SR::XZ, SR::XYOrYZ});
  }
  if (n == "cor1pp") {
    auto rhs = E::star(E::compose(ThS(), E::meet(Th(), E::converse(s()))));
    auto lhs = E::meet(Th(), E::compose(s(), E::converse(s())));
    if (p.equality) return make_spec(n + suffix, ts, E::star(lhs), rhs, eq, {});
    return make_spec(n, ts, lhs, rhs, inc, {SR::XZ, SR::XYOrZY});
  }
  if (n == "cor2") {
    auto lhs = E::meet(Th(), E::star(s()));
    if (p.equality) return make_spec(n + suffix, ts, E::star(lhs), E::star(ThS()), eq, {});
    return make_spec(n, ts, lhs, E::star(ThS()), inc, {SR::XZ, SR::XYOrYZ});
  }
  if (n == "cor3") {
    auto lhs = E::meet(Th(), E::compose(s(), t()));
    auto rhs = E::star(E::compose(ThS(), ThT()));
    if (p.equality) return make_spec(n + suffix, tst, E::star(lhs), rhs, eq, {});
    return make_spec(n, tst, lhs, rhs, inc, {SR::XZ, SR::XY, SR::YZ});
  }
  if (n == "cor4") {
    auto lhs = E::meet(Th(), E::star(E::compose(s(), t())));
    auto rhs = E::star(E::compose(ThS(), ThT()));
    if (p.equality) return make_spec(n + suffix, tst, E::star(lhs), rhs, eq, {});
    return make_spec(n, tst, lhs, rhs, inc, {SR::XZ, SR::XY, SR::YZ});
  }
  if (n == "cor4p") {
    auto rhs = E::star(compose_chain({ThS(), ThT(), E::meet(Th(), E::converse(s())),
                                      E::meet(Th(), E::converse(t()))}));
    if (p.equality) {
      auto inner = compose_chain({s(), t(), E::converse(s()), E::converse(t())});
      return make_spec(n + suffix, tst, E::star(E::meet(Th(), E::star(inner))), rhs, eq, {});
    }
    return make_spec(n, tst, E::meet(Th(), E::star(E::compose(s(), t()))), rhs, inc,
                     {SR::XZ, SR::XY, SR::YZ});
  }
  const K gen_cls = p.weak ? K::U2Admissible : K::UAdmissible;
  const std::vector<Variable> stu = {{"sigma", gen_cls}, {"tau", gen_cls}, {"upsilon", gen_cls}};
  const std::vector<Variable> st = {{"sigma", gen_cls}, {"tau", gen_cls}};
  auto sT = [&] { return E::meet(s(), t()); };
  auto sU = [&] { return E::meet(s(), u()); };
  auto s_tu = [&] { return E::meet(s(), E::compose(t(), u())); };
  const std::vector<SeedRole> stu_seeds = {SR::XZ, SR::XY, SR::YZ};
  if (n == "gen1") {
    auto rhs = E::star(E::compose(sT(), sU()));
    if (p.equality) return make_spec(n + suffix, stu, E::star(s_tu()), rhs, eq, {});
    return make_spec(n, stu, s_tu(), rhs, inc, stu_seeds);
  }
  if (n == "gen2") {
    auto lhs = E::meet(s(), E::compose(t(), t()));
    if (p.equality) return make_spec(n + suffix, st, E::star(lhs), E::star(sT()), eq, {});
    return make_spec(n, st, lhs, E::star(sT()), inc, {SR::XZ, SR::XYOrYZ});
  }
  if (n == "gen3") {
    auto lhs = E::meet(E::star(s()), E::star(t()));
    if (p.equality) return make_spec(n + suffix, st, E::star(lhs), E::star(sT()), eq, {});
    return make_spec(n, st, lhs, E::star(sT()), eq, {});
  }
  const K maj_cls = p.weak ? K::Tolerance : K::UAdmissible;
  const std::vector<Variable> maj_vars = {{"sigma", maj_cls}, {"tau", maj_cls}, {"upsilon", maj_cls}};
  if (n == "maj3") {
    return make_spec(n, maj_vars, s_tu(), E::compose(sT(), sU()), inc, stu_seeds);
  }
  if (n == "arith3") {
    return make_spec(n, maj_vars, s_tu(), E::compose(sU(), sT()), inc, stu_seeds);
  }
  if (n == "arith4") {
    const K c = p.weak ? K::Tolerance : K::ReflexiveAdmissible;
    auto T = [] { return v("T"); };
    return make_spec(n, {{"T", c}, {"R", c}, {"S", c}}, E::meet(T(), E::compose(v("R"), v("S"))),
                     E::compose(E::meet(T(), v("R")), E::meet(T(), v("S"))), eq, {});
  }
  if (n == "baker4") {
    const K c = p.weak ? K::U2Admissible : K::UAdmissible;
    return make_spec(n, {{"sigma", c}, {"tau", c}, {"upsilon", c}}, s_tu(),
                     compose_chain({sT(), sU(), sT(), sU()}), inc, stu_seeds);
  }
  if (n == "p12b1") {
    need(p.m >= 1 && p.n >= 2, n, "needs m >= 1 and n >= 2");
    return make_spec("p12b1(m=" + std::to_string(p.m) + ",n=" + std::to_string(p.n) + ")", ts,
                     E::meet(Th(), E::power(s(), p.m)), E::power(ThS(), p.m * p.n - p.m), inc,
                     p.m == 2 ? std::vector<SeedRole>{SR::XZ, SR::XYOrYZ} : std::vector<SeedRole>{});
  }
  if (n == "p12b2") {
    need(p.m >= 2 && p.m % 2 == 0 && p.n >= 2, n, "needs even m and n >= 2");
    return make_spec("p12b2(m=" + std::to_string(p.m) + ",n=" + std::to_string(p.n) + ")", tst,
                     E::meet(Th(), E::alt(s(), t(), p.m, Anchor::Right)),
                     E::alt(ThS(), ThT(), p.m * p.n - p.m, Anchor::Right), inc,
                     p.m == 2 ? std::vector<SeedRole>{SR::XZ, SR::XY, SR::YZ}
                              : std::vector<SeedRole>{});
  }
  if (n == "p12c2") {
    need(p.m >= 1 && p.k >= 2, n, "needs m >= 1 and k >= 2");
    auto left = E::alt(ThS(), ThT(), p.m, Anchor::Right);
    auto right = E::alt(E::meet(Th(), E::converse(t())), E::meet(Th(), E::converse(s())), p.m,
                        Anchor::Left);
    return make_spec("p12c2(m=" + std::to_string(p.m) + ",k=" + std::to_string(p.k) + ")", tst,
                     E::meet(Th(), E::alt(s(), t(), p.m, Anchor::Right)),
                     E::alt(left, right, p.k - 1, Anchor::Right), inc,
                     p.m == 2 ? std::vector<SeedRole>{SR::XZ, SR::XY, SR::YZ}
                              : std::vector<SeedRole>{});
  }
  if (n == "vrIncl") {
    need(p.h >= 1, n, "h must be >= 1");
    const K c = p.weak ? K::ReflexiveAdmissible : K::UAdmissible;
    return make_spec("vrIncl(h=" + std::to_string(p.h) + ")",
                     {{"sigma", c}, {"tau", c}, {"upsilon", c}}, s_tu(),
                     E::alt(sT(), sU(), p.h, Anchor::Right), inc, stu_seeds);
  }
  if (n == "malIncl") {
    need(p.h >= 1, n, "h must be >= 1");
    return make_spec("malIncl(h=" + std::to_string(p.h) + ")",
                     {{"alpha", K::Congruence}, {"sigma", K::U2Admissible}},
                     E::meet(v("alpha"), E::compose(s(), s())),
                     E::power(E::meet(v("alpha"), s()), p.h), inc, {SR::XZ, SR::XYOrYZ});
  }
  if (n == "malA") {
    std::vector<int> f = p.f.empty() ? std::vector<int>{1, 2} : p.f;
    std::vector<ExprPtr> factors;
    std::string label;
    for (int x : f) {
      need(x == 1 || x == 2, n, "f must map into {1,2}");
      factors.push_back(E::meet(v("alpha"), v(x == 1 ? "R1" : "R2")));
      label += (label.empty() ? "" : ",") + std::to_string(x);
    }
    IdentitySpec spec;
    spec.name = "malA(f=" + label + ")";
    spec.vars = {{"alpha", K::Congruence}, {"R1", K::ReflexiveAdmissible},
                 {"R2", K::ReflexiveAdmissible}};
    spec.lhs = E::meet(v("alpha"), E::compose(v("R1"), v("R2")));
    spec.rhs = compose_chain(factors);
    spec.seeds = {SR::XZ, SR::XY, SR::YZ};
    spec.validate();
    return spec;
  }
  throw Error("unknown builtin identity '" + n + "'");
}

IdentitySpec resolve_spec(std::string_view s, const BuiltinParams& params) {
  if (s.find("<=") != std::string_view::npos || s.find("==") != std::string_view::npos) {
    return parse_spec(s);
  }
  return builtin(s, params);
}

}  // namespace relkit
