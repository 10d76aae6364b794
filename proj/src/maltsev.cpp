#include "relkit/maltsev.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>

namespace relkit {

std::vector<std::string> replay(const FiniteAlgebra& algebra, const TermSystem& system) {
  std::vector<std::string> failed;
  for (const Equation& e : system.certificate) {
    if (!identity_holds(algebra, e.lhs, e.rhs)) failed.push_back(e.label);
  }
  return failed;
}

namespace {

const Term X = Term::variable(0);
const Term Y = Term::variable(1);
const Term Z = Term::variable(2);
const Term W = Term::variable(3);

/// t(a, b, c) for a ternary witness.
Term at3(const Term& t, const Term& a, const Term& b, const Term& c) {
  return t.substitute({a, b, c});
}
Term at4(const Term& t, const Term& a, const Term& b, const Term& c, const Term& d) {
  return t.substitute({a, b, c, d});
}

Equation eq(Term lhs, Term rhs, std::string label) {
  return Equation{std::move(lhs), std::move(rhs), std::move(label)};
}

std::string idx_name(const char* base, int i) { return base + std::to_string(i); }

const char* slot_name(int slot) { return slot == 0 ? "x" : slot == 1 ? "y" : "z"; }
const Term& slot_term(int slot) { return slot == 0 ? X : slot == 1 ? Y : Z; }

/// Ternary clone plus restriction helpers.
struct Ternary {
  Clone clone;
  std::size_t n;

  Ternary(const FiniteAlgebra& algebra, const Caps& caps)
      : clone(generate_clone(algebra, 3, caps.clone_cap(3))), n(algebra.size()) {}

  std::vector<std::uint8_t> restrict(std::size_t id, std::vector<int> pattern, int m) const {
    return substitute_table(clone.table(id), n, pattern, m);
  }
  std::vector<std::uint8_t> proj(int m, int i) const { return projection_table(n, m, i); }
};

SearchResult incomplete_note(SearchResult r, const Clone& c, int arity) {
  if (!c.complete()) {
    r.conclusive = false;
    r.note = std::to_string(arity) + "-ary clone stopped at the cap of " + std::to_string(c.size()) +
             " elements";
  }
  return r;
}

/// Layered reachability from `from` to `to` through rel[0], rel[1], ...;
/// returns the chain using the least element at each step when read
/// backwards from `to`.
std::optional<std::vector<Element>> layered_chain(const std::vector<const BinRel*>& rel, Element from,
                                                  Element to) {
  const std::size_t n = rel.front()->universe();
  std::vector<std::vector<bool>> layer(rel.size() + 1, std::vector<bool>(n, false));
  layer[0][from] = true;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!layer[i][a]) continue;
      rel[i]->for_each_in_row(static_cast<Element>(a), [&](Element b) { layer[i + 1][b] = true; });
    }
  }
  if (!layer[rel.size()][to]) return std::nullopt;
  std::vector<Element> chain(rel.size() + 1);
  chain[rel.size()] = to;
  for (std::size_t i = rel.size(); i-- > 0;) {
    for (std::size_t a = 0; a < n; ++a) {
      if (layer[i][a] && rel[i]->contains(static_cast<Element>(a), chain[i + 1])) {
        chain[i] = static_cast<Element>(a);
        break;
      }
    }
  }
  return chain;
}

/// For each 4-ary clone element, the ternary ids of u(x,y,z;x), u(x,y,z;y),
/// u(x,y,z;z), or -1 when the table is not in the ternary clone.
struct Quaternary {
  Clone clone;
  std::vector<std::array<long, 3>> slots;
  std::vector<std::vector<std::uint8_t>> xyx_slot;  // u(x,y,x;x), u(x,y,x;y) as binary tables

  Quaternary(const FiniteAlgebra& algebra, const Caps& caps, const Clone& c3)
      : clone(generate_clone(algebra, 4, caps.clone_cap(4))) {
    const std::size_t n = algebra.size();
    slots.resize(clone.size());
    for (std::size_t id = 0; id < clone.size(); ++id) {
      for (int w = 0; w < 3; ++w) {
        std::vector<int> pattern{0, 1, 2, w};
        auto t = substitute_table(clone.table(id), n, pattern, 3);
        auto found = c3.find(t);
        slots[id][static_cast<std::size_t>(w)] = found ? static_cast<long>(*found) : -1;
      }
    }
  }
};

Term witness_or_projection(const Clone& c, std::size_t id) { return c.witness(id); }

}  // namespace

std::vector<Equation> schema_certificate(const TermSystem& sys) {
  auto get = [&](const std::string& name, int arity) -> const Term& {
    for (const NamedTerm& t : sys.terms) {
      if (t.name != name) continue;
      if (t.arity != arity) throw Error("certificate: term " + name + " must have arity " + std::to_string(arity));
      if (t.term.variable_count() > arity) throw Error("certificate: term " + name + " uses too many variables");
      return t.term;
    }
    throw Error("certificate: missing term " + name);
  };
  const int h = sys.length;
  const std::string H = std::to_string(h);
  std::vector<Equation> out;
  if (sys.schema == "jonsson" || sys.schema == "directed") {
    if (h < 1) throw Error("certificate: length must be >= 1");
    const bool directed = sys.schema == "directed";
    const std::string p = directed ? "d" : "j";
    auto j = [&](int i) -> const Term& { return get(p + std::to_string(i), 3); };
    out.push_back(eq(X, j(0), "x = " + p + "0(x,y,z)"));
    out.push_back(eq(j(h), Z, p + H + "(x,y,z) = z"));
    for (int i = 0; i <= h; ++i) {
      out.push_back(eq(X, at3(j(i), X, Y, X), "x = " + p + std::to_string(i) + "(x,y,x)"));
    }
    for (int i = 0; i < h; ++i) {
      const std::string a = p + std::to_string(i);
      const std::string b = p + std::to_string(i + 1);
      if (directed) {
        out.push_back(eq(at3(j(i), X, Z, Z), at3(j(i + 1), X, X, Z), a + "(x,z,z) = " + b + "(x,x,z)"));
      } else if (i % 2 == 0) {
        out.push_back(eq(at3(j(i), X, X, Z), at3(j(i + 1), X, X, Z), a + "(x,x,z) = " + b + "(x,x,z)"));
      } else {
        out.push_back(eq(at3(j(i), X, Z, Z), at3(j(i + 1), X, Z, Z), a + "(x,z,z) = " + b + "(x,z,z)"));
      }
    }
  } else if (sys.schema == "majority") {
    const Term& m = get("m", 3);
    out = {eq(at3(m, X, X, Y), X, "m(x,x,y) = x"), eq(at3(m, X, Y, X), X, "m(x,y,x) = x"),
           eq(at3(m, Y, X, X), X, "m(y,x,x) = x")};
  } else if (sys.schema == "pixley") {
    const Term& p = get("p", 3);
    out = {eq(at3(p, X, Y, Y), X, "p(x,y,y) = x"), eq(at3(p, X, Y, X), X, "p(x,y,x) = x"),
           eq(at3(p, X, X, Y), Y, "p(x,x,y) = y")};
  } else if (sys.schema == "vr") {
    if (h < 1) throw Error("certificate: length must be >= 1");
    auto t = [&](int i) -> const Term& { return get("t" + std::to_string(i), 3); };
    out.push_back(eq(X, t(0), "x = t0(x,y,z)"));
    out.push_back(eq(t(h), Z, "t" + H + "(x,y,z) = z"));
    for (int i = 0; i < h; ++i) {
      const std::string I = std::to_string(i);
      const std::string J = std::to_string(i + 1);
      const Term& u = get("u" + I, 4);
      const Term& s = get("s" + I, 4);
      // s_i moves along tau (x to y) at even steps and upsilon (y to z) at odd ones.
      const int sa = i % 2 == 0 ? 0 : 1;
      const int sb = i % 2 == 0 ? 1 : 2;
      out.push_back(eq(t(i), at4(u, X, Y, Z, X), "t" + I + "(x,y,z) = u" + I + "(x,y,z;x)"));
      out.push_back(eq(at4(u, X, Y, Z, Z), t(i + 1), "u" + I + "(x,y,z;z) = t" + J + "(x,y,z)"));
      out.push_back(eq(t(i), at4(s, X, Y, Z, slot_term(sa)),
                       "t" + I + "(x,y,z) = s" + I + "(x,y,z;" + slot_name(sa) + ")"));
      out.push_back(eq(at4(s, X, Y, Z, slot_term(sb)), t(i + 1),
                       "s" + I + "(x,y,z;" + slot_name(sb) + ") = t" + J + "(x,y,z)"));
    }
  } else if (sys.schema == "mal") {
    if (h < 1 || sys.f.size() != static_cast<std::size_t>(h)) throw Error("certificate: f must have length h");
    for (int fi : sys.f) {
      if (fi != 1 && fi != 2) throw Error("certificate: f must map into {1,2}");
    }
    // w_1 = x, w_2 = y, w'_1 = y, w'_2 = z, as argument slots.
    auto w = [&](int i) { return sys.f[static_cast<std::size_t>(i)] == 1 ? 0 : 1; };
    auto wp = [&](int i) { return sys.f[static_cast<std::size_t>(i)] == 1 ? 1 : 2; };
    auto s = [&](int i) -> const Term& { return get("s" + std::to_string(i), 4); };
    auto S = [&](int i, int slot) { return at4(s(i), X, Y, Z, slot_term(slot)); };
    out.push_back(eq(X, S(0, w(0)), std::string("x = s0(x,y,z;") + slot_name(w(0)) + ")"));
    out.push_back(eq(S(h - 1, wp(h - 1)), Z,
                     "s" + std::to_string(h - 1) + "(x,y,z;" + slot_name(wp(h - 1)) + ") = z"));
    for (int i = 0; i + 1 < h; ++i) {
      const std::string I = std::to_string(i);
      const std::string J = std::to_string(i + 1);
      out.push_back(eq(S(i, wp(i)), S(i + 1, w(i + 1)),
                       "s" + I + "(x,y,z;" + slot_name(wp(i)) + ") = s" + J + "(x,y,z;" +
                           slot_name(w(i + 1)) + ")"));
      // z is replaced by x, so the slot holding w'_{f(i)} becomes y or x.
      const Term& last = wp(i) == 1 ? Y : X;
      out.push_back(eq(X, at4(s(i + 1), X, Y, X, last),
                       "x = s" + J + "(x,y,x;" + slot_name(wp(i)) + ")"));
    }
  } else {
    throw Error("certificate: unknown schema '" + sys.schema + "'");
  }
  return out;
}

SearchResult find_jonsson(const FiniteAlgebra& algebra, int max_k, const SearchOptions& o) {
  Ternary T(algebra, o.caps);
  const Clone& c = T.clone;
  const auto px = T.proj(3, 0);
  std::vector<std::size_t> cands;
  for (std::size_t id = 0; id < c.size(); ++id) {
    if (T.restrict(id, {0, 1, 0}, 3) == px) cands.push_back(id);
  }
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> by_xxz;
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> by_xzz;
  std::map<std::size_t, std::vector<std::uint8_t>> xxz;
  std::map<std::size_t, std::vector<std::uint8_t>> xzz;
  for (std::size_t id : cands) {
    xxz[id] = T.restrict(id, {0, 0, 2}, 3);
    xzz[id] = T.restrict(id, {0, 2, 2}, 3);
    by_xxz[xxz[id]].push_back(id);
    by_xzz[xzz[id]].push_back(id);
  }
  const std::size_t x = c.generator(0);
  const std::size_t z = c.generator(2);
  // BFS over (element, parity of its index); even steps keep j(x,x,z),
  // odd steps keep j(x,z,z).
  std::map<std::pair<std::size_t, int>, std::pair<std::size_t, int>> parent;
  std::map<std::pair<std::size_t, int>, int> dist;
  std::deque<std::pair<std::size_t, int>> queue;
  dist[{x, 0}] = 0;
  queue.push_back({x, 0});
  std::optional<std::pair<std::size_t, int>> goal;
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    const int d = dist[cur];
    if (cur.first == z && d > 0) {
      goal = cur;
      break;
    }
    if (d >= max_k) continue;
    const auto& group = cur.second == 0 ? by_xxz[xxz[cur.first]] : by_xzz[xzz[cur.first]];
    for (std::size_t b : group) {
      std::pair<std::size_t, int> nxt{b, 1 - cur.second};
      if (dist.contains(nxt)) continue;
      dist[nxt] = d + 1;
      parent[nxt] = cur;
      queue.push_back(nxt);
    }
  }
  SearchResult out;
  if (!goal) return incomplete_note(out, c, 3);
  std::vector<std::size_t> chain;
  for (auto s = *goal;; s = parent[s]) {
    chain.push_back(s.first);
    if (s.first == x && s.second == 0 && dist[s] == 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  TermSystem sys;
  sys.schema = "jonsson";
  sys.length = static_cast<int>(chain.size()) - 1;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    sys.terms.push_back({idx_name("j", static_cast<int>(i)), witness_or_projection(c, chain[i]), 3});
  }
  sys.certificate = schema_certificate(sys);
  out.system = std::move(sys);
  return out;
}

SearchResult find_directed_jonsson(const FiniteAlgebra& algebra, int max_n, const SearchOptions& o) {
  Ternary T(algebra, o.caps);
  const Clone& c = T.clone;
  const auto px = T.proj(3, 0);
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> by_xxz;
  std::map<std::size_t, std::vector<std::uint8_t>> xzz;
  for (std::size_t id = 0; id < c.size(); ++id) {
    if (T.restrict(id, {0, 1, 0}, 3) != px) continue;
    by_xxz[T.restrict(id, {0, 0, 2}, 3)].push_back(id);
    xzz[id] = T.restrict(id, {0, 2, 2}, 3);
  }
  const std::size_t x = c.generator(0);
  const std::size_t z = c.generator(2);
  std::map<std::size_t, std::size_t> parent;
  std::map<std::size_t, int> dist;
  std::deque<std::size_t> queue{x};
  dist[x] = 0;
  bool reached = false;
  while (!queue.empty() && !reached) {
    const std::size_t a = queue.front();
    queue.pop_front();
    if (dist[a] >= max_n) continue;
    // The next term's (x,x,z) restriction is this term's (x,z,z) one.
    for (std::size_t b : by_xxz[xzz[a]]) {
      if (dist.contains(b)) continue;
      dist[b] = dist[a] + 1;
      parent[b] = a;
      if (b == z) {
        reached = true;
        break;
      }
      queue.push_back(b);
    }
  }
  SearchResult out;
  if (!reached) return incomplete_note(out, c, 3);
  std::vector<std::size_t> chain{z};
  while (chain.back() != x) chain.push_back(parent[chain.back()]);
  std::reverse(chain.begin(), chain.end());
  TermSystem sys;
  sys.schema = "directed";
  sys.length = static_cast<int>(chain.size()) - 1;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    sys.terms.push_back({idx_name("d", static_cast<int>(i)), c.witness(chain[i]), 3});
  }
  sys.certificate = schema_certificate(sys);
  out.system = std::move(sys);
  return out;
}

SearchResult find_majority(const FiniteAlgebra& algebra, const SearchOptions& o) {
  Ternary T(algebra, o.caps);
  const auto p0 = T.proj(2, 0);
  SearchResult out;
  for (std::size_t id = 0; id < T.clone.size(); ++id) {
    if (T.restrict(id, {0, 0, 1}, 2) == p0 && T.restrict(id, {0, 1, 0}, 2) == p0 &&
        T.restrict(id, {1, 0, 0}, 2) == p0) {
      TermSystem sys;
      sys.schema = "majority";
      sys.terms.push_back({"m", T.clone.witness(id), 3});
      sys.certificate = schema_certificate(sys);
      out.system = std::move(sys);
      return out;
    }
  }
  return incomplete_note(out, T.clone, 3);
}

SearchResult find_pixley(const FiniteAlgebra& algebra, const SearchOptions& o) {
  Ternary T(algebra, o.caps);
  const auto p0 = T.proj(2, 0);
  const auto p1 = T.proj(2, 1);
  SearchResult out;
  for (std::size_t id = 0; id < T.clone.size(); ++id) {
    if (T.restrict(id, {0, 1, 1}, 2) == p0 && T.restrict(id, {0, 1, 0}, 2) == p0 &&
        T.restrict(id, {0, 0, 1}, 2) == p1) {
      TermSystem sys;
      sys.schema = "pixley";
      sys.terms.push_back({"p", T.clone.witness(id), 3});
      sys.certificate = schema_certificate(sys);
      out.system = std::move(sys);
      return out;
    }
  }
  return incomplete_note(out, T.clone, 3);
}

namespace {

/// First 4-ary element u with u(x,y,z;slot_a) = a and u(x,y,z;slot_b) = b.
std::optional<std::size_t> find_quaternary(const Quaternary& Q, int slot_a, std::size_t a, int slot_b,
                                           std::size_t b) {
  for (std::size_t id = 0; id < Q.clone.size(); ++id) {
    const auto& s = Q.slots[id];
    if (s[static_cast<std::size_t>(slot_a)] == static_cast<long>(a) &&
        s[static_cast<std::size_t>(slot_b)] == static_cast<long>(b)) {
      return id;
    }
  }
  return std::nullopt;
}

}  // namespace

SearchResult find_vr(const FiniteAlgebra& algebra, int h, const SearchOptions& o) {
  if (h < 1) throw Error("find_vr: h must be >= 1");
  Ternary T(algebra, o.caps);
  SearchResult out;
  if (!T.clone.complete()) return incomplete_note(out, T.clone, 3);
  FreeAlgebra F = free_algebra(T.clone, o.caps);
  const BinRel sigma = F.adm(F.x, F.z);
  const BinRel st = sigma & F.adm(F.x, F.y);
  const BinRel su = sigma & F.adm(F.y, F.z);
  std::vector<const BinRel*> steps;
  for (int i = 0; i < h; ++i) steps.push_back(i % 2 == 0 ? &st : &su);
  auto chain = layered_chain(steps, F.x, F.z);
  if (!chain) return out;

  Quaternary Q(algebra, o.caps, T.clone);
  TermSystem sys;
  sys.schema = "vr";
  sys.length = h;
  for (int i = 0; i <= h; ++i) {
    sys.terms.push_back({idx_name("t", i), T.clone.witness((*chain)[static_cast<std::size_t>(i)]), 3});
  }
  for (int i = 0; i < h; ++i) {
    const std::size_t a = (*chain)[static_cast<std::size_t>(i)];
    const std::size_t b = (*chain)[static_cast<std::size_t>(i) + 1];
    auto u = find_quaternary(Q, 0, a, 2, b);
    auto s = i % 2 == 0 ? find_quaternary(Q, 0, a, 1, b) : find_quaternary(Q, 1, a, 2, b);
    if (!u || !s) {
      out.conclusive = Q.clone.complete();
      out.note = "no 4-ary term for step " + std::to_string(i);
      if (!Q.clone.complete()) out.note += " (4-ary clone stopped at its cap)";
      return out;
    }
    sys.terms.push_back({idx_name("u", i), Q.clone.witness(*u), 4});
    sys.terms.push_back({idx_name("s", i), Q.clone.witness(*s), 4});
  }
  sys.certificate = schema_certificate(sys);
  out.system = std::move(sys);
  return out;
}

SearchResult find_mal(const FiniteAlgebra& algebra, int h, const SearchOptions& o) {
  if (h < 1 || h > 20) throw Error("find_mal: h must be in 1..20");
  Ternary T(algebra, o.caps);
  SearchResult out;
  if (!T.clone.complete()) return incomplete_note(out, T.clone, 3);
  FreeAlgebra F = free_algebra(T.clone, o.caps);
  const BinRel alpha = F.cg(F.x, F.z);
  const BinRel aR[2] = {alpha & F.adm(F.x, F.y), alpha & F.adm(F.y, F.z)};
  std::optional<Quaternary> Q;
  const auto p0 = projection_table(algebra.size(), 2, 0);
  // w_1 = x, w_2 = y, w'_1 = y, w'_2 = z, as argument slots.
  auto w = [](int f) { return f == 1 ? 0 : 1; };
  auto wp = [](int f) { return f == 1 ? 1 : 2; };
  for (std::uint32_t code = 0; code < (1u << h); ++code) {
    std::vector<int> f(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) f[static_cast<std::size_t>(i)] = ((code >> (h - 1 - i)) & 1u) ? 2 : 1;
    std::vector<const BinRel*> steps;
    for (int fi : f) steps.push_back(&aR[fi - 1]);
    auto chain = layered_chain(steps, F.x, F.z);
    if (!chain) continue;
    if (!Q) Q.emplace(algebra, o.caps, T.clone);
    std::vector<std::size_t> s_ids;
    for (int i = 0; i < h; ++i) {
      const int fi = f[static_cast<std::size_t>(i)];
      std::optional<std::size_t> pick;
      for (std::size_t id = 0; id < Q->clone.size() && !pick; ++id) {
        const auto& sl = Q->slots[id];
        if (sl[static_cast<std::size_t>(w(fi))] != static_cast<long>((*chain)[static_cast<std::size_t>(i)]) ||
            sl[static_cast<std::size_t>(wp(fi))] != static_cast<long>((*chain)[static_cast<std::size_t>(i) + 1])) {
          continue;
        }
        if (i > 0) {
          // x = s_i(x,y,x; w'_{f(i-1)})
          std::vector<int> pattern{0, 1, 0, wp(f[static_cast<std::size_t>(i) - 1]) == 1 ? 1 : 0};
          if (substitute_table(Q->clone.table(id), algebra.size(), pattern, 2) != p0) continue;
        }
        pick = id;
      }
      if (!pick) break;
      s_ids.push_back(*pick);
    }
    if (s_ids.size() != static_cast<std::size_t>(h)) {
      out.note = "chain found for f but 4-ary extraction failed";
      continue;
    }
    TermSystem sys;
    sys.schema = "mal";
    sys.length = h;
    sys.f = f;
    for (int i = 0; i <= h; ++i) {
      sys.terms.push_back({idx_name("t", i), T.clone.witness((*chain)[static_cast<std::size_t>(i)]), 3});
    }
    for (int i = 0; i < h; ++i) {
      sys.terms.push_back({idx_name("s", i), Q->clone.witness(s_ids[static_cast<std::size_t>(i)]), 4});
    }
    sys.certificate = schema_certificate(sys);
    out.system = std::move(sys);
    out.note.clear();
    return out;
  }
  if (Q && !Q->clone.complete()) {
    out.conclusive = false;
    out.note = "4-ary clone stopped at its cap";
  }
  return out;
}

const char* to_string(Dichotomy::Side s) noexcept {
  switch (s) {
    case Dichotomy::Side::Left: return "left";
    case Dichotomy::Side::Right: return "right";
    case Dichotomy::Side::Neither: return "neither";
  }
  return "?";
}

Dichotomy slmore_dichotomy(const FiniteAlgebra& algebra, int k, const Caps& caps) {
  if (k < 1) throw Error("slmore_dichotomy: k must be >= 1");
  Clone c = generate_clone(algebra, 3, caps.clone_cap(3));
  Dichotomy out;
  if (!c.complete()) {
    out.conclusive = false;
    return out;
  }
  FreeAlgebra F = free_algebra(c, caps);
  const BinRel alpha = F.cg(F.x, F.z);
  const BinRel ab = alpha & F.cg(F.x, F.y);
  const BinRel ag = alpha & F.cg(F.y, F.z);
  out.left = compose_alternating(ab, ag, k, Anchor::Right).contains(F.x, F.z);
  out.right = compose_alternating(ag, ab, k, Anchor::Right).contains(F.x, F.z);
  out.side = out.left ? Dichotomy::Side::Left
                      : out.right ? Dichotomy::Side::Right : Dichotomy::Side::Neither;
  return out;
}

int variation_count(const std::vector<int>& f) {
  int v = 0;
  for (std::size_t i = 1; i < f.size(); ++i) v += f[i] != f[i - 1];
  return v;
}

MalExperiment mal_implication_experiment(const FiniteAlgebra& algebra, const std::vector<int>& f,
                                         const std::vector<int>& g, const CheckOptions& options) {
  MalExperiment out;
  out.f = f;
  out.g = g;
  BuiltinParams pf;
  pf.f = f;
  BuiltinParams pg;
  pg.f = g;
  out.f_status = check_for_all(algebra, builtin("malA", pf), options).status;
  out.g_status = check_for_all(algebra, builtin("malA", pg), options).status;
  const bool fh = out.f_status == VerdictStatus::Holds;
  const bool gh = out.g_status == VerdictStatus::Holds;
  const bool fr = out.f_status == VerdictStatus::Refuted;
  const bool gr = out.g_status == VerdictStatus::Refuted;
  if (fh && gh) {
    out.observation = "both hold";
  } else if (fr && gr) {
    out.observation = "both refuted";
  } else if (fh && gr) {
    out.observation = "f holds, g refuted: f does not imply g here";
  } else if (fr && gh) {
    out.observation = "g holds, f refuted: g does not imply f here";
  } else {
    out.observation = "inconclusive (truncated coverage)";
  }
  return out;
}

// -------------------------------------------------------------- expansions

namespace {

ExprPtr unfold(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Star: throw Error("expansion: transitive closure is not allowed");
    case Expr::Kind::Join: throw Error("expansion: union is not allowed");
    case Expr::Kind::Bar: throw Error("expansion: bar is not allowed");
    case Expr::Kind::Var:
    case Expr::Kind::Diagonal:
    case Expr::Kind::Full: return e;
    case Expr::Kind::Converse: return Expr::converse(unfold(e->kids[0]));
    case Expr::Kind::Meet: return Expr::meet(unfold(e->kids[0]), unfold(e->kids[1]));
    case Expr::Kind::Compose: return Expr::compose(unfold(e->kids[0]), unfold(e->kids[1]));
    case Expr::Kind::Power: {
      ExprPtr r = unfold(e->kids[0]);
      return compose_chain(std::vector<ExprPtr>(static_cast<std::size_t>(e->param), r));
    }
    case Expr::Kind::AltRight:
    case Expr::Kind::AltLeft: {
      ExprPtr s = unfold(e->kids[0]);
      ExprPtr t = unfold(e->kids[1]);
      if (e->kind == Expr::Kind::AltLeft && e->param % 2 == 1) std::swap(s, t);
      std::vector<ExprPtr> f;
      for (int i = 0; i < e->param; ++i) f.push_back(i % 2 == 0 ? s : t);
      return compose_chain(f);
    }
  }
  throw Error("unreachable expression kind");
}

void occurrences(const Expr& e, const std::map<std::string, int>& is_union, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Var) {
    if (is_union.contains(e.name)) out.push_back(e.name);
    return;
  }
  for (const auto& k : e.kids) occurrences(*k, is_union, out);
}

/// Rebuilds e, renaming union-variable occurrences in order from `names`.
ExprPtr rename(const ExprPtr& e, const std::vector<std::string>& names, std::size_t& next) {
  if (e->kind == Expr::Kind::Var) {
    const std::string& n = names.at(next++);
    return n.empty() ? e : Expr::var(n);
  }
  auto out = std::make_shared<Expr>(*e);
  for (auto& k : out->kids) k = rename(k, names, next);
  return out;
}

}  // namespace

std::vector<Expansion> enumerate_expansions(const IdentitySpec& spec, std::size_t cap) {
  if (spec.mode != IdentitySpec::Mode::Inclusion) throw Error("expansion: source must be an inclusion");
  ExprPtr lhs = unfold(spec.lhs);
  ExprPtr rhs = unfold(spec.rhs);
  std::map<std::string, int> is_union;
  for (const Variable& v : spec.vars) {
    if (is_union_class(v.cls)) is_union[v.name] = 1;
  }
  std::vector<std::string> left;
  std::vector<std::string> right;
  occurrences(*lhs, is_union, left);
  occurrences(*rhs, is_union, right);

  std::map<std::string, std::vector<std::string>> group;
  std::vector<std::string> left_names;
  for (const std::string& n : left) {
    auto& g = group[n];
    g.push_back(n + "_" + std::to_string(g.size() + 1));
    left_names.push_back(g.back());
  }
  for (const std::string& n : right) {
    if (!group.contains(n)) throw Error("expansion: '" + n + "' occurs only on the right side");
  }
  // Non-union variables keep their names; mark them with empty renames.
  auto pad = [&](const ExprPtr& e, const std::vector<std::string>& unions) {
    std::vector<std::string> names;
    std::size_t u = 0;
    std::function<void(const Expr&)> walk = [&](const Expr& x) {
      if (x.kind == Expr::Kind::Var) {
        names.push_back(is_union.contains(x.name) ? unions[u++] : std::string());
        return;
      }
      for (const auto& k : x.kids) walk(*k);
    };
    walk(*e);
    std::size_t next = 0;
    return rename(e, names, next);
  };

  std::vector<Variable> vars;
  for (const Variable& v : spec.vars) {
    if (!is_union.contains(v.name)) {
      vars.push_back(v);
      continue;
    }
    const RelClass plain =
        v.cls == RelClass::UnionOfTwoCongruences ? RelClass::Congruence : RelClass::ReflexiveAdmissible;
    for (const std::string& n : group[v.name]) vars.push_back({n, plain});
  }
  ExprPtr new_lhs = pad(lhs, left_names);

  std::vector<std::size_t> choice(right.size(), 0);
  std::vector<Expansion> out;
  while (true) {
    if (out.size() >= cap) throw Error("expansion: more than " + std::to_string(cap) + " expansions");
    std::vector<std::string> right_names;
    Expansion ex;
    std::map<std::string, std::vector<std::string>> map;
    for (std::size_t i = 0; i < right.size(); ++i) {
      right_names.push_back(group[right[i]][choice[i]]);
      map[right[i]].push_back(right_names.back());
    }
    ex.spec.vars = vars;
    ex.spec.lhs = new_lhs;
    ex.spec.rhs = pad(rhs, right_names);
    ex.spec.mode = IdentitySpec::Mode::Inclusion;
    std::string label;
    for (const auto& [k, v] : map) {
      ex.right_map.emplace_back(k, v);
      label += (label.empty() ? "" : " ") + k + "->";
      for (std::size_t i = 0; i < v.size(); ++i) label += (i ? "," : "") + v[i];
    }
    ex.spec.name = (spec.name.empty() ? std::string("expansion") : spec.name + " expansion") +
                   (label.empty() ? "" : " [" + label + "]");
    // Variables introduced on the left but unused on the right are still used
    // on the left, so validation only rejects genuine mistakes.
    ex.spec.validate();
    out.push_back(std::move(ex));
    std::size_t i = right.size();
    while (i > 0) {
      --i;
      if (++choice[i] < group[right[i]].size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (right.empty()) return out;
  }
}

ExpansionCheck check_any_expansion(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                                   const CheckOptions& options) {
  ExpansionCheck out;
  out.source = check_for_all(algebra, spec, options);
  for (const Expansion& e : enumerate_expansions(spec)) {
    out.expansions.push_back(check_for_all(algebra, e.spec, options));
    if (!out.first_holding && out.expansions.back().holds()) {
      out.first_holding = out.expansions.size() - 1;
    }
  }
  out.any_holds = out.first_holding.has_value();
  bool settled = out.source.status != VerdictStatus::NoCounterexampleTruncated;
  if (!out.any_holds) {
    for (const Verdict& v : out.expansions) settled = settled && v.refuted();
  }
  out.agree = settled && out.source.holds() == out.any_holds;
  return out;
}

}  // namespace relkit
