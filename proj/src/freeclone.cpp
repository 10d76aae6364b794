#include "relkit/freeclone.hpp"

#include <cstdio>
#include <limits>

#include "relkit/relations.hpp"

namespace relkit {

namespace {

std::string key_of(std::span<const std::uint8_t> table) {
  return std::string(reinterpret_cast<const char*>(table.data()), table.size());
}

}  // namespace

std::optional<std::size_t> Clone::find(std::span<const std::uint8_t> table) const {
  if (table.size() != length_) return std::nullopt;
  auto it = index_.find(key_of(table));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Clone::insert(std::vector<std::uint8_t> table, Derivation how) {
  auto [it, fresh] = index_.emplace(key_of(table), static_cast<std::uint32_t>(parent_.size()));
  if (!fresh) return it->second;
  tables_.insert(tables_.end(), table.begin(), table.end());
  parent_.push_back(std::move(how));
  return parent_.size() - 1;
}

Term Clone::witness(std::size_t id) const {
  const Derivation& d = parent_.at(id);
  if (d.op < 0) {
    // Projections record their variable index as the single child.
    return Term::variable(static_cast<int>(d.children.front()));
  }
  std::vector<Term> args;
  args.reserve(d.children.size());
  for (std::uint32_t c : d.children) args.push_back(witness(c));
  return Term::apply(algebra_.operations()[static_cast<std::size_t>(d.op)].name, std::move(args));
}

TermTable Clone::element(std::size_t id) const {
  auto t = table(id);
  return TermTable{arity_, std::vector<std::uint8_t>(t.begin(), t.end()), witness(id)};
}

std::string Clone::dump() const {
  std::string out;
  out += "arity " + std::to_string(arity_) + "\n";
  out += "universe " + std::to_string(algebra_.size()) + "\n";
  out += "elements " + std::to_string(size()) + "\n";
  out += std::string("complete ") + (complete_ ? "yes" : "no") + "\n";
  char hex[3];
  for (std::size_t id = 0; id < size(); ++id) {
    for (std::uint8_t b : table(id)) {
      std::snprintf(hex, sizeof hex, "%02x", b);
      out += hex;
    }
    out += ' ';
    out += witness(id).to_string();
    out += '\n';
  }
  return out;
}

FiniteAlgebra Clone::as_algebra(const Caps& caps) const {
  if (!complete_) throw Error("clone is incomplete (cap hit); the free algebra is not available");
  const std::size_t n = algebra_.size();
  const std::size_t m = size();
  std::vector<Operation> ops;
  std::vector<std::uint8_t> result(length_);
  for (std::size_t o = 0; o < algebra_.operations().size(); ++o) {
    const Operation& op = algebra_.operations()[o];
    const auto r = static_cast<std::size_t>(op.arity);
    auto entries = checked_power(m, r, caps.table_entries);
    if (!entries) {
      throw Error("free algebra: table of '" + op.name + "' exceeds the table-entry cap");
    }
    Operation out{op.name, op.arity, std::vector<Element>(*entries)};
    std::vector<std::size_t> args(r, 0);
    for (std::size_t idx = 0; idx < *entries; ++idx) {
      for (std::size_t t = 0; t < length_; ++t) {
        std::size_t code = 0;
        for (std::size_t j = 0; j < r; ++j) code = code * n + table(args[j])[t];
        result[t] = static_cast<std::uint8_t>(op.table[code]);
      }
      auto id = find(result);
      if (!id) throw Error("clone is not closed under '" + op.name + "'");
      out.table[idx] = static_cast<Element>(*id);
      for (std::size_t j = r; j-- > 0;) {
        if (++args[j] < m) break;
        args[j] = 0;
      }
    }
    ops.push_back(std::move(out));
  }
  return FiniteAlgebra(m, std::move(ops));
}

Clone generate_clone(const FiniteAlgebra& algebra, int arity, std::size_t cap) {
  const std::size_t n = algebra.size();
  if (n > 256) throw Error("clone generation needs |A| <= 256");
  if (arity < 1) throw Error("clone arity must be positive");
  if (cap == 0) throw Error("clone cap must be positive");
  auto length = checked_power(n, static_cast<std::size_t>(arity), std::size_t{1} << 24);
  if (!length) throw Error("clone tables of |A|^k entries are too long");

  Clone clone;
  clone.algebra_ = algebra;
  clone.arity_ = arity;
  clone.length_ = *length;
  const std::size_t len = *length;

  std::vector<std::uint8_t> table(len);
  std::size_t stride = len;
  for (int i = 0; i < arity; ++i) {
    stride /= n;
    for (std::size_t t = 0; t < len; ++t) table[t] = static_cast<std::uint8_t>((t / stride) % n);
    clone.generators_.push_back(
        clone.insert(table, {-1, {static_cast<std::uint32_t>(i)}}));
  }

  std::size_t prev_begin = 0;
  std::vector<std::size_t> args;
  for (int round = 1;; ++round) {
    const std::size_t end = clone.size();
    bool capped = false;
    for (std::size_t o = 0; o < algebra.operations().size() && !capped; ++o) {
      const Operation& op = algebra.operations()[o];
      const auto r = static_cast<std::size_t>(op.arity);
      if (r == 0) {
        if (round != 1) continue;
        std::fill(table.begin(), table.end(), static_cast<std::uint8_t>(op.table[0]));
        if (!clone.find(table)) {
          if (clone.size() >= cap) {
            capped = true;
            break;
          }
          clone.insert(table, {static_cast<int>(o), {}});
        }
        continue;
      }
      args.assign(r, 0);
      for (bool more = true; more && !capped;) {
        bool uses_new = false;
        for (std::size_t a : args) uses_new = uses_new || a >= prev_begin;
        if (uses_new) {
          for (std::size_t t = 0; t < len; ++t) {
            std::size_t code = 0;
            for (std::size_t j = 0; j < r; ++j) code = code * n + clone.tables_[args[j] * len + t];
            table[t] = static_cast<std::uint8_t>(op.table[code]);
          }
          if (!clone.find(table)) {
            if (clone.size() >= cap) {
              capped = true;
              break;
            }
            std::vector<std::uint32_t> kids(args.begin(), args.end());
            clone.insert(table, {static_cast<int>(o), std::move(kids)});
          }
        }
        more = false;
        for (std::size_t j = r; j-- > 0;) {
          if (++args[j] < end) {
            more = true;
            break;
          }
          args[j] = 0;
        }
      }
    }
    if (capped) {
      clone.complete_ = false;
      break;
    }
    if (clone.size() == end) break;
    clone.rounds_ = round;
    prev_begin = end;
  }
  return clone;
}

std::vector<std::uint8_t> substitute_table(std::span<const std::uint8_t> table, std::size_t n,
                                           std::span<const int> pattern, int m) {
  const std::size_t k = pattern.size();
  auto len = checked_power(n, static_cast<std::size_t>(m), std::size_t{1} << 26);
  if (!len) throw Error("substitute_table: table too long");
  std::vector<std::uint8_t> out(*len);
  std::vector<std::size_t> digits(static_cast<std::size_t>(m));
  for (std::size_t t = 0; t < *len; ++t) {
    std::size_t rest = t;
    for (std::size_t i = static_cast<std::size_t>(m); i-- > 0;) {
      digits[i] = rest % n;
      rest /= n;
    }
    std::size_t code = 0;
    for (std::size_t j = 0; j < k; ++j) code = code * n + digits[static_cast<std::size_t>(pattern[j])];
    out[t] = table[code];
  }
  return out;
}

std::vector<std::uint8_t> projection_table(std::size_t n, int m, int i) {
  std::vector<int> pattern{i};
  std::vector<std::uint8_t> ident(n);
  for (std::size_t a = 0; a < n; ++a) ident[a] = static_cast<std::uint8_t>(a);
  return substitute_table(ident, n, pattern, m);
}

bool identity_holds(const Clone& clone, std::size_t lhs, std::span<const int> lhs_pattern,
                    std::size_t rhs, std::span<const int> rhs_pattern, int m) {
  const std::size_t n = clone.algebra().size();
  return substitute_table(clone.table(lhs), n, lhs_pattern, m) ==
         substitute_table(clone.table(rhs), n, rhs_pattern, m);
}

bool identity_holds(const FiniteAlgebra& algebra, const Term& lhs, const Term& rhs) {
  const int m = std::max(lhs.variable_count(), rhs.variable_count());
  const std::size_t n = algebra.size();
  auto total = checked_power(n, static_cast<std::size_t>(m), std::size_t{1} << 26);
  if (!total) throw Error("identity_holds: too many assignments");
  std::vector<Element> args(static_cast<std::size_t>(m), 0);
  for (std::size_t t = 0; t < *total; ++t) {
    if (eval_term(algebra, lhs, args) != eval_term(algebra, rhs, args)) return false;
    for (std::size_t j = args.size(); j-- > 0;) {
      if (++args[j] < n) break;
      args[j] = 0;
    }
  }
  return true;
}

BinRel FreeAlgebra::cg(Element a, Element b) const {
  Pair p{a, b};
  return congruence_closure(algebra, std::span<const Pair>(&p, 1));
}

BinRel FreeAlgebra::tg(Element a, Element b) const {
  Pair p{a, b};
  return tolerance_closure(algebra, std::span<const Pair>(&p, 1));
}

BinRel FreeAlgebra::adm(Element a, Element b) const {
  Pair p{a, b};
  return admissible_closure(algebra, std::span<const Pair>(&p, 1));
}

FreeAlgebra free_algebra(const Clone& clone, const Caps& caps) {
  if (clone.arity() < 3) throw Error("free algebra arguments need a clone of arity >= 3");
  FreeAlgebra out;
  out.algebra = clone.as_algebra(caps);
  out.x = static_cast<Element>(clone.generator(0));
  out.y = static_cast<Element>(clone.generator(1));
  out.z = static_cast<Element>(clone.generator(2));
  return out;
}

}  // namespace relkit
