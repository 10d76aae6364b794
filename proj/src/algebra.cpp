#include "relkit/algebra.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace relkit {

std::optional<std::size_t> checked_power(std::size_t base, std::size_t exponent,
                                         std::size_t limit) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > limit / base) return std::nullopt;
    out *= base;
  }
  if (out > limit) return std::nullopt;
  return out;
}

FiniteAlgebra::FiniteAlgebra(std::size_t size, std::vector<Operation> ops)
    : size_(size), ops_(std::move(ops)) {
  if (size_ == 0) throw Error("algebra: universe must be nonempty");
  std::sort(ops_.begin(), ops_.end(),
            [](const Operation& a, const Operation& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Operation& op = ops_[i];
    if (op.name.empty()) throw Error("algebra: operation with empty name");
    if (i > 0 && ops_[i - 1].name == op.name) {
      throw Error("algebra: duplicate operation name '" + op.name + "'");
    }
    if (op.arity < 0) throw Error("algebra: negative arity for '" + op.name + "'");
    auto expected = checked_power(size_, static_cast<std::size_t>(op.arity),
                                  std::numeric_limits<std::size_t>::max());
    if (!expected || op.table.size() != *expected) {
      throw Error("algebra: table of '" + op.name + "' has " +
                  std::to_string(op.table.size()) + " entries, expected size^arity");
    }
    for (Element e : op.table) {
      if (e >= size_) {
        throw Error("algebra: table of '" + op.name + "' has entry " +
                    std::to_string(e) + " outside the universe");
      }
    }
  }
}

std::optional<std::size_t> FiniteAlgebra::find_operation(std::string_view name) const {
  auto it = std::lower_bound(ops_.begin(), ops_.end(), name,
                             [](const Operation& o, std::string_view n) { return o.name < n; });
  if (it == ops_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - ops_.begin());
}

const Operation& FiniteAlgebra::operation(std::string_view name) const {
  auto idx = find_operation(name);
  if (!idx) throw Error("unknown operation '" + std::string(name) + "'");
  return ops_[*idx];
}

Element FiniteAlgebra::apply(std::string_view name, std::span<const Element> args) const {
  auto idx = find_operation(name);
  if (!idx) throw Error("unknown operation '" + std::string(name) + "'");
  const Operation& op = ops_[*idx];
  if (args.size() != static_cast<std::size_t>(op.arity)) {
    throw Error("operation '" + op.name + "' has arity " + std::to_string(op.arity) +
                ", got " + std::to_string(args.size()) + " arguments");
  }
  for (Element a : args) {
    if (a >= size_) {
      throw Error("element " + std::to_string(a) + " out of range for universe of size " +
                  std::to_string(size_));
    }
  }
  return at(*idx, args);
}

bool FiniteAlgebra::same_signature(const FiniteAlgebra& other) const {
  if (ops_.size() != other.ops_.size()) return false;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name != other.ops_[i].name || ops_[i].arity != other.ops_[i].arity) {
      return false;
    }
  }
  return true;
}

std::string FiniteAlgebra::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(size_);
  for (const Operation& op : ops_) {
    for (char c : op.name) mix(static_cast<unsigned char>(c));
    mix(static_cast<std::uint64_t>(op.arity));
    for (Element e : op.table) mix(e);
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "n" + std::to_string(size_) + "-" + buf;
}

FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b, const Caps& caps) {
  if (!a.same_signature(b)) throw Error("product: signature mismatch");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na > caps.universe / nb) {
    throw Error("product: universe of size " + std::to_string(na) + "*" +
                std::to_string(nb) + " exceeds cap " + std::to_string(caps.universe));
  }
  const std::size_t n = na * nb;
  std::vector<Operation> ops;
  std::vector<Element> left;
  std::vector<Element> right;
  for (std::size_t o = 0; o < a.operations().size(); ++o) {
    const Operation& op = a.operations()[o];
    const auto r = static_cast<std::size_t>(op.arity);
    auto entries = checked_power(n, r, caps.table_entries);
    if (!entries) {
      throw Error("product: table of '" + op.name + "' exceeds the table-entry cap");
    }
    Operation out{op.name, op.arity, std::vector<Element>(*entries)};
    std::vector<Element> args(r, 0);
    left.assign(r, 0);
    right.assign(r, 0);
    for (std::size_t idx = 0; idx < *entries; ++idx) {
      for (std::size_t i = 0; i < r; ++i) {
        left[i] = static_cast<Element>(args[i] / nb);
        right[i] = static_cast<Element>(args[i] % nb);
      }
      out.table[idx] = static_cast<Element>(a.at(o, left) * nb + b.at(o, right));
      for (std::size_t i = r; i-- > 0;) {
        if (++args[i] < n) break;
        args[i] = 0;
      }
    }
    ops.push_back(std::move(out));
  }
  return FiniteAlgebra(n, std::move(ops));
}

FiniteAlgebra power(const FiniteAlgebra& a, int k, const Caps& caps) {
  if (k < 1) throw Error("power: exponent must be positive");
  if (!checked_power(a.size(), static_cast<std::size_t>(k), caps.universe)) {
    throw Error("power: " + std::to_string(a.size()) + "^" + std::to_string(k) +
                " exceeds universe cap " + std::to_string(caps.universe));
  }
  FiniteAlgebra out = a;
  for (int i = 1; i < k; ++i) out = product(out, a, caps);
  return out;
}

Element eval_term(const FiniteAlgebra& algebra, const Term& term,
                  std::span<const Element> args) {
  if (term.is_variable()) {
    auto v = static_cast<std::size_t>(term.variable_index());
    if (v >= args.size()) {
      throw Error("eval: variable " + Term::variable_name(term.variable_index()) +
                  " has no argument");
    }
    return args[v];
  }
  std::vector<Element> values;
  values.reserve(term.args().size());
  for (const Term& t : term.args()) values.push_back(eval_term(algebra, t, args));
  return algebra.apply(term.op(), values);
}

}  // namespace relkit
