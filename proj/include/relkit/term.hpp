#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace relkit {

/// A term tree: leaves are variable indices, inner nodes are named
/// operations applied to children.
///
/// Variables print as x, y, z, w for indices 0..3 and as x4, x5, ... beyond.
/// Nullary operations print with empty parentheses, e.g. `zero()`, so the
/// prefix notation parses back unambiguously.
class Term {
 public:
  Term() = default;

  static Term variable(int index);
  static Term apply(std::string op, std::vector<Term> args);

  bool is_variable() const noexcept { return var_ >= 0; }
  int variable_index() const noexcept { return var_; }
  const std::string& op() const noexcept { return op_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  /// One more than the largest variable index occurring, 0 for ground terms.
  int variable_count() const;
  int depth() const;

  /// Replace variable i by subs[i]. Throws Error if a variable has no image.
  Term substitute(const std::vector<Term>& subs) const;

  std::string to_string() const;
  static Term parse(std::string_view text);

  static std::string variable_name(int index);

  friend bool operator==(const Term&, const Term&) = default;

 private:
  int var_ = -1;
  std::string op_;
  std::vector<Term> args_;
};

}  // namespace relkit
