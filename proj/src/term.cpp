#include "relkit/term.hpp"

#include <algorithm>
#include <cctype>

#include "relkit/common.hpp"

namespace relkit {

Term Term::variable(int index) {
  if (index < 0) throw Error("term: negative variable index");
  Term t;
  t.var_ = index;
  return t;
}

Term Term::apply(std::string op, std::vector<Term> args) {
  if (op.empty()) throw Error("term: empty operation name");
  Term t;
  t.op_ = std::move(op);
  t.args_ = std::move(args);
  return t;
}

int Term::variable_count() const {
  if (is_variable()) return var_ + 1;
  int n = 0;
  for (const Term& a : args_) n = std::max(n, a.variable_count());
  return n;
}

int Term::depth() const {
  if (is_variable()) return 0;
  int d = 0;
  for (const Term& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

Term Term::substitute(const std::vector<Term>& subs) const {
  if (is_variable()) {
    if (static_cast<std::size_t>(var_) >= subs.size()) {
      throw Error("term: no substitute for variable " + variable_name(var_));
    }
    return subs[static_cast<std::size_t>(var_)];
  }
  std::vector<Term> args;
  args.reserve(args_.size());
  for (const Term& a : args_) args.push_back(a.substitute(subs));
  return apply(op_, std::move(args));
}

std::string Term::variable_name(int index) {
  static constexpr char kNames[] = "xyzw";
  if (index >= 0 && index < 4) return std::string(1, kNames[index]);
  return "x" + std::to_string(index);
}

std::string Term::to_string() const {
  if (is_variable()) return variable_name(var_);
  std::string out = op_ + "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ',';
    out += args_[i].to_string();
  }
  out += ')';
  return out;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = parse_term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("term parse error at column " + std::to_string(pos_ + 1) +
                ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '\'')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  static int variable_of(const std::string& name) {
    if (name.size() == 1) {
      switch (name[0]) {
        case 'x': return 0;
        case 'y': return 1;
        case 'z': return 2;
        case 'w': return 3;
        default: return -1;
      }
    }
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return std::stoi(name.substr(1));
    }
    return -1;
  }

  Term parse_term() {
    std::string name = identifier();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Term> args;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return Term::apply(std::move(name), std::move(args));
      }
      while (true) {
        args.push_back(parse_term());
        skip_space();
        if (pos_ >= text_.size()) fail("unterminated argument list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      return Term::apply(std::move(name), std::move(args));
    }
    int v = variable_of(name);
    if (v < 0) fail("unknown variable '" + name + "'");
    return Term::variable(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term Term::parse(std::string_view text) { return TermParser(text).parse_all(); }

}  // namespace relkit
