#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relkit/algebra.hpp"
#include "relkit/binrel.hpp"
#include "relkit/relations.hpp"
#include "relkit/uadmissible.hpp"

namespace relkit {

enum class RelClass {
  Congruence,
  Tolerance,
  ReflexiveAdmissible,
  UAdmissible,
  U2Admissible,
  UnionOfTwoCongruences,
};

const char* to_string(RelClass cls) noexcept;
/// Literal prefix: cong, tol, adm, uadm, u2, ucong2.
const char* class_prefix(RelClass cls) noexcept;
std::optional<RelClass> class_from_prefix(std::string_view prefix);
bool is_union_class(RelClass cls) noexcept;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Relational expression. Meet is ∩, Join is ∪, Compose is ∘, AltRight is
/// S ∘_m T and AltLeft is S _m∘ T (see Anchor), Power is R^{∘h}.
struct Expr {
  enum class Kind { Var, Diagonal, Full, Meet, Join, Compose, AltRight, AltLeft, Converse, Star, Bar, Power };
  Kind kind = Kind::Var;
  std::string name;  // Var only
  int param = 0;     // m for Alt*, h for Power
  std::vector<ExprPtr> kids;

  static ExprPtr var(std::string name);
  static ExprPtr diagonal();
  static ExprPtr full();
  static ExprPtr meet(ExprPtr a, ExprPtr b);
  static ExprPtr join(ExprPtr a, ExprPtr b);
  static ExprPtr compose(ExprPtr a, ExprPtr b);
  static ExprPtr alt(ExprPtr a, ExprPtr b, int m, Anchor anchor);
  static ExprPtr converse(ExprPtr a);
  static ExprPtr star(ExprPtr a);
  static ExprPtr bar(ExprPtr a);
  static ExprPtr power(ExprPtr a, int h);
};

/// Left-to-right chain e_0 ∘ e_1 ∘ ... ; requires a nonempty list.
ExprPtr compose_chain(const std::vector<ExprPtr>& factors);

/// Generic-instance seed for a variable: the principal relation generated in
/// the free algebra F(3) by the named pair(s) of generators.
/// XYOrYZ is the union of the two principal relations (for union classes),
/// XYAndYZ the relation generated by both pairs together.
enum class SeedRole { XZ, XY, YZ, XYOrYZ, XYOrZY, XYAndYZ };

struct Variable {
  std::string name;
  RelClass cls = RelClass::Congruence;
};

struct IdentitySpec {
  enum class Mode { Inclusion, Equality };

  std::string name;  // builtin name with parameters, or empty for literals
  std::vector<Variable> vars;
  ExprPtr lhs;
  ExprPtr rhs;
  Mode mode = Mode::Inclusion;
  /// Seed per variable, parallel to vars; empty when the spec has no
  /// free-algebra instance.
  std::vector<SeedRole> seeds;

  std::optional<std::size_t> find_var(std::string_view name) const;
  /// Structural checks: every variable bound and used, parameters >= 1.
  void validate() const;
};

/// Parse a spec literal, e.g. `tol:T & (uadm:s ; uadm:s) <= pow(T & s, 2)`.
/// Errors carry the column of the offending token.
IdentitySpec parse_spec(std::string_view text);
std::string to_literal(const IdentitySpec& spec);
std::string to_string(const Expr& e);

struct BuiltinParams {
  int h = 2;
  int k = 2;
  int m = 2;
  int n = 2;
  std::vector<int> f;  // malA, values in {1,2}
  /// Congruence / union-of-two-congruences variant where the source allows it.
  bool weak = false;
  /// Equality form where the source states one.
  bool equality = false;
};

/// Names: cdist2 cdist3 modular2 cor1 cor1p cor1pp cor2 cor3 cor4 cor4p
/// gen1 gen2 gen3 maj3 arith3 arith4 baker4 p12b1 p12b2 p12c2 vrIncl
/// malIncl malA.
IdentitySpec builtin(std::string_view name, const BuiltinParams& params = {});
std::vector<std::string> builtin_names();

/// Copy of spec with the named variables moved to other classes. Throws
/// Error on an unknown name.
IdentitySpec with_classes(IdentitySpec spec, const std::map<std::string, RelClass>& classes);

/// Either a builtin name or a literal (anything containing <= or ==).
IdentitySpec resolve_spec(std::string_view name_or_literal, const BuiltinParams& params = {});

/// A value for one variable: the relation and the family it came from (one
/// component for plain classes).
struct Binding {
  BinRel relation;
  std::vector<BinRel> components;
};

/// Throws Error naming the variable if the binding is not in its class.
void check_binding(const FiniteAlgebra& algebra, const Variable& var, const Binding& b);

struct Evaluation {
  BinRel lhs;
  BinRel rhs;
  bool satisfied = false;
};

/// Evaluates on union views; this is exact because every U-operation commutes
/// with taking unions.
Evaluation evaluate(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                    const std::vector<Binding>& assignment);

/// Same, but with family semantics for U-values (compose, intersect_tolerance,
/// closure materialization). Slower; used to cross-check evaluate.
Evaluation evaluate_families(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                             const std::vector<Binding>& assignment);

enum class Strategy { Exhaustive, Generated, Sampled };

struct CheckOptions {
  Strategy strategy = Strategy::Exhaustive;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  Caps caps;
  /// Quantify Tolerance variables over congruences only.
  bool theta_congruence = false;
};

enum class VerdictStatus { Holds, Refuted, NoCounterexampleTruncated };

const char* to_string(VerdictStatus s) noexcept;

struct Verdict {
  VerdictStatus status = VerdictStatus::Holds;
  std::vector<Binding> counterexample;  // parallel to spec.vars when refuted
  std::optional<Pair> witness;          // pair in lhs but not rhs (or symmetric difference)
  BinRel lhs;
  BinRel rhs;
  std::vector<std::string> coverage_notes;
  std::vector<std::size_t> candidate_counts;  // per variable
  std::uint64_t assignments_checked = 0;

  bool holds() const noexcept { return status == VerdictStatus::Holds; }
  bool refuted() const noexcept { return status == VerdictStatus::Refuted; }
};

/// Candidate values of a class on A, in scan order, with a completeness flag.
struct Candidates {
  std::vector<Binding> values;
  bool complete = true;
  std::string note;
};

Candidates class_candidates(const FiniteAlgebra& algebra, RelClass cls, const CheckOptions& options);

/// Quantifies every variable over its class. The first counterexample in
/// scan order (variables in declaration order, candidates in enumeration
/// order) is reported, independent of the number of jobs.
Verdict check_for_all(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                      const CheckOptions& options = {});

/// Generic instance in F(3): each variable is the principal relation of its
/// class generated by its seed pairs. For an inclusion the identity holds in
/// the variety iff (x,z) lies in the right side here.
struct FreeInstance {
  bool lhs_contains_xz = false;
  bool rhs_contains_xz = false;
  std::size_t free_size = 0;
};

/// Throws Error if the spec has no seeds or is an equality.
FreeInstance free_instance(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                           const Caps& caps = {});

}  // namespace relkit
