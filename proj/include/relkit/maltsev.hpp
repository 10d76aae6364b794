#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relkit/freeclone.hpp"
#include "relkit/identities.hpp"

namespace relkit {

/// An equation between two terms over x, y, z, w (w is the fourth
/// argument of 4-ary terms). Checked by evaluating both sides on A for
/// every assignment.
struct Equation {
  Term lhs;
  Term rhs;
  std::string label;
};

struct NamedTerm {
  std::string name;  // j1, d2, m, p, t3, s0, u1, ...
  Term term;
  int arity = 3;
};

struct TermSystem {
  std::string schema;  // jonsson, directed, majority, pixley, vr, mal
  int length = 0;      // k, n or h; 0 for majority/pixley
  std::vector<int> f;  // mal only
  std::vector<NamedTerm> terms;
  std::vector<Equation> certificate;
};

/// The defining equations of system.schema instantiated with the named terms
/// (and length, f). Throws Error if a term is missing or has the wrong arity.
std::vector<Equation> schema_certificate(const TermSystem& system);

/// Re-evaluates every certificate equation on A. Returns the labels of the
/// failing equations (empty when the certificate replays).
std::vector<std::string> replay(const FiniteAlgebra& algebra, const TermSystem& system);

struct SearchResult {
  std::optional<TermSystem> system;
  /// Absence is conclusive only when the clones used were complete.
  bool conclusive = true;
  std::string note;

  bool found() const noexcept { return system.has_value(); }
};

struct SearchOptions {
  Caps caps;
};

/// Least k <= max_k with Jónsson terms j_0..j_k.
SearchResult find_jonsson(const FiniteAlgebra& algebra, int max_k, const SearchOptions& o = {});
SearchResult find_directed_jonsson(const FiniteAlgebra& algebra, int max_n,
                                   const SearchOptions& o = {});
SearchResult find_majority(const FiniteAlgebra& algebra, const SearchOptions& o = {});
SearchResult find_pixley(const FiniteAlgebra& algebra, const SearchOptions& o = {});
/// Terms t_i, s_i, u_i witnessing σ(τ∘υ) ⊆ στ ∘_h συ.
SearchResult find_vr(const FiniteAlgebra& algebra, int h, const SearchOptions& o = {});
/// First f in lexicographic order over {1,2}^h with 4-ary terms s_i.
SearchResult find_mal(const FiniteAlgebra& algebra, int h, const SearchOptions& o = {});

/// The two memberships (x,z) ∈ αβ ∘_k αγ (left) and (x,z) ∈ αγ ∘_k αβ
/// (right) in F(3), with α = Cg(x,z), β = Cg(x,y), γ = Cg(y,z).
struct Dichotomy {
  enum class Side { Left, Right, Neither };
  Side side = Side::Neither;
  bool left = false;
  bool right = false;
  bool conclusive = true;
};

const char* to_string(Dichotomy::Side s) noexcept;

Dichotomy slmore_dichotomy(const FiniteAlgebra& algebra, int k, const Caps& caps = {});

/// Number of i with f(i) != f(i+1).
int variation_count(const std::vector<int>& f);

struct MalExperiment {
  std::vector<int> f;
  std::vector<int> g;
  VerdictStatus f_status = VerdictStatus::Holds;
  VerdictStatus g_status = VerdictStatus::Holds;
  /// "f => g observed", "g => f observed", ... empirical only.
  std::string observation;
};

MalExperiment mal_implication_experiment(const FiniteAlgebra& algebra, const std::vector<int>& f,
                                         const std::vector<int>& g, const CheckOptions& options = {});

/// A spec over plain variables obtained from a spec over union variables.
struct Expansion {
  IdentitySpec spec;
  /// For each union variable, the names its right-side occurrences map to,
  /// in left-to-right order.
  std::vector<std::pair<std::string, std::vector<std::string>>> right_map;
};

/// Expansions of an inclusion built from ∩, ∘ and converse (powers and
/// alternating compositions are unfolded first). Left-side occurrences of a
/// union variable s become s_1, s_2, ...; every right-side occurrence maps to
/// any of them. Produced in lexicographic order of the right-side choices.
std::vector<Expansion> enumerate_expansions(const IdentitySpec& spec, std::size_t cap = 100'000);

struct ExpansionCheck {
  /// Verdict over the original union classes.
  Verdict source;
  std::vector<Verdict> expansions;  // parallel to enumerate_expansions
  /// Index of the first expansion that holds, if any.
  std::optional<std::size_t> first_holding;
  bool any_holds = false;
  bool agree = false;  // source.holds() == any_holds, with both sweeps exhaustive
};

ExpansionCheck check_any_expansion(const FiniteAlgebra& algebra, const IdentitySpec& spec,
                                   const CheckOptions& options = {});

}  // namespace relkit
