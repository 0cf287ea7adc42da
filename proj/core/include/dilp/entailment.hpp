#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dilp/problem.hpp"
#include "dilp/substitution.hpp"
#include "dilp/syntax.hpp"

namespace dilp {

struct ProofConfig {
  /// Maximum height of a proof tree, counted in clause applications.
  /// Background facts cost nothing.
  int max_depth = 4;
};

/// Depth-bounded SLD prover for a definite program over ground background
/// facts. Clauses are renamed apart on every use that can bind goal
/// variables. Exhausting the depth bound reports "not provable", so results
/// under-approximate entailment.
///
/// The memo table lives in the prover; create one per (program, background)
/// and discard it afterwards.
class Prover {
 public:
  Prover(std::span<const Clause> program, std::span<const Atom> background,
         ProofConfig cfg);

  /// `goal` must be ground.
  bool entails(const Atom& goal);

 private:
  struct Memo {
    int proven_at = -1;  // smallest depth known to succeed, -1 if none
    int failed_at = -1;  // largest depth known to fail
  };

  using Continuation = std::function<bool(const Substitution&)>;

  bool prove_conj(const std::vector<Atom>& goals, std::size_t index,
                  const Substitution& theta, int depth, const Continuation& k);
  bool prove_ground(const Atom& goal, int depth);

  std::vector<Clause> program_;
  std::vector<Atom> background_list_;
  std::unordered_set<Atom, AtomHash> background_;
  ProofConfig cfg_;
  std::unordered_map<Atom, Memo, AtomHash> memo_;
  std::size_t rename_counter_ = 0;
};

bool entails(std::span<const Clause> program, std::span<const Atom> background,
             const Atom& goal, ProofConfig cfg);

struct ClauseScore {
  int positives = 0;
  int negatives = 0;

  /// positives - penalty * negatives.
  double value(double negative_penalty) const {
    return positives - negative_penalty * negatives;
  }
};

/// Number of positive examples entailed by background plus `r` alone.
int eval_clause(const Clause& r, const Problem& q, ProofConfig cfg);

/// Positive and negative entailment counts for `r` in isolation.
ClauseScore score_clause(const Clause& r, const Problem& q, ProofConfig cfg,
                         bool count_negatives);

/// Atoms of `universe` derivable from `background` in at most `steps`
/// synchronous forward-chaining rounds, in universe order. The top atom is
/// always included; derivations need every instantiated body atom to be a
/// ground member of `universe`.
std::vector<Atom> forward_closure(std::span<const Clause> program,
                                  std::span<const Atom> background,
                                  std::span<const Atom> universe, int steps);

}  // namespace dilp
