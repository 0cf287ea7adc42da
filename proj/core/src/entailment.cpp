#include "dilp/entailment.hpp"

#include <algorithm>

namespace dilp {

Prover::Prover(std::span<const Clause> program, std::span<const Atom> background,
               ProofConfig cfg)
    : program_(program.begin(), program.end()),
      background_list_(background.begin(), background.end()),
      background_(background.begin(), background.end()),
      cfg_(cfg) {}

bool Prover::entails(const Atom& goal) { return prove_ground(goal, cfg_.max_depth); }

bool Prover::prove_ground(const Atom& goal, int depth) {
  if (goal.is_top()) return true;
  if (goal.is_bottom()) return false;
  if (background_.contains(goal)) return true;
  if (depth <= 0) return false;

  Memo& memo = memo_[goal];
  if (memo.proven_at >= 0 && depth >= memo.proven_at) return true;
  if (depth <= memo.failed_at) return false;

  bool proven = false;
  for (const Clause& clause : program_) {
    auto theta = match(clause.head(), goal);
    if (!theta) continue;
    std::vector<Atom> body;
    body.reserve(clause.body_size());
    for (const Atom& b : clause.body()) body.push_back(theta->apply(b));
    if (prove_conj(body, 0, Substitution{}, depth - 1,
                   [](const Substitution&) { return true; })) {
      proven = true;
      break;
    }
  }
  // `memo` may have been invalidated by rehashing during recursion.
  Memo& entry = memo_[goal];
  if (proven) {
    entry.proven_at = entry.proven_at < 0 ? depth : std::min(entry.proven_at, depth);
  } else {
    entry.failed_at = std::max(entry.failed_at, depth);
  }
  return proven;
}

bool Prover::prove_conj(const std::vector<Atom>& goals, std::size_t index,
                        const Substitution& theta, int depth,
                        const Continuation& k) {
  if (index == goals.size()) return k(theta);
  const Atom goal = theta.apply(goals[index]);
  if (goal.is_ground()) {
    if (!prove_ground(goal, depth)) return false;
    return prove_conj(goals, index + 1, theta, depth, k);
  }

  // Non-ground subgoal: enumerate answers from the background, then from
  // clauses renamed apart.
  for (const Atom& fact : background_list_) {
    auto sigma = unify(goal, fact);
    if (!sigma) continue;
    if (prove_conj(goals, index + 1, Substitution::compose(theta, *sigma), depth, k))
      return true;
  }
  if (depth <= 0) return false;
  for (const Clause& clause : program_) {
    const Clause renamed =
        rename_apart(clause, "#" + std::to_string(rename_counter_++));
    auto sigma = unify(goal, renamed.head());
    if (!sigma) continue;
    const Substitution bound = Substitution::compose(theta, *sigma);
    std::vector<Atom> body(renamed.body().begin(), renamed.body().end());
    const bool ok = prove_conj(body, 0, bound, depth - 1, [&](const Substitution& s) {
      return prove_conj(goals, index + 1, s, depth, k);
    });
    if (ok) return true;
  }
  return false;
}

bool entails(std::span<const Clause> program, std::span<const Atom> background,
             const Atom& goal, ProofConfig cfg) {
  Prover prover(program, background, cfg);
  return prover.entails(goal);
}

ClauseScore score_clause(const Clause& r, const Problem& q, ProofConfig cfg,
                         bool count_negatives) {
  Prover prover(std::span<const Clause>(&r, 1), q.background, cfg);
  ClauseScore score;
  for (const Atom& e : q.positives) score.positives += prover.entails(e) ? 1 : 0;
  if (count_negatives) {
    for (const Atom& e : q.negatives) score.negatives += prover.entails(e) ? 1 : 0;
  }
  return score;
}

int eval_clause(const Clause& r, const Problem& q, ProofConfig cfg) {
  return score_clause(r, q, cfg, false).positives;
}

std::vector<Atom> forward_closure(std::span<const Clause> program,
                                  std::span<const Atom> background,
                                  std::span<const Atom> universe, int steps) {
  const std::unordered_set<Atom, AtomHash> in_universe(universe.begin(), universe.end());
  std::unordered_set<Atom, AtomHash> truth;
  truth.insert(Atom::top());
  for (const Atom& b : background) {
    if (in_universe.contains(b)) truth.insert(b);
  }

  for (int t = 0; t < steps; ++t) {
    std::vector<Atom> derived;
    for (const Atom& g : universe) {
      if (g.is_special() || truth.contains(g)) continue;
      for (const Clause& clause : program) {
        auto theta = match(clause.head(), g);
        if (!theta) continue;
        const bool holds = std::all_of(
            clause.body().begin(), clause.body().end(), [&](const Atom& b) {
              const Atom sub = theta->apply(b);
              return sub.is_ground() && in_universe.contains(sub) && truth.contains(sub);
            });
        if (holds) {
          derived.push_back(g);
          break;
        }
      }
    }
    if (derived.empty()) break;
    truth.insert(derived.begin(), derived.end());
  }

  std::vector<Atom> out;
  for (const Atom& g : universe) {
    if (truth.contains(g)) out.push_back(g);
  }
  return out;
}

}  // namespace dilp
