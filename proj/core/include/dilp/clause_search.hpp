#pragma once

#include <vector>

#include "dilp/entailment.hpp"
#include "dilp/problem.hpp"
#include "dilp/refinement.hpp"

namespace dilp {

struct BeamConfig {
  int beam_size = 10;
  int beam_steps = 5;
  /// Refinements that entail no positive example never enter the beam.
  bool prune_zero = true;
  /// Scores become positives - penalty * negatives when > 0. Zero reproduces
  /// the positives-only score.
  double negative_penalty = 0.0;
};

struct ClauseSearchResult {
  /// Every opened clause, sorted by score (descending) then canonical text.
  std::vector<Clause> clauses;
  std::vector<double> scores;
  /// opened[t] is the open set at iteration t.
  std::vector<std::vector<Clause>> opened;
  /// Number of refinements scored.
  std::size_t evaluated = 0;
};

/// Beam search over the refinement lattice. At each of `beam_steps`
/// iterations every clause of the open set joins the result and its
/// refinements are scored; the best `beam_size` (ties: shorter body, then
/// canonical text) form the next open set. Refinements alpha-equivalent to an
/// already opened clause or to a buffered one are merged. The nesting bias is
/// measured relative to the deepest seed.
ClauseSearchResult beam_search(const std::vector<Clause>& seeds, const Problem& q,
                               const BeamConfig& beam,
                               const RefinementConfig& refinement,
                               ProofConfig proof);

/// Breadth-first refinement from the seeds without looking at examples,
/// stopping once `max_clauses` distinct clauses have been collected.
std::vector<Clause> naive_generate(const std::vector<Clause>& seeds,
                                   const Language& lang,
                                   const RefinementConfig& refinement,
                                   std::size_t max_clauses);

/// Deepest function nesting among `clauses`; feeds
/// RefinementConfig::inherited_nest.
int max_nest_depth(const std::vector<Clause>& clauses);

}  // namespace dilp
