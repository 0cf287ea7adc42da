#include "dilp/clause_search.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "dilp/text.hpp"

namespace dilp {
namespace {

struct Candidate {
  double score;
  std::string key;
  Clause clause;

  // Better candidates sort first.
  bool operator<(const Candidate& o) const {
    if (score != o.score) return score > o.score;
    return key < o.key;
  }
};

std::vector<Clause> sorted_by_canonical(const std::vector<Clause>& clauses) {
  std::map<std::string, Clause> by_key;
  for (const Clause& c : clauses) by_key.try_emplace(canonical_text(c), c);
  std::vector<Clause> out;
  for (auto& [k, c] : by_key) out.push_back(c);
  return out;
}

}  // namespace

int max_nest_depth(const std::vector<Clause>& clauses) {
  int depth = 0;
  for (const Clause& c : clauses) depth = std::max(depth, c.nest_depth());
  return depth;
}

ClauseSearchResult beam_search(const std::vector<Clause>& seeds, const Problem& q,
                               const BeamConfig& beam,
                               const RefinementConfig& refinement_in,
                               ProofConfig proof) {
  RefinementConfig refinement = refinement_in;
  refinement.inherited_nest =
      std::max(refinement.inherited_nest, max_nest_depth(seeds));
  const bool use_negatives = beam.negative_penalty != 0.0;
  auto score_of = [&](const Clause& c) {
    return score_clause(c, q, proof, use_negatives).value(beam.negative_penalty);
  };

  ClauseSearchResult result;
  std::map<std::string, std::pair<Clause, double>> collected;
  std::map<std::string, double> scores;

  std::vector<Clause> to_open = sorted_by_canonical(seeds);
  for (const Clause& c : to_open) scores[canonical_text(c)] = score_of(c);

  for (int t = 0; t < beam.beam_steps && !to_open.empty(); ++t) {
    result.opened.push_back(to_open);
    std::vector<Candidate> buffer;
    std::set<std::string> buffered;

    for (const Clause& c : to_open) {
      const std::string key = canonical_text(c);
      collected.try_emplace(key, c, scores.at(key));
    }
    for (const Clause& c : to_open) {
      for (Clause& r : refine(c, q.language, refinement)) {
        std::string key = canonical_text(r);
        if (collected.contains(key) || buffered.contains(key)) continue;
        const double score = score_of(r);
        ++result.evaluated;
        if (beam.prune_zero && score <= 0.0) continue;
        Candidate cand{score, std::move(key), std::move(r)};
        auto pos = std::lower_bound(buffer.begin(), buffer.end(), cand);
        if (pos - buffer.begin() >= beam.beam_size) continue;
        buffered.insert(cand.key);
        buffer.insert(pos, std::move(cand));
        if (static_cast<int>(buffer.size()) > beam.beam_size) {
          buffered.erase(buffer.back().key);
          buffer.pop_back();
        }
      }
    }

    to_open.clear();
    for (Candidate& cand : buffer) {
      scores[cand.key] = cand.score;
      to_open.push_back(std::move(cand.clause));
    }
  }

  std::vector<Candidate> ranked;
  for (auto& [key, entry] : collected)
    ranked.push_back({entry.second, key, entry.first});
  std::sort(ranked.begin(), ranked.end());
  for (Candidate& cand : ranked) {
    result.scores.push_back(cand.score);
    result.clauses.push_back(std::move(cand.clause));
  }
  return result;
}

std::vector<Clause> naive_generate(const std::vector<Clause>& seeds,
                                   const Language& lang,
                                   const RefinementConfig& refinement_in,
                                   std::size_t max_clauses) {
  RefinementConfig refinement = refinement_in;
  refinement.inherited_nest =
      std::max(refinement.inherited_nest, max_nest_depth(seeds));
  std::vector<Clause> out;
  std::set<std::string> seen;
  std::deque<Clause> queue;
  for (const Clause& c : sorted_by_canonical(seeds)) queue.push_back(c);

  while (!queue.empty() && out.size() < max_clauses) {
    Clause c = std::move(queue.front());
    queue.pop_front();
    if (!seen.insert(canonical_text(c)).second) continue;
    out.push_back(c);
    for (Clause& r : refine(c, lang, refinement)) {
      if (!seen.contains(canonical_text(r))) queue.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace dilp
