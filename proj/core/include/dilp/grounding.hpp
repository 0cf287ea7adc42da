#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dilp/problem.hpp"
#include "dilp/syntax.hpp"

namespace dilp {

/// Ordered set of ground atoms with the bottom atom at index 0 and the top
/// atom at index 1.
class AtomTable {
 public:
  static constexpr std::int32_t kBottom = 0;
  static constexpr std::int32_t kTop = 1;

  AtomTable();
  /// `atoms` need not contain top/bottom; they are placed first either way.
  explicit AtomTable(std::span<const Atom> atoms);

  /// Appends when absent. Returns the index either way.
  std::int32_t insert(const Atom& atom);
  std::optional<std::int32_t> find(const Atom& atom) const;
  bool contains(const Atom& atom) const { return index_.contains(atom); }

  std::size_t size() const { return atoms_.size(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, std::int32_t, AtomHash> index_;
};

/// Integer tensor of shape clauses x atoms x width, row-major.
struct IndexTensor {
  std::size_t clauses = 0;
  std::size_t atoms = 0;
  std::size_t width = 1;
  std::vector<std::int32_t> data;

  std::int32_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * atoms + j) * width + k];
  }
  std::span<const std::int32_t> row(std::size_t i, std::size_t j) const {
    return std::span<const std::int32_t>(data).subspan((i * atoms + j) * width, width);
  }
};

struct EnumerationStats {
  /// Instantiated body atoms dropped because they were not ground.
  std::size_t skipped_nonground = 0;
};

/// Backward enumeration of the ground atoms a `steps`-step forward-chaining
/// inference over `clauses` can touch. Seeds are bottom, top, positives,
/// negatives, background and `extra_seeds`, in that order. Each round
/// matches every clause head against the atoms present at the start of the
/// round and appends the ground instantiated body atoms (clause order, then
/// atom order, then body position).
AtomTable enumerate_atoms(const Problem& q, std::span<const Clause> clauses, int steps,
                          std::span<const Atom> extra_seeds = {},
                          EnumerationStats* stats = nullptr);

/// X[i,j,k]: index of the k-th body atom of clause i instantiated by the
/// unifier of its head with atom j. Heads that do not unify give bottom;
/// positions past the body give top; the bottom row is all bottom and the
/// top row all top. Subgoals that are non-ground or missing from the table
/// map to bottom.
IndexTensor build_index_tensor(std::span<const Clause> clauses, const AtomTable& atoms);

/// v0[j] = 1 for background atoms and top, 0 elsewhere.
std::vector<double> convert_background(std::span<const Atom> background,
                                       const AtomTable& atoms);

/// Everything the differentiable inference needs about one problem.
struct GroundContext {
  AtomTable atoms;
  IndexTensor index;
  std::vector<double> initial;
  EnumerationStats stats;
};

GroundContext make_ground_context(const Problem& q, std::span<const Clause> clauses,
                                  int steps, std::span<const Atom> extra_seeds = {});

}  // namespace dilp
