#pragma once

#include <vector>

#include "dilp/language.hpp"
#include "dilp/syntax.hpp"

namespace dilp {

/// An ILP problem: ground examples, ground background facts, the language,
/// and the seed clauses the clause search starts from.
struct Problem {
  Language language;
  std::vector<Atom> positives;
  std::vector<Atom> negatives;
  std::vector<Atom> background;
  std::vector<Clause> initial_clauses;

  std::size_t example_count() const { return positives.size() + negatives.size(); }

  friend bool operator==(const Problem&, const Problem&) = default;
};

struct LabeledAtom {
  Atom atom;
  int label = 0;

  friend bool operator==(const LabeledAtom&, const LabeledAtom&) = default;
};

}  // namespace dilp
