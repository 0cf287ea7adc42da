#pragma once

#include <vector>

#include "dilp/language.hpp"
#include "dilp/syntax.hpp"

namespace dilp {

/// Syntactic bias applied after refinement.
struct RefinementConfig {
  /// Maximum number of body atoms.
  int max_body = 1;
  /// Maximum function nesting a refinement may add on top of
  /// `inherited_nest`.
  int max_nest = 1;
  /// Nesting already present in the seed clauses. Clause search sets this to
  /// the deepest seed so that supplied patterns such as e(s(s(x))) are not
  /// rejected by the nesting bias.
  int inherited_nest = 0;

  int nest_limit() const { return max_nest + inherited_nest; }
};

// Individual weakening operators. Each returns clauses in generation order;
// none applies the bias filter.

/// C{z = f(x1..xn)} for every z in V(C) and f/n in F. The arguments are the
/// first n unused variables of the language, falling back to z itself when
/// fewer than n are unused; one clause per (z, f).
std::vector<Clause> refine_function(const Clause& c, const Language& lang);
/// C{z = a} for every z in V(C) and constant a.
std::vector<Clause> refine_constant(const Clause& c, const Language& lang);
/// C{z = y} for distinct z, y in V(C), one clause per unordered pair.
std::vector<Clause> refine_merge(const Clause& c);
/// Appends p(x1..xn) for every p/n and every tuple of distinct variables.
std::vector<Clause> refine_add_atom(const Clause& c, const Language& lang);

/// Union of the four operators, filtered by `cfg`, deduplicated up to
/// alpha-equivalence, without C itself, sorted by canonical text.
std::vector<Clause> refine(const Clause& c, const Language& lang,
                           const RefinementConfig& cfg);

}  // namespace dilp
