#pragma once

#include <string>
#include <vector>

#include "dilp/grounding.hpp"
#include "dilp/language.hpp"
#include "dilp/problem.hpp"
#include "dilp/text.hpp"

namespace dilp::testing {

/// p/2, q/2; f/1; constants a, b; variables x, y, z.
inline Language binary_language() {
  Language lang;
  lang.add_predicate("p", 2);
  lang.add_predicate("q", 2);
  lang.add_function("f", 1);
  lang.add_constant("a");
  lang.add_constant("b");
  lang.set_variables({"x", "y", "z"});
  return lang;
}

/// Positives p(a,a), p(b,b), p(b,c), p(c,b); background q(b,c), q(c,b).
inline Problem symmetric_pairs_problem() {
  Problem q;
  q.language.add_predicate("p", 2);
  q.language.add_predicate("q", 2);
  q.language.add_function("f", 1);
  for (const char* c : {"a", "b", "c"}) q.language.add_constant(c);
  for (const char* e : {"p(a,a)", "p(b,b)", "p(b,c)", "p(c,b)"}) {
    q.positives.push_back(parse_atom(e, q.language));
  }
  for (const char* e : {"q(b,c)", "q(c,b)"}) q.background.push_back(parse_atom(e, q.language));
  q.initial_clauses.push_back(parse_clause("p(x,y)", q.language));
  return q;
}

/// Even numbers: e/1 over s/1 and 0.
inline Language even_language() {
  Language lang;
  lang.add_predicate("e", 1);
  lang.add_function("s", 1);
  lang.add_constant("0");
  return lang;
}

/// Positive e(s^6(0)), negative e(s(0)), background e(0).
inline Problem even_problem() {
  Problem q;
  q.language = even_language();
  q.positives.push_back(parse_atom("e(s(s(s(s(s(s(0)))))))", q.language));
  q.negatives.push_back(parse_atom("e(s(0))", q.language));
  q.background.push_back(parse_atom("e(0)", q.language));
  q.initial_clauses.push_back(parse_clause("e(s(s(x))) :- e(x)", q.language));
  return q;
}

inline Clause even_step_clause() { return parse_clause("e(s(s(x))) :- e(x)", even_language()); }

/// bottom, top, e(0), e(s(0)), e(s^2(0)), e(s^4(0)).
inline AtomTable even_table() {
  const Language lang = even_language();
  std::vector<Atom> atoms;
  for (const char* a : {"e(0)", "e(s(0))", "e(s(s(0)))", "e(s(s(s(s(0)))))"}) {
    atoms.push_back(parse_atom(a, lang));
  }
  return AtomTable(atoms);
}

inline std::vector<std::string> texts(const std::vector<Clause>& cs) {
  std::vector<std::string> out;
  for (const Clause& c : cs) out.push_back(canonical_text(c));
  return out;
}

}  // namespace dilp::testing
