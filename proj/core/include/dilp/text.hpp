#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dilp/language.hpp"
#include "dilp/syntax.hpp"

namespace dilp {

/// Malformed textual input. `column` is the 0-based offset into the parsed
/// text where the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Strict parsers: symbols must be declared in `lang` with matching arity, and
// identifiers in lang.variables() are variables. List sugar ([a,b], [x|y],
// []) is accepted only when the language has f/2 and the constant `*`.
Term parse_term(std::string_view text, const Language& lang);
Atom parse_atom(std::string_view text, const Language& lang);
/// `head :- b1, ..., bn` or `head`, with an optional trailing period.
Clause parse_clause(std::string_view text, const Language& lang);

// Permissive parsers for tests and tooling: identifiers among the default
// variables x,y,z,v,w are variables, everything else is a constant or
// functor, and list sugar always expands to f/2 and `*`.
Term parse_term(std::string_view text);
Atom parse_atom(std::string_view text);
Clause parse_clause(std::string_view text);

struct PrintOptions {
  /// Write f(a,f(b,*)) as [a,b] and f(x,y) as [x|y].
  bool list_sugar = false;
};

PrintOptions print_options_for(const Language& lang);

std::string to_string(const Term& t, PrintOptions opts = {});
std::string to_string(const Atom& a, PrintOptions opts = {});
/// No trailing period.
std::string to_string(const Clause& c, PrintOptions opts = {});

/// Plain-notation text of the canonical form; the total order used for every
/// ordered clause set.
std::string canonical_text(const Clause& c);

}  // namespace dilp
