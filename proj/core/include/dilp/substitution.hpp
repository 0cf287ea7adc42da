#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dilp/syntax.hpp"

namespace dilp {

/// Finite map variable -> term, kept in binding order.
///
/// Substitutions produced by `unify` are idempotent: no bound variable occurs
/// in any bound value.
class Substitution {
 public:
  using Binding = std::pair<std::string, Term>;

  Substitution() = default;
  Substitution(std::initializer_list<Binding> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::vector<Binding>& bindings() const { return bindings_; }

  const Term* lookup(std::string_view var) const;

  /// Simultaneous replacement of every bound variable.
  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  Clause apply(const Clause& c) const;

  /// Adds var -> value after applying the current bindings to `value` and
  /// substituting the new binding into existing values, keeping the map
  /// idempotent. Returns false on an occurs-check violation.
  bool bind(const std::string& var, const Term& value);

  /// Composition: apply(compose(a, b), e) == b.apply(a.apply(e)).
  static Substitution compose(const Substitution& first,
                              const Substitution& second);

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Binding> bindings_;
};

/// Most general unifier with occurs check, or nullopt when the atoms do not
/// unify. Variable-variable pairs bind the variable from `a`.
std::optional<Substitution> unify(const Atom& a, const Atom& b);
std::optional<Substitution> unify(const Term& a, const Term& b);

/// One-way matching: a substitution on the pattern's variables only, such
/// that pattern*theta == target. `target` is treated as rigid.
std::optional<Substitution> match(const Atom& pattern, const Atom& target);

/// Renames every variable of `c` by appending `suffix`.
Clause rename_apart(const Clause& c, std::string_view suffix);

}  // namespace dilp
