#include "dilp/substitution.hpp"

#include <algorithm>

namespace dilp {
namespace {

Term apply_single(const Term& t, const std::string& var, const Term& value) {
  switch (t.kind()) {
    case Term::Kind::kConstant:
      return t;
    case Term::Kind::kVariable:
      return t.name() == var ? value : t;
    case Term::Kind::kCompound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(apply_single(a, var, value));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

bool unify_into(const Term& a, const Term& b, Substitution& theta) {
  const Term s = theta.apply(a);
  const Term t = theta.apply(b);
  if (s == t) return true;
  if (s.is_variable()) return theta.bind(s.name(), t);
  if (t.is_variable()) return theta.bind(t.name(), s);
  if (!s.is_compound() || !t.is_compound()) return false;
  if (s.name() != t.name() || s.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (!unify_into(s.arg(i), t.arg(i), theta)) return false;
  }
  return true;
}

bool match_into(const Term& pattern, const Term& target, Substitution& theta) {
  switch (pattern.kind()) {
    case Term::Kind::kConstant:
      return target.is_constant() && target.name() == pattern.name();
    case Term::Kind::kVariable: {
      if (const Term* bound = theta.lookup(pattern.name()))
        return *bound == target;
      theta.bind(pattern.name(), target);
      return true;
    }
    case Term::Kind::kCompound: {
      if (!target.is_compound() || target.name() != pattern.name() ||
          target.arity() != pattern.arity())
        return false;
      for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match_into(pattern.arg(i), target.arg(i), theta)) return false;
      }
      return true;
    }
  }
  return false;
}

Term suffix_term(const Term& t, std::string_view suffix) {
  switch (t.kind()) {
    case Term::Kind::kConstant:
      return t;
    case Term::Kind::kVariable:
      return Term::variable(t.name() + std::string(suffix));
    case Term::Kind::kCompound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(suffix_term(a, suffix));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

Atom suffix_atom(const Atom& a, std::string_view suffix) {
  std::vector<Term> args;
  args.reserve(a.arity());
  for (const Term& t : a.args()) args.push_back(suffix_term(t, suffix));
  return Atom(a.predicate(), std::move(args));
}

}  // namespace

Substitution::Substitution(std::initializer_list<Binding> bindings)
    : bindings_(bindings) {}

const Term* Substitution::lookup(std::string_view var) const {
  for (const auto& [name, value] : bindings_) {
    if (name == var) return &value;
  }
  return nullptr;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::kConstant:
      return t;
    case Term::Kind::kVariable: {
      const Term* bound = lookup(t.name());
      return bound ? *bound : t;
    }
    case Term::Kind::kCompound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(apply(a));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

Atom Substitution::apply(const Atom& a) const {
  if (bindings_.empty()) return a;
  std::vector<Term> args;
  args.reserve(a.arity());
  for (const Term& t : a.args()) args.push_back(apply(t));
  return Atom(a.predicate(), std::move(args));
}

Clause Substitution::apply(const Clause& c) const {
  std::vector<Atom> body;
  body.reserve(c.body_size());
  for (const Atom& b : c.body()) body.push_back(apply(b));
  return Clause(apply(c.head()), std::move(body));
}

bool Substitution::bind(const std::string& var, const Term& value) {
  const Term resolved = apply(value);
  if (resolved.is_variable() && resolved.name() == var) return true;
  if (resolved.contains_variable(var)) return false;
  for (auto& binding : bindings_)
    binding.second = apply_single(binding.second, var, resolved);
  bindings_.emplace_back(var, resolved);
  return true;
}

Substitution Substitution::compose(const Substitution& first,
                                   const Substitution& second) {
  Substitution out;
  for (const auto& [var, value] : first.bindings_) {
    Term v = second.apply(value);
    if (!(v.is_variable() && v.name() == var))
      out.bindings_.emplace_back(var, std::move(v));
  }
  for (const auto& [var, value] : second.bindings_) {
    if (!first.lookup(var)) out.bindings_.emplace_back(var, value);
  }
  return out;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution theta;
  if (!unify_into(a, b, theta)) return std::nullopt;
  return theta;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate() != b.predicate() || a.arity() != b.arity())
    return std::nullopt;
  Substitution theta;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!unify_into(a.arg(i), b.arg(i), theta)) return std::nullopt;
  }
  return theta;
}

std::optional<Substitution> match(const Atom& pattern, const Atom& target) {
  if (pattern.predicate() != target.predicate() ||
      pattern.arity() != target.arity())
    return std::nullopt;
  Substitution theta;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), target.arg(i), theta)) return std::nullopt;
  }
  return theta;
}

Clause rename_apart(const Clause& c, std::string_view suffix) {
  std::vector<Atom> body;
  body.reserve(c.body_size());
  for (const Atom& b : c.body()) body.push_back(suffix_atom(b, suffix));
  return Clause(suffix_atom(c.head(), suffix), std::move(body));
}

}  // namespace dilp
