#include "dilp/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace dilp {
namespace {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::strong_ordering compare_args(std::span<const Term> a,
                                  std::span<const Term> b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

Term rename_term(const Term& t,
                 const std::unordered_map<std::string, std::string>& names) {
  switch (t.kind()) {
    case Term::Kind::kConstant:
      return t;
    case Term::Kind::kVariable:
      return Term::variable(names.at(t.name()));
    case Term::Kind::kCompound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(rename_term(a, names));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

Atom rename_atom(const Atom& a,
                 const std::unordered_map<std::string, std::string>& names) {
  std::vector<Term> args;
  args.reserve(a.arity());
  for (const Term& t : a.args()) args.push_back(rename_term(t, names));
  return Atom(a.predicate(), std::move(args));
}

}  // namespace

// ---------------------------------------------------------------- Term

Term Term::constant(std::string name) {
  return Term(Kind::kConstant, std::move(name), {});
}

Term Term::variable(std::string name) {
  return Term(Kind::kVariable, std::move(name), {});
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  assert(!args.empty());
  return Term(Kind::kCompound, std::move(functor), std::move(args));
}

bool Term::is_ground() const {
  if (kind_ == Kind::kVariable) return false;
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& t) { return t.is_ground(); });
}

bool Term::contains_variable(std::string_view var) const {
  if (kind_ == Kind::kVariable) return name_ == var;
  return std::any_of(args_.begin(), args_.end(), [&](const Term& t) {
    return t.contains_variable(var);
  });
}

int Term::nest_depth() const {
  int depth = 0;
  for (const Term& a : args_) depth = std::max(depth, a.nest_depth());
  return kind_ == Kind::kCompound ? depth + 1 : 0;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const Term& a : args_) n += a.size();
  return n;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (kind_ == Kind::kVariable) {
    if (std::find(out.begin(), out.end(), name_) == out.end())
      out.push_back(name_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

std::size_t Term::hash() const {
  std::size_t seed = static_cast<std::size_t>(kind_);
  hash_combine(seed, std::hash<std::string>{}(name_));
  for (const Term& a : args_) hash_combine(seed, a.hash());
  return seed;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_) <=> 0; c != 0) return c;
  return compare_args(a.args_, b.args_);
}

// ---------------------------------------------------------------- Atom

const Atom& Atom::top() {
  static const Atom atom(std::string(kTopName), {});
  return atom;
}

const Atom& Atom::bottom() {
  static const Atom atom(std::string(kBottomName), {});
  return atom;
}

bool Atom::is_ground() const {
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& t) { return t.is_ground(); });
}

int Atom::nest_depth() const {
  int depth = 0;
  for (const Term& a : args_) depth = std::max(depth, a.nest_depth());
  return depth;
}

void Atom::collect_variables(std::vector<std::string>& out) const {
  for (const Term& a : args_) a.collect_variables(out);
}

std::size_t Atom::hash() const {
  std::size_t seed = std::hash<std::string>{}(predicate_);
  for (const Term& a : args_) hash_combine(seed, a.hash());
  return seed;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate_.compare(b.predicate_) <=> 0; c != 0) return c;
  return compare_args(a.args_, b.args_);
}

// ---------------------------------------------------------------- Clause

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> vars;
  head_.collect_variables(vars);
  for (const Atom& b : body_) b.collect_variables(vars);
  return vars;
}

bool Clause::is_ground() const {
  return head_.is_ground() &&
         std::all_of(body_.begin(), body_.end(),
                     [](const Atom& a) { return a.is_ground(); });
}

int Clause::nest_depth() const {
  int depth = head_.nest_depth();
  for (const Atom& b : body_) depth = std::max(depth, b.nest_depth());
  return depth;
}

Clause Clause::canonical() const {
  std::unordered_map<std::string, std::string> names;
  const auto vars = variables();
  for (std::size_t i = 0; i < vars.size(); ++i)
    names.emplace(vars[i], "V" + std::to_string(i));
  std::vector<Atom> body;
  body.reserve(body_.size());
  for (const Atom& b : body_) body.push_back(rename_atom(b, names));
  return Clause(rename_atom(head_, names), std::move(body));
}

Clause Clause::with_body_atom(Atom atom) const {
  std::vector<Atom> body = body_;
  body.push_back(std::move(atom));
  return Clause(head_, std::move(body));
}

std::size_t Clause::hash() const {
  std::size_t seed = head_.hash();
  for (const Atom& b : body_) hash_combine(seed, b.hash());
  return seed;
}

std::strong_ordering operator<=>(const Clause& a, const Clause& b) {
  if (auto c = a.head_ <=> b.head_; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.body_.begin(), a.body_.end(), b.body_.begin(), b.body_.end());
}

bool alpha_equivalent(const Clause& a, const Clause& b) {
  return a.canonical() == b.canonical();
}

std::vector<std::vector<std::string>> distinct_var_tuples(const Clause& c,
                                                          std::size_t n) {
  std::vector<std::vector<std::string>> out;
  const auto vars = c.variables();
  if (n == 0 || vars.size() < n) return out;
  std::vector<std::string> tuple;
  std::vector<bool> used(vars.size(), false);
  auto rec = [&](auto&& self) -> void {
    if (tuple.size() == n) {
      out.push_back(tuple);
      return;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple.push_back(vars[i]);
      self(self);
      tuple.pop_back();
      used[i] = false;
    }
  };
  rec(rec);
  return out;
}

}  // namespace dilp
