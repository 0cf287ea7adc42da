#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dilp {

/// A first-order term: constant, variable or compound f(t1,...,tn).
///
/// Terms are immutable values. Equality and ordering are structural, so
/// two terms compare equal exactly when they print identically.
class Term {
 public:
  enum class Kind : std::uint8_t { kConstant, kVariable, kCompound };

  static Term constant(std::string name);
  static Term variable(std::string name);
  /// `args` must be non-empty.
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::kConstant; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_compound() const { return kind_ == Kind::kCompound; }

  /// Constant name, variable name or functor.
  const std::string& name() const { return name_; }
  std::size_t arity() const { return args_.size(); }
  std::span<const Term> args() const { return args_; }
  const Term& arg(std::size_t i) const { return args_[i]; }

  bool is_ground() const;
  bool contains_variable(std::string_view var) const;
  /// 0 for constants and variables, 1 + max over arguments otherwise.
  int nest_depth() const;
  std::size_t size() const;

  /// Appends variables in first-occurrence order, skipping duplicates.
  void collect_variables(std::vector<std::string>& out) const;

  std::size_t hash() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_ = Kind::kConstant;
  std::string name_;
  std::vector<Term> args_;
};

/// p(t1,...,tn). The nullary atoms `true` and `false` play the role of the
/// distinguished top and bottom atoms.
class Atom {
 public:
  Atom() = default;
  Atom(std::string predicate, std::vector<Term> args)
      : predicate_(std::move(predicate)), args_(std::move(args)) {}

  static const Atom& top();
  static const Atom& bottom();
  static constexpr std::string_view kTopName = "true";
  static constexpr std::string_view kBottomName = "false";

  const std::string& predicate() const { return predicate_; }
  std::size_t arity() const { return args_.size(); }
  std::span<const Term> args() const { return args_; }
  const Term& arg(std::size_t i) const { return args_[i]; }

  bool is_top() const { return args_.empty() && predicate_ == kTopName; }
  bool is_bottom() const { return args_.empty() && predicate_ == kBottomName; }
  bool is_special() const { return is_top() || is_bottom(); }

  bool is_ground() const;
  int nest_depth() const;
  void collect_variables(std::vector<std::string>& out) const;
  std::size_t hash() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

 private:
  std::string predicate_;
  std::vector<Term> args_;
};

/// Definite clause head :- body. An empty body makes it a fact pattern.
class Clause {
 public:
  Clause() = default;
  explicit Clause(Atom head, std::vector<Atom> body = {})
      : head_(std::move(head)), body_(std::move(body)) {}

  const Atom& head() const { return head_; }
  std::span<const Atom> body() const { return body_; }
  std::size_t body_size() const { return body_.size(); }
  bool is_fact() const { return body_.empty(); }

  /// V(C) in first-occurrence order, head first then body left to right.
  std::vector<std::string> variables() const;
  bool is_ground() const;
  /// Maximum nest depth over every term in head and body.
  int nest_depth() const;

  /// Variables renamed to V0, V1, ... by first occurrence. Alpha-equivalent
  /// clauses have identical canonical forms.
  Clause canonical() const;

  Clause with_body_atom(Atom atom) const;

  std::size_t hash() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend std::strong_ordering operator<=>(const Clause& a, const Clause& b);

 private:
  Atom head_;
  std::vector<Atom> body_;
};

bool alpha_equivalent(const Clause& a, const Clause& b);

/// Every ordered n-tuple of pairwise-distinct variables of C, in
/// lexicographic order of first-occurrence positions. Empty when C has fewer
/// than n variables.
std::vector<std::vector<std::string>> distinct_var_tuples(const Clause& c,
                                                          std::size_t n);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct AtomHash {
  std::size_t operator()(const Atom& a) const { return a.hash(); }
};
struct ClauseHash {
  std::size_t operator()(const Clause& c) const { return c.hash(); }
};

}  // namespace dilp
