#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dilp/syntax.hpp"

namespace dilp {

struct Symbol {
  std::string name;
  int arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// (P, F, A, V): predicates, function symbols, constants and the finite,
/// ordered variable supply.
class Language {
 public:
  static const std::vector<std::string>& default_variables();

  Language() : variables_(default_variables()) {}

  void add_predicate(std::string name, int arity);
  void add_function(std::string name, int arity);
  void add_constant(std::string name);
  void set_variables(std::vector<std::string> vars);

  const std::vector<Symbol>& predicates() const { return predicates_; }
  const std::vector<Symbol>& functions() const { return functions_; }
  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<std::string>& variables() const { return variables_; }

  std::optional<int> predicate_arity(std::string_view name) const;
  std::optional<int> function_arity(std::string_view name) const;
  bool is_constant(std::string_view name) const;
  bool is_variable(std::string_view name) const;

  /// Lists are written with sugar when f/2 and the constant `*` exist.
  bool has_list_sugar() const;

  friend bool operator==(const Language&, const Language&) = default;

 private:
  std::vector<Symbol> predicates_;
  std::vector<Symbol> functions_;
  std::vector<std::string> constants_;
  std::vector<std::string> variables_;
};

inline constexpr std::string_view kListFunctor = "f";
inline constexpr std::string_view kListNil = "*";

}  // namespace dilp
