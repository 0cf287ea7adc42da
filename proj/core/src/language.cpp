#include "dilp/language.hpp"

#include <algorithm>
#include <stdexcept>

namespace dilp {
namespace {

template <typename Range, typename Pred>
bool contains_if(const Range& r, Pred p) {
  return std::find_if(r.begin(), r.end(), p) != r.end();
}

}  // namespace

const std::vector<std::string>& Language::default_variables() {
  static const std::vector<std::string> vars{"x", "y", "z", "v", "w"};
  return vars;
}

void Language::add_predicate(std::string name, int arity) {
  if (name == Atom::kTopName || name == Atom::kBottomName)
    throw std::invalid_argument("reserved predicate name: " + name);
  if (predicate_arity(name))
    throw std::invalid_argument("duplicate predicate: " + name);
  predicates_.push_back({std::move(name), arity});
}

void Language::add_function(std::string name, int arity) {
  if (arity < 1) throw std::invalid_argument("function arity must be >= 1");
  if (function_arity(name))
    throw std::invalid_argument("duplicate function symbol: " + name);
  functions_.push_back({std::move(name), arity});
}

void Language::add_constant(std::string name) {
  if (is_constant(name)) throw std::invalid_argument("duplicate constant: " + name);
  constants_.push_back(std::move(name));
}

void Language::set_variables(std::vector<std::string> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i] == vars[j])
        throw std::invalid_argument("duplicate variable: " + vars[i]);
    }
  }
  variables_ = std::move(vars);
}

std::optional<int> Language::predicate_arity(std::string_view name) const {
  for (const auto& p : predicates_)
    if (p.name == name) return p.arity;
  return std::nullopt;
}

std::optional<int> Language::function_arity(std::string_view name) const {
  for (const auto& f : functions_)
    if (f.name == name) return f.arity;
  return std::nullopt;
}

bool Language::is_constant(std::string_view name) const {
  return contains_if(constants_, [&](const std::string& c) { return c == name; });
}

bool Language::is_variable(std::string_view name) const {
  return contains_if(variables_, [&](const std::string& v) { return v == name; });
}

bool Language::has_list_sugar() const {
  return function_arity(kListFunctor) == 2 && is_constant(kListNil);
}

}  // namespace dilp
