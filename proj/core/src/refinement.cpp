#include "dilp/refinement.hpp"

#include <algorithm>
#include <map>

#include "dilp/substitution.hpp"
#include "dilp/text.hpp"

namespace dilp {

std::vector<Clause> refine_function(const Clause& c, const Language& lang) {
  std::vector<Clause> out;
  const auto vars = c.variables();
  std::vector<std::string> unused;
  for (const auto& v : lang.variables()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) unused.push_back(v);
  }
  for (const auto& z : vars) {
    for (const auto& f : lang.functions()) {
      std::vector<std::string> pool = unused;
      pool.push_back(z);
      if (pool.size() < static_cast<std::size_t>(f.arity)) continue;
      std::vector<Term> args;
      for (int i = 0; i < f.arity; ++i) args.push_back(Term::variable(pool[i]));
      Substitution theta{{z, Term::compound(f.name, std::move(args))}};
      out.push_back(theta.apply(c));
    }
  }
  return out;
}

std::vector<Clause> refine_constant(const Clause& c, const Language& lang) {
  std::vector<Clause> out;
  for (const auto& z : c.variables()) {
    for (const auto& a : lang.constants()) {
      Substitution theta{{z, Term::constant(a)}};
      out.push_back(theta.apply(c));
    }
  }
  return out;
}

std::vector<Clause> refine_merge(const Clause& c) {
  std::vector<Clause> out;
  const auto vars = c.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      Substitution theta{{vars[j], Term::variable(vars[i])}};
      out.push_back(theta.apply(c));
    }
  }
  return out;
}

std::vector<Clause> refine_add_atom(const Clause& c, const Language& lang) {
  std::vector<Clause> out;
  for (const auto& p : lang.predicates()) {
    if (p.arity == 0) {
      out.push_back(c.with_body_atom(Atom(p.name, {})));
      continue;
    }
    for (const auto& tuple : distinct_var_tuples(c, static_cast<std::size_t>(p.arity))) {
      std::vector<Term> args;
      args.reserve(tuple.size());
      for (const auto& v : tuple) args.push_back(Term::variable(v));
      out.push_back(c.with_body_atom(Atom(p.name, std::move(args))));
    }
  }
  return out;
}

std::vector<Clause> refine(const Clause& c, const Language& lang,
                           const RefinementConfig& cfg) {
  const std::string self = canonical_text(c);
  std::map<std::string, Clause> kept;
  auto consider = [&](std::vector<Clause> candidates) {
    for (auto& r : candidates) {
      if (static_cast<int>(r.body_size()) > cfg.max_body) continue;
      if (r.nest_depth() > cfg.nest_limit()) continue;
      std::string key = canonical_text(r);
      if (key == self) continue;
      kept.try_emplace(std::move(key), std::move(r));
    }
  };
  consider(refine_function(c, lang));
  consider(refine_constant(c, lang));
  consider(refine_merge(c));
  consider(refine_add_atom(c, lang));

  std::vector<Clause> out;
  out.reserve(kept.size());
  for (auto& [key, clause] : kept) out.push_back(std::move(clause));
  return out;
}

}  // namespace dilp
