#include "dilp/grounding.hpp"

#include <algorithm>

#include "dilp/substitution.hpp"

namespace dilp {

AtomTable::AtomTable() {
  insert(Atom::bottom());
  insert(Atom::top());
}

AtomTable::AtomTable(std::span<const Atom> atoms) : AtomTable() {
  for (const Atom& a : atoms) insert(a);
}

std::int32_t AtomTable::insert(const Atom& atom) {
  auto [it, inserted] =
      index_.try_emplace(atom, static_cast<std::int32_t>(atoms_.size()));
  if (inserted) atoms_.push_back(atom);
  return it->second;
}

std::optional<std::int32_t> AtomTable::find(const Atom& atom) const {
  auto it = index_.find(atom);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AtomTable enumerate_atoms(const Problem& q, std::span<const Clause> clauses, int steps,
                          std::span<const Atom> extra_seeds, EnumerationStats* stats) {
  AtomTable table;
  for (const auto* group : {&q.positives, &q.negatives, &q.background}) {
    for (const Atom& a : *group) table.insert(a);
  }
  for (const Atom& a : extra_seeds) table.insert(a);

  std::size_t skipped = 0;
  for (int round = 0; round < steps; ++round) {
    const std::size_t frontier = table.size();
    std::vector<Atom> found;
    for (const Clause& clause : clauses) {
      if (clause.is_fact()) continue;
      for (std::size_t j = 0; j < frontier; ++j) {
        const Atom& g = table[j];
        if (g.is_special()) continue;
        auto theta = unify(clause.head(), g);
        if (!theta) continue;
        for (const Atom& b : clause.body()) {
          Atom sub = theta->apply(b);
          if (sub.is_ground()) {
            found.push_back(std::move(sub));
          } else {
            ++skipped;
          }
        }
      }
    }
    const std::size_t before = table.size();
    for (const Atom& a : found) table.insert(a);
    if (table.size() == before) break;
  }
  if (stats) stats->skipped_nonground += skipped;
  return table;
}

IndexTensor build_index_tensor(std::span<const Clause> clauses, const AtomTable& atoms) {
  IndexTensor x;
  x.clauses = clauses.size();
  x.atoms = atoms.size();
  x.width = 1;
  for (const Clause& c : clauses) x.width = std::max(x.width, c.body_size());
  x.data.assign(x.clauses * x.atoms * x.width, AtomTable::kBottom);

  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const Clause& clause = clauses[i];
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      std::int32_t* cell = &x.data[(i * x.atoms + j) * x.width];
      const Atom& g = atoms[j];
      if (g.is_bottom()) continue;
      if (g.is_top()) {
        std::fill(cell, cell + x.width, AtomTable::kTop);
        continue;
      }
      auto theta = unify(clause.head(), g);
      if (!theta) continue;
      for (std::size_t k = 0; k < x.width; ++k) {
        if (k >= clause.body_size()) {
          cell[k] = AtomTable::kTop;
          continue;
        }
        const Atom sub = theta->apply(clause.body()[k]);
        if (!sub.is_ground()) continue;
        cell[k] = atoms.find(sub).value_or(AtomTable::kBottom);
      }
    }
  }
  return x;
}

std::vector<double> convert_background(std::span<const Atom> background,
                                       const AtomTable& atoms) {
  std::vector<double> v(atoms.size(), 0.0);
  v[AtomTable::kTop] = 1.0;
  for (const Atom& b : background) {
    if (auto idx = atoms.find(b)) v[static_cast<std::size_t>(*idx)] = 1.0;
  }
  v[AtomTable::kBottom] = 0.0;
  return v;
}

GroundContext make_ground_context(const Problem& q, std::span<const Clause> clauses,
                                  int steps, std::span<const Atom> extra_seeds) {
  GroundContext ctx;
  ctx.atoms = enumerate_atoms(q, clauses, steps, extra_seeds, &ctx.stats);
  ctx.index = build_index_tensor(clauses, ctx.atoms);
  ctx.initial = convert_background(q.background, ctx.atoms);
  return ctx;
}

}  // namespace dilp
