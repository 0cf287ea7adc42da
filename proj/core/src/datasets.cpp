#include "dilp/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "dilp/entailment.hpp"
#include "dilp/text.hpp"

namespace dilp {
namespace {

using Rng = std::mt19937_64;
using List = std::vector<int>;

const char* const kItems[] = {"a", "b", "c"};

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Term item(int i) { return Term::constant(kItems[i]); }

Term list_term(const List& xs) {
  Term t = Term::constant(std::string(kListNil));
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    t = Term::compound(std::string(kListFunctor), {item(*it), t});
  }
  return t;
}

Term nat_term(int n) {
  Term t = Term::constant("0");
  for (int i = 0; i < n; ++i) t = Term::compound("s", {t});
  return t;
}

List random_list(Rng& rng, int min_len, int max_len) {
  List xs(static_cast<std::size_t>(uniform(rng, min_len, max_len)));
  for (int& x : xs) x = uniform(rng, 0, 2);
  return xs;
}

Term random_tree(Rng& rng, int depth) {
  if (depth == 0 || coin(rng, 0.3)) return item(uniform(rng, 0, 2));
  return Term::compound("f", {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
}

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  for (const Term& a : t.args()) collect_subterms(a, out);
}

bool is_subterm(const Term& s, const Term& t) {
  if (s == t) return true;
  return std::ranges::any_of(t.args(), [&](const Term& a) { return is_subterm(s, a); });
}

/// Replaces one uniformly chosen leaf of `t`.
Term mutate_leaf(const Term& t, Rng& rng) {
  if (!t.is_compound()) return item(uniform(rng, 0, 2));
  std::vector<Term> args(t.args().begin(), t.args().end());
  auto& child = args[static_cast<std::size_t>(uniform(rng, 0, 1))];
  child = mutate_leaf(child, rng);
  return Term::compound(t.name(), std::move(args));
}

bool is_deletion(int x, const List& from, const List& to) {
  if (from.size() != to.size() + 1) return false;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] != x) continue;
    List rest = from;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (rest == to) return true;
  }
  return false;
}

List concat(const List& a, const List& b) {
  List out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// A candidate atom and whether it belongs to the intended relation.
struct Candidate {
  Atom atom;
  bool member = false;
};

Candidate sample(Task task, bool positive, int cap, Rng& rng) {
  switch (task) {
    case Task::kMember: {
      if (positive) {
        List xs = random_list(rng, 1, cap);
        int x = xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
        return {Atom("mem", {item(x), list_term(xs)}), true};
      }
      List xs = random_list(rng, 1, cap);
      int x = uniform(rng, 0, 2);
      bool member = std::ranges::find(xs, x) != xs.end();
      return {Atom("mem", {item(x), list_term(xs)}), member};
    }
    case Task::kPlus: {
      if (positive) {
        int a = uniform(rng, 0, cap);
        int b = uniform(rng, 0, cap - a);
        return {Atom("plus", {nat_term(a), nat_term(b), nat_term(a + b)}), true};
      }
      int a = uniform(rng, 0, cap);
      int b = uniform(rng, 0, cap);
      int c = uniform(rng, 0, cap);
      return {Atom("plus", {nat_term(a), nat_term(b), nat_term(c)}), a + b == c};
    }
    case Task::kAppend: {
      List xs = random_list(rng, 0, std::min(3, cap));
      List ys = random_list(rng, 0, cap - static_cast<int>(xs.size()));
      List zs = concat(xs, ys);
      if (positive) {
        return {Atom("app", {list_term(xs), list_term(ys), list_term(zs)}), true};
      }
      const int n = static_cast<int>(zs.size());
      List other = coin(rng, 0.5) ? random_list(rng, std::max(0, n - 1), std::min(cap, n + 1))
                                  : random_list(rng, 0, cap);
      return {Atom("app", {list_term(xs), list_term(ys), list_term(other)}), other == zs};
    }
    case Task::kDelete: {
      List xs = random_list(rng, 1, cap);
      if (positive) {
        auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1));
        int x = xs[i];
        List rest = xs;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        return {Atom("del", {item(x), list_term(xs), list_term(rest)}), true};
      }
      int x = uniform(rng, 0, 2);
      const int n = static_cast<int>(xs.size());
      List other = coin(rng, 0.7) ? random_list(rng, n - 1, n - 1) : random_list(rng, 0, cap);
      return {Atom("del", {item(x), list_term(xs), list_term(other)}),
              is_deletion(x, xs, other)};
    }
    case Task::kSubtree: {
      Term t = random_tree(rng, cap);
      if (positive) {
        std::vector<Term> subs;
        collect_subterms(t, subs);
        Term s = subs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(subs.size()) - 1))];
        return {Atom("sub", {s, t}), true};
      }
      Term s = t;
      if (coin(rng, 0.5)) {
        std::vector<Term> subs;
        collect_subterms(t, subs);
        s = mutate_leaf(subs[static_cast<std::size_t>(
                            uniform(rng, 0, static_cast<int>(subs.size()) - 1))],
                        rng);
      } else {
        s = random_tree(rng, std::max(0, cap - 1));
      }
      return {Atom("sub", {s, t}), is_subterm(s, t)};
    }
  }
  throw std::logic_error("unknown task");
}

const char* const kTaskNames[] = {"member", "plus", "append", "delete", "subtree"};

}  // namespace

const std::vector<Task>& all_tasks() {
  static const std::vector<Task> tasks = {Task::kMember, Task::kPlus, Task::kAppend,
                                          Task::kDelete, Task::kSubtree};
  return tasks;
}

std::string_view task_name(Task task) { return kTaskNames[static_cast<int>(task)]; }

std::optional<Task> parse_task(std::string_view name) {
  for (Task t : all_tasks()) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

Language task_language(Task task) {
  Language lang;
  auto add_items = [&](bool nil) {
    for (const char* c : kItems) lang.add_constant(c);
    if (nil) lang.add_constant(std::string(kListNil));
  };
  switch (task) {
    case Task::kMember:
      lang.add_predicate("mem", 2);
      lang.add_function("f", 2);
      add_items(true);
      break;
    case Task::kPlus:
      lang.add_predicate("plus", 3);
      lang.add_function("s", 1);
      lang.add_constant("0");
      break;
    case Task::kAppend:
      lang.add_predicate("app", 3);
      lang.add_function("f", 2);
      add_items(true);
      break;
    case Task::kDelete:
      lang.add_predicate("del", 3);
      lang.add_function("f", 2);
      add_items(true);
      break;
    case Task::kSubtree:
      lang.add_predicate("sub", 2);
      lang.add_function("f", 2);
      add_items(false);
      break;
  }
  return lang;
}

std::vector<Atom> task_background(Task task) {
  const Language lang = task_language(task);
  std::vector<std::string> text;
  switch (task) {
    case Task::kMember: text = {"mem(a,[a])", "mem(b,[b])", "mem(c,[c])"}; break;
    case Task::kPlus: text = {"plus(0,0,0)"}; break;
    case Task::kAppend: text = {"app([],[],[])"}; break;
    case Task::kDelete: text = {"del(a,[a],[])", "del(b,[b],[])", "del(c,[c],[])"}; break;
    case Task::kSubtree: text = {"sub(a,a)", "sub(b,b)", "sub(c,c)"}; break;
  }
  std::vector<Atom> out;
  for (const auto& s : text) out.push_back(parse_atom(s, lang));
  return out;
}

std::vector<Clause> task_seed_clauses(Task task) {
  const Language lang = task_language(task);
  switch (task) {
    case Task::kMember: return {parse_clause("mem(x,y)", lang)};
    case Task::kPlus: return {parse_clause("plus(x,y,z)", lang)};
    case Task::kAppend: return {parse_clause("app(x,y,z)", lang)};
    case Task::kDelete: return {parse_clause("del(x,y,z)", lang)};
    case Task::kSubtree: return {parse_clause("sub(x,y)", lang)};
  }
  return {};
}

std::vector<Clause> ground_truth_program(Task task) {
  const Language lang = task_language(task);
  std::vector<std::string> text;
  switch (task) {
    case Task::kMember:
      text = {"mem(x,[y|z]) :- mem(x,z)", "mem(x,[x|y])"};
      break;
    case Task::kPlus:
      text = {"plus(0,x,x)", "plus(x,s(y),s(z)) :- plus(x,y,z)",
              "plus(s(x),y,s(z)) :- plus(y,x,z)"};
      break;
    case Task::kAppend:
      text = {"app([],x,x)", "app(x,[],x)", "app([x|y],z,[x|v]) :- app(y,z,v)"};
      break;
    case Task::kDelete:
      text = {"del(x,[x|y],y)", "del(x,[y|z],[y|v]) :- del(x,z,v)"};
      break;
    case Task::kSubtree:
      text = {"sub(f(x,y),f(x,y))", "sub(x,f(y,z)) :- sub(x,z)", "sub(x,f(y,z)) :- sub(x,y)",
              "sub(x,f(y,x))"};
      break;
  }
  std::vector<Clause> out;
  for (const auto& s : text) out.push_back(parse_clause(s, lang));
  return out;
}

int task_inference_steps(Task task) { return task == Task::kPlus ? 8 : 4; }

int default_max_size(Task task) {
  switch (task) {
    case Task::kPlus: return 9;
    case Task::kSubtree: return 3;
    default: return 5;
  }
}

Problem generate(const TaskSpec& spec) {
  Problem q;
  q.language = task_language(spec.task);
  q.background = task_background(spec.task);
  q.initial_clauses = task_seed_clauses(spec.task);
  if (spec.examples_per_class <= 0) return q;

  const int cap = spec.max_size > 0 ? spec.max_size : default_max_size(spec.task);
  const auto program = ground_truth_program(spec.task);
  Prover prover(program, q.background, {task_inference_steps(spec.task)});
  std::set<Atom> seen(q.background.begin(), q.background.end());
  Rng rng(spec.seed);

  const auto want = static_cast<std::size_t>(spec.examples_per_class);
  const std::size_t max_attempts = 2000 * want + 10000;
  for (bool positive : {true, false}) {
    auto& bucket = positive ? q.positives : q.negatives;
    std::size_t attempts = 0;
    while (bucket.size() < want) {
      if (++attempts > max_attempts) {
        throw std::runtime_error("cannot sample " + std::to_string(want) + " " +
                                 (positive ? "positive" : "negative") +
                                 " examples for task " + std::string(task_name(spec.task)) +
                                 " under size cap " + std::to_string(cap));
      }
      Candidate c = sample(spec.task, positive, cap, rng);
      if (c.member != positive || seen.contains(c.atom)) continue;
      if (prover.entails(c.atom) != positive) continue;
      seen.insert(c.atom);
      bucket.push_back(std::move(c.atom));
    }
  }
  return q;
}

Problem inject_noise(const Problem& q, double fraction, std::uint64_t seed) {
  std::vector<LabeledAtom> all;
  for (const Atom& e : q.positives) all.push_back({e, 1});
  for (const Atom& e : q.negatives) all.push_back({e, 0});
  std::ranges::sort(all, [](const LabeledAtom& a, const LabeledAtom& b) {
    return a.atom < b.atom;
  });
  // The small slack keeps products such as 0.3 * 10 from rounding down.
  const auto flips = static_cast<std::size_t>(
      std::floor(std::clamp(fraction, 0.0, 1.0) * static_cast<double>(all.size()) + 1e-9));

  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<Atom> flipped;
  for (std::size_t i = 0; i < flips; ++i) flipped.insert(all[order[i]].atom);

  Problem out = q;
  out.positives.clear();
  out.negatives.clear();
  for (const Atom& e : q.positives) (flipped.contains(e) ? out.negatives : out.positives).push_back(e);
  for (const Atom& e : q.negatives) (flipped.contains(e) ? out.positives : out.negatives).push_back(e);
  return out;
}

Split split(const Problem& q, double fraction, std::uint64_t seed) {
  Split out;
  out.train = q;
  out.train.positives.clear();
  out.train.negatives.clear();
  Rng rng(seed);
  auto take = [&](const std::vector<Atom>& examples, std::vector<Atom>& train, int label) {
    std::vector<Atom> shuffled = examples;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::lround(std::clamp(fraction, 0.0, 1.0) * static_cast<double>(shuffled.size())));
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
      if (i < n_train) {
        train.push_back(shuffled[i]);
      } else {
        out.test.push_back({shuffled[i], label});
      }
    }
  };
  take(q.positives, out.train.positives, 1);
  take(q.negatives, out.train.negatives, 0);
  return out;
}

}  // namespace dilp
