// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Pass criterion numbers as arguments to
// run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dilp/clause_search.hpp"
#include "dilp/datasets.hpp"
#include "dilp/entailment.hpp"
#include "dilp/grounding.hpp"
#include "dilp/infer.hpp"
#include "dilp/pipeline.hpp"
#include "dilp/refinement.hpp"
#include "dilp/text.hpp"
#include "dilp/training.hpp"

#ifndef DILP_PROPERTIES_BINARY
#error "DILP_PROPERTIES_BINARY must name the property test executable"
#endif

using namespace dilp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::set<std::string> canonical_set(const std::vector<Clause>& cs) {
  std::set<std::string> out;
  for (const Clause& c : cs) out.insert(canonical_text(c));
  return out;
}

// ---------------------------------------------------------------------------
// 1. Golden worked examples.

Outcome golden_examples() {
  const auto start = Clock::now();
  Outcome o;
  std::vector<std::string> failures;

  {
    Language lang;
    lang.add_predicate("p", 2);
    lang.add_predicate("q", 2);
    lang.add_function("f", 1);
    lang.add_constant("a");
    lang.add_constant("b");
    lang.set_variables({"x", "y", "z"});
    const auto got = canonical_set(refine(parse_clause("p(x,y)", lang), lang, {1, 1, 0}));
    for (const char* c : {"p(a,y)", "p(x,a)", "p(b,y)", "p(x,b)", "p(f(z),y)", "p(x,f(z))",
                          "p(x,x)", "p(x,y) :- q(x,y)"}) {
      if (!got.contains(canonical_text(parse_clause(c, lang)))) {
        failures.push_back(std::string("refinement missing ") + c);
      }
    }
  }

  {
    Problem q;
    q.language.add_predicate("p", 2);
    q.language.add_predicate("q", 2);
    q.language.add_function("f", 1);
    for (const char* c : {"a", "b", "c"}) q.language.add_constant(c);
    q.language.set_variables({"x", "y", "z"});
    for (const char* e : {"p(a,a)", "p(b,b)", "p(b,c)", "p(c,b)"}) {
      q.positives.push_back(parse_atom(e, q.language));
    }
    for (const char* e : {"q(b,c)", "q(c,b)"}) q.background.push_back(parse_atom(e, q.language));
    q.initial_clauses.push_back(parse_clause("p(x,y)", q.language));
    const auto r = beam_search(q.initial_clauses, q, {2, 2, true, 0.0}, {1, 1, 0}, {4});
    const auto got = canonical_set(r.clauses);
    for (const char* c : {"p(x,y)", "p(x,x)", "p(x,y) :- q(x,y)"}) {
      if (!got.contains(canonical_text(parse_clause(c, q.language)))) {
        failures.push_back(std::string("beam result missing ") + c);
      }
    }
  }

  Language even;
  even.add_predicate("e", 1);
  even.add_function("s", 1);
  even.add_constant("0");
  auto nat = [&](int n) {
    std::string t = "0";
    for (int i = 0; i < n; ++i) t = "s(" + t + ")";
    return parse_atom("e(" + t + ")", even);
  };
  const Clause step = parse_clause("e(s(s(x))) :- e(x)", even);

  {
    Problem q;
    q.language = even;
    q.positives = {nat(6)};
    q.negatives = {nat(1)};
    q.background = {nat(0)};
    const std::vector<Clause> clauses = {step};
    const AtomTable g = enumerate_atoms(q, clauses, 2);
    const std::set<Atom> got(g.atoms().begin(), g.atoms().end());
    const std::set<Atom> want = {Atom::bottom(), Atom::top(), nat(0), nat(1),
                                 nat(2),         nat(4),      nat(6)};
    if (got != want) failures.push_back("enumerated atom set differs");
    if (got.contains(nat(3)) || got.contains(nat(5))) failures.push_back("odd atoms enumerated");
  }

  {
    const AtomTable g(std::vector<Atom>{nat(0), nat(1), nat(2), nat(4)});
    const std::vector<Clause> clauses = {parse_clause("e(x)", even), step};
    const IndexTensor x = build_index_tensor(clauses, g);
    const std::vector<std::int32_t> row0 = {0, 1, 1, 1, 1, 1};
    const std::vector<std::int32_t> row1 = {0, 1, 0, 0, 2, 4};
    bool same = x.clauses == 2 && x.atoms == 6 && x.width == 1;
    for (std::size_t j = 0; same && j < 6; ++j) {
      same = x(0, j, 0) == row0[j] && x(1, j, 0) == row1[j];
    }
    if (!same) failures.push_back("index tensor differs");
  }

  o.pass = failures.empty();
  o.detail = o.pass ? "refinement, beam, enumeration and index tensor match"
                    : failures.front();
  o.detail += fmt(" (%.3f s)", seconds_since(start));
  return o;
}

// ---------------------------------------------------------------------------
// 2. Soft inference with one-hot reference weights equals the symbolic closure.

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::size_t mismatches = 0, instances = 0, atoms = 0;
  std::string first;
  for (Task task : all_tasks()) {
    const auto program = ground_truth_program(task);
    const int steps = task_inference_steps(task);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Problem q = generate({task, 5, 0, 1000 + seed});
      const GroundContext ctx = make_ground_context(q, program, steps);
      WeightSet w = WeightSet::multi(program.size(), program.size());
      for (std::size_t l = 0; l < program.size(); ++l) {
        for (std::size_t i = 0; i < program.size(); ++i) w.row(l)[i] = i == l ? 0.0 : -1e4;
      }
      const auto v = infer(ctx.index, ctx.initial, w, {steps, 1e-3, false});
      const auto closure = forward_closure(program, q.background, ctx.atoms.atoms(), steps);
      const std::set<Atom> truth(closure.begin(), closure.end());
      for (std::size_t j = 0; j < ctx.atoms.size(); ++j) {
        const bool soft = std::lround(v[j]) == 1;
        if (soft != truth.contains(ctx.atoms[j])) {
          if (first.empty()) {
            first = fmt("%s seed %llu atom %s v=%.4f", std::string(task_name(task)).c_str(),
                        static_cast<unsigned long long>(seed), to_string(ctx.atoms[j]).c_str(),
                        v[j]);
          }
          ++mismatches;
        }
      }
      atoms += ctx.atoms.size();
      ++instances;
    }
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = fmt("%zu instances, %zu atoms, %zu mismatches", instances, atoms, mismatches);
  if (!first.empty()) o.detail += "; first: " + first;
  o.detail += fmt(" (%.1f s)", seconds_since(start));
  return o;
}

// ---------------------------------------------------------------------------
// 3. Analytic gradients against central finite differences.

Outcome gradient_check() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const double gamma = 0.1, h = 1e-4;
  double worst = 0.0;
  std::size_t checked = 0;
  int instances = 0;
  std::size_t max_g = 0, max_c = 0;
  for (int attempt = 0; instances < 20 && attempt < 2000; ++attempt) {
    const Task task = all_tasks()[static_cast<std::size_t>(pick(0, 4))];
    const Problem q = generate({task, 2, task == Task::kPlus ? 4 : 2,
                                static_cast<std::uint64_t>(attempt)});
    std::vector<Clause> pool = ground_truth_program(task);
    for (const Clause& c : refine(task_seed_clauses(task).front(), q.language, {1, 1, 0})) {
      pool.push_back(c);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(pick(2, 6))));
    const int steps = pick(1, 3);
    const GroundContext ctx = make_ground_context(q, pool, steps);
    if (ctx.atoms.size() > 40) continue;
    ++instances;
    max_g = std::max(max_g, ctx.atoms.size());
    max_c = std::max(max_c, pool.size());

    const bool pair = instances % 2 == 0;
    WeightSet w = pair ? WeightSet::pair(pool.size())
                       : WeightSet::multi(static_cast<std::size_t>(pick(1, 3)), pool.size());
    for (double& x : w.values()) x = normal(rng);
    std::vector<double> coef(ctx.atoms.size());
    for (double& c : coef) c = normal(rng);
    const InferConfig cfg{steps, gamma, false};
    auto objective = [&](const WeightSet& ws) {
      const auto v = infer(ctx.index, ctx.initial, ws, cfg);
      double s = 0;
      for (std::size_t j = 0; j < v.size(); ++j) s += coef[j] * v[j];
      return s;
    };

    InferenceTrace trace;
    infer(ctx.index, ctx.initial, w, cfg, &trace);
    w.zero_grad();
    backward(ctx.index, w, cfg, trace, coef);
    for (std::size_t i = 0; i < w.parameter_count(); ++i) {
      const double analytic = w.grads()[i];
      if (std::abs(analytic) <= 1e-8) continue;
      WeightSet plus = w, minus = w;
      plus.values()[i] += h;
      minus.values()[i] -= h;
      const double fd = (objective(plus) - objective(minus)) / (2 * h);
      worst = std::max(worst, std::abs(analytic - fd) / std::max(std::abs(analytic), std::abs(fd)));
      ++checked;
    }
  }
  Outcome o;
  o.pass = instances == 20 && checked > 0 && worst < 1e-4;
  o.detail = fmt("%d instances (|C|<=%zu, |G|<=%zu), %zu partials, max relative error %.2e (%.1f s)",
                 instances, max_c, max_g, checked, worst, seconds_since(start));
  return o;
}

// ---------------------------------------------------------------------------
// Shared five-seed runs on clean data with the task defaults.

struct SeedRun {
  std::uint64_t seed;
  RunResult result;
};

std::map<Task, std::vector<SeedRun>> g_clean_runs;
double g_clean_seconds = 0.0;

const std::vector<SeedRun>& clean_runs(Task task) {
  auto it = g_clean_runs.find(task);
  if (it != g_clean_runs.end()) return it->second;
  const auto start = Clock::now();
  std::vector<SeedRun> runs;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Problem full = generate({task, 50, 0, seed});
    RunConfig cfg = default_config(task);
    cfg.train.seed = seed;
    runs.push_back({seed, run_experiment(full, cfg)});
  }
  g_clean_seconds += seconds_since(start);
  return g_clean_runs.emplace(task, std::move(runs)).first->second;
}

// ---------------------------------------------------------------------------
// 4. Reference programs recovered on clean data.

Outcome reference_programs() {
  Outcome o;
  std::ostringstream detail;
  for (Task task : all_tasks()) {
    const auto& runs = clean_runs(task);
    int good = 0;
    const bool exact = task == Task::kMember || task == Task::kDelete;
    const auto want = canonical_set(ground_truth_program(task));
    for (const auto& r : runs) {
      if (exact) {
        std::vector<Clause> got;
        for (const auto& pc : r.result.program.clauses) got.push_back(pc.clause);
        good += canonical_set(got) == want ? 1 : 0;
      } else {
        good += r.result.test_metrics.mse < 0.01 ? 1 : 0;
      }
    }
    const int needed = exact ? 3 : 1;
    if (good < needed) o.pass = false;
    detail << task_name(task) << ' ' << good << "/5" << (exact ? " exact" : " mse<0.01")
           << "; ";
  }
  if (g_clean_seconds > 15 * 60) o.pass = false;
  detail << fmt("%.0f s", g_clean_seconds);
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 5. Label-noise robustness.

Outcome noise_robustness() {
  const auto start = Clock::now();
  Outcome o;
  std::ostringstream detail;
  const auto values = default_sweep_values(SweepAxis::kNoise);
  for (Task task : {Task::kMember, Task::kSubtree}) {
    const auto rows =
        sweep(task, SweepAxis::kNoise, values, {0, 1, 2, 3, 4}, default_config(task), 50);
    std::map<double, std::vector<double>> by_value;
    for (const auto& r : rows) by_value[r.value].push_back(r.metric);
    std::vector<double> means;
    for (double v : values) {
      const auto& ms = by_value[v];
      double s = 0;
      for (double m : ms) s += m;
      means.push_back(s / static_cast<double>(ms.size()));
    }
    auto mean_at = [&](double v) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i] - v) < 1e-9) return means[i];
      }
      return std::nan("");
    };
    int inversions = 0;
    for (std::size_t i = 0; i + 1 < means.size(); ++i) inversions += means[i + 1] < means[i];
    const double at10 = mean_at(0.1);
    const bool ok = at10 < 0.05 && mean_at(0.0) <= mean_at(0.3) && inversions <= 1;
    if (!ok) o.pass = false;
    detail << task_name(task) << fmt(": mse@0.1=%.4f mse@0=%.2e mse@0.3=%.4f inversions=%d; ",
                                     at10, mean_at(0.0), mean_at(0.3), inversions);
  }
  detail << fmt("%.0f s", seconds_since(start));
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 6. Beam search against example-blind generation.

Outcome beam_vs_naive() {
  const auto start = Clock::now();
  Outcome o;
  std::ostringstream detail;
  for (Task task : {Task::kAppend, Task::kDelete}) {
    bool perfect = false;
    std::size_t best_count = 0;
    for (const auto& r : clean_runs(task)) {
      if (r.result.test_metrics.auc == 1.0 && r.result.clauses.size() <= 40) {
        perfect = true;
        best_count = r.result.clauses.size();
      }
    }
    double naive = 0, beam = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Problem full = generate({task, 50, 0, seed});
      RunConfig cfg = default_config(task);
      cfg.train.seed = seed;
      RunConfig n = cfg;
      n.naive_clauses = 10;
      RunConfig b = cfg;
      b.clause_limit = 10;
      naive += run_experiment(full, n).test_metrics.auc / 5;
      beam += run_experiment(full, b).test_metrics.auc / 5;
    }
    if (!perfect || !(naive < beam)) o.pass = false;
    detail << task_name(task) << ": AUC=1 ";
    if (perfect) {
      detail << "with |C|=" << best_count;
    } else {
      detail << "not reached";
    }
    detail << fmt(", mean AUC at 10 clauses naive %.3f vs beam %.3f; ", naive, beam);
  }
  detail << fmt("%.0f s", seconds_since(start));
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 7. Parameter counts and per-step cost of the two weight layouts.

Outcome weight_layouts() {
  Outcome o;
  const bool symbolic = WeightSet::multi(2, 12).parameter_count() == 24 &&
                        WeightSet::pair(12).parameter_count() == 144;

  const Problem member = generate({Task::kMember, 50, 0, 0});
  RunConfig cfg = default_config(Task::kMember);
  cfg.naive_clauses = 12;
  cfg.train.epochs = 0;
  const RunResult multi_run = run_experiment(member, cfg);
  cfg.train.mode = WeightMode::kPair;
  const RunResult pair_run = run_experiment(member, cfg);
  const bool concrete = multi_run.clauses.size() == 12 &&
                        multi_run.weights.parameter_count() == 24 &&
                        pair_run.weights.parameter_count() == 144;

  const Problem plus = generate({Task::kPlus, 50, 0, 0});
  const RunConfig pcfg = default_config(Task::kPlus);
  const auto clauses = generate_clauses(plus, pcfg);
  const GroundContext ctx = make_ground_context(plus, clauses, pcfg.train.steps);
  const InferConfig icfg = pcfg.train.infer_config();
  auto time_steps = [&](const WeightSet& w) {
    const int reps = 5;
    static volatile double sink = 0;
    const auto start = Clock::now();
    for (int i = 0; i < reps; ++i) sink = sink + step(ctx.index, ctx.initial, w, icfg)[1];
    return seconds_since(start) / reps;
  };
  const WeightSet wm = init_weights(WeightMode::kMulti, 3, clauses.size(), 0.1, 0);
  const WeightSet wp = init_weights(WeightMode::kPair, 3, clauses.size(), 0.1, 0);
  const double tm = time_steps(wm);
  const double tp = time_steps(wp);

  o.pass = symbolic && concrete && tm < tp;
  o.detail = fmt("params 24 vs 144 %s; Plus |C|=%zu |G|=%zu step %.2f ms multi vs %.2f ms pair",
                 symbolic && concrete ? "confirmed" : "WRONG", clauses.size(), ctx.atoms.size(),
                 tm * 1e3, tp * 1e3);
  return o;
}

// ---------------------------------------------------------------------------
// 8. Size of the enumerated ground atom sets.

Outcome grounding_sizes() {
  const auto start = Clock::now();
  Outcome o;
  std::ostringstream detail;
  std::map<Task, double> mean;
  std::size_t lo = SIZE_MAX, hi = 0;
  for (Task task : all_tasks()) {
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Problem full = generate({task, 50, 0, seed});
      const RunConfig cfg = default_config(task);
      const auto clauses = generate_clauses(full, cfg);
      const std::size_t n = enumerate_atoms(full, clauses, cfg.train.steps).size();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
      sum += static_cast<double>(n);
    }
    mean[task] = sum / 5;
    detail << task_name(task) << fmt(" %.0f; ", mean[task]);
  }
  const bool member_smallest = std::ranges::all_of(all_tasks(), [&](Task t) {
    return t == Task::kMember || mean[Task::kMember] < mean[t];
  });
  o.pass = lo >= 50 && hi <= 10000 && member_smallest;
  detail << fmt("range [%zu, %zu] (%.0f s)", lo, hi, seconds_since(start));
  o.detail = "mean |G|: " + detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 9. Property suite.

Outcome property_suite() {
  const auto start = Clock::now();
  const std::string cmd = std::string("\"") + DILP_PROPERTIES_BINARY + "\" > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = rc == 0 && elapsed < 120;
  o.detail = fmt("exit %d in %.1f s", rc, elapsed);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"golden worked examples", golden_examples},
      {"oracle equivalence", oracle_equivalence},
      {"gradient correctness", gradient_check},
      {"reference programs recovered", reference_programs},
      {"label-noise robustness", noise_robustness},
      {"beam search vs naive generation", beam_vs_naive},
      {"weight layout size and cost", weight_layouts},
      {"ground atom set sizes", grounding_sizes},
      {"property suites", property_suite},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.contains(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
