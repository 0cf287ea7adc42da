#include "dilp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dilp/problem_io.hpp"
#include "dilp/text.hpp"
#include "json.hpp"

namespace dilp {
namespace {

using json = nlohmann::json;

std::string_view mode_name(WeightMode m) { return m == WeightMode::kMulti ? "multi" : "pair"; }

WeightMode parse_mode(const std::string& s) {
  if (s == "multi") return WeightMode::kMulti;
  if (s == "pair") return WeightMode::kPair;
  throw std::runtime_error("unknown weight mode '" + s + "'");
}

json config_json(const RunConfig& c) {
  json j;
  j["task"] = c.task ? json(std::string(task_name(*c.task))) : json(nullptr);
  j["m"] = c.train.program_size;
  j["T"] = c.train.steps;
  j["gamma"] = c.train.gamma;
  j["lr"] = c.train.learning_rate;
  j["epochs"] = c.train.epochs;
  j["batch_frac"] = c.train.batch_fraction;
  j["seed"] = c.train.seed;
  j["weight_mode"] = mode_name(c.train.mode);
  j["clamp"] = c.train.clamp;
  j["init_scale"] = c.train.init_scale;
  j["rms_decay"] = c.train.rms_decay;
  j["rms_eps"] = c.train.rms_eps;
  j["clip_eps"] = c.train.clip_eps;
  j["beam_size"] = c.beam.beam_size;
  j["beam_steps"] = c.beam.beam_steps;
  j["prune_zero"] = c.beam.prune_zero;
  j["negative_penalty"] = c.beam.negative_penalty;
  j["n_body"] = c.refinement.max_body;
  j["n_nest"] = c.refinement.max_nest;
  j["naive_gen"] = c.naive_clauses;
  j["max_clauses"] = c.clause_limit;
  j["noise"] = c.noise;
  j["split"] = c.split_fraction;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c = base_config();
  if (!j.at("task").is_null()) {
    auto t = parse_task(j.at("task").get<std::string>());
    if (!t) throw std::runtime_error("unknown task in weights file");
    c.task = t;
  }
  c.train.program_size = j.at("m").get<int>();
  c.train.steps = j.at("T").get<int>();
  c.train.gamma = j.at("gamma").get<double>();
  c.train.learning_rate = j.at("lr").get<double>();
  c.train.epochs = j.at("epochs").get<int>();
  c.train.batch_fraction = j.at("batch_frac").get<double>();
  c.train.seed = j.at("seed").get<std::uint64_t>();
  c.train.mode = parse_mode(j.at("weight_mode").get<std::string>());
  c.train.clamp = j.at("clamp").get<bool>();
  c.train.init_scale = j.at("init_scale").get<double>();
  c.train.rms_decay = j.at("rms_decay").get<double>();
  c.train.rms_eps = j.at("rms_eps").get<double>();
  c.train.clip_eps = j.at("clip_eps").get<double>();
  c.beam.beam_size = j.at("beam_size").get<int>();
  c.beam.beam_steps = j.at("beam_steps").get<int>();
  c.beam.prune_zero = j.at("prune_zero").get<bool>();
  c.beam.negative_penalty = j.at("negative_penalty").get<double>();
  c.refinement.max_body = j.at("n_body").get<int>();
  c.refinement.max_nest = j.at("n_nest").get<int>();
  c.naive_clauses = j.at("naive_gen").get<int>();
  c.clause_limit = j.value("max_clauses", 0);
  c.noise = j.at("noise").get<double>();
  c.split_fraction = j.at("split").get<double>();
  return c;
}

json metrics_json(const Metrics& m) {
  // JSON has no NaN; an undefined AUC is written as null.
  return {{"auc", std::isnan(m.auc) ? json(nullptr) : json(m.auc)}, {"mse", m.mse}};
}

std::vector<Atom> atoms_of(std::span<const LabeledAtom> xs) {
  std::vector<Atom> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.atom);
  return out;
}

std::vector<int> labels_of(std::span<const LabeledAtom> xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.label);
  return out;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

}  // namespace

RunConfig base_config() {
  RunConfig c;
  c.refinement.max_body = 1;
  c.refinement.max_nest = 1;
  c.train.gamma = 1e-5;
  c.train.learning_rate = 0.01;
  c.train.epochs = 3000;
  c.train.batch_fraction = 0.05;
  c.split_fraction = 0.7;
  return c;
}

RunConfig default_config(Task task) {
  RunConfig c = base_config();
  c.task = task;
  switch (task) {
    case Task::kMember:
      c.beam.beam_size = 3;
      c.beam.beam_steps = 3;
      c.beam.negative_penalty = 0.5;
      c.train.program_size = 2;
      break;
    case Task::kPlus:
      c.beam.beam_size = 10;
      c.beam.beam_steps = 5;
      c.beam.negative_penalty = 1.0;
      c.train.program_size = 3;
      break;
    case Task::kAppend:
      c.beam.beam_size = 10;
      c.beam.beam_steps = 5;
      c.beam.negative_penalty = 1.0;
      c.train.program_size = 3;
      break;
    case Task::kDelete:
      c.beam.beam_size = 10;
      c.beam.beam_steps = 5;
      c.train.program_size = 2;
      break;
    case Task::kSubtree:
      c.beam.beam_size = 15;
      c.beam.beam_steps = 3;
      c.beam.negative_penalty = 1.0;
      c.train.program_size = 4;
      break;
  }
  c.train.steps = task_inference_steps(task);
  return c;
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.train.program_size >= 1, "--m must be at least 1");
  require(c.train.steps >= 0, "--T must be non-negative");
  require(c.train.gamma > 0.0 && std::isfinite(c.train.gamma), "--gamma must be positive");
  require(c.train.learning_rate > 0.0 && std::isfinite(c.train.learning_rate),
          "--lr must be positive");
  require(c.train.epochs >= 0, "--epochs must be non-negative");
  require(c.train.batch_fraction > 0.0 && c.train.batch_fraction <= 1.0,
          "--batch-frac must lie in (0, 1]");
  require(c.beam.beam_size >= 1, "--beam-size must be at least 1");
  require(c.beam.beam_steps >= 0, "--beam-steps must be non-negative");
  require(c.refinement.max_body >= 0, "--n-body must be non-negative");
  require(c.refinement.max_nest >= 0, "--n-nest must be non-negative");
  require(c.naive_clauses >= 0, "--naive-gen must be non-negative");
  require(c.clause_limit >= 0, "--max-clauses must be non-negative");
  require(c.noise >= 0.0 && c.noise <= 1.0, "--noise must lie in [0, 1]");
  require(c.split_fraction > 0.0 && c.split_fraction <= 1.0, "--split must lie in (0, 1]");
  require(c.beam.negative_penalty >= 0.0, "--negative-penalty must be non-negative");
}

PreparedData prepare_data(const Problem& full, const RunConfig& cfg) {
  Split s = split(full, cfg.split_fraction, cfg.train.seed);
  PreparedData out;
  out.train = inject_noise(s.train, cfg.noise, cfg.train.seed);
  out.train_labels = make_labels(out.train);
  out.test = std::move(s.test);
  return out;
}

std::vector<Clause> generate_clauses(const Problem& train, const RunConfig& cfg) {
  if (train.initial_clauses.empty()) throw ConfigError("problem declares no init clauses");
  if (cfg.naive_clauses > 0) {
    RefinementConfig r = cfg.refinement;
    r.inherited_nest = max_nest_depth(train.initial_clauses);
    return naive_generate(train.initial_clauses, train.language, r,
                          static_cast<std::size_t>(cfg.naive_clauses));
  }
  auto clauses = beam_search(train.initial_clauses, train, cfg.beam, cfg.refinement,
                             {cfg.train.steps})
                     .clauses;
  if (cfg.clause_limit > 0 && clauses.size() > static_cast<std::size_t>(cfg.clause_limit)) {
    clauses.resize(static_cast<std::size_t>(cfg.clause_limit));
  }
  return clauses;
}

Evaluation evaluate(const Problem& train, std::span<const Clause> clauses,
                    const WeightSet& weights, std::span<const LabeledAtom> examples,
                    const InferConfig& cfg) {
  const auto atoms = atoms_of(examples);
  const GroundContext ctx = make_ground_context(train, clauses, cfg.steps, atoms);
  Evaluation ev;
  ev.ground_atoms = ctx.atoms.size();
  ev.predictions = predict_all(atoms, ctx, weights, cfg);
  const auto labels = labels_of(examples);
  ev.metrics = compute_metrics(ev.predictions, labels);
  return ev;
}

RunResult run_experiment(const Problem& full, const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  RunResult r;
  r.config = cfg;
  r.dataset_hash = problem_hash(full);

  PreparedData data = prepare_data(full, cfg);
  r.clauses = generate_clauses(data.train, cfg);

  const GroundContext ctx = make_ground_context(data.train, r.clauses, cfg.train.steps);
  r.ground_atoms = ctx.atoms.size();
  r.skipped_nonground = ctx.stats.skipped_nonground;

  TrainResult tr = train(ctx, data.train_labels, r.clauses.size(), cfg.train);
  r.weights = std::move(tr.weights);
  r.loss_history = std::move(tr.loss_history);

  const InferConfig icfg = cfg.train.infer_config();
  const auto train_atoms = atoms_of(data.train_labels);
  const auto train_pred = predict_all(train_atoms, ctx, r.weights, icfg);
  r.train_metrics = compute_metrics(train_pred, labels_of(data.train_labels));

  const Evaluation test = evaluate(data.train, r.clauses, r.weights, data.test, icfg);
  r.test_metrics = test.metrics;
  r.eval_ground_atoms = test.ground_atoms;

  r.program = extract_program(r.weights, r.clauses);
  const PrintOptions opts = print_options_for(full.language);
  for (const auto& pc : r.program.clauses) r.program_text.push_back(to_string(pc.clause, opts));

  r.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string run_record_json(const RunResult& r, const Language& lang) {
  const PrintOptions opts = print_options_for(lang);
  json j;
  j["config"] = config_json(r.config);
  j["task"] = r.config.task ? json(std::string(task_name(*r.config.task))) : json(nullptr);
  j["seed"] = r.config.train.seed;
  j["m"] = r.config.train.program_size;
  j["T"] = r.config.train.steps;
  j["dataset_hash"] = hex64(r.dataset_hash);
  j["n_clauses"] = r.clauses.size();
  j["n_ground_atoms"] = r.ground_atoms;
  j["n_ground_atoms_eval"] = r.eval_ground_atoms;
  j["skipped_nonground"] = r.skipped_nonground;
  j["params"] = r.weights.parameter_count();
  json clauses = json::array();
  for (const Clause& c : r.clauses) clauses.push_back(to_string(c, opts));
  j["clauses"] = clauses;
  j["loss_history"] = r.loss_history;
  j["train"] = metrics_json(r.train_metrics);
  j["test"] = metrics_json(r.test_metrics);
  j["train_mse"] = r.train_metrics.mse;
  j["test_mse"] = r.test_metrics.mse;
  j["auc"] = metrics_json(r.test_metrics)["auc"];
  j["runtime_s"] = r.runtime_s;
  json program = json::array();
  for (std::size_t i = 0; i < r.program.clauses.size(); ++i) {
    program.push_back({{"clause", r.program_text[i]},
                       {"confidence", r.program.clauses[i].confidence}});
  }
  j["program"] = program;
  std::string text;
  for (const auto& s : r.program_text) text += s + ".\n";
  j["program_text"] = text;
  return j.dump(2);
}

void save_weights(const std::filesystem::path& path, const RunResult& r,
                  const Language& lang) {
  const PrintOptions opts = print_options_for(lang);
  json j;
  j["format"] = "dilp-weights/1";
  j["config"] = config_json(r.config);
  j["dataset_hash"] = hex64(r.dataset_hash);
  json clauses = json::array();
  for (const Clause& c : r.clauses) clauses.push_back(to_string(c, opts));
  j["clauses"] = clauses;
  j["mode"] = mode_name(r.weights.mode());
  j["rows"] = r.weights.rows();
  j["values"] = r.weights.values();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write weights file " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SavedWeights load_weights(const std::filesystem::path& path, const Language& lang) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights file " + path.string());
  SavedWeights s;
  try {
    const json j = json::parse(in);
    if (j.at("format") != "dilp-weights/1") throw std::runtime_error("unknown format");
    s.config = config_from_json(j.at("config"));
    s.dataset_hash = std::stoull(j.at("dataset_hash").get<std::string>(), nullptr, 16);
    for (const auto& c : j.at("clauses")) s.clauses.push_back(parse_clause(c.get<std::string>(), lang));
    const WeightMode mode = parse_mode(j.at("mode").get<std::string>());
    s.weights = mode == WeightMode::kMulti
                    ? WeightSet::multi(j.at("rows").get<std::size_t>(), s.clauses.size())
                    : WeightSet::pair(s.clauses.size());
    const auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != s.weights.parameter_count()) {
      throw std::runtime_error("expected " + std::to_string(s.weights.parameter_count()) +
                               " weights, found " + std::to_string(values.size()));
    }
    s.weights.values() = values;
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed weights file " + path.string() + ": " + e.what());
  }
  return s;
}

EvalReport evaluate_saved(const Problem& full, const SavedWeights& saved, bool held_out_only) {
  EvalReport rep;
  rep.dataset_matches = problem_hash(full) == saved.dataset_hash;
  const InferConfig icfg = saved.config.train.infer_config();
  if (held_out_only) {
    const PreparedData data = prepare_data(full, saved.config);
    rep.train_ground_atoms =
        enumerate_atoms(data.train, saved.clauses, icfg.steps).size();
    rep.evaluation = evaluate(data.train, saved.clauses, saved.weights, data.test, icfg);
  } else {
    const auto all = make_labels(full);
    rep.train_ground_atoms = enumerate_atoms(full, saved.clauses, icfg.steps).size();
    rep.evaluation = evaluate(full, saved.clauses, saved.weights, all, icfg);
  }
  return rep;
}

std::vector<double> default_sweep_values(SweepAxis axis) {
  std::vector<double> out;
  if (axis == SweepAxis::kNoise) {
    for (int i = 0; i <= 10; ++i) out.push_back(0.05 * i);
  } else {
    for (int n = 10; n <= 40; n += 10) out.push_back(n);
  }
  return out;
}

std::vector<SweepRow> sweep(Task task, SweepAxis axis, const std::vector<double>& values,
                            const std::vector<std::uint64_t>& seeds, const RunConfig& base,
                            int examples_per_class) {
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  if (values.empty()) throw ConfigError("sweep needs at least one axis value");

  struct Job {
    double value;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double v : values) {
    for (std::uint64_t s : seeds) jobs.push_back({v, s});
  }
  std::vector<SweepRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

  auto run_job = [&](std::size_t i) {
    const Job& job = jobs[i];
    RunConfig cfg = base;
    cfg.task = task;
    cfg.train.seed = job.seed;
    if (axis == SweepAxis::kNoise) {
      cfg.noise = job.value;
    } else {
      cfg.naive_clauses = static_cast<int>(std::lround(job.value));
    }
    SweepRow& row = rows[i];
    row.value = job.value;
    row.seed = job.seed;
    try {
      const Problem full = generate({task, examples_per_class, 0, job.seed});
      const RunResult r = run_experiment(full, cfg);
      row.metric = axis == SweepAxis::kNoise ? r.test_metrics.mse : r.test_metrics.auc;
      row.clause_count = r.clauses.size();
    } catch (const DivergedError&) {
      row.metric = std::numeric_limits<double>::quiet_NaN();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  validate(base);
  unsigned n_threads = base.threads > 0 ? static_cast<unsigned>(base.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::ranges::sort(rows, [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.value, a.seed) < std::tie(b.value, b.seed);
  });
  return rows;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << (axis == SweepAxis::kNoise ? "noise,seed,test_mse,n_clauses\n"
                                    : "n_clause,seed,test_auc,n_clauses\n");
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.value << ',' << r.seed << ',';
    if (std::isnan(r.metric)) {
      out << "nan";
    } else {
      out << r.metric;
    }
    out << ',' << r.clause_count << '\n';
  }
  return out.str();
}

}  // namespace dilp
