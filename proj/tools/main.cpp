// dilp: generate benchmark problems, train, evaluate and sweep.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dilp/datasets.hpp"
#include "dilp/pipeline.hpp"
#include "dilp/problem_io.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

/// Overrides layered on top of the task defaults.
struct Overrides {
  std::optional<std::string> task;
  std::optional<int> m, T, epochs, beam_size, beam_steps, n_body, n_nest, naive_gen, max_clauses;
  std::optional<double> gamma, lr, batch_frac, noise, split, negative_penalty;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> weight_mode, prune_zero;
  bool clamp = false;
  int threads = 0;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--task", o.task, "Start from this task's shipped defaults")
      ->check(CLI::IsMember({"member", "plus", "append", "delete", "subtree"}));
  cmd->add_option("--m", o.m, "Program size (weight rows)");
  cmd->add_option("--T", o.T, "Inference steps");
  cmd->add_option("--gamma", o.gamma, "softor temperature");
  cmd->add_option("--lr", o.lr, "RMSProp learning rate");
  cmd->add_option("--epochs", o.epochs, "Training epochs");
  cmd->add_option("--batch-frac", o.batch_frac, "Mini-batch fraction of the training set");
  cmd->add_option("--beam-size", o.beam_size, "Beam width");
  cmd->add_option("--beam-steps", o.beam_steps, "Beam iterations");
  cmd->add_option("--n-body", o.n_body, "Maximum body atoms per clause");
  cmd->add_option("--n-nest", o.n_nest, "Maximum added function nesting");
  cmd->add_option("--seed", o.seed, "Seed for splitting, noise, init and batches");
  cmd->add_option("--noise", o.noise, "Fraction of training labels to flip");
  cmd->add_option("--split", o.split, "Training fraction of the examples");
  cmd->add_option("--weight-mode", o.weight_mode, "multi or pair")
      ->check(CLI::IsMember({"multi", "pair"}));
  cmd->add_option("--naive-gen", o.naive_gen, "Generate this many clauses without examples");
  cmd->add_option("--max-clauses", o.max_clauses, "Keep only the best N beam clauses");
  cmd->add_option("--prune-zero", o.prune_zero, "Drop refinements covering no positive")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--negative-penalty", o.negative_penalty,
                  "Subtract this times covered negatives from clause scores");
  cmd->add_flag("--clamp", o.clamp, "Clip valuations at 1 after each step");
}

dilp::RunConfig resolve(const Overrides& o) {
  dilp::RunConfig c = dilp::base_config();
  c.train.program_size = 2;
  c.train.steps = 4;
  if (o.task) c = dilp::default_config(*dilp::parse_task(*o.task));
  if (o.m) c.train.program_size = *o.m;
  if (o.T) c.train.steps = *o.T;
  if (o.gamma) c.train.gamma = *o.gamma;
  if (o.lr) c.train.learning_rate = *o.lr;
  if (o.epochs) c.train.epochs = *o.epochs;
  if (o.batch_frac) c.train.batch_fraction = *o.batch_frac;
  if (o.beam_size) c.beam.beam_size = *o.beam_size;
  if (o.beam_steps) c.beam.beam_steps = *o.beam_steps;
  if (o.n_body) c.refinement.max_body = *o.n_body;
  if (o.n_nest) c.refinement.max_nest = *o.n_nest;
  if (o.seed) c.train.seed = *o.seed;
  if (o.noise) c.noise = *o.noise;
  if (o.split) c.split_fraction = *o.split;
  if (o.weight_mode) {
    c.train.mode = *o.weight_mode == "pair" ? dilp::WeightMode::kPair : dilp::WeightMode::kMulti;
  }
  if (o.naive_gen) c.naive_clauses = *o.naive_gen;
  if (o.max_clauses) c.clause_limit = *o.max_clauses;
  if (o.prune_zero) c.beam.prune_zero = *o.prune_zero == "on";
  if (o.negative_penalty) c.beam.negative_penalty = *o.negative_penalty;
  if (o.clamp) c.train.clamp = true;
  c.threads = o.threads;
  dilp::validate(c);
  return c;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dilp::ConfigError("cannot write " + path);
  out << text;
}

dilp::Problem read_problem(const std::string& path) {
  try {
    return dilp::load_problem(path);
  } catch (const std::exception& e) {
    throw dilp::ConfigError(path + ": " + e.what());
  }
}

int cmd_gen(const std::string& task, int n, std::uint64_t seed, int max_size,
            const std::string& out) {
  dilp::TaskSpec spec{*dilp::parse_task(task), n, max_size, seed};
  write_output(out, dilp::format_problem(dilp::generate(spec)));
  return kExitOk;
}

int cmd_train(const std::string& problem_path, const Overrides& o, const std::string& record,
              const std::string& weights) {
  const dilp::RunConfig cfg = resolve(o);
  const dilp::Problem q = read_problem(problem_path);
  const dilp::RunResult r = dilp::run_experiment(q, cfg);
  std::cerr << "grounding: |G|=" << r.ground_atoms
            << " skipped_nonground=" << r.skipped_nonground << '\n';
  std::cerr << "clauses: |C|=" << r.clauses.size() << " params=" << r.weights.parameter_count()
            << '\n';
  std::cerr << "program:\n";
  for (std::size_t i = 0; i < r.program_text.size(); ++i) {
    std::cerr << "  " << r.program_text[i] << ".  # "
              << r.program.clauses[i].confidence << '\n';
  }
  std::cerr << "train_mse=" << r.train_metrics.mse << " test_mse=" << r.test_metrics.mse
            << " test_auc=" << r.test_metrics.auc << '\n';
  write_output(record, dilp::run_record_json(r, q.language) + "\n");
  if (!weights.empty()) dilp::save_weights(weights, r, q.language);
  return kExitOk;
}

int cmd_eval(const std::string& problem_path, const std::string& weights_path, bool all,
             const std::string& out) {
  const dilp::Problem q = read_problem(problem_path);
  dilp::SavedWeights saved;
  try {
    saved = dilp::load_weights(weights_path, q.language);
  } catch (const std::exception& e) {
    throw dilp::ConfigError(e.what());
  }
  const dilp::EvalReport rep = dilp::evaluate_saved(q, saved, !all);
  if (!rep.dataset_matches && !all) {
    std::cerr << "warning: problem differs from the one the weights were trained on\n";
  }
  nlohmann::json j;
  const auto& m = rep.evaluation.metrics;
  j["examples"] = rep.evaluation.predictions.size();
  j["auc"] = std::isnan(m.auc) ? nlohmann::json(nullptr) : nlohmann::json(m.auc);
  j["mse"] = m.mse;
  j["n_ground_atoms_train"] = rep.train_ground_atoms;
  j["n_ground_atoms_eval"] = rep.evaluation.ground_atoms;
  j["dataset_matches"] = rep.dataset_matches;
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const Overrides& o, const std::string& axis_name, std::vector<double> values,
              const std::vector<std::uint64_t>& seeds, int n, const std::string& out) {
  if (!o.task) throw dilp::ConfigError("sweep requires --task");
  if (seeds.empty()) throw dilp::ConfigError("sweep needs at least one seed");
  const auto axis = axis_name == "noise" ? dilp::SweepAxis::kNoise : dilp::SweepAxis::kClauseCount;
  if (values.empty()) values = dilp::default_sweep_values(axis);
  const dilp::RunConfig base = resolve(o);
  const auto rows = dilp::sweep(*dilp::parse_task(*o.task), axis, values, seeds, base, n);
  write_output(out, dilp::sweep_csv(axis, rows));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentiable ILP with function symbols"};
  app.require_subcommand(1);

  std::string gen_task = "member", gen_out;
  int gen_n = 50, gen_max = 0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Write a generated benchmark problem");
  gen->add_option("--task", gen_task, "Task name")
      ->check(CLI::IsMember({"member", "plus", "append", "delete", "subtree"}));
  gen->add_option("--n", gen_n, "Examples per class")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "Sampling seed");
  gen->add_option("--max-size", gen_max, "Structure cap (0: task default)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  Overrides train_o;
  std::string train_problem, train_record, train_weights;
  auto* train = app.add_subcommand("train", "Learn a program and print a run record");
  train->add_option("problem", train_problem, "Problem file")->required();
  add_run_flags(train, train_o);
  train->add_option("--record", train_record, "Run record output (default stdout)");
  train->add_option("--save-weights", train_weights, "Write learned weights here");

  std::string eval_problem, eval_weights, eval_out;
  bool eval_all = false;
  auto* eval = app.add_subcommand("eval", "Score saved weights");
  eval->add_option("problem", eval_problem, "Problem file")->required();
  eval->add_option("--weights", eval_weights, "Weights file from train --save-weights")
      ->required();
  eval->add_flag("--all", eval_all, "Score every example instead of the held-out split");
  eval->add_option("-o,--out", eval_out, "Output file (default stdout)");

  Overrides sweep_o;
  std::string sweep_axis = "noise", sweep_out;
  std::vector<double> sweep_values;
  std::vector<std::uint64_t> sweep_seeds = {0, 1, 2, 3, 4};
  int sweep_n = 50;
  auto* sw = app.add_subcommand("sweep", "Noise or clause-count sweep as CSV");
  add_run_flags(sw, sweep_o);
  sw->add_option("--axis", sweep_axis, "noise or nclause")
      ->check(CLI::IsMember({"noise", "nclause"}));
  sw->add_option("--values", sweep_values, "Axis values (default: the standard grid)")
      ->delimiter(',');
  sw->add_option("--seeds", sweep_seeds, "Seeds, one run each per axis value")->delimiter(',');
  sw->add_option("--n", sweep_n, "Examples per class")->check(CLI::NonNegativeNumber);
  sw->add_option("--threads", sweep_o.threads, "Parallel runs (0: all cores)");
  sw->add_option("-o,--out", sweep_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_gen(gen_task, gen_n, gen_seed, gen_max, gen_out);
    if (*train) return cmd_train(train_problem, train_o, train_record, train_weights);
    if (*eval) return cmd_eval(eval_problem, eval_weights, eval_all, eval_out);
    if (*sw) return cmd_sweep(sweep_o, sweep_axis, sweep_values, sweep_seeds, sweep_n, sweep_out);
  } catch (const dilp::DivergedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const dilp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
