#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dilp/clause_search.hpp"
#include "dilp/datasets.hpp"
#include "dilp/grounding.hpp"
#include "dilp/metrics.hpp"
#include "dilp/training.hpp"

namespace dilp {

/// Invalid or inconsistent run settings.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<Task> task;
  BeamConfig beam;
  RefinementConfig refinement;
  /// > 0 replaces beam search with example-blind generation of this many
  /// clauses.
  int naive_clauses = 0;
  /// > 0 keeps only this many of the best-scoring beam clauses.
  int clause_limit = 0;
  TrainConfig train;
  double noise = 0.0;
  double split_fraction = 0.7;
  int threads = 0;  // sweeps only; 0 picks the hardware concurrency
};

/// Defaults shared by every task.
RunConfig base_config();
/// Shipped per-task settings: beam size and steps, program size, steps.
RunConfig default_config(Task task);

/// Throws ConfigError when a field is out of range.
void validate(const RunConfig& cfg);

/// Training split (noise applied) and held-out test examples for `cfg`.
struct PreparedData {
  Problem train;
  std::vector<LabeledAtom> train_labels;
  std::vector<LabeledAtom> test;
};
PreparedData prepare_data(const Problem& full, const RunConfig& cfg);

/// Beam search or naive generation, per `cfg`.
std::vector<Clause> generate_clauses(const Problem& train, const RunConfig& cfg);

struct Evaluation {
  Metrics metrics;
  std::vector<double> predictions;
  std::size_t ground_atoms = 0;
};

/// Predictions for `examples` from a grounding of `train` that also seeds
/// the example atoms.
Evaluation evaluate(const Problem& train, std::span<const Clause> clauses,
                    const WeightSet& weights, std::span<const LabeledAtom> examples,
                    const InferConfig& cfg);

struct RunResult {
  RunConfig config;
  std::uint64_t dataset_hash = 0;
  std::vector<Clause> clauses;
  std::size_t ground_atoms = 0;
  std::size_t skipped_nonground = 0;
  WeightSet weights;
  std::vector<double> loss_history;
  LearnedProgram program;
  Metrics train_metrics;
  Metrics test_metrics;
  std::size_t eval_ground_atoms = 0;
  double runtime_s = 0.0;
  std::vector<std::string> program_text;
};

/// split -> noise -> clause generation -> grounding -> training ->
/// extraction -> metrics. Throws DivergedError on a non-finite loss.
RunResult run_experiment(const Problem& full, const RunConfig& cfg);

/// Self-describing JSON record of a run.
std::string run_record_json(const RunResult& r, const Language& lang);

/// Weights plus everything needed to rebuild the run's groundings.
void save_weights(const std::filesystem::path& path, const RunResult& r,
                  const Language& lang);

struct SavedWeights {
  RunConfig config;
  std::uint64_t dataset_hash = 0;
  std::vector<Clause> clauses;
  WeightSet weights;
};
/// Throws std::runtime_error on a missing or malformed file.
SavedWeights load_weights(const std::filesystem::path& path, const Language& lang);

struct EvalReport {
  Evaluation evaluation;
  std::size_t train_ground_atoms = 0;
  bool dataset_matches = false;
};

/// Re-evaluates saved weights. With `held_out_only` the run's split is
/// reproduced and only its test examples are scored; otherwise every example
/// of `full` is scored.
EvalReport evaluate_saved(const Problem& full, const SavedWeights& saved, bool held_out_only);

enum class SweepAxis { kNoise, kClauseCount };

struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  double metric = 0.0;
  std::size_t clause_count = 0;
};

/// Noise sweep: 0.0 to 0.5 in steps of 0.05. Clause-count sweep: 10, 20,
/// 30, 40.
std::vector<double> default_sweep_values(SweepAxis axis);

/// One run per (value, seed) on freshly generated data for `task`; runs
/// execute in parallel and rows come back sorted by value then seed. The
/// metric is test MSE for the noise axis and test AUC for the clause-count
/// axis.
std::vector<SweepRow> sweep(Task task, SweepAxis axis, const std::vector<double>& values,
                            const std::vector<std::uint64_t>& seeds, const RunConfig& base,
                            int examples_per_class = 50);

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace dilp
