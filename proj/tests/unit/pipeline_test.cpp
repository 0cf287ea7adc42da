#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include <fstream>

#include "json.hpp"

#include "dilp/pipeline.hpp"
#include "dilp/problem_io.hpp"
#include "dilp/text.hpp"

namespace dilp {
namespace {

namespace fs = std::filesystem;

RunConfig quick_member() {
  RunConfig cfg = default_config(Task::kMember);
  cfg.train.epochs = 3000;
  return cfg;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("dilp_pipeline_" + name);
}

TEST(ConfigTest, ValidateRejectsBadValues) {
  RunConfig cfg = default_config(Task::kMember);
  EXPECT_NO_THROW(validate(cfg));
  cfg.train.program_size = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Task::kMember);
  cfg.noise = 1.5;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Task::kMember);
  cfg.split_fraction = 0.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Task::kMember);
  cfg.train.gamma = 0.0;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(ConfigTest, TaskDefaults) {
  EXPECT_EQ(default_config(Task::kPlus).train.steps, 8);
  EXPECT_EQ(default_config(Task::kMember).train.steps, 4);
  for (Task t : all_tasks()) EXPECT_NO_THROW(validate(default_config(t)));
}

TEST(PrepareTest, NoiseTouchesTrainingOnly) {
  const Problem full = generate({Task::kMember, 20, 0, 0});
  RunConfig cfg = quick_member();
  const PreparedData clean = prepare_data(full, cfg);
  cfg.noise = 0.5;
  const PreparedData noisy = prepare_data(full, cfg);
  EXPECT_EQ(clean.test, noisy.test);
  EXPECT_NE(clean.train_labels, noisy.train_labels);
  EXPECT_EQ(clean.train_labels.size(), noisy.train_labels.size());
}

TEST(RunTest, MemberEndToEnd) {
  const Problem full = generate({Task::kMember, 20, 0, 1});
  RunConfig cfg = quick_member();
  cfg.train.seed = 1;
  const RunResult r = run_experiment(full, cfg);
  EXPECT_FALSE(r.clauses.empty());
  EXPECT_GT(r.ground_atoms, 2u);
  EXPECT_GE(r.eval_ground_atoms, r.ground_atoms);
  EXPECT_EQ(r.loss_history.size(), 3000u);
  EXPECT_EQ(r.dataset_hash, problem_hash(full));
  EXPECT_EQ(r.program_text.size(), r.program.clauses.size());
  EXPECT_EQ(r.test_metrics.auc, 1.0);

  const auto record = nlohmann::json::parse(run_record_json(r, full.language));
  EXPECT_EQ(record["config"]["task"], "member");
  EXPECT_EQ(record["clauses"].size(), r.clauses.size());
  EXPECT_TRUE(record.contains("test"));
}

TEST(RunTest, ZeroEpochsRuns) {
  const Problem full = generate({Task::kMember, 10, 0, 0});
  RunConfig cfg = quick_member();
  cfg.train.epochs = 0;
  const RunResult r = run_experiment(full, cfg);
  EXPECT_TRUE(r.loss_history.empty());
  EXPECT_EQ(r.weights.parameter_count(), r.clauses.size() * 2);
}

TEST(RunTest, PairModeParameterCount) {
  const Problem full = generate({Task::kMember, 10, 0, 0});
  RunConfig cfg = quick_member();
  cfg.train.mode = WeightMode::kPair;
  cfg.train.epochs = 5;
  const RunResult r = run_experiment(full, cfg);
  EXPECT_EQ(r.weights.parameter_count(), r.clauses.size() * r.clauses.size());
}

TEST(RunTest, NaiveGenerationUsesRequestedCount) {
  const Problem full = generate({Task::kMember, 10, 0, 0});
  RunConfig cfg = quick_member();
  cfg.naive_clauses = 7;
  cfg.train.epochs = 1;
  EXPECT_EQ(run_experiment(full, cfg).clauses.size(), 7u);
}

TEST(RunTest, DeterministicForFixedSeed) {
  const Problem full = generate({Task::kMember, 10, 0, 0});
  RunConfig cfg = quick_member();
  cfg.train.epochs = 50;
  const RunResult a = run_experiment(full, cfg);
  const RunResult b = run_experiment(full, cfg);
  EXPECT_EQ(a.weights.values(), b.weights.values());
  EXPECT_EQ(a.test_metrics.mse, b.test_metrics.mse);
}

TEST(WeightsFileTest, EvalReproducesTestMetrics) {
  const Problem full = generate({Task::kMember, 20, 0, 1});
  RunConfig cfg = quick_member();
  cfg.train.seed = 1;
  const RunResult r = run_experiment(full, cfg);
  const fs::path path = temp_path("weights.json");
  save_weights(path, r, full.language);
  const SavedWeights saved = load_weights(path, full.language);
  EXPECT_EQ(saved.clauses, r.clauses);
  EXPECT_EQ(saved.weights.values(), r.weights.values());
  EXPECT_EQ(saved.dataset_hash, r.dataset_hash);

  const EvalReport rep = evaluate_saved(full, saved, true);
  EXPECT_TRUE(rep.dataset_matches);
  EXPECT_EQ(rep.evaluation.metrics.mse, r.test_metrics.mse);
  EXPECT_EQ(rep.evaluation.metrics.auc, r.test_metrics.auc);
  EXPECT_GE(rep.evaluation.ground_atoms, rep.train_ground_atoms);

  const EvalReport all = evaluate_saved(full, saved, false);
  EXPECT_EQ(all.evaluation.predictions.size(), full.example_count());
  fs::remove(path);
}

TEST(WeightsFileTest, MissingFileIsAnError) {
  EXPECT_THROW(load_weights(temp_path("absent.json"), task_language(Task::kMember)),
               std::runtime_error);
}

TEST(WeightsFileTest, MalformedFileIsAnError) {
  const fs::path path = temp_path("bad.json");
  {
    std::ofstream out(path);
    out << "{\"format\": \"something-else\"}";
  }
  EXPECT_THROW(load_weights(path, task_language(Task::kMember)), std::runtime_error);
  fs::remove(path);
}

TEST(SweepTest, EmptySeedsRejected) {
  EXPECT_THROW(sweep(Task::kMember, SweepAxis::kNoise, {0.0}, {}, quick_member(), 10),
               ConfigError);
}

TEST(SweepTest, RowsSortedAndCsvShaped) {
  RunConfig cfg = quick_member();
  cfg.train.epochs = 20;
  cfg.threads = 2;
  const auto rows = sweep(Task::kMember, SweepAxis::kNoise, {0.2, 0.0}, {1, 0}, cfg, 10);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].value, 0.0);
  EXPECT_EQ(rows[0].seed, 0u);
  EXPECT_EQ(rows[3].value, 0.2);
  EXPECT_EQ(rows[3].seed, 1u);
  const std::string csv = sweep_csv(SweepAxis::kNoise, rows);
  EXPECT_EQ(csv.rfind("noise,seed,test_mse,n_clauses\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(SweepTest, DefaultValues) {
  EXPECT_EQ(default_sweep_values(SweepAxis::kNoise).size(), 11u);
  EXPECT_EQ(default_sweep_values(SweepAxis::kClauseCount),
            (std::vector<double>{10, 20, 30, 40}));
}

}  // namespace
}  // namespace dilp
