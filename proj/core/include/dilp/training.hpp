#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dilp/grounding.hpp"
#include "dilp/infer.hpp"
#include "dilp/problem.hpp"

namespace dilp {

/// (E, 1) for every positive and (E, 0) for every negative, positives first.
std::vector<LabeledAtom> make_labels(const Problem& q);

struct TrainConfig {
  /// Number of weight rows (program slots) in multi mode.
  int program_size = 2;
  int steps = 4;
  double gamma = 1e-5;
  double learning_rate = 0.01;
  int epochs = 3000;
  double batch_fraction = 0.05;
  std::uint64_t seed = 0;
  WeightMode mode = WeightMode::kMulti;
  bool clamp = false;

  // Optimizer, initialisation and loss-clip constants.
  double init_scale = 0.1;
  double rms_decay = 0.99;
  double rms_eps = 1e-8;
  double clip_eps = 1e-7;

  InferConfig infer_config() const { return {steps, gamma, clamp}; }
};

class DivergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// RMSProp with the running average of squared gradients per parameter.
class RmsProp {
 public:
  RmsProp(std::size_t size, double learning_rate, double decay, double eps);
  void step(WeightSet& w);

 private:
  double lr_;
  double decay_;
  double eps_;
  std::vector<double> square_avg_;
};

/// Weights drawn from N(0, scale^2) with a generator seeded by `seed`.
WeightSet init_weights(WeightMode mode, std::size_t slots, std::size_t clauses,
                       double scale, std::uint64_t seed);

/// Raw valuation of `atom` after inference. Throws std::out_of_range when
/// the atom is not in the context; rebuild the grounding with it as an extra
/// seed first.
double predict(const Atom& atom, const GroundContext& ctx, const WeightSet& w,
               const InferConfig& cfg);

/// Raw valuations of every atom in `atoms`, from a single forward pass.
std::vector<double> predict_all(std::span<const Atom> atoms, const GroundContext& ctx,
                                const WeightSet& w, const InferConfig& cfg);

/// Mean binary cross-entropy over `batch` with predictions clipped to
/// [eps, 1-eps]. When `w` has gradient buffers the gradient is accumulated
/// into them; the clip passes gradients straight through.
double loss_and_grad(const GroundContext& ctx, WeightSet& w, const InferConfig& cfg,
                     std::span<const LabeledAtom> batch, double clip_eps,
                     bool accumulate_grad = true);

/// Binary cross-entropy of a single prediction (clipped).
double cross_entropy(double p, int label, double clip_eps = 1e-7);

struct TrainResult {
  WeightSet weights;
  std::vector<double> loss_history;  // one entry per epoch
};

/// Mini-batch RMSProp on the cross-entropy loss. Each epoch samples
/// ceil(batch_fraction * |examples|) distinct examples. Deterministic for a
/// given config. Throws DivergedError on a non-finite loss.
TrainResult train(const GroundContext& ctx, std::span<const LabeledAtom> examples,
                  std::size_t clause_count, const TrainConfig& cfg);

struct ProgramClause {
  Clause clause;
  double confidence = 0.0;
};

struct LearnedProgram {
  std::vector<ProgramClause> clauses;
};

/// Argmax of each weight row, deduplicated up to alpha-equivalence (the
/// highest confidence wins), in slot order. Pair mode yields both clauses of
/// the most probable pair.
LearnedProgram extract_program(const WeightSet& w, std::span<const Clause> clauses);

}  // namespace dilp
