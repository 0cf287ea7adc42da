#include "dilp/training.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "dilp/text.hpp"

namespace dilp {

std::vector<LabeledAtom> make_labels(const Problem& q) {
  std::vector<LabeledAtom> out;
  out.reserve(q.example_count());
  for (const Atom& e : q.positives) out.push_back({e, 1});
  for (const Atom& e : q.negatives) out.push_back({e, 0});
  return out;
}

RmsProp::RmsProp(std::size_t size, double learning_rate, double decay, double eps)
    : lr_(learning_rate), decay_(decay), eps_(eps), square_avg_(size, 0.0) {}

void RmsProp::step(WeightSet& w) {
  auto& values = w.values();
  const auto& grads = w.grads();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double g = grads[i];
    square_avg_[i] = decay_ * square_avg_[i] + (1.0 - decay_) * g * g;
    values[i] -= lr_ * g / (std::sqrt(square_avg_[i]) + eps_);
  }
}

WeightSet init_weights(WeightMode mode, std::size_t slots, std::size_t clauses,
                       double scale, std::uint64_t seed) {
  WeightSet w = mode == WeightMode::kMulti ? WeightSet::multi(slots, clauses)
                                           : WeightSet::pair(clauses);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  for (double& v : w.values()) v = normal(rng);
  return w;
}

double predict(const Atom& atom, const GroundContext& ctx, const WeightSet& w,
               const InferConfig& cfg) {
  return predict_all(std::span<const Atom>(&atom, 1), ctx, w, cfg).front();
}

std::vector<double> predict_all(std::span<const Atom> atoms, const GroundContext& ctx,
                                const WeightSet& w, const InferConfig& cfg) {
  std::vector<std::size_t> idx;
  idx.reserve(atoms.size());
  for (const Atom& a : atoms) {
    auto found = ctx.atoms.find(a);
    if (!found) throw std::out_of_range("atom not in ground context: " + to_string(a));
    idx.push_back(static_cast<std::size_t>(*found));
  }
  const auto v = infer(ctx.index, ctx.initial, w, cfg);
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

double cross_entropy(double p, int label, double clip_eps) {
  const double q = std::clamp(p, clip_eps, 1.0 - clip_eps);
  return label ? -std::log(q) : -std::log(1.0 - q);
}

double loss_and_grad(const GroundContext& ctx, WeightSet& w, const InferConfig& cfg,
                     std::span<const LabeledAtom> batch, double clip_eps,
                     bool accumulate_grad) {
  if (batch.empty()) return 0.0;
  InferenceTrace trace;
  const auto v = infer(ctx.index, ctx.initial, w, cfg, accumulate_grad ? &trace : nullptr);
  std::vector<double> grad_out(v.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const LabeledAtom& ex : batch) {
    auto found = ctx.atoms.find(ex.atom);
    if (!found) throw std::out_of_range("atom not in ground context: " + to_string(ex.atom));
    const auto j = static_cast<std::size_t>(*found);
    const double p = std::clamp(v[j], clip_eps, 1.0 - clip_eps);
    loss += (ex.label ? -std::log(p) : -std::log(1.0 - p)) * scale;
    grad_out[j] += (ex.label ? -1.0 / p : 1.0 / (1.0 - p)) * scale;
  }
  if (accumulate_grad) backward(ctx.index, w, cfg, trace, grad_out);
  return loss;
}

TrainResult train(const GroundContext& ctx, std::span<const LabeledAtom> examples,
                  std::size_t clause_count, const TrainConfig& cfg) {
  TrainResult result;
  result.weights = init_weights(cfg.mode, static_cast<std::size_t>(cfg.program_size),
                                clause_count, cfg.init_scale, cfg.seed);
  if (examples.empty() || cfg.epochs <= 0) return result;

  RmsProp optimizer(result.weights.parameter_count(), cfg.learning_rate, cfg.rms_decay,
                    cfg.rms_eps);
  const InferConfig icfg = cfg.infer_config();
  const auto batch_size = static_cast<std::size_t>(std::max(
      1.0, std::ceil(cfg.batch_fraction * static_cast<double>(examples.size()))));

  // Independent stream for batch sampling so the initial weights do not
  // depend on the batch size.
  std::mt19937_64 rng(cfg.seed ^ 0x5deece66dULL);
  std::vector<std::size_t> all(examples.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> picked;
  std::vector<LabeledAtom> batch;
  result.loss_history.reserve(static_cast<std::size_t>(cfg.epochs));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    picked.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(picked),
                static_cast<std::ptrdiff_t>(std::min(batch_size, all.size())), rng);
    batch.clear();
    for (std::size_t i : picked) batch.push_back(examples[i]);

    result.weights.zero_grad();
    const double loss = loss_and_grad(ctx, result.weights, icfg, batch, cfg.clip_eps);
    if (!std::isfinite(loss)) {
      throw DivergedError("training diverged at epoch " + std::to_string(epoch) +
                          " (non-finite loss); retry with a different --seed");
    }
    result.loss_history.push_back(loss);
    optimizer.step(result.weights);
  }
  return result;
}

LearnedProgram extract_program(const WeightSet& w, std::span<const Clause> clauses) {
  std::vector<ProgramClause> chosen;
  for (std::size_t l = 0; l < w.rows(); ++l) {
    const auto p = softmax(w.row(l));
    const auto best = static_cast<std::size_t>(
        std::max_element(p.begin(), p.end()) - p.begin());
    if (w.mode() == WeightMode::kMulti) {
      chosen.push_back({clauses[best], p[best]});
    } else {
      const std::size_t n = w.clauses();
      chosen.push_back({clauses[best / n], p[best]});
      chosen.push_back({clauses[best % n], p[best]});
    }
  }

  LearnedProgram program;
  std::map<std::string, std::size_t> position;
  for (auto& pc : chosen) {
    const std::string key = canonical_text(pc.clause);
    auto [it, inserted] = position.try_emplace(key, program.clauses.size());
    if (inserted) {
      program.clauses.push_back(std::move(pc));
    } else {
      auto& existing = program.clauses[it->second];
      existing.confidence = std::max(existing.confidence, pc.confidence);
    }
  }
  return program;
}

}  // namespace dilp
