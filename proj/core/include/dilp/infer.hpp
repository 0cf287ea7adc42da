#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dilp/grounding.hpp"

namespace dilp {

enum class WeightMode { kMulti, kPair };

/// Clause weights and their gradient buffer.
///
/// Multi mode holds m rows of |C| logits; each row is a softmax distribution
/// over which clause fills that program slot. Pair mode holds one |C| x |C|
/// matrix whose softmax is a distribution over ordered clause pairs.
class WeightSet {
 public:
  WeightSet() = default;
  static WeightSet multi(std::size_t slots, std::size_t clauses);
  static WeightSet pair(std::size_t clauses);

  WeightMode mode() const { return mode_; }
  /// m in multi mode, 1 in pair mode.
  std::size_t rows() const { return rows_; }
  /// Row length: |C| in multi mode, |C|^2 in pair mode.
  std::size_t cols() const { return cols_; }
  std::size_t clauses() const { return clauses_; }
  std::size_t parameter_count() const { return values_.size(); }

  std::span<double> row(std::size_t l) { return {values_.data() + l * cols_, cols_}; }
  std::span<const double> row(std::size_t l) const {
    return {values_.data() + l * cols_, cols_};
  }
  std::span<double> grad_row(std::size_t l) { return {grads_.data() + l * cols_, cols_}; }
  std::span<const double> grad_row(std::size_t l) const {
    return {grads_.data() + l * cols_, cols_};
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& grads() { return grads_; }
  const std::vector<double>& grads() const { return grads_; }

  void zero_grad();

 private:
  WeightMode mode_ = WeightMode::kMulti;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t clauses_ = 0;
  std::vector<double> values_;
  std::vector<double> grads_;
};

struct InferConfig {
  int steps = 4;
  double gamma = 1e-5;
  /// Clip valuations at 1 after every step. Off by default; the clip has zero
  /// gradient where it binds.
  bool clamp = false;
};

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

/// gamma * log(sum_l exp(x_l / gamma)), shifted by the maximum.
double softor(std::span<const double> xs, double gamma);
/// Elementwise softor over equal-length vectors.
std::vector<double> softor(const std::vector<std::vector<double>>& xs, double gamma);

/// gather(a, X[i])[j,k] = a[X[i,j,k]], flattened row-major (atoms x width).
std::vector<double> gather(std::span<const double> a, const IndexTensor& x,
                           std::size_t clause);
/// c_i(v)[j]: product over the gathered body valuations.
std::vector<double> clause_output(const IndexTensor& x, std::size_t clause,
                                  std::span<const double> v);
/// h_l(v) = sum_i softmax(w_l)[i] * c_i(v). Multi mode only.
std::vector<double> weighted_sum(const IndexTensor& x, std::span<const double> v,
                                 const WeightSet& w, std::size_t slot);

/// Intermediate values of one forward pass, kept for the backward pass.
struct InferenceTrace {
  std::vector<std::vector<double>> valuations;  // steps + 1 vectors
  std::vector<std::vector<double>> clause_out;  // per step, clauses x atoms
  std::vector<std::vector<double>> slot_out;    // per step, rows x atoms (multi)
  std::vector<std::vector<double>> combined;    // per step, r(v_t)
  std::vector<double> probs;                    // softmax of each weight row
};

/// One amalgamation step v_{t+1} = softor(v_t, r(v_t)).
std::vector<double> step(const IndexTensor& x, std::span<const double> v,
                         const WeightSet& w, const InferConfig& cfg);

/// v_T after cfg.steps steps from v0. Fills `trace` when given.
std::vector<double> infer(const IndexTensor& x, std::span<const double> v0,
                          const WeightSet& w, const InferConfig& cfg,
                          InferenceTrace* trace = nullptr);

/// Reverse pass for a scalar loss whose gradient with respect to v_T is
/// `grad_out`. Accumulates d loss / d weights into w.grads(); returns the
/// gradient with respect to v0.
std::vector<double> backward(const IndexTensor& x, WeightSet& w,
                             const InferConfig& cfg, const InferenceTrace& trace,
                             std::span<const double> grad_out);

}  // namespace dilp
