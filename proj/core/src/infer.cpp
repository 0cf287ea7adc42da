#include "dilp/infer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace dilp {
namespace {

// softor of two values and the weights d/da, d/db.
struct Soft2 {
  double value;
  double wa;
  double wb;
};

inline Soft2 softor2(double a, double b, double gamma) {
  const double hi = std::max(a, b);
  const double ea = std::exp((a - hi) / gamma);
  const double eb = std::exp((b - hi) / gamma);
  const double sum = ea + eb;
  return {hi + gamma * std::log(sum), ea / sum, eb / sum};
}

void compute_clause_outputs(const IndexTensor& x, std::span<const double> v,
                            std::vector<double>& out) {
  out.assign(x.clauses * x.atoms, 0.0);
  const std::int32_t* idx = x.data.data();
  for (std::size_t i = 0; i < x.clauses; ++i) {
    double* row = out.data() + i * x.atoms;
    for (std::size_t j = 0; j < x.atoms; ++j) {
      double prod = 1.0;
      for (std::size_t k = 0; k < x.width; ++k) prod *= v[static_cast<std::size_t>(*idx++)];
      row[j] = prod;
    }
  }
}

// Returns r(v) and, in multi mode, the per-slot outputs h_l.
void combine(const WeightSet& w, std::span<const double> probs,
             const std::vector<double>& c, std::size_t atoms, double gamma,
             std::vector<double>& slot_out, std::vector<double>& r) {
  const std::size_t n = w.clauses();
  r.assign(atoms, 0.0);
  if (w.mode() == WeightMode::kMulti) {
    const std::size_t m = w.rows();
    slot_out.assign(m * atoms, 0.0);
    for (std::size_t l = 0; l < m; ++l) {
      double* h = slot_out.data() + l * atoms;
      for (std::size_t i = 0; i < n; ++i) {
        const double p = probs[l * n + i];
        const double* ci = c.data() + i * atoms;
        for (std::size_t j = 0; j < atoms; ++j) h[j] += p * ci[j];
      }
    }
    std::vector<double> column(m);
    for (std::size_t j = 0; j < atoms; ++j) {
      for (std::size_t l = 0; l < m; ++l) column[l] = slot_out[l * atoms + j];
      r[j] = softor(column, gamma);
    }
    return;
  }
  slot_out.clear();
  for (std::size_t a = 0; a < n; ++a) {
    const double* ca = c.data() + a * atoms;
    for (std::size_t b = 0; b < n; ++b) {
      const double q = probs[a * n + b];
      const double* cb = c.data() + b * atoms;
      for (std::size_t j = 0; j < atoms; ++j) r[j] += q * softor2(ca[j], cb[j], gamma).value;
    }
  }
}

std::vector<double> weight_probs(const WeightSet& w) {
  std::vector<double> probs;
  probs.reserve(w.parameter_count());
  for (std::size_t l = 0; l < w.rows(); ++l) {
    auto p = softmax(w.row(l));
    probs.insert(probs.end(), p.begin(), p.end());
  }
  return probs;
}

}  // namespace

WeightSet WeightSet::multi(std::size_t slots, std::size_t clauses) {
  WeightSet w;
  w.mode_ = WeightMode::kMulti;
  w.rows_ = slots;
  w.cols_ = clauses;
  w.clauses_ = clauses;
  w.values_.assign(slots * clauses, 0.0);
  w.grads_.assign(slots * clauses, 0.0);
  return w;
}

WeightSet WeightSet::pair(std::size_t clauses) {
  WeightSet w;
  w.mode_ = WeightMode::kPair;
  w.rows_ = 1;
  w.cols_ = clauses * clauses;
  w.clauses_ = clauses;
  w.values_.assign(clauses * clauses, 0.0);
  w.grads_.assign(clauses * clauses, 0.0);
  return w;
}

void WeightSet::zero_grad() { std::fill(grads_.begin(), grads_.end(), 0.0); }

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - hi);
    sum += out[i];
  }
  for (double& o : out) o /= sum;
  return out;
}

double softor(std::span<const double> xs, double gamma) {
  assert(!xs.empty() && gamma > 0.0);
  if (xs.size() == 1) return xs[0];
  const double hi = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += std::exp((x - hi) / gamma);
  return hi + gamma * std::log(sum);
}

std::vector<double> softor(const std::vector<std::vector<double>>& xs, double gamma) {
  assert(!xs.empty());
  const std::size_t n = xs.front().size();
  std::vector<double> out(n);
  std::vector<double> column(xs.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < xs.size(); ++l) column[l] = xs[l][j];
    out[j] = softor(column, gamma);
  }
  return out;
}

std::vector<double> gather(std::span<const double> a, const IndexTensor& x,
                           std::size_t clause) {
  std::vector<double> out(x.atoms * x.width);
  for (std::size_t j = 0; j < x.atoms; ++j) {
    for (std::size_t k = 0; k < x.width; ++k)
      out[j * x.width + k] = a[static_cast<std::size_t>(x(clause, j, k))];
  }
  return out;
}

std::vector<double> clause_output(const IndexTensor& x, std::size_t clause,
                                  std::span<const double> v) {
  const auto g = gather(v, x, clause);
  std::vector<double> out(x.atoms, 1.0);
  for (std::size_t j = 0; j < x.atoms; ++j) {
    for (std::size_t k = 0; k < x.width; ++k) out[j] *= g[j * x.width + k];
  }
  return out;
}

std::vector<double> weighted_sum(const IndexTensor& x, std::span<const double> v,
                                 const WeightSet& w, std::size_t slot) {
  assert(w.mode() == WeightMode::kMulti);
  const auto p = softmax(w.row(slot));
  std::vector<double> out(x.atoms, 0.0);
  for (std::size_t i = 0; i < x.clauses; ++i) {
    const auto c = clause_output(x, i, v);
    for (std::size_t j = 0; j < x.atoms; ++j) out[j] += p[i] * c[j];
  }
  return out;
}

std::vector<double> step(const IndexTensor& x, std::span<const double> v,
                         const WeightSet& w, const InferConfig& cfg) {
  InferConfig one = cfg;
  one.steps = 1;
  return infer(x, v, w, one);
}

std::vector<double> infer(const IndexTensor& x, std::span<const double> v0,
                          const WeightSet& w, const InferConfig& cfg,
                          InferenceTrace* trace) {
  assert(v0.size() == x.atoms && w.clauses() == x.clauses);
  std::vector<double> v(v0.begin(), v0.end());
  const std::vector<double> probs = weight_probs(w);
  if (trace) {
    *trace = InferenceTrace{};
    trace->probs = probs;
    trace->valuations.push_back(v);
  }

  std::vector<double> c;
  std::vector<double> slot_out;
  std::vector<double> r;
  for (int t = 0; t < cfg.steps; ++t) {
    compute_clause_outputs(x, v, c);
    combine(w, probs, c, x.atoms, cfg.gamma, slot_out, r);
    for (std::size_t j = 0; j < x.atoms; ++j) {
      double next = softor2(v[j], r[j], cfg.gamma).value;
      if (cfg.clamp) next = std::min(next, 1.0);
      v[j] = next;
    }
    if (trace) {
      trace->clause_out.push_back(c);
      trace->slot_out.push_back(slot_out);
      trace->combined.push_back(r);
      trace->valuations.push_back(v);
    }
  }
  return v;
}

std::vector<double> backward(const IndexTensor& x, WeightSet& w,
                             const InferConfig& cfg, const InferenceTrace& trace,
                             std::span<const double> grad_out) {
  const std::size_t atoms = x.atoms;
  const std::size_t n = x.clauses;
  const double gamma = cfg.gamma;
  const auto& probs = trace.probs;
  std::vector<double> dprobs(probs.size(), 0.0);

  std::vector<double> gv(grad_out.begin(), grad_out.end());
  std::vector<double> gv_prev(atoms);
  std::vector<double> gr(atoms);
  std::vector<double> gc(n * atoms);

  for (int t = static_cast<int>(trace.combined.size()) - 1; t >= 0; --t) {
    const auto& v = trace.valuations[static_cast<std::size_t>(t)];
    const auto& r = trace.combined[static_cast<std::size_t>(t)];
    const auto& c = trace.clause_out[static_cast<std::size_t>(t)];

    // v_{t+1} = softor(v_t, r)
    for (std::size_t j = 0; j < atoms; ++j) {
      const Soft2 s = softor2(v[j], r[j], gamma);
      double g = gv[j];
      if (cfg.clamp && s.value > 1.0) g = 0.0;
      gv_prev[j] = g * s.wa;
      gr[j] = g * s.wb;
    }

    std::fill(gc.begin(), gc.end(), 0.0);
    if (w.mode() == WeightMode::kMulti) {
      const std::size_t m = w.rows();
      const auto& h = trace.slot_out[static_cast<std::size_t>(t)];
      std::vector<double> gh(m * atoms);
      // r = softor_l(h_l): d r / d h_l = exp((h_l - r) / gamma)
      for (std::size_t j = 0; j < atoms; ++j) {
        if (m == 1) {
          gh[j] = gr[j];
          continue;
        }
        for (std::size_t l = 0; l < m; ++l)
          gh[l * atoms + j] = gr[j] * std::exp((h[l * atoms + j] - r[j]) / gamma);
      }
      for (std::size_t l = 0; l < m; ++l) {
        const double* ghl = gh.data() + l * atoms;
        for (std::size_t i = 0; i < n; ++i) {
          const double* ci = c.data() + i * atoms;
          double* gci = gc.data() + i * atoms;
          const double p = probs[l * n + i];
          double acc = 0.0;
          for (std::size_t j = 0; j < atoms; ++j) {
            acc += ghl[j] * ci[j];
            gci[j] += p * ghl[j];
          }
          dprobs[l * n + i] += acc;
        }
      }
    } else {
      for (std::size_t a = 0; a < n; ++a) {
        const double* ca = c.data() + a * atoms;
        for (std::size_t b = 0; b < n; ++b) {
          const double* cb = c.data() + b * atoms;
          const double q = probs[a * n + b];
          double acc = 0.0;
          for (std::size_t j = 0; j < atoms; ++j) {
            const Soft2 s = softor2(ca[j], cb[j], gamma);
            acc += gr[j] * s.value;
            gc[a * atoms + j] += q * gr[j] * s.wa;
            gc[b * atoms + j] += q * gr[j] * s.wb;
          }
          dprobs[a * n + b] += acc;
        }
      }
    }

    // c_i[j] = prod_k v[X[i,j,k]]
    const std::size_t width = x.width;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < atoms; ++j) {
        const double g = gc[i * atoms + j];
        if (g == 0.0) continue;
        auto idx = x.row(i, j);
        if (width == 1) {
          gv_prev[static_cast<std::size_t>(idx[0])] += g;
          continue;
        }
        for (std::size_t k = 0; k < width; ++k) {
          double others = 1.0;
          for (std::size_t k2 = 0; k2 < width; ++k2) {
            if (k2 != k) others *= v[static_cast<std::size_t>(idx[k2])];
          }
          gv_prev[static_cast<std::size_t>(idx[k])] += g * others;
        }
      }
    }
    gv.swap(gv_prev);
  }

  // Softmax Jacobian per weight row.
  auto& grads = w.grads();
  const std::size_t cols = w.cols();
  for (std::size_t l = 0; l < w.rows(); ++l) {
    double dot = 0.0;
    for (std::size_t i = 0; i < cols; ++i) dot += probs[l * cols + i] * dprobs[l * cols + i];
    for (std::size_t i = 0; i < cols; ++i)
      grads[l * cols + i] += probs[l * cols + i] * (dprobs[l * cols + i] - dot);
  }
  return gv;
}

}  // namespace dilp
