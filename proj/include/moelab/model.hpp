#ifndef MOELAB_MODEL_HPP
#define MOELAB_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moelab/densities.hpp"
#include "moelab/numeric.hpp"
#include "moelab/rng.hpp"

namespace moelab {

/// Contaminated mixture: frozen base (f0, phi, G0) plus trainable Gaussian
/// prompt (sigma, G) mixed with proportion lambda.
struct ContaminatedModel {
  double lambda = 0.5;
  BaseFamily base;
  ComponentParams g0;
  ExpertFn sigma;
  ComponentParams prompt;

  ContaminatedModel() = default;
  ContaminatedModel(double lambda_, BaseFamily base_, ComponentParams g0_,
                    ExpertFn sigma_, ComponentParams prompt_)
      : lambda(lambda_),
        base(base_),
        g0(std::move(g0_)),
        sigma(sigma_),
        prompt(std::move(prompt_)) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw std::domain_error("ContaminatedModel: lambda must be in [0,1]");
    if (g0.dim() != prompt.dim())
      throw std::invalid_argument("ContaminatedModel: G0/G dimension mismatch");
  }

  std::size_t dim() const { return g0.dim(); }
};

/// n x d covariate matrix (row-major) plus response vector.
struct Dataset {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> x;  // n * d
  std::vector<double> y;

  std::span<const double> row(std::size_t i) const {
    return {x.data() + i * d, d};
  }
};

inline double mixture_logpdf(const ContaminatedModel& m,
                             std::span<const double> x, double y) {
  // Degenerate mixtures return the single component exactly.
  if (m.lambda <= 0.0) return base_logpdf(x, y, m.base, m.g0);
  if (m.lambda >= 1.0) return prompt_logpdf(x, y, m.prompt, m.sigma);
  const double lb = std::log1p(-m.lambda) + base_logpdf(x, y, m.base, m.g0);
  const double lf = std::log(m.lambda) + prompt_logpdf(x, y, m.prompt, m.sigma);
  return log_sum_exp(lb, lf);
}

/// Sum of mixture_logpdf over all rows (exact summation). An empty dataset
/// yields 0 and sets *empty_warning when provided.
inline double log_likelihood(const ContaminatedModel& m, const Dataset& data,
                             bool* empty_warning = nullptr) {
  if (data.n != data.y.size() || data.x.size() != data.n * data.d)
    throw std::invalid_argument("log_likelihood: inconsistent dataset");
  if (empty_warning) *empty_warning = data.n == 0;
  ExactSum acc;
  for (std::size_t i = 0; i < data.n; ++i)
    acc.add(mixture_logpdf(m, data.row(i), data.y[i]));
  return acc.value();
}

/// Posterior probability that (x, y) came from the prompt component,
/// computed in log space. If both component densities underflow to -inf
/// the prior lambda is returned and *underflow is set.
inline double responsibility(const ContaminatedModel& m,
                             std::span<const double> x, double y,
                             bool* underflow = nullptr) {
  if (underflow) *underflow = false;
  if (m.lambda <= 0.0) return 0.0;
  if (m.lambda >= 1.0) return 1.0;
  const double lb = std::log1p(-m.lambda) + base_logpdf(x, y, m.base, m.g0);
  const double lf = std::log(m.lambda) + prompt_logpdf(x, y, m.prompt, m.sigma);
  const double inf = std::numeric_limits<double>::infinity();
  if (lb == -inf && lf == -inf) {
    if (underflow) *underflow = true;
    return m.lambda;
  }
  if (lf == -inf) return 0.0;
  if (lb == -inf) return 1.0;
  return 1.0 / (1.0 + std::exp(lb - lf));
}

/// Draw a dataset with x_i uniform on [-1,1]^d; the test hook keeps the
/// latent component indicators (1 = prompt generated the row).
inline Dataset sample_dataset_with_indicators(const ContaminatedModel& m,
                                              std::size_t n, std::size_t d,
                                              Rng& rng,
                                              std::vector<std::uint8_t>* who) {
  if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
  if (d != m.dim())
    throw std::invalid_argument("sample_dataset: d does not match the model");
  Dataset out;
  out.n = n;
  out.d = d;
  out.x.resize(n * d);
  out.y.resize(n);
  if (who) who->assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) out.x[i * d + j] = rng.uniform(-1.0, 1.0);
    const bool from_prompt = rng.uniform() < m.lambda;
    if (who) (*who)[i] = from_prompt ? 1 : 0;
    out.y[i] = from_prompt
                   ? sample_prompt(out.row(i), m.prompt, m.sigma, rng)
                   : sample_base(out.row(i), m.base, m.g0, rng);
  }
  return out;
}

inline Dataset sample_dataset(const ContaminatedModel& m, std::size_t n,
                              std::size_t d, Rng& rng) {
  return sample_dataset_with_indicators(m, n, d, rng, nullptr);
}

struct HellingerEstimate {
  double h = 0.0;          // sqrt of the clamped squared distance
  double se = 0.0;         // Monte-Carlo standard error of the inner mean
  double inner_mean = 0.0; // estimate of the Bhattacharyya coefficient
};

/// Monte-Carlo Hellinger distance between two contaminated models sharing
/// the uniform covariate law: h^2 = 1 - E_p sqrt(q/p), estimated with
/// (X_i, Y_i) ~ p. The inner mean is clamped into [0,1] before the root.
inline HellingerEstimate hellinger_mc(const ContaminatedModel& p,
                                      const ContaminatedModel& q,
                                      std::size_t mc_n, Rng& rng) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("hellinger_mc: dimension mismatch");
  if (mc_n < 1000)
    throw std::invalid_argument("hellinger_mc: mc_n must be >= 1000");
  const std::size_t d = p.dim();
  std::vector<double> x(d);
  ExactSum sum, sumsq;
  for (std::size_t i = 0; i < mc_n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(-1.0, 1.0);
    const bool from_prompt = rng.uniform() < p.lambda;
    const double y = from_prompt ? sample_prompt(x, p.prompt, p.sigma, rng)
                                 : sample_base(x, p.base, p.g0, rng);
    const double lp = mixture_logpdf(p, x, y);
    const double lq = mixture_logpdf(q, x, y);
    const double ratio = std::exp(0.5 * (lq - lp));
    sum.add(ratio);
    sumsq.add(ratio * ratio);
  }
  const double nn = static_cast<double>(mc_n);
  HellingerEstimate out;
  out.inner_mean = sum.value() / nn;
  const double var =
      (sumsq.value() / nn - out.inner_mean * out.inner_mean) / (nn - 1.0) * nn;
  out.se = std::sqrt(var > 0.0 ? var / nn : 0.0);
  const double h2 = 1.0 - out.inner_mean;
  out.h = std::sqrt(h2 > 0.0 ? h2 : 0.0);
  return out;
}

// ---------------------------------------------------------------------------
// Dataset CSV: header "x1,...,xd,y".

inline void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.precision(17);
  for (std::size_t j = 0; j < data.d; ++j) f << 'x' << (j + 1) << ',';
  f << "y\n";
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j < data.d; ++j) f << data.x[i * data.d + j] << ',';
    f << data.y[i] << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline Dataset read_dataset_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty CSV: " + path);
  std::size_t d = 0;
  {
    std::stringstream header(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(header, col, ',')) cols.push_back(col);
    if (cols.empty() || cols.back() != "y")
      throw std::runtime_error("dataset CSV must end with column y");
    d = cols.size() - 1;
  }
  Dataset out;
  out.d = d;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(row, cell, ',')) {
      const double v = std::stod(cell);
      if (j < d)
        out.x.push_back(v);
      else
        out.y.push_back(v);
      ++j;
    }
    if (j != d + 1)
      throw std::runtime_error("dataset CSV row has wrong arity");
  }
  out.n = out.y.size();
  return out;
}

}  // namespace moelab

#endif  // MOELAB_MODEL_HPP
