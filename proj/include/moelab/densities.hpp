#ifndef MOELAB_DENSITIES_HPP
#define MOELAB_DENSITIES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "moelab/experts.hpp"
#include "moelab/numeric.hpp"
#include "moelab/rng.hpp"

namespace moelab {

/// One expert component G = (a, b, nu): slope vector, intercept, and
/// variance (Gaussian) or degrees of freedom (Student-t).
struct ComponentParams {
  std::vector<double> a;
  double b = 0.0;
  double nu = 1.0;

  ComponentParams() = default;
  ComponentParams(std::vector<double> a_, double b_, double nu_)
      : a(std::move(a_)), b(b_), nu(nu_) {
    if (!(nu > 0.0)) throw std::domain_error("ComponentParams: nu must be > 0");
  }

  std::size_t dim() const { return a.size(); }
};

enum class BaseKind { Gaussian, StudentT };

/// The frozen pre-trained density family f0 together with its expert phi.
struct BaseFamily {
  BaseKind kind = BaseKind::Gaussian;
  ExpertFn expert;  // phi
};

inline constexpr double kLogTwoPi = 1.8378770664093454836;

inline double gaussian_logpdf(double y, double mean, double nu) {
  if (!(nu > 0.0)) throw std::domain_error("gaussian_logpdf: nu must be > 0");
  const double r = y - mean;
  return -0.5 * (kLogTwoPi + std::log(nu)) - r * r / (2.0 * nu);
}

/// Student-t log-density with unit scale: location `mean`, df `df`.
inline double student_t_logpdf(double y, double mean, double df) {
  if (!(df > 0.0)) throw std::domain_error("student_t_logpdf: df must be > 0");
  const double r = y - mean;
  return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
         0.5 * std::log(df * 3.14159265358979323846) -
         0.5 * (df + 1.0) * std::log1p(r * r / df);
}

inline void check_dim(std::span<const double> x, const ComponentParams& g,
                      const char* who) {
  if (x.size() != g.a.size())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

/// Log-density of the Gaussian prompt f(y | sigma(a^T x + b), nu).
inline double prompt_logpdf(std::span<const double> x, double y,
                            const ComponentParams& g, const ExpertFn& sigma) {
  check_dim(x, g, "prompt_logpdf");
  const double z = dot(x.data(), g.a.data(), x.size()) + g.b;
  return gaussian_logpdf(y, eval(sigma, z), g.nu);
}

struct PromptScore {
  std::vector<double> grad_a;
  double grad_b = 0.0;
  double grad_nu = 0.0;
};

/// Analytic gradient of prompt_logpdf in (a, b, nu).
/// With z = a^T x + b, m = sigma(z), r = y - m:
///   d/da  = sigma'(z) * r/nu * x
///   d/db  = sigma'(z) * r/nu
///   d/dnu = (r^2 - nu) / (2 nu^2)
inline PromptScore prompt_score(std::span<const double> x, double y,
                                const ComponentParams& g,
                                const ExpertFn& sigma) {
  check_dim(x, g, "prompt_score");
  if (!(g.nu > 0.0)) throw std::domain_error("prompt_score: nu must be > 0");
  const double z = dot(x.data(), g.a.data(), x.size()) + g.b;
  const double m = eval(sigma, z);
  const double s1 = deriv1(sigma, z);
  const double r = y - m;
  PromptScore out;
  const double w = s1 * r / g.nu;
  out.grad_a.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out.grad_a[j] = w * x[j];
  out.grad_b = w;
  out.grad_nu = (r * r - g.nu) / (2.0 * g.nu * g.nu);
  return out;
}

/// Log-density of the frozen base component at mean phi(a0^T x + b0).
inline double base_logpdf(std::span<const double> x, double y,
                          const BaseFamily& base, const ComponentParams& g0) {
  check_dim(x, g0, "base_logpdf");
  const double z = dot(x.data(), g0.a.data(), x.size()) + g0.b;
  const double m = eval(base.expert, z);
  if (base.kind == BaseKind::Gaussian) return gaussian_logpdf(y, m, g0.nu);
  return student_t_logpdf(y, m, g0.nu);
}

inline double sample_prompt(std::span<const double> x,
                            const ComponentParams& g, const ExpertFn& sigma,
                            Rng& rng) {
  check_dim(x, g, "sample_prompt");
  const double z = dot(x.data(), g.a.data(), x.size()) + g.b;
  return eval(sigma, z) + std::sqrt(g.nu) * rng.normal();
}

inline double sample_base(std::span<const double> x, const BaseFamily& base,
                          const ComponentParams& g0, Rng& rng) {
  check_dim(x, g0, "sample_base");
  const double z = dot(x.data(), g0.a.data(), x.size()) + g0.b;
  const double m = eval(base.expert, z);
  if (base.kind == BaseKind::Gaussian) return m + std::sqrt(g0.nu) * rng.normal();
  return m + rng.student_t(g0.nu);
}

}  // namespace moelab

#endif  // MOELAB_DENSITIES_HPP
