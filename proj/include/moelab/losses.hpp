#ifndef MOELAB_LOSSES_HPP
#define MOELAB_LOSSES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "moelab/densities.hpp"
#include "moelab/numeric.hpp"

namespace moelab {

/// A point (lambda, G) of the joint parameter space Xi = [0,1] x Theta.
struct ParamPoint {
  double lambda = 0.0;
  ComponentParams g;
};

/// Differences against the frozen component: (a - a0, b - b0, nu - nu0).
struct DeltaG {
  std::vector<double> da;
  double db = 0.0;
  double dnu = 0.0;

  /// Euclidean norm of the concatenated (da, db, dnu) vector.
  double norm() const {
    double s = db * db + dnu * dnu;
    for (double v : da) s += v * v;
    return std::sqrt(s);
  }
};

inline DeltaG delta_g(const ComponentParams& g, const ComponentParams& g0) {
  if (g.dim() != g0.dim())
    throw std::invalid_argument("delta_g: dimension mismatch");
  DeltaG d;
  d.da.resize(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) d.da[i] = g.a[i] - g0.a[i];
  d.db = g.b - g0.b;
  d.dnu = g.nu - g0.nu;
  return d;
}

inline DeltaG delta_between(const ComponentParams& g,
                            const ComponentParams& gs) {
  return delta_g(g, gs);
}

/// D1 = |lambda - lambda*| + (lambda + lambda*) ||G - G*||.
inline double d1(const ParamPoint& p, const ParamPoint& q) {
  const DeltaG diff = delta_between(p.g, q.g);
  return std::abs(p.lambda - q.lambda) + (p.lambda + q.lambda) * diff.norm();
}

/// D2: quadratic merging loss against the frozen G0.
inline double d2(const ParamPoint& p, const ParamPoint& q,
                 const ComponentParams& g0) {
  const double A = delta_g(p.g, g0).norm();
  const double B = delta_g(q.g, g0).norm();
  const double C = delta_between(p.g, q.g).norm();
  const double l = p.lambda, ls = q.lambda;
  return l * A * A + ls * B * B - std::min(l, ls) * (A * A + B * B) +
         (l * A + ls * B) * C;
}

/// Equivalent barred form of D2.
inline double d2_bar(const ParamPoint& p, const ParamPoint& q,
                     const ComponentParams& g0) {
  const double A = delta_g(p.g, g0).norm();
  const double B = delta_g(q.g, g0).norm();
  const double C = delta_between(p.g, q.g).norm();
  const double l = p.lambda, ls = q.lambda;
  return std::abs(l - ls) * A * B + (l * A + ls * B) * C;
}

/// Mixed-norm pieces of D4: s(D) = ||da||^2 + |db|^4 + |dnu|^2 and
/// rho(D) = ||da|| + |db|^2 + |dnu|.
inline double d4_s(const DeltaG& d) {
  double na2 = 0.0;
  for (double v : d.da) na2 += v * v;
  const double b2 = d.db * d.db;
  return na2 + b2 * b2 + d.dnu * d.dnu;
}

inline double d4_rho(const DeltaG& d) {
  double na2 = 0.0;
  for (double v : d.da) na2 += v * v;
  return std::sqrt(na2) + d.db * d.db + std::abs(d.dnu);
}

inline double d4(const ParamPoint& p, const ParamPoint& q,
                 const ComponentParams& g0) {
  const DeltaG dp = delta_g(p.g, g0);
  const DeltaG dq = delta_g(q.g, g0);
  const DeltaG dd = delta_between(p.g, q.g);  // equals dp - dq
  const double l = p.lambda, ls = q.lambda;
  return l * d4_s(dp) + ls * d4_s(dq) -
         std::min(l, ls) * (d4_s(dp) + d4_s(dq)) +
         (l * d4_rho(dp) + ls * d4_rho(dq)) * d4_rho(dd);
}

inline double d4_bar(const ParamPoint& p, const ParamPoint& q,
                     const ComponentParams& g0) {
  const DeltaG dp = delta_g(p.g, g0);
  const DeltaG dq = delta_g(q.g, g0);
  const DeltaG dd = delta_between(p.g, q.g);
  const double l = p.lambda, ls = q.lambda;
  return std::abs(l - ls) * d4_rho(dp) * d4_rho(dq) +
         (l * d4_rho(dp) + ls * d4_rho(dq)) * d4_rho(dd);
}

struct XiResult {
  bool member = false;
  bool degenerate = false;  // some Delta coordinate is exactly zero
};

namespace detail {
inline XiResult xi_member(const ParamPoint& p, const ComponentParams& g0,
                          double l_n, std::size_t n, int b_power) {
  if (!(l_n > 0.0)) throw std::invalid_argument("xi_member: l_n must be > 0");
  if (n < 1) throw std::invalid_argument("xi_member: n must be >= 1");
  const DeltaG d = delta_g(p.g, g0);
  double mn = std::numeric_limits<double>::infinity();
  for (double v : d.da) mn = std::min(mn, v * v);
  const double ab = std::abs(d.db);
  mn = std::min(mn, b_power == 4 ? ab * ab * ab * ab : ab * ab);
  mn = std::min(mn, d.dnu * d.dnu);
  XiResult out;
  if (mn == 0.0) {
    out.degenerate = true;
    return out;  // membership impossible
  }
  out.member = p.lambda >= l_n / (mn * std::sqrt(static_cast<double>(n)));
  return out;
}
}  // namespace detail

/// Xi_1 membership (linear sigma, Gaussian base): min over
/// {|(da)_i|^2, |db|^4, |dnu|^2}.
inline XiResult xi1_member(const ParamPoint& p, const ComponentParams& g0,
                           double l_n, std::size_t n) {
  return detail::xi_member(p, g0, l_n, n, 4);
}

/// Xi_2 membership (non-linear sigma = phi): min over
/// {|(da)_i|^2, |db|^2, |dnu|^2}.
inline XiResult xi2_member(const ParamPoint& p, const ComponentParams& g0,
                           double l_n, std::size_t n) {
  return detail::xi_member(p, g0, l_n, n, 2);
}

enum class ScenarioId { T2, T4, T6, T7, T8, T9 };

inline std::string scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::T2: return "T2";
    case ScenarioId::T4: return "T4";
    case ScenarioId::T6: return "T6";
    case ScenarioId::T7: return "T7";
    case ScenarioId::T8: return "T8";
    case ScenarioId::T9: return "T9";
  }
  return "T2";
}

inline ScenarioId parse_scenario(const std::string& s) {
  if (s == "T2" || s == "t2") return ScenarioId::T2;
  if (s == "T4" || s == "t4") return ScenarioId::T4;
  if (s == "T6" || s == "t6") return ScenarioId::T6;
  if (s == "T7" || s == "t7") return ScenarioId::T7;
  if (s == "T8" || s == "t8") return ScenarioId::T8;
  if (s == "T9" || s == "t9") return ScenarioId::T9;
  throw std::invalid_argument("unknown scenario: " + s);
}

/// Raw parameter errors plus the theorem-specific scaled quantities whose
/// theory rate is sqrt(log n / n) in every scenario.
///
/// Scalings per scenario family:
///   T2/T6/T7/T8: scaled_lambda = err_lambda, scaled_x = lambda* err_x
///   T4: scaled_lambda = sqrt(||Da*||^4+|Db*|^8+|Dnu*|^4) err_lambda,
///       scaled_a/nu = lambda* sqrt(s*) err_a/nu,
///       scaled_b = lambda* sqrt(s*) err_b^2        (heat-equation coupling)
///   T9: scaled_lambda = ||DG*||^2 err_lambda,
///       scaled_x = lambda* ||DG*|| err_x
inline std::map<std::string, double> theorem_errors(ScenarioId id,
                                                    const ParamPoint& truth,
                                                    const ParamPoint& est,
                                                    const ComponentParams& g0) {
  if (truth.g.dim() != est.g.dim() || truth.g.dim() != g0.dim())
    throw std::invalid_argument("theorem_errors: dimension mismatch");
  std::map<std::string, double> out;
  const double err_lambda = std::abs(est.lambda - truth.lambda);
  double na2 = 0.0;
  for (std::size_t i = 0; i < truth.g.dim(); ++i) {
    const double d = est.g.a[i] - truth.g.a[i];
    na2 += d * d;
  }
  const double err_a = std::sqrt(na2);
  const double err_b = std::abs(est.g.b - truth.g.b);
  const double err_nu = std::abs(est.g.nu - truth.g.nu);
  out["err_lambda"] = err_lambda;
  out["err_a"] = err_a;
  out["err_b"] = err_b;
  out["err_nu"] = err_nu;

  const double ls = truth.lambda;
  const DeltaG dgs = delta_g(truth.g, g0);
  switch (id) {
    case ScenarioId::T2:
    case ScenarioId::T6:
    case ScenarioId::T7:
    case ScenarioId::T8:
      out["scaled_lambda"] = err_lambda;
      out["scaled_a"] = ls * err_a;
      out["scaled_b"] = ls * err_b;
      out["scaled_nu"] = ls * err_nu;
      break;
    case ScenarioId::T4: {
      const double s_star = d4_s(dgs);
      double na4 = 0.0;
      for (double v : dgs.da) na4 += v * v;
      na4 *= na4;
      const double b2 = dgs.db * dgs.db;
      const double t_star = na4 + b2 * b2 * b2 * b2 + dgs.dnu * dgs.dnu * dgs.dnu * dgs.dnu;
      out["scaled_lambda"] = std::sqrt(t_star) * err_lambda;
      out["scaled_a"] = ls * std::sqrt(s_star) * err_a;
      out["scaled_b"] = ls * std::sqrt(s_star) * err_b * err_b;
      out["scaled_nu"] = ls * std::sqrt(s_star) * err_nu;
      break;
    }
    case ScenarioId::T9: {
      const double nrm = dgs.norm();
      out["scaled_lambda"] = nrm * nrm * err_lambda;
      out["scaled_a"] = ls * nrm * err_a;
      out["scaled_b"] = ls * nrm * err_b;
      out["scaled_nu"] = ls * nrm * err_nu;
      break;
    }
  }
  return out;
}

}  // namespace moelab

#endif  // MOELAB_LOSSES_HPP
