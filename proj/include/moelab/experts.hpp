#ifndef MOELAB_EXPERTS_HPP
#define MOELAB_EXPERTS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace moelab {

enum class ExpertKind { Identity, Affine, Sigmoid, Relu, Tanh };

/// Scalar expert (activation) function applied to the linear index
/// a^T x + b to form a component's conditional mean.
struct ExpertFn {
  ExpertKind kind = ExpertKind::Identity;
  double slope = 1.0;   // Affine only
  double offset = 0.0;  // Affine only

  static ExpertFn identity() { return {ExpertKind::Identity, 1.0, 0.0}; }
  static ExpertFn sigmoid() { return {ExpertKind::Sigmoid, 1.0, 0.0}; }
  static ExpertFn relu() { return {ExpertKind::Relu, 1.0, 0.0}; }
  static ExpertFn tanh() { return {ExpertKind::Tanh, 1.0, 0.0}; }
  static ExpertFn affine(double slope, double offset) {
    if (slope == 0.0)
      throw std::invalid_argument("affine expert: slope must be nonzero");
    return {ExpertKind::Affine, slope, offset};
  }

  bool operator==(const ExpertFn& o) const {
    if (kind != o.kind) return false;
    if (kind == ExpertKind::Affine)
      return slope == o.slope && offset == o.offset;
    return true;
  }
};

inline double eval(const ExpertFn& f, double z) {
  switch (f.kind) {
    case ExpertKind::Identity:
      return z;
    case ExpertKind::Affine:
      return f.slope * z + f.offset;
    case ExpertKind::Sigmoid:
      // Branch on sign so exp() never overflows.
      if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
      {
        const double e = std::exp(z);
        return e / (1.0 + e);
      }
    case ExpertKind::Relu:
      return z > 0.0 ? z : 0.0;
    case ExpertKind::Tanh:
      return std::tanh(z);
  }
  return z;
}

inline double deriv1(const ExpertFn& f, double z) {
  switch (f.kind) {
    case ExpertKind::Identity:
      return 1.0;
    case ExpertKind::Affine:
      return f.slope;
    case ExpertKind::Sigmoid: {
      const double s = eval(f, z);
      return s * (1.0 - s);
    }
    case ExpertKind::Relu:
      // Subgradient convention: derivative at the kink is 0.
      return z > 0.0 ? 1.0 : 0.0;
    case ExpertKind::Tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
  }
  return 1.0;
}

inline double deriv2(const ExpertFn& f, double z) {
  switch (f.kind) {
    case ExpertKind::Identity:
    case ExpertKind::Affine:
    case ExpertKind::Relu:
      return 0.0;
    case ExpertKind::Sigmoid: {
      const double s = eval(f, z);
      return s * (1.0 - s) * (1.0 - 2.0 * s);
    }
    case ExpertKind::Tanh: {
      const double t = std::tanh(z);
      return -2.0 * t * (1.0 - t * t);
    }
  }
  return 0.0;
}

inline bool is_linear(const ExpertFn& f) {
  return f.kind == ExpertKind::Identity || f.kind == ExpertKind::Affine;
}

inline std::string expert_name(const ExpertFn& f) {
  switch (f.kind) {
    case ExpertKind::Identity:
      return "identity";
    case ExpertKind::Affine:
      return "affine";
    case ExpertKind::Sigmoid:
      return "sigmoid";
    case ExpertKind::Relu:
      return "relu";
    case ExpertKind::Tanh:
      return "tanh";
  }
  return "identity";
}

/// Parse the config/CLI spelling of an expert kind. Affine accepts the
/// form "affine:slope,offset".
inline ExpertFn parse_expert(const std::string& s) {
  if (s == "identity") return ExpertFn::identity();
  if (s == "sigmoid") return ExpertFn::sigmoid();
  if (s == "relu") return ExpertFn::relu();
  if (s == "tanh") return ExpertFn::tanh();
  if (s.rfind("affine", 0) == 0) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument(
          "affine expert needs parameters, e.g. affine:2,0.5");
    const auto comma = s.find(',', colon);
    if (comma == std::string::npos)
      throw std::invalid_argument("affine expert needs two parameters");
    const double slope = std::stod(s.substr(colon + 1, comma - colon - 1));
    const double offset = std::stod(s.substr(comma + 1));
    return ExpertFn::affine(slope, offset);
  }
  throw std::invalid_argument("unknown expert kind: " + s);
}

}  // namespace moelab

#endif  // MOELAB_EXPERTS_HPP
