#ifndef MOELAB_RNG_HPP
#define MOELAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace moelab {

/// One step of the splitmix64 stream; used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic seed for one (scenario, n, rep) cell. Cells are mutually
/// independent: changing one coordinate never affects another cell's seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                                 std::uint64_t n, std::uint64_t rep) {
  std::uint64_t s = base;
  std::uint64_t out = splitmix64(s);
  s ^= tag * 0x9e3779b97f4a7c15ULL;
  out ^= splitmix64(s);
  s ^= n * 0xd1342543de82ef95ULL;
  out ^= splitmix64(s);
  s ^= rep * 0xaf251af3b0f025b5ULL;
  out ^= splitmix64(s);
  return out;
}

/// Seeded generator with hand-rolled variate transforms. Only raw 64-bit
/// draws come from the engine, so streams are identical across standard
/// library implementations. Copyable: a copy replays the same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe to pass to log().
  double uniform_pos() {
    return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. Stateless: the spare is discarded so
  /// copies of the generator stay in lockstep.
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Gamma(alpha, 1) by Marsaglia-Tsang squeeze; boost for alpha < 1.
  double gamma(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("gamma: alpha must be > 0");
    if (alpha < 1.0) {
      const double u = uniform_pos();
      return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

  /// Student-t with df degrees of freedom, location 0, unit scale.
  double student_t(double df) {
    const double z = normal();
    const double v = chi_squared(df);
    return z / std::sqrt(v / df);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace moelab

#endif  // MOELAB_RNG_HPP
