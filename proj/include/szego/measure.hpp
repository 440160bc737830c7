#pragma once
//
// Circle measures and the weighted Szegő functional
//
//     K_m(μ) = ∫ (1 − cos θ)^m log(1/w(θ)) dθ/2π
//
// Measures are either Bernstein–Szegő (finite Verblunsky prefix followed by
// zeros) or positive weight samples on the uniform grid θ_j = 2πj/G.  All
// integrals use the composite trapezoid rule on that grid.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "szego/sequence.hpp"

namespace szego {

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Raised when a moment sequence stops being positive definite.
class PositiveDefinitenessError : public std::domain_error {
 public:
  PositiveDefinitenessError(std::size_t index, double modulus)
      : std::domain_error("moment recursion produced |alpha_" + std::to_string(index) +
                          "| = " + std::to_string(modulus) + " >= 1"),
        index_(index),
        modulus_(modulus) {}

  std::size_t index() const { return index_; }
  double modulus() const { return modulus_; }

 private:
  std::size_t index_;
  double modulus_;
};

struct BernsteinSzego {
  VerblunskySequence prefix;
};

struct SampledWeight {
  std::vector<double> weights;  // w(θ_j), θ_j = 2πj/G, G = weights.size()
};

using MeasureSpec = std::variant<BernsteinSzego, SampledWeight>;

struct SzegoFunctionalValue {
  static constexpr const char* kConvention = "K = ∫(1−cosθ)^m log(1/w) dθ/2π";
  int m = 0;
  double value = 0.0;
  std::size_t grid_size = 0;
  std::string convention = kConvention;
};

inline double grid_angle(std::size_t j, std::size_t G) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(G);
}

/// Monic φ_N(z) and reversed φ*_N(z) after running the Szegő recursion over
/// the whole prefix:  φ_{n+1} = zφ_n − ᾱ_n φ*_n,  φ*_{n+1} = φ*_n − α_n z φ_n.
inline std::pair<Complex, Complex> szego_recursion_polynomials(const VerblunskySequence& prefix,
                                                               Complex z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw std::domain_error("szego_recursion_polynomials: z is not on the unit circle");
  }
  Complex phi(1.0), phi_star(1.0);
  for (const Complex& a : prefix.values()) {
    const Complex next = z * phi - std::conj(a) * phi_star;
    phi_star = phi_star - a * z * phi;
    phi = next;
  }
  return {phi, phi_star};
}

/// log w(θ_j) for the Bernstein–Szegő measure of `prefix`:
///     w = Π(1 − |α_j|²) / |φ*_N(e^{iθ})|².
/// Uses the unimodular ratio b_n = φ_n/φ*_n, so nothing overflows for long
/// prefixes: log|φ*_N| = Σ log|1 − α_n z b_n|.
inline std::vector<double> bernstein_szego_log_weight(const VerblunskySequence& prefix,
                                                      std::size_t grid) {
  if (grid < 16) throw std::invalid_argument("grid size must be at least 16");
  double log_mass = 0.0;
  for (const Complex& a : prefix.values()) log_mass += std::log1p(-std::norm(a));
  std::vector<double> out(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double theta = grid_angle(j, grid);
    const Complex z(std::cos(theta), std::sin(theta));
    Complex b(1.0);
    double log_abs_phi_star = 0.0;
    for (const Complex& a : prefix.values()) {
      const Complex zb = z * b;
      const Complex step = 1.0 - a * zb;
      log_abs_phi_star += std::log(std::abs(step));
      b = (zb - std::conj(a)) / step;
    }
    out[j] = log_mass - 2.0 * log_abs_phi_star;
  }
  return out;
}

inline SampledWeight bernstein_szego_weight(const VerblunskySequence& prefix,
                                            std::size_t grid = kDefaultGridSize) {
  std::vector<double> w = bernstein_szego_log_weight(prefix, grid);
  for (double& x : w) x = std::exp(x);
  return {std::move(w)};
}

/// ∫ f dθ/2π by the trapezoid rule on the sample grid.
inline double trapezoid_mean(const std::vector<double>& samples) {
  double acc = 0.0;
  for (double s : samples) acc += s;
  return acc / static_cast<double>(samples.size());
}

/// c_k = ∫ e^{−ikθ} w(θ) dθ/2π for k = 0..K.
inline std::vector<Complex> trigonometric_moments(const SampledWeight& weight, std::size_t K) {
  const std::size_t G = weight.weights.size();
  if (G == 0) throw std::invalid_argument("empty weight");
  std::vector<Complex> c(K + 1, Complex(0.0));
  for (std::size_t j = 0; j < G; ++j) {
    const double theta = grid_angle(j, G);
    for (std::size_t k = 0; k <= K; ++k) {
      const double phase = -static_cast<double>(k) * theta;
      c[k] += weight.weights[j] * Complex(std::cos(phase), std::sin(phase));
    }
  }
  for (auto& x : c) x /= static_cast<double>(G);
  return c;
}

/// Levinson-type recursion: monic φ_n from moments, ᾱ_n = ∫zφ_n dμ / ∫φ*_n dμ.
/// Returns α_0..α_{K−1} for moments c_0..c_K.
inline VerblunskySequence verblunsky_from_moments(const std::vector<Complex>& moments) {
  if (moments.empty()) throw std::invalid_argument("need at least c_0");
  if (std::abs(moments[0] - 1.0) > 1e-6) {
    throw std::invalid_argument("verblunsky_from_moments requires c_0 = 1");
  }
  const std::size_t K = moments.size() - 1;
  // ∫ z^j dμ = conj(c_j)
  auto integral_of_power = [&moments](std::size_t j) { return std::conj(moments[j]); };
  std::vector<Complex> phi{Complex(1.0)};  // coefficients of z^0..z^n
  std::vector<Complex> alphas;
  alphas.reserve(K);
  for (std::size_t n = 0; n < K; ++n) {
    Complex num(0.0), den(0.0);
    for (std::size_t j = 0; j <= n; ++j) {
      num += phi[j] * integral_of_power(j + 1);
      den += std::conj(phi[j]) * integral_of_power(n - j);
    }
    if (!(den.real() > 0.0)) throw PositiveDefinitenessError(n, INFINITY);
    const Complex alpha = std::conj(num / den);
    if (!(std::abs(alpha) < 1.0)) throw PositiveDefinitenessError(n, std::abs(alpha));
    alphas.push_back(alpha);
    // φ_{n+1} = zφ_n − ᾱ_n φ*_n, where φ*_n has coefficients conj(φ_{n−j}).
    std::vector<Complex> next(n + 2, Complex(0.0));
    for (std::size_t j = 0; j <= n; ++j) {
      next[j + 1] += phi[j];
      next[n - j] -= std::conj(alpha) * std::conj(phi[j]);
    }
    phi = std::move(next);
  }
  return VerblunskySequence(std::move(alphas));
}

namespace detail {

inline double weighted_log_mean(const std::vector<double>& log_w, int m) {
  const std::size_t G = log_w.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < G; ++j) {
    acc += std::pow(1.0 - std::cos(grid_angle(j, G)), m) * (-log_w[j]);
  }
  return acc / static_cast<double>(G);
}

}  // namespace detail

/// `grid` applies to Bernstein–Szegő measures; sampled measures use their own grid.
inline SzegoFunctionalValue szego_functional(const MeasureSpec& measure, int m,
                                             std::size_t grid = kDefaultGridSize) {
  if (m < 0) throw std::invalid_argument("szego_functional requires m >= 0");
  SzegoFunctionalValue out;
  out.m = m;
  if (const auto* bs = std::get_if<BernsteinSzego>(&measure)) {
    const auto log_w = bernstein_szego_log_weight(bs->prefix, grid);
    out.value = detail::weighted_log_mean(log_w, m);
    out.grid_size = grid;
    return out;
  }
  const auto& sampled = std::get<SampledWeight>(measure);
  if (sampled.weights.empty()) throw std::invalid_argument("empty weight");
  std::vector<double> log_w(sampled.weights.size());
  for (std::size_t j = 0; j < log_w.size(); ++j) {
    if (!(sampled.weights[j] > 0.0)) {
      throw std::domain_error("weight sample " + std::to_string(j) + " is not positive");
    }
    log_w[j] = std::log(sampled.weights[j]);
  }
  out.value = detail::weighted_log_mean(log_w, m);
  out.grid_size = log_w.size();
  return out;
}

}  // namespace szego
