#pragma once
//
// Discrete Gagliardo–Nirenberg exponents p_r = 2(m+1)/(r+1), the Hölder
// budget of critical monomials, and empirical probes of the interpolation and
// absorption constants.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "szego/normal_form.hpp"
#include "szego/rational.hpp"
#include "szego/sequence.hpp"

namespace szego {

struct GNExponent {
  int m = 1;
  int r = 0;
  Rational p;

  Rational reciprocal() const { return Rational(1) / p; }
};

inline GNExponent gn_exponent(int m, int r) {
  if (m < 1) throw std::invalid_argument("gn_exponent requires m >= 1");
  if (r < 0 || r > m) throw std::invalid_argument("gn_exponent requires 0 <= r <= m");
  return {m, r, make_rational(2 * (m + 1), r + 1)};
}

/// r − 1/p_r and (r/m)(m − 1/2) − (1 − r/m)/(2m+2), both exact.
inline std::pair<Rational, Rational> gn_scaling_sides(int m, int r) {
  const GNExponent g = gn_exponent(m, r);
  const Rational theta = make_rational(r, m);
  Rational lhs = Rational(r) - g.reciprocal();
  Rational rhs = theta * (Rational(m) - Rational(1, 2)) - (Rational(1) - theta) / Rational(2 * m + 2);
  return {lhs, rhs};
}

struct HolderBudget {
  int m = 2;
  int k = 2;
  std::vector<int> holo_orders;
  std::vector<int> anti_orders;
  Rational exponent_sum;
  int difference_count = 0;
  bool critical_count = false;  // Σa + Σb = m + 1 − k
  bool subcritical = false;     // count ≥ m + 1 − k and exponent_sum < 1
};

inline HolderBudget holder_budget(int m, int k, const std::vector<int>& holo_orders,
                                  const std::vector<int>& anti_orders) {
  if (k < 2 || k > m) throw std::invalid_argument("holder_budget requires 2 <= k <= m");
  if (holo_orders.size() != static_cast<std::size_t>(k) || anti_orders.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("holder_budget needs k orders on each side");
  }
  HolderBudget b;
  b.m = m;
  b.k = k;
  b.holo_orders = holo_orders;
  b.anti_orders = anti_orders;
  for (const auto* side : {&holo_orders, &anti_orders}) {
    for (int a : *side) {
      b.exponent_sum += gn_exponent(m, a).reciprocal();
      b.difference_count += a;
    }
  }
  b.critical_count = b.difference_count == m + 1 - k;
  b.subcritical = b.difference_count >= m + 1 - k && b.exponent_sum < 1;
  return b;
}

/// (m + 1 + k) / (2(m + 1))
inline Rational critical_budget(int m, int k) { return make_rational(m + 1 + k, 2 * (m + 1)); }

/// (σ/m)/2 + (2k − σ/m)/(2m + 2)
inline Rational young_exponent(int m, int k, int sigma) {
  const Rational s = make_rational(sigma, m);
  return s / Rational(2) + (Rational(2 * k) - s) / Rational(2 * m + 2);
}

struct GNProbe {
  double lhs = 0.0;  // ‖Δ^r α‖_{p_r} over [0, N]
  double A = 0.0;    // (Σ_{0}^{N+L} |Δ^m α|²)^{1/2}
  double B = 0.0;    // (Σ_{0}^{N+L} |α|^{2m+2})^{1/(2m+2)}
  double ratio = 0.0;
};

/// ‖Δ^r α‖_{p_r} / (A^{r/m} B^{1−r/m} + 1); without the regularizer the
/// denominator is A^{r/m} B^{1−r/m} alone.  L defaults to m.
inline GNProbe gn_ratio_probe(const VerblunskySequence& seq, int m, int r, long N, bool regularize = true,
                              long L = -1) {
  if (r <= 0 || r >= m) throw std::invalid_argument("gn_ratio_probe requires 0 < r < m");
  if (N < 0) throw std::invalid_argument("gn_ratio_probe requires N >= 0");
  if (L < 0) L = m;
  const auto vals = seq.values();
  if (std::all_of(vals.begin(), vals.end(), [](const Complex& a) { return a == Complex(0.0); })) {
    throw std::invalid_argument("gn_ratio_probe: sequence is identically zero");
  }
  const double p = gn_exponent(m, r).p.get_d();
  GNProbe out;
  double acc = 0.0;
  for (long n = 0; n <= N; ++n) acc += std::pow(std::abs(forward_difference(seq, r, n)), p);
  out.lhs = std::pow(acc, 1.0 / p);
  double a2 = 0.0, bp = 0.0;
  for (long n = 0; n <= N + L; ++n) {
    a2 += std::norm(forward_difference(seq, m, n));
    bp += std::pow(std::norm(seq[n]), m + 1);
  }
  out.A = std::sqrt(a2);
  out.B = std::pow(bp, 1.0 / (2.0 * m + 2.0));
  const double theta = static_cast<double>(r) / m;
  double denom = std::pow(out.A, theta) * std::pow(out.B, 1.0 - theta);
  if (regularize) denom += 1.0;
  if (!(denom > 0.0)) throw std::domain_error("gn_ratio_probe: degenerate denominator");
  out.ratio = out.lhs / denom;
  return out;
}

struct AbsorptionProbe {
  double lhs = 0.0;     // |Σ_{n=0}^N M_n|
  double energy = 0.0;  // Σ_{0}^{N+L} (|Δ^m α|² + |α|^{2m+2})
  double rhs = 0.0;     // ε·energy + C
  long L = 0;
  bool pass = false;
};

namespace detail {

template <class Coeff>
void check_absorption_monomial(const NormalFormMonomial<Coeff>& mono, int m) {
  if (mono.holo.size() != mono.anti.size()) throw std::invalid_argument("unbalanced monomial");
  const int k = mono.k();
  if (k < 2 || k > m) throw std::invalid_argument("absorption probe requires degree 2k with 2 <= k <= m");
  if (mono.difference_count() < m + 1 - k) {
    throw std::invalid_argument("monomial is below the critical difference count");
  }
}

}  // namespace detail

/// Shift allowance: largest shift plus largest difference order.
template <class Coeff>
long absorption_shift_allowance(const NormalFormMonomial<Coeff>& mono) {
  return static_cast<long>(mono.max_abs_shift()) + mono.max_order();
}

template <class Coeff>
AbsorptionProbe absorption_inequality_probe(const NormalFormMonomial<Coeff>& mono, const VerblunskySequence& seq,
                                            int m, long N, double eps, double C) {
  detail::check_absorption_monomial(mono, m);
  if (!(eps > 0.0)) throw std::invalid_argument("absorption probe requires eps > 0");
  AbsorptionProbe out;
  out.L = absorption_shift_allowance(mono);
  Complex sum(0.0);
  for (long n = 0; n <= N; ++n) sum += evaluate(mono, seq, n);
  out.lhs = std::abs(sum);
  const auto e = lukic_partial_sums(seq, m, N + out.L);
  out.energy = e.diff_energy + e.power_energy;
  out.rhs = eps * out.energy + C;
  out.pass = out.lhs <= out.rhs;
  return out;
}

/// Smallest C making the probe pass for every sequence and every N in `fit_N`.
template <class Coeff>
double fit_absorption_constant(const NormalFormMonomial<Coeff>& mono, const std::vector<VerblunskySequence>& family,
                               int m, const std::vector<long>& fit_N, double eps) {
  double C = 0.0;
  for (const auto& seq : family) {
    for (long N : fit_N) {
      const auto probe = absorption_inequality_probe(mono, seq, m, N, eps, 0.0);
      C = std::max(C, probe.lhs - eps * probe.energy);
    }
  }
  return C;
}

}  // namespace szego
