#pragma once
//
// Explicitly computable pieces of the finite-volume sum rule for the weight
// H_m(e^{iθ}) = (1 − cos θ)^m:
//
//   - the Fourier coefficients h_{m,ℓ} of H_m,
//   - the quadratic form Σ_n Σ_ℓ h_{m,ℓ} α_{n+ℓ} ᾱ_n and the difference energy
//     2^{−m} Σ_n |Δ^m α_n|²,
//   - the logarithmic tail L_{m,n} = log(1/(1−|α_n|²)) − Σ_{k≤m} |α_n|^{2k}/k,
//   - decomposition reports K_proxy = Q + tail + residual.

#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "szego/laurent.hpp"
#include "szego/measure.hpp"
#include "szego/rational.hpp"
#include "szego/sequence.hpp"

namespace szego {

struct HmSymbol {
  int m = 1;
  std::map<int, Rational> coeffs;  // ℓ ∈ [−m, m]

  Rational at(int l) const {
    auto it = coeffs.find(l);
    return it == coeffs.end() ? Rational(0) : it->second;
  }
};

/// (−1)^ℓ 2^{−m} C(2m, m+ℓ)
inline Rational hm_closed_form(int m, int l) {
  Rational h = binomial(2 * m, m + l) / pow(Rational(2), static_cast<unsigned>(m));
  if ((l % 2 + 2) % 2 == 1) h = -h;
  return h;
}

/// The symbol 2^{−m}(1 − P)^m (1 − P^{−1})^m as a one-variable Laurent polynomial.
inline SparseLaurent<Rational> hm_shift_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("hm requires m >= 1");
  using P = SparseLaurent<Rational>;
  const P one = P::constant(1, Rational(1));
  const P forward = one - P::variable(1, 0, 1);
  const P backward = one - P::variable(1, 0, -1);
  return Rational(1) / pow(Rational(2), static_cast<unsigned>(m)) *
         (forward.pow(static_cast<unsigned>(m)) * backward.pow(static_cast<unsigned>(m)));
}

/// Fourier coefficients of H_m by symbolic expansion of its shift symbol.
inline HmSymbol hm_fourier(int m) {
  HmSymbol s;
  s.m = m;
  const auto symbol = hm_shift_polynomial(m);
  for (const auto& [e, c] : symbol.terms()) s.coeffs[e[0]] = c;
  return s;
}

/// Σ_{n=0}^N Σ_ℓ h_{m,ℓ} α_{n+ℓ} ᾱ_n (complex; the imaginary part vanishes
/// up to rounding because h is real and symmetric).
inline Complex quadratic_form_complex(const VerblunskySequence& seq, int m, long N) {
  const HmSymbol h = hm_fourier(m);
  std::vector<std::pair<int, double>> taps;
  for (const auto& [l, c] : h.coeffs) taps.emplace_back(l, c.get_d());
  Complex acc(0.0);
  for (long n = 0; n <= N; ++n) {
    Complex inner(0.0);
    for (const auto& [l, c] : taps) inner += c * seq[n + l];
    acc += inner * std::conj(seq[n]);
  }
  return acc;
}

inline double quadratic_form(const VerblunskySequence& seq, int m, long N) {
  return quadratic_form_complex(seq, m, N).real();
}

/// 2^{−m} Σ_{n=0}^N |Δ^m α_n|²
inline double difference_energy_form(const VerblunskySequence& seq, int m, long N) {
  double acc = 0.0;
  for (long n = 0; n <= N; ++n) acc += std::norm(forward_difference(seq, m, n));
  return std::ldexp(acc, -m);
}

/// L_m(x) = log(1/(1−x)) − Σ_{k=1}^m x^k/k = Σ_{j>m} x^j/j for x = |α|² ∈ [0, 1).
inline double log_tail_squared(double x, int m) {
  if (m < 0) throw std::invalid_argument("log_tail requires m >= 0");
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("log_tail requires |alpha| < 1");
  if (x == 0.0) return 0.0;
  if (x <= 0.5) {
    // Direct tail series; no cancellation against the leading Taylor terms.
    double term = std::pow(x, m + 1);
    double acc = 0.0;
    for (int j = m + 1; j < m + 400; ++j) {
      const double piece = term / j;
      acc += piece;
      if (piece < acc * 1e-18) break;
      term *= x;
    }
    return acc;
  }
  double acc = -std::log1p(-x);
  double power = 1.0;
  for (int k = 1; k <= m; ++k) {
    power *= x;
    acc -= power / k;
  }
  return acc;
}

inline double log_tail(Complex alpha, int m) { return log_tail_squared(std::norm(alpha), m); }

/// Diagonal constants −1/k, k = 1..m, of the homogeneous sum-rule pieces.
inline std::vector<Rational> constant_part_check(int m) {
  if (m < 1) throw std::invalid_argument("constant_part_check requires m >= 1");
  std::vector<Rational> out;
  for (int k = 1; k <= m; ++k) out.push_back(make_rational(-1, k));
  return out;
}

struct DecompositionReport {
  int m = 1;
  long N = 0;
  double K_proxy = 0.0;       // K_m of the Bernstein–Szegő truncation α_0..α_N
  double Q = 0.0;             // 2^{−m} Σ |Δ^m α_n|²
  double tail = 0.0;          // Σ L_{m,n}
  double power_energy = 0.0;  // Σ |α_n|^{2m+2}
  double residual = 0.0;      // unresolved remainder K_proxy − Q − tail
};

inline DecompositionReport decomposition_report(const VerblunskySequence& seq, int m, long N,
                                                std::size_t grid = kDefaultGridSize) {
  if (m < 1) throw std::invalid_argument("decomposition_report requires m >= 1");
  DecompositionReport r;
  r.m = m;
  r.N = N;
  const auto prefix = seq.truncated(static_cast<std::size_t>(N + 1));
  r.K_proxy = szego_functional(BernsteinSzego{prefix}, m, grid).value;
  r.Q = difference_energy_form(seq, m, N);
  for (long n = 0; n <= N; ++n) {
    r.tail += log_tail(seq[n], m);
    r.power_energy += std::pow(std::norm(seq[n]), m + 1);
  }
  r.residual = r.K_proxy - r.Q - r.tail;
  return r;
}

inline void write_decomposition_csv_header(std::ostream& os) {
  os << "m,N,K_proxy,Q,tail,power_energy,residual\n";
}

inline void write_decomposition_csv_row(std::ostream& os, const DecompositionReport& r) {
  const auto old = os.precision(17);
  os << r.m << ',' << r.N << ',' << r.K_proxy << ',' << r.Q << ',' << r.tail << ','
     << r.power_energy << ',' << r.residual << '\n';
  os.precision(old);
}

}  // namespace szego
