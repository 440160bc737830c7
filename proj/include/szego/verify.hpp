#pragma once
//
// Invariant suites run by `szego verify`.  Each check is deterministic
// (fixed seeds) and reports pass/fail plus a short detail string.

#include <numbers>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "szego/absorption.hpp"
#include "szego/measure.hpp"
#include "szego/normal_form.hpp"
#include "szego/psd_quartic.hpp"
#include "szego/rational.hpp"
#include "szego/sequence.hpp"
#include "szego/shift_algebra.hpp"
#include "szego/sum_rule.hpp"

namespace szego {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
  }
  std::size_t failed() const { return checks.size() - passed(); }
  bool ok() const { return failed() == 0; }

  void add(std::string suite, std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(suite), std::move(name), pass, std::move(detail)});
  }
  void append(const SuiteReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

/// Σ_ℓ h_{m,ℓ} x_1^ℓ as a k = 1 shift polynomial.
inline ShiftPolynomial hm_symbol_shift_polynomial(int m) {
  ShiftPolynomial out(1);
  for (const auto& [l, c] : hm_fourier(m).coeffs) out += ShiftPolynomial::monomial(1, {l, 0}, GaussianRational(c));
  return out;
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

/// Random element of 𝔍_k^q: sums of (unit monomial) · (q generators) · (small polynomial).
inline ShiftPolynomial random_ideal_member(std::mt19937_64& rng, int k, int q) {
  std::uniform_int_distribution<int> shift(-2, 2), coeff(-4, 4), terms(1, 3), var(0, 2 * k - 1);
  ShiftPolynomial p(k);
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    Exponent e(2 * static_cast<std::size_t>(k));
    for (auto& x : e) x = shift(rng);
    int re = coeff(rng), im = coeff(rng);
    if (re == 0 && im == 0) re = 1;
    ShiftPolynomial piece = ShiftPolynomial::monomial(k, e, GaussianRational(make_rational(re, 3), make_rational(im, 5)));
    for (int g = 0; g < q; ++g) {
      const int v = var(rng);
      const ShiftPolynomial gen = v < k ? ShiftPolynomial::x(k, v + 1) : ShiftPolynomial::y(k, v - k + 1);
      piece = piece * (gen - ShiftPolynomial::constant(k, 1));
    }
    // An extra cofactor that is not a unit.
    Exponent f(2 * static_cast<std::size_t>(k), 0);
    f[static_cast<std::size_t>(var(rng))] = 1;
    piece = piece * (ShiftPolynomial::monomial(k, f, GaussianRational(coeff(rng))) + ShiftPolynomial::constant(k, 1));
    p += piece;
  }
  return p;
}

inline ExactVerblunskySequence random_exact_sequence(std::mt19937_64& rng, std::size_t length) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<GaussianRational> v;
  for (std::size_t i = 0; i < length; ++i) v.emplace_back(make_rational(d(rng), 8), make_rational(d(rng), 8));
  return ExactVerblunskySequence(std::move(v));
}

inline UnivariateLaurent random_univariate(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> low(-3, 2), width(0, 4), coeff(-3, 3), factor(0, 3), coin(0, 1);
  UnivariateLaurent s(1);
  const int lo = low(rng);
  const int w = width(rng);
  for (int j = lo; j <= lo + w; ++j) s.add_term({j}, make_rational(coeff(rng), 2));
  if (s.is_zero()) s.add_term({lo}, Rational(1));
  if (coin(rng)) {
    const UnivariateLaurent g = UnivariateLaurent::variable(1, 0) - UnivariateLaurent::constant(1, Rational(1));
    s = g.pow(static_cast<unsigned>(factor(rng))) * s;
  }
  return s;
}

inline VerblunskySequence random_interior_sequence(std::mt19937_64& rng, int m, long length) {
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<Complex> v(static_cast<std::size_t>(length), Complex(0.0));
  for (long n = m; n < length - m; ++n) v[static_cast<std::size_t>(n)] = {u(rng), u(rng)};
  return VerblunskySequence(std::move(v));
}

}  // namespace detail

inline SuiteReport run_gram_suite(int identity_m_max = 8, int psd_m_max = 10) {
  SuiteReport r;
  for (int m = 1; m <= identity_m_max; ++m) {
    const auto id = gram_identity_check(m);
    r.add("gram", "gram_identity m=" + std::to_string(m), id.equal, std::to_string(id.monomials) + " monomials");
  }
  for (int m = 1; m <= psd_m_max; ++m) {
    const auto cert = psd_certificate(gram_closed_form(m));
    Rational min_pivot = cert.pivots.empty() ? Rational(0) : cert.pivots.front();
    for (const auto& p : cert.pivots) min_pivot = std::min(min_pivot, p);
    r.add("gram", "psd_certificate m=" + std::to_string(m), cert.certified,
          "min pivot " + to_string(min_pivot));
  }
  const auto g1 = gram_closed_form(1);
  const bool m1 = g1.dimension() == 1 && g1.entries[0][0] == Rational(1, 2) &&
                  pm_polynomial(1) == RationalPolynomial::constant(3, Rational(1, 2));
  r.add("gram", "m=1 block is [1/2]", m1);
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    const auto exact = gram_closed_form(m);
    const auto quad = gram_quadrature(m, 2 * m + 2);
    for (std::size_t i = 0; i < exact.dimension(); ++i) {
      for (std::size_t j = 0; j < exact.dimension(); ++j) {
        worst = std::max(worst, std::abs(exact.entries[i][j].get_d() - quad[i][j]));
      }
    }
  }
  r.add("gram", "closed form vs quadrature m<=8", worst <= 1e-10, "max deviation " + detail::fmt(worst));
  const auto raw = raw_m2_failure_exhibit();
  r.add("gram", "raw m=2 matrix is not symmetric", !raw.symmetric);
  return r;
}

inline SuiteReport run_algebra_suite(std::uint64_t seed = 1) {
  SuiteReport r;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kd(1, 3), qd(0, 4);
  int exact = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const int k = kd(rng);
    const int q = qd(rng);
    const auto p = detail::random_ideal_member(rng, k, q);
    const auto seq = detail::random_exact_sequence(rng, 10);
    const auto check = pointwise_equality_check(p, q, seq, -4, 14);
    exact += check.exact_zero ? 1 : 0;
  }
  r.add("algebra", "normal form pointwise equality", exact == trials,
        std::to_string(exact) + "/" + std::to_string(trials) + " exact");
  for (int m = 1; m <= 5; ++m) {
    const int order = vanishing_order(hm_symbol_shift_polynomial(m), 12);
    r.add("algebra", "vanishing order of H_m symbol m=" + std::to_string(m), order == 2 * m,
          "order " + std::to_string(order));
  }
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    const auto poly = detail::random_univariate(rng);
    bool ok = true;
    for (int q = 0; q <= 5; ++q) {
      bool moments_vanish = true;
      for (int j = 0; j < q; ++j) moments_vanish = moments_vanish && is_zero(univariate_moment(poly, j));
      ok = ok && (divide_by_shift_power(poly, q).has_value() == moments_vanish);
    }
    agree += ok ? 1 : 0;
  }
  r.add("algebra", "moment/divisibility duality", agree == trials,
        std::to_string(agree) + "/" + std::to_string(trials));
  return r;
}

inline SuiteReport run_sumrule_suite(std::uint64_t seed = 2) {
  SuiteReport r;
  bool symbol_ok = true;
  for (int m = 1; m <= 12; ++m) {
    const auto h = hm_fourier(m);
    Rational total(0);
    for (const auto& [l, c] : h.coeffs) {
      total += c;
      symbol_ok = symbol_ok && c == hm_closed_form(m, l);
    }
    symbol_ok = symbol_ok && is_zero(total) && h.coeffs.size() == static_cast<std::size_t>(2 * m + 1);
  }
  r.add("sumrule", "H_m symbol closed form m<=12", symbol_ok);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int t = 0; t < 50; ++t) {
      const long len = 40;
      const auto seq = detail::random_interior_sequence(rng, m, len);
      worst = std::max(worst, std::abs(quadratic_form(seq, m, len) - difference_energy_form(seq, m, len)));
    }
  }
  r.add("sumrule", "quadratic identity m<=6", worst <= 1e-12, "max deviation " + detail::fmt(worst));
  bool bound_ok = true;
  for (int m = 0; m <= 8; ++m) {
    for (int i = 0; i <= 99; ++i) {
      const double a = i / 100.0;
      bound_ok = bound_ok && log_tail_squared(a * a, m) >= std::pow(a, 2 * m + 2) / (m + 1);
    }
  }
  r.add("sumrule", "log tail lower bound", bound_ok);
  const auto constants = constant_part_check(6);
  bool const_ok = constants.size() == 6;
  for (int k = 1; k <= 6 && const_ok; ++k) const_ok = constants[static_cast<std::size_t>(k - 1)] == make_rational(-1, k);
  r.add("sumrule", "diagonal constants -1/k", const_ok);
  return r;
}

inline SuiteReport run_measure_suite(std::uint64_t seed = 3) {
  SuiteReport r;
  {
    const VerblunskySequence half(std::vector<Complex>{0.5});
    const auto w = bernstein_szego_weight(half, 4096);
    const double mass = trapezoid_mean(w.weights);
    r.add("measure", "[0.5] mass", std::abs(mass - 1.0) <= 1e-10, "deviation " + detail::fmt(std::abs(mass - 1.0)));
    const double k0 = szego_functional(BernsteinSzego{half}, 0).value;
    r.add("measure", "[0.5] Szegő integral", std::abs(k0 + std::log(0.75)) <= 1e-8,
          "deviation " + detail::fmt(std::abs(k0 + std::log(0.75))));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Complex> a(4);
    for (auto& x : a) x = std::polar(0.8 * u(rng), 2.0 * std::numbers::pi * u(rng));
    const VerblunskySequence prefix(a);
    const auto mom = trigonometric_moments(bernstein_szego_weight(prefix, 8192), a.size());
    const auto back = verblunsky_from_moments(mom);
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(back[static_cast<long>(i)] - a[i]));
  }
  r.add("measure", "length-4 prefix round trip", worst <= 1e-7, "max deviation " + detail::fmt(worst));
  return r;
}

inline SuiteReport run_absorb_suite() {
  SuiteReport r;
  bool scaling = true;
  for (int m = 1; m <= 12; ++m) {
    for (int rr = 0; rr <= m; ++rr) {
      const auto [lhs, rhs] = gn_scaling_sides(m, rr);
      scaling = scaling && lhs == rhs;
    }
  }
  r.add("absorb", "GN scaling relation m<=12", scaling);
  bool budget = true, young = true;
  for (int m = 2; m <= 12; ++m) {
    for (int k = 2; k <= m; ++k) {
      // All critical orders on the first factor; the sum only depends on the total.
      std::vector<int> a(static_cast<std::size_t>(k), 0), b(static_cast<std::size_t>(k), 0);
      a[0] = m + 1 - k;
      const auto hb = holder_budget(m, k, a, b);
      budget = budget && hb.exponent_sum == critical_budget(m, k) && hb.exponent_sum < 1 && hb.critical_count;
      const Rational y = young_exponent(m, k, m + 1 - k);
      young = young && y == critical_budget(m, k) && y < 1;
    }
  }
  r.add("absorb", "Hölder budget (m+1+k)/(2(m+1)) < 1", budget);
  r.add("absorb", "Young exponent subcritical", young);
  std::vector<Complex> v(300);
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = std::polar(0.9 / (n + 1.0), 0.3 * n);
  const VerblunskySequence seq(v);
  std::vector<Complex> half(v);
  for (auto& x : half) x *= 0.5;
  const double a = gn_ratio_probe(seq, 3, 1, 200, false).ratio;
  const double b = gn_ratio_probe(VerblunskySequence(half), 3, 1, 200, false).ratio;
  r.add("absorb", "GN probe homogeneity", std::abs(a - b) <= 1e-12 * a, "ratio " + detail::fmt(a));
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gram", "algebra", "sumrule", "measure", "absorb"};
  return names;
}

/// "all" or one of suite_names().
inline SuiteReport run_suite(const std::string& name) {
  if (name == "gram") return run_gram_suite();
  if (name == "algebra") return run_algebra_suite();
  if (name == "sumrule") return run_sumrule_suite();
  if (name == "measure") return run_measure_suite();
  if (name == "absorb") return run_absorb_suite();
  if (name == "all") {
    SuiteReport all;
    for (const auto& n : suite_names()) all.append(run_suite(n));
    return all;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace szego
