#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace szego {

/// Exact rational number (GMP).  Always kept in canonical form.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  if (sgn(r.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

inline long long binomial_int(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long out = 1;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

/// (a1+a2+a3)! / (a1! a2! a3!)
inline Rational multinomial3(int a1, int a2, int a3) {
  return binomial(a1 + a2 + a3, a1) * binomial(a2 + a3, a2);
}

inline Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// Integer power with the 0^0 = 1 convention.
inline Rational int_power(long base, unsigned exponent) {
  mpz_class out;
  mpz_class b(static_cast<signed long>(base));
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exponent);
  return Rational(out);
}

/// Gaussian rational re + i·im.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// |z|² exactly.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    os << z.re_;
    if (sgn(z.im_) != 0) os << (sgn(z.im_) > 0 ? "+" : "") << z.im_ << "i";
    return os;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re(), Rational(-z.im())}; }
inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline Rational norm2(const GaussianRational& z) { return z.norm(); }
inline double norm2(const std::complex<double>& z) { return std::norm(z); }
inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0.0, 0.0); }

inline std::complex<double> to_complex(const GaussianRational& z) { return z.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

}  // namespace szego
