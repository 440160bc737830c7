#pragma once
//
// The quartic principal block
//
//     P_m(u, v, t) = [(u+v−t)^{2m} + t^{2m} − u^{2m} − v^{2m}] / (2 C(2m,m) (u−t)(v−t))
//
// its Gram representation P_m(Z) = W_m(Z)^T M W_m(Z) over the degree-(m−1)
// monomials in Z = (Z_1, Z_2, Z_3) under u = Z_3, v = −Z_1−Z_2−Z_3, t = −Z_2,
// and the exact positive-semidefiniteness certificate of M.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "szego/laurent.hpp"
#include "szego/rational.hpp"

namespace szego {

struct MultiIndex3 {
  int a1 = 0, a2 = 0, a3 = 0;
  int degree() const { return a1 + a2 + a3; }
  friend bool operator==(const MultiIndex3&, const MultiIndex3&) = default;
};

/// All (a1, a2, a3) with a1+a2+a3 = degree in graded-lex order with
/// Z_1 > Z_2 > Z_3: (d,0,0), (d−1,1,0), (d−1,0,1), (d−2,2,0), …
inline std::vector<MultiIndex3> multi_indices(int degree) {
  if (degree < 0) throw std::invalid_argument("negative multi-index degree");
  std::vector<MultiIndex3> out;
  for (int a1 = degree; a1 >= 0; --a1) {
    for (int a2 = degree - a1; a2 >= 0; --a2) out.push_back({a1, a2, degree - a1 - a2});
  }
  return out;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

struct GramBlock {
  int m = 1;
  std::vector<MultiIndex3> index;
  RationalMatrix entries;

  std::size_t dimension() const { return index.size(); }
};

/// m(2m−1)/C(2m,m)
inline Rational gram_prefactor(int m) {
  return Rational(static_cast<long>(m) * (2 * m - 1)) / binomial(2 * m, m);
}

/// Closed-form Gram entries from the double binomial sum.
inline GramBlock gram_closed_form(int m) {
  if (m < 1) throw std::invalid_argument("gram_closed_form requires m >= 1");
  GramBlock g;
  g.m = m;
  g.index = multi_indices(m - 1);
  const std::size_t d = g.index.size();
  const Rational pre = gram_prefactor(m);
  g.entries.assign(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const auto& a = g.index[i];
      const auto& b = g.index[j];
      const int B = a.a2 + b.a2;
      const int C = a.a3 + b.a3;
      const int AC = a.a1 + b.a1 + C;
      Rational sum(0);
      for (int p = 0; p <= B; ++p) {
        for (int q = 0; q <= C; ++q) {
          Rational term = binomial(B, p) * binomial(C, q) / Rational((p + q + 1) * (AC - q + 1));
          if ((p + q) % 2 != 0) term = -term;
          sum += term;
        }
      }
      Rational entry = pre * multinomial3(a.a1, a.a2, a.a3) * multinomial3(b.a1, b.a2, b.a3) * sum;
      g.entries[i][j] = entry;
      g.entries[j][i] = entry;
    }
  }
  return g;
}

/// Gauss–Legendre nodes and weights on [0, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(int n) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const auto idx = static_cast<std::size_t>(i);
    x[idx] = 0.5 * (1.0 - z);
    w[idx] = 1.0 / ((1.0 - z * z) * dp * dp);  // (2/((1−z²)P'²)) · ½
  }
  return {x, w};
}

/// c_α(λ, μ) = multinomial(α) (−μ)^{α1} (λ−1)^{α2} (λ−μ)^{α3}
inline double gram_coefficient_function(const MultiIndex3& a, double lambda, double mu) {
  return multinomial3(a.a1, a.a2, a.a3).get_d() * std::pow(-mu, a.a1) * std::pow(lambda - 1.0, a.a2) *
         std::pow(lambda - mu, a.a3);
}

/// Entries m(2m−1)/C(2m,m) ∫∫ c_α c_β dλ dμ by tensor Gauss–Legendre.
inline std::vector<std::vector<double>> gram_quadrature(int m, int nodes) {
  if (m < 1) throw std::invalid_argument("gram_quadrature requires m >= 1");
  if (nodes < 2 * m) throw std::invalid_argument("gram_quadrature needs at least 2m nodes per axis");
  const auto index = multi_indices(m - 1);
  const std::size_t d = index.size();
  const auto [x, w] = gauss_legendre01(nodes);
  const double pre = gram_prefactor(m).get_d();
  std::vector<std::vector<double>> out(d, std::vector<double>(d, 0.0));
  std::vector<double> c(d);
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (std::size_t q = 0; q < x.size(); ++q) {
      for (std::size_t i = 0; i < d; ++i) c[i] = gram_coefficient_function(index[i], x[p], x[q]);
      const double weight = w[p] * w[q];
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) out[i][j] += weight * c[i] * c[j];
      }
    }
  }
  for (auto& row : out) {
    for (double& e : row) e *= pre;
  }
  return out;
}

/// P_m in variables (u, v, t), by exact division of the numerator by
/// (u − t)(v − t).  Throws std::logic_error on a nonzero remainder.
inline RationalPolynomial pm_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("pm_polynomial requires m >= 1");
  using P = RationalPolynomial;
  const P u = P::variable(3, 0), v = P::variable(3, 1), t = P::variable(3, 2);
  const auto e = static_cast<unsigned>(2 * m);
  const P numerator = (u + v - t).pow(e) + t.pow(e) - u.pow(e) - v.pow(e);
  auto [q1, r1] = numerator.divide_by_difference(0, 2);
  if (!r1.is_zero()) throw std::logic_error("numerator not divisible by (u - t)");
  auto [q2, r2] = q1.divide_by_difference(1, 2);
  if (!r2.is_zero()) throw std::logic_error("numerator not divisible by (v - t)");
  return Rational(1) / (Rational(2) * binomial(2 * m, m)) * q2;
}

inline double evaluate(const RationalPolynomial& p, const std::vector<double>& point) {
  double acc = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(point[i], e[i]);
    acc += term;
  }
  return acc;
}

/// W^T M W as a polynomial in (Z_1, Z_2, Z_3).
inline RationalPolynomial gram_quadratic_form(const GramBlock& g) {
  RationalPolynomial out(3);
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    for (std::size_t j = 0; j < g.dimension(); ++j) {
      const auto& a = g.index[i];
      const auto& b = g.index[j];
      out.add_term({a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3}, g.entries[i][j]);
    }
  }
  return out;
}

/// P_m under u = Z_3, v = −Z_1 − Z_2 − Z_3, t = −Z_2.
inline RationalPolynomial pm_in_gram_variables(int m) {
  using P = RationalPolynomial;
  const P z1 = P::variable(3, 0), z2 = P::variable(3, 1), z3 = P::variable(3, 2);
  return pm_polynomial(m).compose({z3, -z1 - z2 - z3, -z2});
}

struct GramIdentityResult {
  bool equal = false;
  std::size_t monomials = 0;  // terms of P_m(Z)
  RationalPolynomial difference{3};
};

inline GramIdentityResult gram_identity_check(int m) {
  GramIdentityResult r;
  const RationalPolynomial lhs = pm_in_gram_variables(m);
  const RationalPolynomial rhs = gram_quadratic_form(gram_closed_form(m));
  r.difference = lhs - rhs;
  r.equal = r.difference.is_zero();
  r.monomials = lhs.size();
  return r;
}

struct PsdCertificate {
  bool certified = false;
  std::vector<Rational> pivots;       // in elimination order
  std::vector<std::size_t> order;     // row chosen at each step
  std::string note;
};

/// Exact LDL^T with symmetric (largest-diagonal) pivoting.  Certified iff
/// every pivot is ≥ 0.  When the largest remaining diagonal is 0, the rest of
/// the matrix must vanish identically (zero rows are recorded as zero pivots);
/// a nonzero off-diagonal entry there means the matrix is indefinite.
inline PsdCertificate psd_certificate(const RationalMatrix& matrix) {
  const std::size_t n = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != n) throw std::invalid_argument("psd_certificate: matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) throw std::invalid_argument("psd_certificate: matrix is not symmetric");
    }
  }
  PsdCertificate cert;
  RationalMatrix a = matrix;
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
  while (!remaining.empty()) {
    auto best = std::max_element(remaining.begin(), remaining.end(),
                                 [&a](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
    const std::size_t p = *best;
    const Rational pivot = a[p][p];
    if (sgn(pivot) < 0) {
      cert.pivots.push_back(pivot);
      cert.order.push_back(p);
      cert.note = "negative pivot";
      return cert;
    }
    if (sgn(pivot) == 0) {
      for (std::size_t i : remaining) {
        for (std::size_t j : remaining) {
          if (sgn(a[i][j]) != 0) {
            cert.note = "zero diagonal with nonzero off-diagonal entry";
            return cert;
          }
        }
      }
      for (std::size_t i : remaining) {
        cert.pivots.emplace_back(0);
        cert.order.push_back(i);
      }
      cert.note = "trailing zero block";
      cert.certified = true;
      return cert;
    }
    cert.pivots.push_back(pivot);
    cert.order.push_back(p);
    remaining.erase(best);
    for (std::size_t i : remaining) {
      if (sgn(a[i][p]) == 0) continue;
      const Rational l = a[i][p] / pivot;
      for (std::size_t j : remaining) a[i][j] -= l * a[p][j];
    }
  }
  cert.certified = true;
  return cert;
}

inline PsdCertificate psd_certificate(const GramBlock& g) { return psd_certificate(g.entries); }

struct RawExhibit {
  RationalMatrix matrix;
  bool symmetric = true;
  std::pair<double, double> symmetrized_eigenvalues;
};

/// The raw m = 2 coefficient matrix, which is not symmetric.
inline RawExhibit raw_m2_failure_exhibit() {
  RawExhibit r;
  r.matrix = {{Rational(5, 6), Rational(5, 12)}, {Rational(1, 2), Rational(1, 12)}};
  r.symmetric = r.matrix[0][1] == r.matrix[1][0];
  const double a = r.matrix[0][0].get_d();
  const double d = r.matrix[1][1].get_d();
  const double b = 0.5 * (r.matrix[0][1].get_d() + r.matrix[1][0].get_d());
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  r.symmetrized_eigenvalues = {mean - radius, mean + radius};
  return r;
}

}  // namespace szego
