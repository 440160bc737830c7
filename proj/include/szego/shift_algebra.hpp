#pragma once
//
// Exact Laurent polynomials in the shift variables x_1..x_k (acting on the α
// factors) and y_1..y_k (acting on the ᾱ factors), over Gaussian rationals.
//
// Exponent vectors are laid out as (i_1..i_k, j_1..j_k).
//
// Membership in the diagonal ideal power 𝔍_k^q, 𝔍_k = (x_ν − 1, y_μ − 1), is
// decided by degree inspection: after clearing negative exponents with a unit
// monomial, P is a polynomial in X = x − 1, Y = y − 1, where 𝔍_k becomes the
// ideal generated by the variables.  A polynomial lies in the q-th power of
// that ideal iff all of its monomials have total degree ≥ q, and multiplying
// by a unit does not change membership.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "szego/laurent.hpp"
#include "szego/rational.hpp"
#include "szego/sequence.hpp"

namespace szego {

class ShiftPolynomial {
 public:
  using Poly = SparseLaurent<GaussianRational>;

  explicit ShiftPolynomial(int k = 1) : k_(check_k(k)), poly_(2 * static_cast<std::size_t>(k)) {}
  ShiftPolynomial(int k, Poly poly) : k_(check_k(k)), poly_(std::move(poly)) {
    if (poly_.nvars() != 2 * static_cast<std::size_t>(k_)) {
      throw std::invalid_argument("ShiftPolynomial: polynomial must have 2k variables");
    }
  }

  static ShiftPolynomial constant(int k, const GaussianRational& c) {
    return {k, Poly::constant(2 * static_cast<std::size_t>(k), c)};
  }
  static ShiftPolynomial monomial(int k, const Exponent& e, const GaussianRational& c = 1) {
    if (e.size() != 2 * static_cast<std::size_t>(k)) throw std::invalid_argument("exponent length");
    return {k, Poly::monomial(e, c)};
  }
  /// x_ν (ν is 1-based), raised to `power`.
  static ShiftPolynomial x(int k, int nu, int power = 1) {
    return {k, Poly::variable(2 * static_cast<std::size_t>(k), index_x(k, nu), power)};
  }
  static ShiftPolynomial y(int k, int mu, int power = 1) {
    return {k, Poly::variable(2 * static_cast<std::size_t>(k), index_y(k, mu), power)};
  }

  int k() const { return k_; }
  const Poly& poly() const { return poly_; }
  const Poly::TermMap& terms() const { return poly_.terms(); }
  bool is_zero() const { return poly_.is_zero(); }

  void add_term(const Exponent& e, const GaussianRational& c) { poly_.add_term(e, c); }

  ShiftPolynomial& operator+=(const ShiftPolynomial& o) {
    check(o);
    poly_ += o.poly_;
    return *this;
  }
  ShiftPolynomial& operator-=(const ShiftPolynomial& o) {
    check(o);
    poly_ -= o.poly_;
    return *this;
  }
  friend ShiftPolynomial operator+(ShiftPolynomial a, const ShiftPolynomial& b) { return a += b; }
  friend ShiftPolynomial operator-(ShiftPolynomial a, const ShiftPolynomial& b) { return a -= b; }
  friend ShiftPolynomial operator*(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    a.check(b);
    return {a.k_, a.poly_ * b.poly_};
  }
  friend ShiftPolynomial operator*(const GaussianRational& s, const ShiftPolynomial& p) {
    return {p.k_, s * p.poly_};
  }
  ShiftPolynomial operator-() const { return {k_, -poly_}; }
  friend bool operator==(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    return a.k_ == b.k_ && a.poly_ == b.poly_;
  }
  ShiftPolynomial pow(unsigned e) const { return {k_, poly_.pow(e)}; }

  /// Swap the roles of the x and y blocks and conjugate every coefficient.
  ShiftPolynomial conjugate_swap() const {
    ShiftPolynomial out(k_);
    const auto kk = static_cast<std::size_t>(k_);
    for (const auto& [e, c] : poly_.terms()) {
      Exponent f(e.size());
      for (std::size_t i = 0; i < kk; ++i) {
        f[i] = e[kk + i];
        f[kk + i] = e[i];
      }
      out.add_term(f, conj(c));
    }
    return out;
  }

  static std::size_t index_x(int k, int nu) {
    if (nu < 1 || nu > k) throw std::out_of_range("x index out of range");
    return static_cast<std::size_t>(nu - 1);
  }
  static std::size_t index_y(int k, int mu) {
    if (mu < 1 || mu > k) throw std::out_of_range("y index out of range");
    return static_cast<std::size_t>(k + mu - 1);
  }

 private:
  static int check_k(int k) {
    if (k < 1) throw std::invalid_argument("balance degree k must be positive");
    return k;
  }
  void check(const ShiftPolynomial& o) const {
    if (o.k_ != k_) throw std::invalid_argument("ShiftPolynomial: balance degree mismatch");
  }

  int k_;
  Poly poly_;
};

/// Exponents (a_1..a_k, b_1..b_k) of an Euler-moment query.
struct MomentQuery {
  std::vector<int> exponents;

  int total_order() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
  friend bool operator==(const MomentQuery&, const MomentQuery&) = default;
};

/// P(1, …, 1).
inline GaussianRational diag_eval(const ShiftPolynomial& p) { return p.poly().value_at_ones(); }

/// Σ_terms c · Π i_ν^{a_ν} Π j_μ^{b_μ}, with 0^0 = 1.
inline GaussianRational euler_moment(const ShiftPolynomial& p, const MomentQuery& q) {
  if (q.exponents.size() != 2 * static_cast<std::size_t>(p.k())) {
    throw std::invalid_argument("moment query length must be 2k");
  }
  GaussianRational acc(0);
  for (const auto& [e, c] : p.terms()) {
    Rational weight(1);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (q.exponents[v] != 0) weight *= int_power(e[v], static_cast<unsigned>(q.exponents[v]));
    }
    if (!is_zero(weight)) acc += GaussianRational(weight) * c;
  }
  return acc;
}

/// All queries of a given total order over `nvars` slots, in lexicographically
/// descending order of the exponent vector (so a_1 = order comes first).
inline std::vector<MomentQuery> moment_queries(std::size_t nvars, int order) {
  std::vector<MomentQuery> out;
  std::vector<int> e(nvars, 0);
  // Recursive composition enumeration.
  auto rec = [&](auto&& self, std::size_t slot, int remaining) -> void {
    if (slot + 1 == nvars) {
      e[slot] = remaining;
      out.push_back({e});
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[slot] = v;
      self(self, slot + 1, remaining - v);
    }
  };
  if (nvars == 0) return out;
  rec(rec, 0, order);
  return out;
}

/// The first query of total order < limit with a nonzero moment, if any.
inline std::optional<MomentQuery> lowest_nonvanishing_moment(const ShiftPolynomial& p, int limit) {
  const std::size_t nvars = 2 * static_cast<std::size_t>(p.k());
  for (int order = 0; order < limit; ++order) {
    for (const auto& q : moment_queries(nvars, order)) {
      if (!is_zero(euler_moment(p, q))) return q;
    }
  }
  return std::nullopt;
}

/// Largest q ≤ cap such that every Euler moment of total order < q vanishes.
inline int vanishing_order(const ShiftPolynomial& p, int cap) {
  if (cap < 0) throw std::invalid_argument("vanishing_order cap must be nonnegative");
  const auto witness = lowest_nonvanishing_moment(p, cap);
  return witness ? witness->total_order() : cap;
}

/// One term c · Π(x_ν − 1)^{a_ν} Π(y_μ − 1)^{b_μ} · x^{i} y^{j}.
struct IdealTerm {
  std::vector<int> generators;  // (a_1..a_k, b_1..b_k)
  Exponent shift;               // (i_1..i_k, j_1..j_k)
  GaussianRational coeff;

  int generator_count() const { return std::accumulate(generators.begin(), generators.end(), 0); }
};

struct IdealExpansion {
  int k = 1;
  int q = 0;
  std::vector<IdealTerm> terms;
};

struct MembershipFailure {
  int q = 0;
  MomentQuery witness;
};

using IdealDecomposition = std::variant<IdealExpansion, MembershipFailure>;

namespace detail {

/// Π_v (x_v − 1)^{d_v} · x^{shift}, expanded into monomials, scaled by c.
inline void accumulate_generator_product(SparseLaurent<GaussianRational>& out,
                                         const std::vector<int>& d, const Exponent& shift,
                                         const GaussianRational& c) {
  // Start with the single monomial c·x^{shift} and expand factor by factor.
  std::vector<std::pair<Exponent, GaussianRational>> acc{{shift, c}};
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (d[v] == 0) continue;
    std::vector<std::pair<Exponent, GaussianRational>> next;
    next.reserve(acc.size() * static_cast<std::size_t>(d[v] + 1));
    for (const auto& [e, coeff] : acc) {
      for (int j = 0; j <= d[v]; ++j) {
        Rational b = binomial(d[v], j);
        if ((d[v] - j) % 2 != 0) b = -b;
        Exponent f = e;
        f[v] += j;
        next.emplace_back(std::move(f), GaussianRational(b) * coeff);
      }
    }
    acc = std::move(next);
  }
  for (const auto& [e, coeff] : acc) out.add_term(e, coeff);
}

}  // namespace detail

/// Recompose Σ c · Π(x−1)^a Π(y−1)^b · x^i y^j.
inline ShiftPolynomial recompose(const IdealExpansion& x) {
  SparseLaurent<GaussianRational> poly(2 * static_cast<std::size_t>(x.k));
  for (const auto& t : x.terms) detail::accumulate_generator_product(poly, t.generators, t.shift, t.coeff);
  return {x.k, std::move(poly)};
}

/// Writes P ∈ 𝔍_k^q as Σ (generator product of exactly q factors) · (Laurent
/// monomial) · coefficient, or reports the lowest nonvanishing moment.
///
/// The expansion is deterministic: P is cleared to a polynomial by x^M, expanded
/// in X = x − 1, and each shifted monomial X^d (|d| ≥ q) donates its first q
/// generator factors in variable order x_1..x_k, y_1..y_k; the rest of X^d is
/// multiplied back out together with x^{−M}.
inline IdealDecomposition ideal_power_decompose(const ShiftPolynomial& p, int q) {
  if (q < 0) throw std::invalid_argument("ideal power must be nonnegative");
  const std::size_t nvars = 2 * static_cast<std::size_t>(p.k());
  Exponent clearing(nvars, 0);
  for (std::size_t v = 0; v < nvars; ++v) clearing[v] = std::max(0, -p.poly().min_exponent(v));

  // Shifted expansion of x^M · P.
  std::map<std::vector<int>, GaussianRational> shifted;
  for (const auto& [e, c] : p.terms()) {
    std::vector<std::pair<std::vector<int>, GaussianRational>> acc{{std::vector<int>(nvars, 0), c}};
    for (std::size_t v = 0; v < nvars; ++v) {
      const int power = e[v] + clearing[v];
      if (power == 0) continue;
      std::vector<std::pair<std::vector<int>, GaussianRational>> next;
      for (const auto& [d, coeff] : acc) {
        for (int j = 0; j <= power; ++j) {
          auto f = d;
          f[v] = j;
          next.emplace_back(std::move(f), GaussianRational(binomial(power, j)) * coeff);
        }
      }
      acc = std::move(next);
    }
    for (auto& [d, coeff] : acc) {
      auto [it, inserted] = shifted.try_emplace(d, coeff);
      if (!inserted) it->second += coeff;
    }
  }

  bool member = true;
  for (const auto& [d, c] : shifted) {
    if (c.is_zero()) continue;
    if (std::accumulate(d.begin(), d.end(), 0) < q) {
      member = false;
      break;
    }
  }
  if (!member) {
    auto witness = lowest_nonvanishing_moment(p, q);
    if (!witness) throw std::logic_error("ideal_power_decompose: moment/degree criteria disagree");
    return MembershipFailure{q, *witness};
  }

  Exponent unclear(nvars);
  for (std::size_t v = 0; v < nvars; ++v) unclear[v] = -clearing[v];

  std::map<std::pair<std::vector<int>, Exponent>, GaussianRational> grouped;
  for (const auto& [d, c] : shifted) {
    if (c.is_zero()) continue;
    std::vector<int> gen(nvars, 0);
    std::vector<int> rest = d;
    int need = q;
    for (std::size_t v = 0; v < nvars && need > 0; ++v) {
      const int take = std::min(need, rest[v]);
      gen[v] = take;
      rest[v] -= take;
      need -= take;
    }
    SparseLaurent<GaussianRational> tail(nvars);
    detail::accumulate_generator_product(tail, rest, unclear, c);
    for (const auto& [e, coeff] : tail.terms()) {
      auto [it, inserted] = grouped.try_emplace({gen, e}, coeff);
      if (!inserted) it->second += coeff;
    }
  }

  IdealExpansion out;
  out.k = p.k();
  out.q = q;
  for (auto& [key, c] : grouped) {
    if (c.is_zero()) continue;
    out.terms.push_back({key.first, key.second, c});
  }
  return out;
}

/// [φ_{2k}(P)]_n = Σ c · Π α_{n+i_ν} · Π ᾱ_{n+j_μ}.
template <class Scalar>
Scalar coefficient_map(const ShiftPolynomial& p, const BasicVerblunskySequence<Scalar>& seq, long n) {
  const auto k = static_cast<std::size_t>(p.k());
  Scalar acc(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar term(0);
    if constexpr (std::is_same_v<Scalar, Complex>) {
      term = c.to_complex();
    } else {
      term = c;
    }
    for (std::size_t v = 0; v < k; ++v) term *= seq[n + e[v]];
    for (std::size_t v = 0; v < k; ++v) term *= conj(seq[n + e[k + v]]);
    acc += term;
  }
  return acc;
}

// ----------------------------------------------------------------------------
// One-variable Laurent polynomials R(P) = Σ c_j P^j and division by (P − 1)^q.

using UnivariateLaurent = SparseLaurent<Rational>;

/// Σ_j c_j j^ℓ.
inline Rational univariate_moment(const UnivariateLaurent& r, unsigned order) {
  Rational acc(0);
  for (const auto& [e, c] : r.terms()) acc += c * int_power(e[0], order);
  return acc;
}

/// Exact division of R by (P − 1)^q.  Returns the quotient when the division
/// is exact and std::nullopt otherwise.
inline std::optional<UnivariateLaurent> divide_by_shift_power(const UnivariateLaurent& r, int q) {
  if (r.nvars() != 1) throw std::invalid_argument("univariate polynomial expected");
  if (q < 0) throw std::invalid_argument("power must be nonnegative");
  if (r.is_zero()) return r;
  const int low = r.min_exponent(0);
  const int high = r.max_exponent(0);
  // Dense coefficients of P^{−low} R, degree 0..high−low.
  std::vector<Rational> c(static_cast<std::size_t>(high - low + 1));
  for (const auto& [e, coeff] : r.terms()) c[static_cast<std::size_t>(e[0] - low)] = coeff;
  for (int step = 0; step < q; ++step) {
    // Synthetic division by (P − 1).
    if (c.size() < 2) return std::nullopt;
    std::vector<Rational> quotient(c.size() - 1);
    Rational carry(0);
    for (std::size_t d = c.size() - 1; d >= 1; --d) {
      carry = c[d] + carry;
      quotient[d - 1] = carry;
    }
    if (!is_zero(Rational(c[0] + carry))) return std::nullopt;
    c = std::move(quotient);
  }
  UnivariateLaurent out(1);
  for (std::size_t d = 0; d < c.size(); ++d) out.add_term({static_cast<int>(d) + low}, c[d]);
  return out;
}

}  // namespace szego
