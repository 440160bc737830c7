#pragma once
//
// Sparse multivariate Laurent polynomials over an exact coefficient ring.
// Terms are keyed by integer exponent vectors in an ordered map, so every
// traversal (printing, serialization, decomposition) is deterministic.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "szego/rational.hpp"

namespace szego {

using Exponent = std::vector<int>;

template <class Coeff>
class SparseLaurent {
 public:
  using TermMap = std::map<Exponent, Coeff>;

  explicit SparseLaurent(std::size_t nvars = 1) : nvars_(nvars) {}

  static SparseLaurent constant(std::size_t nvars, const Coeff& c) {
    SparseLaurent p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static SparseLaurent monomial(const Exponent& e, const Coeff& c = Coeff(1)) {
    SparseLaurent p(e.size());
    p.add_term(e, c);
    return p;
  }

  /// x_i^power
  static SparseLaurent variable(std::size_t nvars, std::size_t i, int power = 1) {
    Exponent e(nvars, 0);
    e.at(i) = power;
    return monomial(e);
  }

  /// x_i − 1
  static SparseLaurent generator(std::size_t nvars, std::size_t i) {
    return variable(nvars, i) - constant(nvars, Coeff(1));
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Coeff& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent length mismatch");
    if (szego::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (szego::is_zero(it->second)) terms_.erase(it);
    }
  }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  SparseLaurent& operator+=(const SparseLaurent& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparseLaurent& operator-=(const SparseLaurent& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  SparseLaurent operator-() const {
    SparseLaurent out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend SparseLaurent operator+(SparseLaurent a, const SparseLaurent& b) { return a += b; }
  friend SparseLaurent operator-(SparseLaurent a, const SparseLaurent& b) { return a -= b; }

  friend SparseLaurent operator*(const SparseLaurent& a, const SparseLaurent& b) {
    a.check_compatible(b);
    SparseLaurent out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  SparseLaurent& operator*=(const SparseLaurent& o) { return *this = *this * o; }

  friend SparseLaurent operator*(const Coeff& s, const SparseLaurent& p) {
    SparseLaurent out(p.nvars_);
    if (szego::is_zero(s)) return out;
    for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, s * c);
    return out;
  }

  friend bool operator==(const SparseLaurent& a, const SparseLaurent& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  SparseLaurent pow(unsigned exponent) const {
    SparseLaurent out = constant(nvars_, Coeff(1));
    SparseLaurent base = *this;
    while (exponent != 0) {
      if (exponent & 1U) out *= base;
      exponent >>= 1U;
      if (exponent != 0) base *= base;
    }
    return out;
  }

  /// Multiply by the monomial x^shift.
  SparseLaurent shifted(const Exponent& shift) const {
    if (shift.size() != nvars_) throw std::invalid_argument("shift length mismatch");
    SparseLaurent out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// Smallest exponent of variable i over all terms (0 for the zero polynomial).
  int min_exponent(std::size_t i) const {
    if (terms_.empty()) return 0;
    int lo = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_) lo = std::min(lo, e[i]);
    return lo;
  }

  int max_exponent(std::size_t i) const {
    if (terms_.empty()) return 0;
    int hi = std::numeric_limits<int>::min();
    for (const auto& [e, c] : terms_) hi = std::max(hi, e[i]);
    return hi;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_polynomial() const {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (min_exponent(i) < 0) return false;
    }
    return true;
  }

  /// Sum of all coefficients: the value at x_1 = … = x_n = 1.
  Coeff value_at_ones() const {
    Coeff acc(0);
    for (const auto& [e, c] : terms_) acc += c;
    return acc;
  }

  /// Substitute polynomials for each variable (nonnegative exponents only).
  SparseLaurent compose(const std::vector<SparseLaurent>& images) const {
    if (images.size() != nvars_) throw std::invalid_argument("compose: arity mismatch");
    if (!is_polynomial()) throw std::invalid_argument("compose: negative exponents");
    const std::size_t target_vars = images.empty() ? 0 : images.front().nvars();
    std::vector<std::vector<SparseLaurent>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      powers[i].push_back(constant(target_vars, Coeff(1)));
      for (int d = 1; d <= max_exponent(i); ++d) powers[i].push_back(powers[i].back() * images[i]);
    }
    SparseLaurent out(target_vars);
    for (const auto& [e, c] : terms_) {
      SparseLaurent term = constant(target_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] != 0) term *= powers[i][static_cast<std::size_t>(e[i])];
      }
      out += term;
    }
    return out;
  }

  /// Exact division by (x_i − x_j), treating the polynomial as univariate in x_i.
  /// Returns {quotient, remainder}; the remainder does not depend on x_i.
  std::pair<SparseLaurent, SparseLaurent> divide_by_difference(std::size_t i, std::size_t j) const {
    if (i == j || i >= nvars_ || j >= nvars_) throw std::invalid_argument("bad variable pair");
    if (!is_polynomial()) throw std::invalid_argument("divide_by_difference: negative exponents");
    // Group by the power of x_i: P = Σ_d c_d x_i^d with c_d free of x_i.
    const int top = max_exponent(i);
    std::vector<SparseLaurent> by_power(static_cast<std::size_t>(top + 1), SparseLaurent(nvars_));
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[i] = 0;
      by_power[static_cast<std::size_t>(e[i])].add_term(f, c);
    }
    // Synthetic division by (x_i − x_j): q_{d−1} = c_d + x_j q_d.
    SparseLaurent xj = variable(nvars_, j);
    SparseLaurent quotient(nvars_);
    SparseLaurent carry(nvars_);
    for (int d = top; d >= 1; --d) {
      carry = by_power[static_cast<std::size_t>(d)] + xj * carry;
      quotient += carry * variable(nvars_, i, d - 1);
    }
    SparseLaurent remainder = by_power[0] + xj * carry;
    return {quotient, remainder};
  }

  friend std::ostream& operator<<(std::ostream& os, const SparseLaurent& p) {
    if (p.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : p.terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) os << "*x" << (i + 1) << "^" << e[i];
      }
    }
    return os;
  }

 private:
  void check_compatible(const SparseLaurent& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("variable count mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

using RationalPolynomial = SparseLaurent<Rational>;

}  // namespace szego
