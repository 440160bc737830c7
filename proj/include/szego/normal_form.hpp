#pragma once
//
// Normal-form monomials
//
//     M_n = c · Π_ν (Δ^{a_ν} α)_{n+ℓ_ν} · Π_μ (Δ^{b_μ} ᾱ)_{n+r_μ}
//
// and the finite-volume rewriting rules used on them: the discrete Leibniz
// rule, summation by parts, redistribution of one difference, and the
// telescoping identity Σ_{n=0}^N (P − 1)B_n = B_{N+1} − B_0.
//
// The coefficient type is either GaussianRational (exact mode, used as the
// test oracle) or std::complex<double> (fast mode); both share one template.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "szego/rational.hpp"
#include "szego/sequence.hpp"
#include "szego/shift_algebra.hpp"

namespace szego {

/// (Δ^order γ)_{n+shift}, γ ∈ {α, ᾱ}.
struct DiffFactor {
  int order = 0;
  int shift = 0;
  friend auto operator<=>(const DiffFactor&, const DiffFactor&) = default;
};

template <class Coeff>
struct NormalFormMonomial {
  std::vector<DiffFactor> holo;  // factors on α
  std::vector<DiffFactor> anti;  // factors on ᾱ
  Coeff coeff{1};

  int k() const { return static_cast<int>(holo.size()); }

  int difference_count() const {
    int s = 0;
    for (const auto& f : holo) s += f.order;
    for (const auto& f : anti) s += f.order;
    return s;
  }

  int max_abs_shift() const {
    int r = 0;
    for (const auto& f : holo) r = std::max(r, std::abs(f.shift));
    for (const auto& f : anti) r = std::max(r, std::abs(f.shift));
    return r;
  }

  int max_order() const {
    int r = 0;
    for (const auto& f : holo) r = std::max(r, f.order);
    for (const auto& f : anti) r = std::max(r, f.order);
    return r;
  }

  /// Throws if the factor counts differ or some shift exceeds `radius`.
  void validate(int radius) const {
    if (holo.size() != anti.size() || holo.empty()) {
      throw std::invalid_argument("normal-form monomial needs k >= 1 factors of each kind");
    }
    for (const auto* side : {&holo, &anti}) {
      for (const auto& f : *side) {
        if (f.order < 0) throw std::invalid_argument("negative difference order");
        if (std::abs(f.shift) > radius) throw std::invalid_argument("shift exceeds declared radius");
      }
    }
  }
};

using ExactMonomial = NormalFormMonomial<GaussianRational>;
using FloatMonomial = NormalFormMonomial<Complex>;

inline FloatMonomial to_float(const ExactMonomial& m) {
  return {m.holo, m.anti, m.coeff.to_complex()};
}

namespace detail {

template <class Scalar, class Coeff>
Scalar coeff_as(const Coeff& c) {
  if constexpr (std::is_same_v<Scalar, Complex>) {
    return to_complex(c);
  } else {
    static_assert(std::is_same_v<Coeff, GaussianRational>, "exact sequences need exact coefficients");
    return c;
  }
}

}  // namespace detail

template <class Coeff, class Scalar>
Scalar evaluate(const NormalFormMonomial<Coeff>& m, const BasicVerblunskySequence<Scalar>& seq, long n) {
  Scalar value = detail::coeff_as<Scalar>(m.coeff);
  for (const auto& f : m.holo) value *= forward_difference(seq, f.order, n + f.shift);
  for (const auto& f : m.anti) value *= forward_difference_conj(seq, f.order, n + f.shift);
  return value;
}

template <class Coeff, class Scalar>
Scalar evaluate(const std::vector<NormalFormMonomial<Coeff>>& body,
                const BasicVerblunskySequence<Scalar>& seq, long n) {
  Scalar acc(0);
  for (const auto& m : body) acc += evaluate(m, seq, n);
  return acc;
}

/// One normal-form monomial per term of the ideal expansion: the generator
/// exponents become difference orders and the monomial exponents become shifts.
inline std::vector<ExactMonomial> from_ideal_expansion(const IdealExpansion& x) {
  const auto k = static_cast<std::size_t>(x.k);
  std::vector<ExactMonomial> out;
  out.reserve(x.terms.size());
  for (const auto& t : x.terms) {
    ExactMonomial m;
    m.coeff = t.coeff;
    for (std::size_t v = 0; v < k; ++v) m.holo.push_back({t.generators[v], t.shift[v]});
    for (std::size_t v = 0; v < k; ++v) m.anti.push_back({t.generators[k + v], t.shift[k + v]});
    out.push_back(std::move(m));
  }
  return out;
}

/// Thrown when a polynomial handed to the pointwise check is not in 𝔍_k^q.
class MembershipError : public std::invalid_argument {
 public:
  explicit MembershipError(MembershipFailure failure)
      : std::invalid_argument("polynomial is not in the requested diagonal ideal power"),
        failure_(std::move(failure)) {}
  const MembershipFailure& failure() const { return failure_; }

 private:
  MembershipFailure failure_;
};

struct PointwiseCheck {
  bool exact_zero = false;  // meaningful in exact mode
  double max_abs_deviation = 0.0;
  std::size_t monomials = 0;
};

/// max_{n ∈ window} |[φ(P)]_n − Σ_i M_i(n)| with M_i the normal form of P ∈ 𝔍_k^q.
template <class Scalar>
PointwiseCheck pointwise_equality_check(const ShiftPolynomial& p, int q,
                                        const BasicVerblunskySequence<Scalar>& seq, long first,
                                        long last) {
  auto decomposition = ideal_power_decompose(p, q);
  if (const auto* fail = std::get_if<MembershipFailure>(&decomposition)) throw MembershipError(*fail);
  const auto monomials = from_ideal_expansion(std::get<IdealExpansion>(decomposition));
  PointwiseCheck out;
  out.monomials = monomials.size();
  out.exact_zero = true;
  for (long n = first; n <= last; ++n) {
    Scalar lhs = coefficient_map(p, seq, n);
    Scalar rhs(0);
    for (const auto& m : monomials) {
      if constexpr (std::is_same_v<Scalar, Complex>) {
        rhs += evaluate(to_float(m), seq, n);
      } else {
        rhs += evaluate(m, seq, n);
      }
    }
    const Scalar diff = lhs - rhs;
    if (!is_zero(diff)) out.exact_zero = false;
    out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(to_complex(diff)));
  }
  return out;
}

// ----------------------------------------------------------------------------
// Discrete Leibniz rule.

/// One term Π_ν (Δ^{r_ν} f^{(ν)})_{n+ℓ_ν} with an integer multiplicity.
struct LeibnizTerm {
  std::vector<int> orders;
  std::vector<int> shifts;
  long long coeff = 0;
};

/// Δ^q (f^{(1)} ⋯ f^{(s)}), built by iterating Δ(g·G) = (Δg)(PG) + g(ΔG).
/// Like terms are collected; Σ coeff = s^q.
inline std::vector<LeibnizTerm> leibniz_expand(int q, int s) {
  if (q < 0 || s < 1) throw std::invalid_argument("leibniz_expand requires q >= 0, s >= 1");
  using Key = std::pair<std::vector<int>, std::vector<int>>;
  std::map<Key, long long> current{{{std::vector<int>(static_cast<std::size_t>(s), 0),
                                     std::vector<int>(static_cast<std::size_t>(s), 0)},
                                    1}};
  for (int step = 0; step < q; ++step) {
    std::map<Key, long long> next;
    for (const auto& [key, c] : current) {
      for (std::size_t nu = 0; nu < static_cast<std::size_t>(s); ++nu) {
        Key k = key;
        k.first[nu] += 1;
        for (std::size_t later = nu + 1; later < static_cast<std::size_t>(s); ++later) k.second[later] += 1;
        next[k] += c;
      }
    }
    current = std::move(next);
  }
  std::vector<LeibnizTerm> out;
  for (const auto& [key, c] : current) out.push_back({key.first, key.second, c});
  return out;
}

// ----------------------------------------------------------------------------
// Summation by parts and telescoping.

struct SummationByParts {
  double lhs = 0.0;       // Σ_{n=0}^N (ΔF)_n G_n
  double rhs = 0.0;       // −Σ_{n=0}^N F_{n+1} (ΔG)_n
  double boundary = 0.0;  // F_{N+1}G_{N+1} − F_0G_0
};

template <class F, class Gf>
SummationByParts summation_by_parts(const F& f, const Gf& g, long N) {
  SummationByParts r;
  for (long n = 0; n <= N; ++n) {
    r.lhs += (f(n + 1) - f(n)) * g(n);
    r.rhs -= f(n + 1) * (g(n + 1) - g(n));
  }
  r.boundary = f(N + 1) * g(N + 1) - f(0) * g(0);
  return r;
}

inline SummationByParts summation_by_parts(const std::vector<double>& f, const std::vector<double>& g,
                                           long N) {
  if (static_cast<long>(f.size()) < N + 2 || static_cast<long>(g.size()) < N + 2) {
    throw std::invalid_argument("summation_by_parts needs values on [0, N+1]");
  }
  auto at = [](const std::vector<double>& v) {
    return [&v](long n) { return v[static_cast<std::size_t>(n)]; };
  };
  return summation_by_parts(at(f), at(g), N);
}

/// The sequence (P − 1)B_n for a normal-form sum B.
struct TelescopeTerm {
  std::vector<FloatMonomial> body;
};

struct TelescopeSum {
  Complex endpoint;  // B_{N+1} − B_0
  Complex naive;     // Σ_{n=0}^N (B_{n+1} − B_n)
};

inline TelescopeSum telescope_sum(const TelescopeTerm& t, const VerblunskySequence& seq, long N) {
  TelescopeSum s;
  s.endpoint = evaluate(t.body, seq, N + 1) - evaluate(t.body, seq, 0);
  s.naive = Complex(0.0);
  Complex prev = evaluate(t.body, seq, 0);
  for (long n = 0; n <= N; ++n) {
    const Complex next = evaluate(t.body, seq, n + 1);
    s.naive += next - prev;
    prev = next;
  }
  return s;
}

/// Σ_{n=first}^{last} M_n.
template <class Coeff, class Scalar>
Scalar finite_sum(const std::vector<NormalFormMonomial<Coeff>>& body,
                  const BasicVerblunskySequence<Scalar>& seq, long first, long last) {
  Scalar acc(0);
  for (long n = first; n <= last; ++n) acc += evaluate(body, seq, n);
  return acc;
}

/// Moves one difference off factor `index` (holomorphic factors first, then
/// antiholomorphic) onto the rest of the product:
///     (ΔF)G ≡ −(PF)(ΔG)  modulo telescoping terms,
/// with ΔG expanded by the first-order Leibniz rule.  The result has the same
/// degree and the same total difference count.  The discarded telescoping
/// term is F_{N+1}G_{N+1} − F_0G_0 on the summation window [0, N].
template <class Coeff>
std::vector<NormalFormMonomial<Coeff>> redistribute_one_difference(const NormalFormMonomial<Coeff>& m,
                                                                   std::size_t index) {
  const std::size_t k = m.holo.size();
  std::vector<DiffFactor> factors = m.holo;
  factors.insert(factors.end(), m.anti.begin(), m.anti.end());
  if (index >= factors.size()) throw std::out_of_range("factor index out of range");
  if (factors[index].order < 1) throw std::invalid_argument("chosen factor carries no difference");
  if (factors.size() < 2) throw std::invalid_argument("need at least two factors");

  // F = Δ^{a−1}γ at the same shift; PF shifts it by one.
  DiffFactor pf = factors[index];
  pf.order -= 1;
  pf.shift += 1;

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i != index) others.push_back(i);
  }
  std::vector<NormalFormMonomial<Coeff>> out;
  // Δ(g_1 ⋯ g_r) = Σ_t g_1 ⋯ g_{t−1} (Δg_t) (Pg_{t+1}) ⋯ (Pg_r)
  for (std::size_t t = 0; t < others.size(); ++t) {
    std::vector<DiffFactor> f = factors;
    f[index] = pf;
    f[others[t]].order += 1;
    for (std::size_t later = t + 1; later < others.size(); ++later) f[others[later]].shift += 1;
    NormalFormMonomial<Coeff> r;
    r.holo.assign(f.begin(), f.begin() + static_cast<long>(k));
    r.anti.assign(f.begin() + static_cast<long>(k), f.end());
    r.coeff = -m.coeff;
    out.push_back(std::move(r));
  }
  return out;
}

/// Boundary term F_{N+1}G_{N+1} − F_0G_0 discarded by redistribute_one_difference.
template <class Coeff, class Scalar>
Scalar redistribution_boundary(const NormalFormMonomial<Coeff>& m, std::size_t index,
                               const BasicVerblunskySequence<Scalar>& seq, long N) {
  NormalFormMonomial<Coeff> fg = m;
  const std::size_t k = m.holo.size();
  DiffFactor& chosen = index < k ? fg.holo[index] : fg.anti[index - k];
  chosen.order -= 1;
  return evaluate(fg, seq, N + 1) - evaluate(fg, seq, 0);
}

/// Rewrites a backward difference (P^{−1} − 1)γ_{n+s} as the forward form
/// −(Δγ)_{n+s−1}; returns the forward factor and the sign.
inline std::pair<DiffFactor, int> backward_to_forward(DiffFactor backward_of_order_one) {
  if (backward_of_order_one.order != 1) throw std::invalid_argument("order-one backward difference expected");
  return {{1, backward_of_order_one.shift - 1}, -1};
}

}  // namespace szego
