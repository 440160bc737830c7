#pragma once
//
// Verblunsky sequences, forward differences and the two coercive energies
// (m-th difference energy and the ℓ^{2m+2} power energy).
//
// Indexing is 0-based.  Reads outside the stored prefix (negative indices
// included) return 0: the boundary data of every finite-volume sum is fixed
// to zero.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "szego/rational.hpp"

namespace szego {

using Complex = std::complex<double>;

template <class Scalar>
class BasicVerblunskySequence {
 public:
  using value_type = Scalar;

  BasicVerblunskySequence() = default;

  /// Throws std::domain_error if some entry has modulus ≥ 1.
  explicit BasicVerblunskySequence(std::vector<Scalar> values) : values_(std::move(values)) {
    for (std::size_t n = 0; n < values_.size(); ++n) {
      if (!(norm2(values_[n]) < 1)) {
        throw std::domain_error("Verblunsky coefficient " + std::to_string(n) +
                                " has modulus >= 1");
      }
    }
  }

  Scalar operator[](long n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= values_.size()) return Scalar(0);
    return values_[static_cast<std::size_t>(n)];
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const Scalar> values() const { return values_; }

  /// First `length` entries (or all of them if shorter).
  BasicVerblunskySequence truncated(std::size_t length) const {
    BasicVerblunskySequence out;
    out.values_.assign(values_.begin(),
                       values_.begin() + static_cast<long>(std::min(length, values_.size())));
    return out;
  }

 private:
  std::vector<Scalar> values_;
};

using VerblunskySequence = BasicVerblunskySequence<Complex>;
using ExactVerblunskySequence = BasicVerblunskySequence<GaussianRational>;

/// Δ^m f_n = Σ_{j=0}^m (−1)^{m−j} C(m,j) f_{n+j} for any callable n ↦ f_n.
template <class F>
auto forward_difference_of(const F& f, int order, long n) -> decltype(f(n)) {
  using Scalar = decltype(f(n));
  if (order < 0) throw std::invalid_argument("difference order must be nonnegative");
  Scalar acc(0);
  for (int j = 0; j <= order; ++j) {
    long long c = binomial_int(order, j);
    if ((order - j) % 2 != 0) c = -c;
    acc += Scalar(static_cast<long>(c)) * f(n + j);
  }
  return acc;
}

template <class Scalar>
Scalar forward_difference(const BasicVerblunskySequence<Scalar>& seq, int order, long n) {
  return forward_difference_of([&seq](long i) { return seq[i]; }, order, n);
}

/// (Δ^m ᾱ)_n = conj((Δ^m α)_n).
template <class Scalar>
Scalar forward_difference_conj(const BasicVerblunskySequence<Scalar>& seq, int order, long n) {
  using std::conj;
  if constexpr (std::is_same_v<Scalar, Complex>) {
    return std::conj(forward_difference(seq, order, n));
  } else {
    return conj(forward_difference(seq, order, n));
  }
}

struct EnergyReport {
  int m = 1;
  long N = 0;
  double diff_energy = 0.0;   // Σ_{n=0}^N |Δ^m α_n|²
  double power_energy = 0.0;  // Σ_{n=0}^N |α_n|^{2m+2}
};

inline EnergyReport lukic_partial_sums(const VerblunskySequence& seq, int m, long N) {
  if (m < 1) throw std::invalid_argument("lukic_partial_sums requires m >= 1");
  EnergyReport r;
  r.m = m;
  r.N = N;
  for (long n = 0; n <= N; ++n) {
    r.diff_energy += std::norm(forward_difference(seq, m, n));
    r.power_energy += std::pow(std::norm(seq[n]), m + 1);
  }
  return r;
}

/// (Σ_{n=0}^{N} |v_n|^p)^{1/p}; entries past the end count as zero.
template <class Scalar>
double lp_norm(std::span<const Scalar> values, double p, long N) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  double acc = 0.0;
  const long last = std::min<long>(N, static_cast<long>(values.size()) - 1);
  for (long n = 0; n <= last; ++n) acc += std::pow(std::abs(values[static_cast<std::size_t>(n)]), p);
  return std::pow(acc, 1.0 / p);
}

inline double lp_norm(const std::vector<double>& values, double p, long N) {
  return lp_norm(std::span<const double>(values), p, N);
}

inline double lp_norm(const std::vector<Complex>& values, double p, long N) {
  return lp_norm(std::span<const Complex>(values), p, N);
}

inline void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& rows) {
  os << "m,N,diff_energy,power_energy\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.m << ',' << r.N << ',' << r.diff_energy << ',' << r.power_energy << '\n';
  }
}

}  // namespace szego
