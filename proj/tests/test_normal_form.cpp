#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "szego/normal_form.hpp"

using namespace szego;
using SP = ShiftPolynomial;

namespace {

SP one(int k) { return SP::constant(k, 1); }

ExactVerblunskySequence random_exact(std::mt19937_64& rng, std::size_t len) {
  std::vector<GaussianRational> v;
  for (std::size_t i = 0; i < len; ++i) {
    v.emplace_back(make_rational(oracle::uniform_int(rng, -6, 6), 10), make_rational(oracle::uniform_int(rng, -6, 6), 10));
  }
  return ExactVerblunskySequence(std::move(v));
}

std::vector<Complex> random_float(std::mt19937_64& rng, std::size_t len, double cap) {
  std::vector<Complex> v(len);
  for (auto& x : v) x = std::polar(oracle::uniform_real(rng, 0.0, cap), oracle::uniform_real(rng, 0.0, 6.28));
  return v;
}

/// Independent evaluation of a monomial from repeated-subtraction differences.
Complex oracle_evaluate(const FloatMonomial& m, const std::vector<Complex>& v, long n) {
  Complex value = m.coeff;
  for (const auto& f : m.holo) value *= oracle::difference_at(v, f.order, n + f.shift);
  for (const auto& f : m.anti) value *= std::conj(oracle::difference_at(v, f.order, n + f.shift));
  return value;
}

}  // namespace

TEST(FromIdealExpansion, Examples) {
  {
    const auto d = ideal_power_decompose((SP::x(1, 1) - one(1)) * (SP::y(1, 1) - one(1)), 2);
    const auto ms = from_ideal_expansion(std::get<IdealExpansion>(d));
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(ms[0].holo, (std::vector<DiffFactor>{{1, 0}}));
    EXPECT_EQ(ms[0].anti, (std::vector<DiffFactor>{{1, 0}}));
    EXPECT_EQ(ms[0].difference_count(), 2);
  }
  {
    const auto d = ideal_power_decompose(SP::x(2, 1) * SP::x(2, 2) * SP::y(2, 1) * SP::y(2, 2) - one(2), 1);
    const auto ms = from_ideal_expansion(std::get<IdealExpansion>(d));
    ASSERT_EQ(ms.size(), 4u);
    for (const auto& m : ms) {
      EXPECT_EQ(m.difference_count(), 1);
      for (const auto* side : {&m.holo, &m.anti}) {
        for (const auto& f : *side) EXPECT_TRUE(f.shift == 0 || f.shift == 1);
      }
    }
  }
  {
    const auto d = ideal_power_decompose(SP::x(1, 1, -1) * (SP::x(1, 1) - one(1)).pow(2), 2);
    const auto ms = from_ideal_expansion(std::get<IdealExpansion>(d));
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(ms[0].holo, (std::vector<DiffFactor>{{2, -1}}));
    EXPECT_EQ(ms[0].anti, (std::vector<DiffFactor>{{0, 0}}));
    EXPECT_EQ(ms[0].coeff, GaussianRational(1));
  }
}

TEST(Evaluate, Examples) {
  const VerblunskySequence s(std::vector<Complex>{Complex(0.3, 0.4), 0.1});
  FloatMonomial diag{{{0, 0}}, {{0, 0}}, 1.0};
  EXPECT_NEAR(std::abs(evaluate(diag, s, 0) - 0.25), 0.0, 1e-15);
  std::vector<Complex> lin(20);
  for (int n = 0; n < 20; ++n) lin[static_cast<std::size_t>(n)] = 0.01 * n;
  FloatMonomial d1{{{1, 0}}, {{1, 0}}, 1.0};
  EXPECT_NEAR(std::abs(evaluate(d1, VerblunskySequence(lin), 5) - 1e-4), 0.0, 1e-16);
}

TEST(Evaluate, MatchesOracleAndBound) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto v = random_float(rng, 12, 0.99);
    const VerblunskySequence s(v);
    FloatMonomial m;
    const int k = oracle::uniform_int(rng, 1, 3);
    for (int i = 0; i < k; ++i) {
      m.holo.push_back({oracle::uniform_int(rng, 0, 3), oracle::uniform_int(rng, -2, 2)});
      m.anti.push_back({oracle::uniform_int(rng, 0, 3), oracle::uniform_int(rng, -2, 2)});
    }
    m.coeff = Complex(oracle::uniform_real(rng, -1, 1), oracle::uniform_real(rng, -1, 1));
    const long n = oracle::uniform_int(rng, -2, 12);
    EXPECT_NEAR(std::abs(evaluate(m, s, n) - oracle_evaluate(m, v, n)), 0.0, 1e-13);
    EXPECT_LE(std::abs(evaluate(m, s, n)), std::abs(m.coeff) * std::ldexp(1.0, m.difference_count()) + 1e-12);
  }
}

TEST(Monomial, Validate) {
  ExactMonomial m{{{1, 2}}, {{0, -1}}, GaussianRational(1)};
  EXPECT_NO_THROW(m.validate(2));
  EXPECT_THROW(m.validate(1), std::invalid_argument);
  ExactMonomial unbalanced{{{1, 0}, {0, 0}}, {{0, 0}}, GaussianRational(1)};
  EXPECT_THROW(unbalanced.validate(3), std::invalid_argument);
  EXPECT_EQ(m.max_abs_shift(), 2);
  EXPECT_EQ(m.max_order(), 1);
}

TEST(PointwiseEquality, ExactExamples) {
  std::mt19937_64 rng(4);
  const auto s = random_exact(rng, 40);
  const auto a = pointwise_equality_check((SP::x(1, 1) - one(1)) * (SP::y(1, 1) - one(1)), 2, s, 0, 50);
  EXPECT_TRUE(a.exact_zero);
  const auto b = pointwise_equality_check(SP::x(2, 1) * SP::x(2, 2) * SP::y(2, 1) * SP::y(2, 2) - one(2), 1, s, 0, 50);
  EXPECT_TRUE(b.exact_zero);
  EXPECT_EQ(b.monomials, 4u);
}

TEST(PointwiseEquality, RandomIdealMembersExactAndFloat) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const int k = oracle::uniform_int(rng, 1, 3);
    const int q = oracle::uniform_int(rng, 0, 4);
    SP p(k);
    for (int term = 0; term < 3; ++term) {
      SP piece = one(k);
      for (int g = 0; g < q; ++g) {
        const int v = oracle::uniform_int(rng, 0, 2 * k - 1);
        piece = piece * ((v < k ? SP::x(k, v + 1) : SP::y(k, v - k + 1)) - one(k));
      }
      Exponent e(2 * static_cast<std::size_t>(k));
      for (auto& x : e) x = oracle::uniform_int(rng, -2, 2);
      p += SP::monomial(k, e, GaussianRational(make_rational(oracle::uniform_int(rng, -4, 4), 3))) * piece;
    }
    const auto s = random_exact(rng, 10);
    EXPECT_TRUE(pointwise_equality_check(p, q, s, -3, 13).exact_zero);
    std::vector<Complex> fv;
    for (const auto& x : s.values()) fv.push_back(x.to_complex());
    const auto f = pointwise_equality_check(p, q, VerblunskySequence(fv), -3, 13);
    EXPECT_LE(f.max_abs_deviation, 1e-12);
  }
}

TEST(PointwiseEquality, PropagatesMembershipFailure) {
  std::mt19937_64 rng(6);
  const auto s = random_exact(rng, 5);
  EXPECT_THROW(pointwise_equality_check(SP::x(1, 1) - one(1), 2, s, 0, 3), MembershipError);
}

TEST(Leibniz, FirstOrderTwoFactors) {
  const auto terms = leibniz_expand(1, 2);
  ASSERT_EQ(terms.size(), 2u);
  bool saw_first = false, saw_second = false;
  for (const auto& t : terms) {
    if (t.orders == std::vector<int>{1, 0}) {
      EXPECT_EQ(t.shifts, (std::vector<int>{0, 1}));
      saw_first = true;
    }
    if (t.orders == std::vector<int>{0, 1}) {
      EXPECT_EQ(t.shifts, (std::vector<int>{0, 0}));
      saw_second = true;
    }
    EXPECT_EQ(t.coeff, 1);
  }
  EXPECT_TRUE(saw_first && saw_second);
}

TEST(Leibniz, IdentityAndConservation) {
  const auto id = leibniz_expand(0, 3);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0].orders, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(id[0].coeff, 1);
  for (int q = 0; q <= 4; ++q) {
    for (int s = 1; s <= 3; ++s) {
      long long total = 0;
      for (const auto& t : leibniz_expand(q, s)) {
        int sum = 0;
        for (int r : t.orders) sum += r;
        EXPECT_EQ(sum, q);
        total += t.coeff;
      }
      long long expect = 1;
      for (int i = 0; i < q; ++i) expect *= s;
      EXPECT_EQ(total, expect);
    }
  }
}

TEST(Leibniz, SecondOrderMatchesDirectDifference) {
  // Four raw terms; two coincide, giving three collected terms with weights 1, 2, 1.
  const auto terms = leibniz_expand(2, 2);
  EXPECT_EQ(terms.size(), 3u);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> f(12), g(12);
    for (auto& x : f) x = oracle::uniform_real(rng, -1, 1);
    for (auto& x : g) x = oracle::uniform_real(rng, -1, 1);
    std::vector<double> fg(12);
    for (std::size_t i = 0; i < 12; ++i) fg[i] = f[i] * g[i];
    for (long n = 0; n < 8; ++n) {
      double expanded = 0.0;
      for (const auto& term : terms) {
        expanded += static_cast<double>(term.coeff) *
                    oracle::difference_at(f, term.orders[0], n + term.shifts[0]) *
                    oracle::difference_at(g, term.orders[1], n + term.shifts[1]);
      }
      EXPECT_NEAR(expanded, oracle::difference_at(fg, 2, n), 1e-13);
    }
  }
}

TEST(Leibniz, ThreeFactorsNumeric) {
  std::mt19937_64 rng(8);
  std::vector<std::vector<double>> fs(3, std::vector<double>(14));
  for (auto& f : fs) {
    for (auto& x : f) x = oracle::uniform_real(rng, -1, 1);
  }
  std::vector<double> prod(14);
  for (std::size_t i = 0; i < 14; ++i) prod[i] = fs[0][i] * fs[1][i] * fs[2][i];
  for (int q = 0; q <= 3; ++q) {
    const auto terms = leibniz_expand(q, 3);
    for (long n = 0; n < 9; ++n) {
      double expanded = 0.0;
      for (const auto& t : terms) {
        double v = static_cast<double>(t.coeff);
        for (std::size_t nu = 0; nu < 3; ++nu) v *= oracle::difference_at(fs[nu], t.orders[nu], n + t.shifts[nu]);
        expanded += v;
      }
      EXPECT_NEAR(expanded, oracle::difference_at(prod, q, n), 1e-12);
    }
  }
}

TEST(SummationByParts, Examples) {
  const auto c = summation_by_parts([](long) { return 2.0; }, [](long n) { return 0.1 * n * n; }, 10);
  EXPECT_DOUBLE_EQ(c.lhs, 0.0);
  EXPECT_NEAR(c.rhs + c.boundary, 0.0, 1e-12);
  const auto lin = summation_by_parts([](long n) { return static_cast<double>(n); }, [](long) { return 1.0; }, 3);
  EXPECT_DOUBLE_EQ(lin.lhs, 4.0);
  EXPECT_DOUBLE_EQ(lin.boundary, 4.0);
  EXPECT_DOUBLE_EQ(lin.rhs, 0.0);
}

TEST(SummationByParts, RandomVectors) {
  std::mt19937_64 rng(9);
  std::vector<double> f(101), g(101);
  for (auto& x : f) x = oracle::uniform_real(rng, -1, 1);
  for (auto& x : g) x = oracle::uniform_real(rng, -1, 1);
  const auto r = summation_by_parts(f, g, 99);
  EXPECT_NEAR(r.lhs, r.rhs + r.boundary, 1e-12);
  EXPECT_THROW(summation_by_parts(f, g, 100), std::invalid_argument);
}

TEST(Telescope, Examples) {
  const VerblunskySequence s(std::vector<Complex>{0.5, 0.2});
  EXPECT_EQ(telescope_sum(TelescopeTerm{}, s, 5).endpoint, Complex(0.0));
  const TelescopeTerm sq{{FloatMonomial{{{0, 0}}, {{0, 0}}, 1.0}}};
  const auto t = telescope_sum(sq, s, 0);
  EXPECT_NEAR(std::abs(t.endpoint - (-0.21)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.naive - t.endpoint), 0.0, 1e-15);
}

TEST(Telescope, RandomBody) {
  std::mt19937_64 rng(10);
  const VerblunskySequence s(random_float(rng, 210, 0.9));
  TelescopeTerm body;
  for (int i = 0; i < 3; ++i) {
    body.body.push_back(FloatMonomial{{{oracle::uniform_int(rng, 0, 2), oracle::uniform_int(rng, -1, 1)}},
                                      {{oracle::uniform_int(rng, 0, 2), oracle::uniform_int(rng, -1, 1)}},
                                      Complex(oracle::uniform_real(rng, -1, 1), 0.3)});
  }
  const auto t = telescope_sum(body, s, 200);
  EXPECT_NEAR(std::abs(t.naive - t.endpoint), 0.0, 1e-12);
}

TEST(Redistribution, InteriorSupportedSumsAgreeExactly) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<GaussianRational> v(30, GaussianRational(0));
    for (std::size_t n = 6; n < 22; ++n) {
      v[n] = GaussianRational(make_rational(oracle::uniform_int(rng, -4, 4), 7), make_rational(oracle::uniform_int(rng, -4, 4), 7));
    }
    const ExactVerblunskySequence s(v);
    ExactMonomial m;
    const int k = oracle::uniform_int(rng, 1, 2);
    for (int i = 0; i < k; ++i) {
      m.holo.push_back({oracle::uniform_int(rng, 0, 2), oracle::uniform_int(rng, -1, 1)});
      m.anti.push_back({oracle::uniform_int(rng, 0, 2), oracle::uniform_int(rng, -1, 1)});
    }
    m.holo[0].order += 1;
    m.coeff = GaussianRational(make_rational(oracle::uniform_int(rng, 1, 5), 2));
    const auto moved = redistribute_one_difference(m, 0);
    for (const auto& r : moved) EXPECT_EQ(r.difference_count(), m.difference_count());
    const long N = 29;
    EXPECT_EQ(finite_sum(moved, s, 0, N), finite_sum(std::vector<ExactMonomial>{m}, s, 0, N));
    EXPECT_TRUE(is_zero(redistribution_boundary(m, 0, s, N)));
  }
}

TEST(Redistribution, BoundaryAccountsForTheDifference) {
  std::mt19937_64 rng(12);
  const auto s = random_exact(rng, 12);
  ExactMonomial m{{{1, 0}, {0, 1}}, {{1, 0}, {0, 0}}, GaussianRational(1)};
  for (std::size_t index : {0u, 2u}) {
    const auto moved = redistribute_one_difference(m, index);
    const long N = 8;
    EXPECT_EQ(finite_sum(std::vector<ExactMonomial>{m}, s, 0, N),
              finite_sum(moved, s, 0, N) + redistribution_boundary(m, index, s, N));
  }
  EXPECT_THROW(redistribute_one_difference(m, 1), std::invalid_argument);
  EXPECT_THROW(redistribute_one_difference(m, 7), std::out_of_range);
}

TEST(BackwardDifference, RewrittenAsForward) {
  const auto [f, sign] = backward_to_forward({1, 3});
  EXPECT_EQ(f.order, 1);
  EXPECT_EQ(f.shift, 2);
  EXPECT_EQ(sign, -1);
  // (P^{-1} − 1)α_{n+3} = α_{n+2} − α_{n+3} = −(Δα)_{n+2}
  const VerblunskySequence s(std::vector<Complex>{0.1, 0.2, 0.4, 0.8 * Complex(0, 1), 0.3, 0.0});
  const long n = 1;
  EXPECT_NEAR(std::abs((s[n + 2] - s[n + 3]) - static_cast<double>(sign) * forward_difference(s, f.order, n + f.shift)), 0.0,
              1e-15);
}
