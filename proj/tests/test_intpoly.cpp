#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "equidist/intpoly.hpp"
#include "equidist/poly_format.hpp"

using namespace equidist;

namespace {

// Sylvester matrix determinant by fraction-free Bareiss elimination.
BigInt sylvester_resultant(const IntPolynomial& a, const IntPolynomial& b) {
  const int m = a.degree(), n = b.degree();
  const int size = m + n;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.coeff(n - j);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (s[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (s[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(s[k], s[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]) / prev;
      }
      s[i][k] = 0;
    }
    prev = s[k][k];
  }
  return sign * s[size - 1][size - 1];
}

IntPolynomial random_poly(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<BigInt> c(degree + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(IntPolynomial{-1, -1, 0, 1, 1}, {1.0, 0.0}), Complex(0.0, 0.0));
  EXPECT_EQ(evaluate(IntPolynomial{-2, 0, 1}, {0.0, 0.0}), Complex(-2.0, 0.0));
  EXPECT_EQ(evaluate(IntPolynomial{-1, 0, 0, 1}, {2.0, 0.0}), Complex(7.0, 0.0));
}

TEST(Evaluate, ExactAtLargeIntegerPoint) {
  // 3^40 + 1 is not representable in double arithmetic step by step.
  IntPolynomial p = IntPolynomial::monomial(1, 40) + IntPolynomial{1};
  EXPECT_EQ(evaluate_exact(p, 3), detail::pow(3, 40) + 1);
  EXPECT_DOUBLE_EQ(evaluate(p, {3.0, 0.0}).real(), BigInt(detail::pow(3, 40) + 1).get_d());
}

TEST(Evaluate, GaussianIntegerPoint) {
  EXPECT_EQ(evaluate(IntPolynomial{1, 0, 1}, {0.0, 1.0}), Complex(0.0, 0.0));
}

TEST(Derivative, Examples) {
  EXPECT_EQ(derivative(IntPolynomial{-2, 0, 1}), (IntPolynomial{0, 2}));
  EXPECT_EQ(derivative(IntPolynomial{-1, -1, 0, 1, 1}), (IntPolynomial{-1, 0, 3, 4}));
  EXPECT_EQ(derivative(IntPolynomial{0, 5}), (IntPolynomial{5}));
  EXPECT_TRUE(derivative(IntPolynomial{7}).is_zero());
}

TEST(Derivative, FiniteDifferenceConsistency) {
  const IntPolynomial p{3, -1, 4, 1, -5, 9};
  const IntPolynomial dp = derivative(p);
  const double h = 1e-7;
  for (double x = -1.0; x <= 1.0; x += 0.25) {
    for (double y = -1.0; y <= 1.0; y += 0.5) {
      const Complex z(x + 0.013, y);
      const Complex fd = (evaluate(p, z + h) - evaluate(p, z)) / h;
      EXPECT_LT(std::abs(fd - evaluate(dp, z)), 1e-4 * (1.0 + std::abs(evaluate(dp, z))));
    }
  }
}

TEST(Discriminant, QuadraticOracle) {
  // b^2 - 4ac
  EXPECT_EQ(discriminant(IntPolynomial{-2, 0, 1}), 8);
  EXPECT_EQ(discriminant(IntPolynomial{0, 0, 1}), 0);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const IntPolynomial p = random_poly(rng, 2, 1000);
    EXPECT_EQ(discriminant(p), p.coeff(1) * p.coeff(1) - 4 * p.coeff(2) * p.coeff(0));
  }
}

TEST(Discriminant, CubicOracle) {
  // depressed cubic z^3 + pz + q: -4p^3 - 27q^2
  EXPECT_EQ(discriminant(IntPolynomial{-1, 0, 0, 1}), -27);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::uniform_int_distribution<long> d(-500, 500);
    const BigInt pp = d(rng), qq = d(rng);
    const IntPolynomial f(std::vector<BigInt>{qq, pp, 0, 1});
    EXPECT_EQ(discriminant(f), -4 * pp * pp * pp - 27 * qq * qq);
  }
}

TEST(Discriminant, MultimodularMatchesSubresultant) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 40; ++i) {
    IntPolynomial p = random_poly(rng, 2 + static_cast<int>(rng() % 90), 1000);
    if (i % 3 == 0) p = p * IntPolynomial(std::vector<BigInt>{BigInt("98765432109876543210987"), 0, 1});
    if (i % 5 == 0) p = p * p;
    EXPECT_EQ(detail::discriminant_multimodular(p), detail::discriminant_subresultant(p)) << p.degree();
  }
}

TEST(Discriminant, BinomialClosedForm) {
  // disc(z^n + a) = (-1)^(n(n-1)/2) n^n a^(n-1)
  for (int n : {2, 3, 47, 48, 101, 400}) {
    for (long a : {-1L, 3L}) {
      std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, 0);
      c[0] = a;
      c.back() = 1;
      BigInt want, an;
      mpz_ui_pow_ui(want.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
      mpz_pow_ui(an.get_mpz_t(), BigInt(a).get_mpz_t(), static_cast<unsigned long>(n - 1));
      want *= an;
      if ((static_cast<long>(n) * (n - 1) / 2) % 2) want = -want;
      EXPECT_EQ(discriminant(IntPolynomial(c)), want) << n << " " << a;
    }
  }
}

TEST(Discriminant, DegreePrecondition) {
  EXPECT_THROW(discriminant(IntPolynomial{1, 1}), PreconditionError);
}

TEST(Resultant, MatchesSylvesterDeterminant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    const int m = 1 + static_cast<int>(rng() % 9), n = 1 + static_cast<int>(rng() % 9);
    const IntPolynomial a = random_poly(rng, m, 20), b = random_poly(rng, n, 20);
    EXPECT_EQ(resultant(a, b), sylvester_resultant(a, b)) << format_symbolic(a) << " | " << format_symbolic(b);
  }
}

TEST(Resultant, SharedFactorGivesZero) {
  const IntPolynomial f{1, 1};
  EXPECT_EQ(resultant(f * IntPolynomial{2, 0, 3}, f * IntPolynomial{-5, 1}), 0);
}

TEST(Resultant, NonMonicWithContent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const IntPolynomial a = random_poly(rng, 6, 9) * BigInt(6);
    const IntPolynomial b = random_poly(rng, 4, 9) * BigInt(-4);
    EXPECT_EQ(resultant(a, b), sylvester_resultant(a, b));
  }
}

TEST(SimpleZeros, Examples) {
  EXPECT_TRUE(has_simple_zeros(IntPolynomial{-2, 0, 1}));
  EXPECT_FALSE(has_simple_zeros(IntPolynomial{1, -2, 1}));
  EXPECT_TRUE(has_simple_zeros(IntPolynomial{-1, -1, 0, 1, 1}));
  EXPECT_TRUE(has_simple_zeros(IntPolynomial{4, 1}));
}

TEST(SimpleZeros, AgreesWithDiscriminant) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    IntPolynomial p = random_poly(rng, 2 + static_cast<int>(rng() % 8), 3);
    if (i % 3 == 0) p = p * IntPolynomial{static_cast<long>(rng() % 5) - 2, 1} * IntPolynomial{static_cast<long>(rng() % 5) - 2, 1};
    const BigInt d = discriminant(p);
    EXPECT_EQ(has_simple_zeros(p), d != 0);
    if (d != 0) {
      EXPECT_GE(abs(d), 1);
    }
  }
}

TEST(LogAbs, Examples) {
  EXPECT_EQ(log_abs(1).value, 0.0);
  EXPECT_NEAR(log_abs(8).value, 2.0794415416798357, 1e-15);
  EXPECT_NEAR(log_abs(detail::pow(2, 100)).value, 100.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(log_abs(-detail::pow(10, 400)).value, 400.0 * std::log(10.0), 400 * 1e-14);
  EXPECT_LE(log_abs(detail::pow(3, 5000)).relative_error, 1e-12);
  EXPECT_THROW(log_abs(0), PreconditionError);
}

TEST(Shift, Examples) {
  EXPECT_EQ(shift(IntPolynomial{-2, 0, 1}, 2), (IntPolynomial{2, -4, 1}));
  EXPECT_EQ(shift(IntPolynomial{0, 1}, 0), (IntPolynomial{0, 1}));
  EXPECT_EQ(shift(IntPolynomial{-1, 1}, 3), (IntPolynomial{-4, 1}));
}

TEST(Shift, MovesRootsAndInverts) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const IntPolynomial p = random_poly(rng, 7, 50);
    const BigInt c = static_cast<long>(rng() % 11) - 5;
    EXPECT_EQ(shift(shift(p, c), -c), p);
    for (long x = -4; x <= 4; ++x) EXPECT_EQ(evaluate_exact(shift(p, c), x + c), evaluate_exact(p, x));
  }
}

TEST(DivideExact, RoundTrip) {
  const IntPolynomial a{3, -1, 2}, b{-7, 0, 5, 1};
  EXPECT_EQ(divide_exact(a * b, b), a);
  EXPECT_THROW(divide_exact(a * b + IntPolynomial{1}, b), PreconditionError);
}

TEST(PolyText, ParsesBothForms) {
  EXPECT_EQ(parse_polynomial("z^4+z^3-z-1"), (IntPolynomial{-1, -1, 0, 1, 1}));
  EXPECT_EQ(parse_polynomial("-1,-1,0,1,1"), (IntPolynomial{-1, -1, 0, 1, 1}));
  EXPECT_EQ(parse_polynomial("2*x^3 - 3x + 7"), (IntPolynomial{7, -3, 0, 2}));
  EXPECT_EQ(parse_polynomial("z"), (IntPolynomial{0, 1}));
  EXPECT_EQ(parse_polynomial("5"), (IntPolynomial{5}));
  EXPECT_EQ(parse_polynomial("z^2 + z^2"), (IntPolynomial{0, 0, 2}));
}

TEST(PolyText, ReportsColumn) {
  try {
    parse_polynomial("z^2+*3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_polynomial(""), ParseError);
  EXPECT_THROW(parse_polynomial("1,,2"), ParseError);
  EXPECT_THROW(parse_polynomial("z+x"), ParseError);
  EXPECT_THROW(parse_polynomial("z^"), ParseError);
}

TEST(PolyText, RoundTripProperty) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const IntPolynomial p = random_poly(rng, static_cast<int>(rng() % 12), 1000000);
    EXPECT_EQ(parse_polynomial(format_symbolic(p)), p);
    EXPECT_EQ(parse_polynomial(format_symbolic(p, 'x')), p);
    if (p.degree() >= 1) {
      EXPECT_EQ(parse_polynomial(format_coefficients(p)), p);
    }
  }
}

TEST(Gcd, CommonFactorRecovered) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const IntPolynomial g = primitive_part(random_poly(rng, 1 + static_cast<int>(rng() % 4), 9));
    const IntPolynomial a = random_poly(rng, 1 + static_cast<int>(rng() % 6), 9);
    const IntPolynomial b = random_poly(rng, 1 + static_cast<int>(rng() % 6), 9);
    const IntPolynomial h = gcd(a * g, b * g);
    // h is a multiple of g, and it divides both products.
    EXPECT_NO_THROW(divide_exact(h, g));
    EXPECT_NO_THROW(divide_exact(a * g, h));
    EXPECT_NO_THROW(divide_exact(b * g, h));
    EXPECT_GT(h.leading(), 0);
  }
  EXPECT_EQ(gcd(IntPolynomial{6, 4}, IntPolynomial{9, 6}), (IntPolynomial{3, 2}));
  EXPECT_EQ(gcd(IntPolynomial{4, 4}, IntPolynomial{6, 0, 6}), (IntPolynomial{2}));
}

TEST(Squarefree, Multiplicities) {
  const IntPolynomial zm1{-1, 1}, q{1, 1, 1}, r{-2, 0, 3};
  IntPolynomial p = zm1 * q * q * r * r * r * BigInt(-5);
  auto parts = squarefree_decomposition(p);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], std::make_pair(zm1, 1));
  EXPECT_EQ(parts[1], std::make_pair(q, 2));
  EXPECT_EQ(parts[2], std::make_pair(r, 3));
  IntPolynomial power{1};
  for (int k = 0; k < 9; ++k) power = power * zm1;
  parts = squarefree_decomposition(power);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0], std::make_pair(zm1, 9));
  parts = squarefree_decomposition(IntPolynomial{-2, 0, 1});
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].second, 1);
}

TEST(Squarefree, DegreesAddUp) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 30; ++i) {
    IntPolynomial p = random_poly(rng, 1 + static_cast<int>(rng() % 4), 5);
    const IntPolynomial f = random_poly(rng, 1 + static_cast<int>(rng() % 3), 5);
    p = p * f * f;
    int total = 0;
    for (const auto& [g, m] : squarefree_decomposition(p)) {
      EXPECT_TRUE(has_simple_zeros(g));
      total += g.degree() * m;
    }
    EXPECT_EQ(total, p.degree());
  }
}
