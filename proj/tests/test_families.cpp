#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "equidist/families.hpp"

using namespace equidist;

namespace {

int mobius(int n) {
  int out = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    out = -out;
  }
  if (n > 1) out = -out;
  return out;
}

int mertens(int k) {
  int s = 0;
  for (int d = 1; d <= k; ++d) s += mobius(d);
  return s;
}

long phi_by_gcd(long n) {
  long c = 0;
  for (long j = 1; j <= n; ++j) c += std::gcd(j, n) == 1;
  return c;
}

// Phi_d = prod_{e | d} (z^e - 1)^{mu(d/e)}.
IntPolynomial cyclotomic_by_mobius(int d) {
  IntPolynomial num{1}, den{1};
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = mobius(d / e);
    if (mu == 1) num = num * power_minus_one(e);
    if (mu == -1) den = den * power_minus_one(e);
  }
  return divide_exact(num, den);
}

}  // namespace

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic(1), (IntPolynomial{-1, 1}));
  EXPECT_EQ(cyclotomic(6), (IntPolynomial{1, -1, 1}));
  EXPECT_EQ(cyclotomic(12), (IntPolynomial{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, MatchesMobiusProduct) {
  const auto table = cyclotomic_table(105);
  for (int d = 1; d <= 105; ++d) {
    EXPECT_EQ(table[d], cyclotomic_by_mobius(d)) << d;
    EXPECT_EQ(table[d].degree(), phi_by_gcd(d));
  }
  // Phi_105 is the first with a coefficient of absolute value 2.
  EXPECT_EQ(table[105].coeff(7), -2);
}

TEST(CyclotomicProduct, Examples) {
  EXPECT_EQ(cyclotomic_product(2), (IntPolynomial{-1, 0, 1}));
  EXPECT_EQ(cyclotomic_product(3), (IntPolynomial{-1, -1, 0, 1, 1}));
  const IntPolynomial p = cyclotomic_product(3);
  EXPECT_EQ(-p.coeff(3), -1);
}

TEST(CyclotomicProduct, DegreeAndMertens) {
  for (int k = 1; k <= 60; ++k) {
    const IntPolynomial p = cyclotomic_product(k);
    long deg = 0;
    for (int d = 1; d <= k; ++d) deg += phi_by_gcd(d);
    ASSERT_EQ(p.degree(), deg);
    EXPECT_EQ(cyclotomic_product_degree(k), deg);
    EXPECT_EQ(p.leading(), 1);
    // Sum of roots = -a_{n-1}.
    EXPECT_EQ(-p.coeff(p.degree() - 1), mertens(k)) << k;
  }
}

TEST(Chebyshev, Examples) {
  EXPECT_EQ(chebyshev_t(0), (IntPolynomial{2}));
  EXPECT_EQ(chebyshev_t(1), (IntPolynomial{0, 1}));
  EXPECT_EQ(chebyshev_t(2), (IntPolynomial{-2, 0, 1}));
  EXPECT_EQ(chebyshev_t(3), (IntPolynomial{0, -3, 0, 1}));
}

TEST(Chebyshev, TraceAndPowerSum) {
  for (int n = 2; n <= 120; ++n) {
    const IntPolynomial t = chebyshev_t(n);
    EXPECT_EQ(t.leading(), 1);
    EXPECT_EQ(t.coeff(n - 1), 0);
    // Newton: p2 = e1^2 - 2 e2 with e1 = 0, e2 = a_{n-2}.
    EXPECT_EQ(-2 * t.coeff(n - 2), 2 * n);
  }
}

TEST(Chebyshev, CosineIdentity) {
  for (int n : {1, 2, 5, 17, 40}) {
    const IntPolynomial t = chebyshev_t(n);
    for (double th = 0.05; th < 3.1; th += 0.3) {
      EXPECT_NEAR(evaluate(t, {2 * std::cos(th), 0.0}).real(), 2 * std::cos(n * th), 1e-9 * std::pow(2.0, n));
    }
  }
}

TEST(TracePoly, Examples) {
  EXPECT_EQ(totally_positive_minpoly(3), (IntPolynomial{-1, 1}));
  EXPECT_EQ(totally_positive_minpoly(5), (IntPolynomial{1, -3, 1}));
  EXPECT_EQ(totally_positive_minpoly(7), (IntPolynomial{-1, 6, -5, 1}));
  EXPECT_THROW(totally_positive_minpoly(9), PreconditionError);
  EXPECT_THROW(totally_positive_minpoly(2), PreconditionError);
}

TEST(TracePoly, ExactChebyshevIdentity) {
  // With psi(y) = P(y + 2): psi(y)^2 (y - 2) = t_p(y) - 2.
  for (long p = 3; p <= 199; p += 2) {
    if (!is_prime(p)) continue;
    const IntPolynomial P = totally_positive_minpoly(p);
    ASSERT_EQ(P.degree(), (p - 1) / 2);
    EXPECT_EQ(-P.coeff(P.degree() - 1), p - 2);
    const IntPolynomial psi = shift(P, -2);
    EXPECT_EQ(psi * psi * (IntPolynomial{-2, 1}), chebyshev_t(static_cast<int>(p)) - (IntPolynomial{2})) << p;
  }
}

TEST(TracePoly, LowPrecisionIsRejected) {
  EXPECT_THROW(totally_positive_minpoly_at(199, 16), InsufficientPrecision);
  EXPECT_EQ(totally_positive_minpoly_at(199, 240), totally_positive_minpoly(199));
}

TEST(FamilySpecText, Parses) {
  FamilySpec s = parse_family("cycloprod:k=200");
  EXPECT_EQ(s.kind, FamilyKind::CyclotomicProduct);
  EXPECT_EQ(*s.parameter, 200);
  s = parse_family("trace:p=97", 2);
  EXPECT_EQ(s.kind, FamilyKind::TotallyPositiveMinPoly);
  EXPECT_EQ(s.shift, 2);
  EXPECT_FALSE(parse_family("chebyshev").parameter.has_value());
  s = parse_family("z^2-z-1");
  EXPECT_EQ(s.kind, FamilyKind::Custom);
  EXPECT_EQ(s.literal, (IntPolynomial{-1, -1, 1}));
}

TEST(FamilySpecText, Errors) {
  EXPECT_THROW(parse_family("trace:p=9"), PreconditionError);
  try {
    parse_family("chebyshev:n=1x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 14u);
  }
  EXPECT_THROW(parse_family("powm1:k=3"), ParseError);
}

TEST(FamilySweep, DegreeWindow) {
  const auto params = family_parameters(parse_family("cycloprod"), 55, 2000);
  ASSERT_FALSE(params.empty());
  EXPECT_EQ(params.front(), 13);
  EXPECT_EQ(params.back(), 80);
  for (long k : params) {
    const long n = cyclotomic_product_degree(static_cast<int>(k));
    EXPECT_GE(n, 55);
    EXPECT_LE(n, 2000);
  }
  const auto primes = family_parameters(parse_family("trace"), 30, 99);
  EXPECT_EQ(primes.front(), 61);
  EXPECT_EQ(primes.back(), 199);
}

TEST(FamilySweep, MembersCarryIdsAndShift) {
  const auto members = family_members(parse_family("shiftcheb", 0), 3, 4);
  ASSERT_EQ(members.size(), 2u);
  EXPECT_EQ(members[0].id, "shiftcheb:n=3");
  EXPECT_EQ(members[0].poly, shift(chebyshev_t(3), 2));
  const auto shifted = family_members(parse_family("chebyshev:n=2", 2), 0, 0);
  EXPECT_EQ(shifted[0].id, "chebyshev:n=2;shift=2");
  EXPECT_EQ(shifted[0].poly, (IntPolynomial{2, -4, 1}));
}
