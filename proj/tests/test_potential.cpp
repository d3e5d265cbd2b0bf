#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "equidist/potential.hpp"

using namespace equidist;

namespace {

constexpr double pi = 3.14159265358979323846;

// 2^m (2m-1)!! / m! as an exact rational reduced to double.
double segment_moment(int m) {
  mpq_class v(1);
  for (int k = 1; k <= m; ++k) v *= mpq_class(2 * (2 * k - 1), k);
  return v.get_d();
}

// Arcsine integral by x = c + 2 cos t and composite Simpson in t.
double arcsine_simpson(double c, const std::function<double(double)>& f, int steps = 20000) {
  const double h = pi / steps;
  double s = f(c + 2.0) + f(c - 2.0);
  for (int k = 1; k < steps; ++k) s += (k % 2 ? 4.0 : 2.0) * f(c + 2.0 * std::cos(k * h));
  return s * h / 3.0 / pi;
}

}  // namespace

TEST(Green, Examples) {
  EXPECT_NEAR(green(Domain::unit_disk(), 2.0), std::log(2.0), 1e-15);
  EXPECT_EQ(green(Domain::segment(-2, 2), 0.0), 0.0);
  for (double e : {1e-12, 1e-8, 1e-4, 0.04, 1.0}) {
    const double eps = (2.0 + e) - 2.0;
    const double want = std::log(1.0 + (eps + std::sqrt(4.0 * eps + eps * eps)) / 2.0);
    EXPECT_NEAR(green(Domain::segment(-2, 2), 2.0 + eps), want, 1e-15 * std::max(1.0, want) + 1e-16);
  }
  EXPECT_NEAR(green(Domain::disk_plus_points({2.0}), 2.0), std::log(2.0), 1e-15);
}

TEST(Green, SegmentMatchesInverseCosh) {
  // g = |Re acosh(w/2)| for the segment [-2, 2].
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  const Domain E = Domain::segment(0, 4);
  for (int i = 0; i < 2000; ++i) {
    const Complex z(u(rng), u(rng));
    const double want = std::abs(std::acosh((z - 2.0) / 2.0).real());
    EXPECT_NEAR(green(E, z), want, 1e-12) << z;
  }
}

TEST(Green, NonnegativeAndZeroOnE) {
  const Domain disk = Domain::unit_disk(), seg = Domain::segment(-2, 2);
  for (int k = 0; k < 256; ++k) {
    const double t = 2.0 * pi * k / 256.0;
    const double r = (k % 2) ? 1.0 : (k % 7) / 7.0;
    EXPECT_EQ(green(disk, std::polar(r, t)), 0.0);
    EXPECT_EQ(green(seg, -2.0 + 4.0 * k / 255.0), 0.0);
  }
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex z(g(rng), g(rng));
    EXPECT_GE(green(disk, z), 0.0);
    EXPECT_GE(green(seg, z), 0.0);
  }
}

TEST(Green, LogarithmicGrowthAtInfinity) {
  for (double t : {0.0, 0.7, 1.6, 3.0, 4.4}) {
    const Complex z = std::polar(1e6, t);
    EXPECT_LT(std::abs(green(Domain::unit_disk(), z) - std::log(1e6)), 1e-6);
    EXPECT_LT(std::abs(green(Domain::segment(-2, 2), z) - std::log(1e6)), 1e-6);
    EXPECT_LT(std::abs(green(Domain::segment(0, 4), z) - std::log(std::abs(z - 2.0))), 1e-6);
  }
}

TEST(Green, EndpointEstimate) {
  // g(2 + eps) <= 1.11 sqrt(eps) for 0 < eps <= 0.04.
  const Domain seg = Domain::segment(-2, 2);
  for (double le = -16.0; le <= std::log10(0.04) + 1e-12; le += 0.05) {
    const double eps = (2.0 + std::min(std::pow(10.0, le), 0.04)) - 2.0;
    EXPECT_LE(green(seg, 2.0 + eps), 1.11 * std::sqrt(eps)) << eps;
  }
}

TEST(Distance, Examples) {
  EXPECT_EQ(distance_to(Domain::unit_disk(), 2.0), 1.0);
  EXPECT_NEAR(distance_to(Domain::segment(-2, 2), Complex(3, 4)), std::sqrt(17.0), 1e-15);
  EXPECT_EQ(distance_to(Domain::segment(-2, 2), 1.0), 0.0);
  EXPECT_NEAR(distance_to(Domain::disk_plus_points({2.0}), 2.1), 0.1, 1e-15);
  EXPECT_NEAR(distance_to(Domain::disk_plus_points({3.0}), 1.5), 0.5, 1e-15);
}

TEST(LevelPoint, Examples) {
  EXPECT_NEAR(green_level_point(Domain::unit_disk(), std::log(2.0)).real(), 2.0, 1e-15);
  EXPECT_EQ(green_level_point(Domain::segment(-2, 2), 0.0), Complex(2.0, 0.0));
  const double c = green(Domain::segment(-2, 2), 2.04);
  EXPECT_LE(c, 0.222);
  EXPECT_NEAR(green_level_point(Domain::segment(-2, 2), c).real(), 2.04, 1e-12);
}

TEST(LevelPoint, MatchesCoshInverse) {
  // g(b + eps) = c  <=>  eps = 2 (cosh c - 1) = 4 sinh(c/2)^2
  const Domain seg = Domain::segment(0, 4);
  for (double c : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0}) {
    const Complex z = green_level_point(seg, c);
    EXPECT_NEAR(z.real() - 4.0, 4.0 * std::pow(std::sinh(c / 2), 2), 1e-12 * std::max(1.0, z.real()));
    if (c >= 1e-3) {
      EXPECT_NEAR(green(seg, z), c, 1e-10);
    }
  }
  EXPECT_THROW(green_level_point(seg, -1.0), PreconditionError);
}

TEST(GreenMaxWithin, EndpointIsTheMaximum) {
  const Domain seg = Domain::segment(-2, 2);
  for (double d : {1e-4, 0.01, 0.3, 2.0}) {
    const double top = green_max_within(seg, d);
    EXPECT_DOUBLE_EQ(top, green(seg, 2.0 + d));
    // Sample the stadium boundary {d_E = d}.
    for (int k = 0; k <= 400; ++k) {
      const double x = -2.0 + 4.0 * k / 400.0;
      EXPECT_LE(green(seg, Complex(x, d)), top + 1e-15);
      const double t = pi * k / 400.0 - pi / 2;
      EXPECT_LE(green(seg, 2.0 + std::polar(d, t)), top + 1e-15);
    }
  }
  EXPECT_DOUBLE_EQ(green_max_within(Domain::disk_plus_points({3.0}), 0.1), std::log(3.1));
}

TEST(Equilibrium, SegmentMoments) {
  EXPECT_NEAR(equilibrium_mean(Domain::segment(-2, 2), [](Complex z) { return std::norm(z); }), 2.0, 2e-10);
  for (int m = 1; m <= 8; ++m) {
    const double want = segment_moment(m);
    const double got = equilibrium_mean(Domain::segment(0, 4), [m](Complex z) { return std::pow(z.real(), m); });
    EXPECT_NEAR(got / want, 1.0, 1e-10) << m;
    const double simpson = arcsine_simpson(2.0, [m](double x) { return std::pow(x, m); });
    EXPECT_NEAR(simpson / want, 1.0, 1e-9) << m;
  }
  EXPECT_DOUBLE_EQ(segment_moment(2), 6.0);
  EXPECT_DOUBLE_EQ(segment_moment(8), 12870.0);
}

TEST(Equilibrium, DiskAndConstants) {
  for (int m = 1; m <= 12; ++m) {
    EXPECT_NEAR(equilibrium_mean(Domain::unit_disk(), [m](Complex z) { return std::pow(z, m).real(); }), 0.0, 1e-14);
  }
  for (const Domain& E : {Domain::unit_disk(), Domain::segment(-2, 2), Domain::segment(7, 11),
                          Domain::disk_plus_points({2.0})}) {
    EXPECT_NEAR(equilibrium_mean(E, [](Complex) { return 1.0; }), 1.0, 1e-14);
  }
}

TEST(Equilibrium, OddFunctionsVanishOnSymmetricSegment) {
  const Domain seg = Domain::segment(-2, 2);
  EXPECT_NEAR(equilibrium_mean(seg, [](Complex z) { return std::pow(z.real(), 5); }), 0.0, 1e-12);
  EXPECT_NEAR(equilibrium_mean(seg, [](Complex z) { return std::sin(3.0 * z.real()); }), 0.0, 1e-12);
  EXPECT_NEAR(equilibrium_mean(seg, [](Complex z) { return z.real() * std::exp(z.real() * z.real()); }), 0.0, 1e-12);
}

TEST(Equilibrium, NonSmoothIntegrandAgainstSimpson) {
  const double got = equilibrium_mean(Domain::segment(-2, 2), [](Complex z) { return std::exp(z.real()); });
  // I_0(2) = sum 1 / (k!)^2
  double want = 0.0, term = 1.0;
  for (int k = 0; k < 30; ++k) {
    want += term;
    term /= (k + 1.0) * (k + 1.0);
  }
  EXPECT_NEAR(got, want, 1e-13);
}

TEST(Equilibrium, NonConvergenceCarriesEstimates) {
  QuadratureOptions opt;
  opt.max_nodes = 256;
  try {
    equilibrium_mean(Domain::unit_disk(), [](Complex z) { return std::log(std::abs(z - 1.0000001)); }, opt);
    FAIL();
  } catch (const QuadratureError& e) {
    EXPECT_NE(e.previous(), e.last());
    EXPECT_NE(std::string(e.what()).find("last estimates"), std::string::npos);
  }
}

TEST(DomainText, ParsesAndDescribes) {
  EXPECT_EQ(parse_domain("disk").kind, DomainKind::UnitDisk);
  const Domain s = parse_domain("segment:a=0,b=4");
  EXPECT_EQ(s.kind, DomainKind::Segment);
  EXPECT_EQ(s.center(), 2.0);
  EXPECT_EQ(describe(s), "segment:a=0,b=4");
  EXPECT_EQ(describe(parse_domain("segment:a=-2,b=2")), "segment:a=-2,b=2");
  const Domain d = parse_domain("diskplus:points=2;-3;1+2i;-2.5i");
  ASSERT_EQ(d.points.size(), 4u);
  EXPECT_EQ(d.points[2], Complex(1, 2));
  EXPECT_EQ(d.points[3], Complex(0, -2.5));
  EXPECT_EQ(describe(d), "diskplus:points=2;-3;1+2i;-2.5i");
  EXPECT_EQ(parse_domain(describe(d)).points, d.points);
}

TEST(DomainText, Rejects) {
  EXPECT_THROW(parse_domain("segment:a=0,b=3"), PreconditionError);
  EXPECT_THROW(parse_domain("diskplus:points=0.5"), PreconditionError);
  EXPECT_THROW(parse_domain("diskplus:points=1"), PreconditionError);
  try {
    parse_domain("segment:a=0;b=4");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 12u);
  }
  EXPECT_THROW(parse_domain("annulus"), ParseError);
  EXPECT_THROW(parse_domain("diskplus:points=2;"), ParseError);
}
