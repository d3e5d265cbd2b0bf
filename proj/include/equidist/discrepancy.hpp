#pragma once

// Zero statistics and both sides of the discrepancy inequalities: the
// Erdos-Turan sector bound, the Lipschitz bounds on the disk and on
// segments, the energy bounds, and their corollaries for A_n and S_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "equidist/errors.hpp"
#include "equidist/families.hpp"
#include "equidist/intpoly.hpp"
#include "equidist/mahler.hpp"
#include "equidist/potential.hpp"
#include "equidist/rootfinder.hpp"

namespace equidist {

namespace detail {
inline constexpr double two_pi = 6.28318530717958647692;
inline constexpr double euler_e = 2.71828182845904523536;
inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();
}  // namespace detail

struct ZeroStats {
  int n = 0;
  Complex mean{0.0, 0.0};         // A_n
  Complex mean_square{0.0, 0.0};  // S_n
  std::vector<Complex> moments;   // moments[m] = (1/n) sum z^m, m = 0..8
  std::vector<int> sector_counts;
  int boundary_roots = 0;  // roots snapped onto a bin boundary
};

namespace detail {

/// Bin of arg z among `bins` half-open sectors [2 pi j / bins, 2 pi (j+1) / bins).
/// Arguments within the root's angular uncertainty of a boundary are snapped
/// onto it. arg 0 is used for z = 0.
inline int sector_of(Complex z, double radius, int bins, bool& snapped) {
  snapped = false;
  const double m = std::abs(z);
  if (m == 0.0) return 0;
  double a = std::atan2(z.imag(), z.real());
  if (a < 0.0) a += two_pi;
  const double width = two_pi / bins;
  const double t = a / width;
  const double j = std::round(t);
  const double tol = std::max(radius / m, 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, a));
  if (std::abs(a - j * width) <= tol) {
    snapped = true;
    return static_cast<int>(j) % bins;
  }
  return std::min(static_cast<int>(std::floor(t)), bins - 1);
}

}  // namespace detail

inline ZeroStats zero_stats(const RootSet& rs, int sector_bins = 1) {
  if (rs.roots.empty()) throw PreconditionError("zero statistics need at least one root");
  if (sector_bins < 1) throw PreconditionError("sector_bins must be positive");
  ZeroStats s;
  s.n = static_cast<int>(rs.roots.size());
  std::vector<std::complex<long double>> acc(9, 0.0L);
  s.sector_counts.assign(static_cast<std::size_t>(sector_bins), 0);
  for (std::size_t k = 0; k < rs.roots.size(); ++k) {
    const std::complex<long double> z(rs.roots[k].real(), rs.roots[k].imag());
    std::complex<long double> w = 1.0L;
    for (int m = 0; m <= 8; ++m) {
      acc[m] += w;
      w *= z;
    }
    bool snapped = false;
    ++s.sector_counts[detail::sector_of(rs.roots[k], rs.radii[k], sector_bins, snapped)];
    s.boundary_roots += snapped;
  }
  for (const auto& a : acc) s.moments.emplace_back(static_cast<double>(a.real() / s.n), static_cast<double>(a.imag() / s.n));
  s.mean = s.moments[1];
  s.mean_square = s.moments[2];
  return s;
}

/// Compactly supported real test function with its analytic constants.
struct TestFunction {
  std::string name;
  std::function<double(Complex)> evaluate;
  double lipschitz_A = 0.0;
  double support_radius_R = 0.0;
  Complex support_center{0.0, 0.0};
  double dirichlet_bound = 0.0;  // upper bound on D[phi]
  std::function<double(double)> modulus;  // omega_phi(r)

  double operator()(Complex z) const { return evaluate(z); }
  double omega(double r) const { return modulus ? modulus(r) : lipschitz_A * r; }
};

namespace detail {

inline TestFunction make_test_function(std::string name, std::function<double(Complex)> f, double A, double R,
                                       Complex center, double D) {
  TestFunction t;
  t.name = std::move(name);
  t.evaluate = std::move(f);
  t.lipschitz_A = A;
  t.support_radius_R = R;
  t.support_center = center;
  t.dirichlet_bound = D;
  t.modulus = [A](double r) { return A * r; };
  return t;
}

}  // namespace detail

/// Re z on the disk, Re z (1 - log|z|) on 1 <= |z| <= e, zero beyond.
inline TestFunction cor32_function() {
  const double A = std::sqrt(5.0) / 2.0, R = detail::euler_e;
  return detail::make_test_function(
      "cor32",
      [](Complex z) {
        const double r = std::abs(z);
        if (r <= 1.0) return z.real();
        if (r <= detail::euler_e) return z.real() * (1.0 - std::log(r));
        return 0.0;
      },
      A, R, 0.0, detail::two_pi * R * R * A * A);
}

/// log|z - w| on the disk, (1 - log|w|) log|1 - conj(z) w| on 1 <= |w| <= e,
/// zero beyond; requires |z| > 1. With delta = |z| - 1 and
/// L = max(-log delta, log(1 + e|z|)):
///   A = |z| / delta + L,
///   D <= 2 pi log((delta + 2) / delta) + 4 pi L^2 + 4 pi log((e + 1)|z| / delta).
inline TestFunction cor33_function(Complex z) {
  const double mz = std::abs(z);
  if (!(mz > 1.0) || !std::isfinite(mz)) throw PreconditionError("cor33 requires |z| > 1");
  const double delta = mz - 1.0;
  const double L = std::max(-std::log(delta), std::log1p(detail::euler_e * mz));
  const double A = mz / delta + L;
  const double pi = detail::two_pi / 2.0;
  const double D = 2.0 * pi * std::log((delta + 2.0) / delta) + 4.0 * pi * L * L +
                   4.0 * pi * std::log((detail::euler_e + 1.0) * mz / delta);
  return detail::make_test_function(
      "cor33:z=" + detail::format_complex(z),
      [z](Complex w) {
        const double r = std::abs(w);
        if (r <= 1.0) return std::log(std::abs(z - w));
        if (r <= detail::euler_e) return (1.0 - std::log(r)) * std::log(std::abs(1.0 - std::conj(z) * w));
        return 0.0;
      },
      A, detail::euler_e, 0.0, D);
}

/// Trapezoid in x over [a-1, b+1] times the tent 1 - |y|, equal to
/// x (1 - |y|) over [a, b]; requires b - a = 4.
inline TestFunction cor35_function(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || std::abs((b - a) - 4.0) > 1e-12)
    throw PreconditionError("cor35 requires b - a = 4");
  const double m = std::max(std::abs(a), std::abs(b));
  return detail::make_test_function(
      "cor35:a=" + detail::format_real(a) + ",b=" + detail::format_real(b),
      [a, b](Complex z) {
        const double x = z.real(), t = 1.0 - std::abs(z.imag());
        if (t <= 0.0) return 0.0;
        if (x >= a && x <= b) return x * t;
        if (x >= a - 1.0 && x < a) return a * t * (x + 1.0 - a);
        if (x > b && x <= b + 1.0) return b * t * (b + 1.0 - x);
        return 0.0;
      },
      std::sqrt(2.0) * m, std::sqrt(10.0), 0.5 * (a + b), 24.0 * m * m);
}

/// x^2 (1 - |y|) on |x| <= 2, 4 (1 - |y|)(3 - |x|) on 2 <= |x| <= 3.
inline TestFunction cor36_function() {
  return detail::make_test_function(
      "cor36",
      [](Complex z) {
        const double x = std::abs(z.real()), t = 1.0 - std::abs(z.imag());
        if (t <= 0.0 || x >= 3.0) return 0.0;
        if (x <= 2.0) return z.real() * z.real() * t;
        return 4.0 * t * (3.0 - x);
      },
      4.0 * std::sqrt(2.0), std::sqrt(10.0), 0.0, 384.0);
}

/// (1 - |y|) log|z - x| on |x| <= 2, tapering linearly to zero on
/// 2 <= |x| <= 3; requires z off [-2, 2]. With delta = dist(z, [-2, 2]) and
/// L = max(|log delta|, log(|z| + 2)):
///   A = sqrt(max(1 / delta, L)^2 + L^2),  D <= 8 / delta + 16 L^2.
inline TestFunction cor37_function(Complex z) {
  const double delta = distance_to(Domain::segment(-2.0, 2.0), z);
  if (!(delta > 0.0) || !std::isfinite(std::abs(z))) throw PreconditionError("cor37 requires z off [-2, 2]");
  const double L = std::max(std::abs(std::log(delta)), std::log(std::abs(z) + 2.0));
  const double g = std::max(1.0 / delta, L);
  return detail::make_test_function(
      "cor37:z=" + detail::format_complex(z),
      [z](Complex w) {
        const double x = w.real(), t = 1.0 - std::abs(w.imag());
        if (t <= 0.0 || std::abs(x) >= 3.0) return 0.0;
        if (std::abs(x) <= 2.0) return t * std::log(std::abs(z - x));
        if (x < 0.0) return (x + 3.0) * t * std::log(std::abs(z + 2.0));
        return (3.0 - x) * t * std::log(std::abs(z - 2.0));
      },
      std::sqrt(g * g + L * L), std::sqrt(10.0), 0.0, 8.0 / delta + 16.0 * L * L);
}

/// Parses "cor32", "cor36", "cor35:a=0,b=4", "cor33:z=1.01", "cor37:z=2.001".
/// Without z, cor33 and cor37 take the level-curve point for degree n:
/// z = 1 + 1/n, and the real point with g_[-2,2](z) = 1/n.
inline TestFunction builtin_test_function(const std::string& text, int n = 0) {
  detail::Cursor c{text};
  auto level_z = [&](bool disk) -> Complex {
    if (n < 1) throw PreconditionError(text + " needs z or a degree");
    if (disk) return 1.0 + 1.0 / n;
    return green_level_point(Domain::segment(-2.0, 2.0), 1.0 / n);
  };
  if (text == "cor32") return cor32_function();
  if (text == "cor36") return cor36_function();
  if (text == "cor33" || text == "cor37") return text == "cor33" ? cor33_function(level_z(true)) : cor37_function(level_z(false));
  if (text.rfind("cor33:", 0) == 0 || text.rfind("cor37:", 0) == 0) {
    c.pos = 6;
    c.expect("z=");
    const Complex z = c.complex_number();
    if (!c.done()) c.fail("unexpected trailing input");
    return text[4] == '3' ? cor33_function(z) : cor37_function(z);
  }
  if (text.rfind("cor35", 0) == 0) {
    c.pos = 5;
    if (c.done()) return cor35_function(-2.0, 2.0);
    c.expect(":a=");
    const double a = c.number();
    c.expect(",b=");
    const double b = c.number();
    if (!c.done()) c.fail("unexpected trailing input");
    return cor35_function(a, b);
  }
  c.fail("unknown test function");
}

/// Midpoint-cell approximation of D[phi] = iint phi_x^2 + phi_y^2 over the
/// support's bounding square, with central differences across each cell.
inline double dirichlet_integral(const TestFunction& phi, double grid_step) {
  if (!(grid_step > 0.0)) throw PreconditionError("grid_step must be positive");
  const double R = phi.support_radius_R;
  const int m = std::max(1, static_cast<int>(std::ceil(2.0 * R / grid_step)));
  const double h = 2.0 * R / m;
  const double x0 = phi.support_center.real() - R, y0 = phi.support_center.imag() - R;
  long double sum = 0.0L;
  for (int i = 0; i < m; ++i) {
    const double x = x0 + (i + 0.5) * h;
    for (int j = 0; j < m; ++j) {
      const double y = y0 + (j + 0.5) * h;
      const double gx = (phi({x + 0.5 * h, y}) - phi({x - 0.5 * h, y})) / h;
      const double gy = (phi({x, y + 0.5 * h}) - phi({x, y - 0.5 * h})) / h;
      sum += gx * gx + gy * gy;
    }
  }
  return static_cast<double>(sum) * h * h;
}

enum class TheoremTag { ET31, THM31, THM34, THM52, THM54_SEG, COR32, COR35, COR36 };

inline std::string tag_name(TheoremTag t) {
  switch (t) {
    case TheoremTag::ET31: return "et31";
    case TheoremTag::THM31: return "thm31";
    case TheoremTag::THM34: return "thm34";
    case TheoremTag::THM52: return "thm52";
    case TheoremTag::THM54_SEG: return "thm54_seg";
    case TheoremTag::COR32: return "cor32";
    case TheoremTag::COR35: return "cor35";
    case TheoremTag::COR36: return "cor36";
  }
  return "?";
}

/// Terms under the square root of the energy bound, and its outer pieces.
struct EnergyTerms {
  double omega = 0.0;              // omega_phi(r)
  double dirichlet = 0.0;          // D[phi] bound
  double measure_term = 0.0;       // (2/n) log M or log M_E
  double discriminant_term = 0.0;  // -log|a_n^2 Delta| / n^2
  double radius_term = 0.0;        // -log(r) / n
  double green_term = 0.0;         // 4r, or 2 max_{d_E <= 2r} g_E
  double energy() const { return std::max(0.0, measure_term + discriminant_term + radius_term + green_term); }
};

/// One inequality instance. rhs is NaN and pass false when the theorem's
/// degree threshold does not hold.
struct DiscrepancyReport {
  TheoremTag tag = TheoremTag::THM31;
  double lhs = 0.0;
  double lhs_uncertainty = 0.0;
  double rhs = detail::nan;
  int n = 0;
  double log_measure = detail::nan;  // log of the M-value used
  double r = detail::nan;
  double A = detail::nan;
  double R = detail::nan;
  std::string domain;
  std::string test_function;
  EnergyTerms energy;
  bool threshold_met = true;
  bool pass = false;
  std::string note;

  std::string verdict() const { return !threshold_met ? "threshold not met" : pass ? "pass" : "fail"; }
};

namespace detail {

inline void decide(DiscrepancyReport& rep) {
  rep.pass = rep.threshold_met && std::isfinite(rep.lhs) && rep.lhs <= rep.rhs + rep.lhs_uncertainty;
}

inline void require_simple(const IntPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("polynomial must have degree >= 1");
  if (!has_simple_zeros(p)) throw PreconditionError("multiple zeros: polynomial must have simple zeros");
}

inline void require_roots(const IntPolynomial& p, const RootSet& rs) {
  if (static_cast<int>(rs.roots.size()) != p.degree()) throw PreconditionError("root set does not match the degree");
}

inline double equilibrium_integral(const Domain& E, const TestFunction& phi) {
  QuadratureOptions q;
  q.tolerance = 1e-11;
  q.max_nodes = 1 << 20;
  return equilibrium_mean(E, phi.evaluate, q);
}

/// |(1/n) sum phi(z_k) - int phi d mu_E|
inline double phi_discrepancy(const RootSet& rs, const TestFunction& phi, const Domain& E) {
  long double s = 0.0L;
  for (const Complex& z : rs.roots) s += phi(z);
  return std::abs(static_cast<double>(s / rs.roots.size()) - equilibrium_integral(E, phi));
}

inline DiscrepancyReport base_report(TheoremTag tag, const IntPolynomial& p, const RootSet& rs, const Domain& E) {
  require_roots(p, rs);
  DiscrepancyReport r;
  r.tag = tag;
  r.n = p.degree();
  r.domain = describe(E);
  return r;
}

/// Upper bound on log2|disc| from certified roots:
/// (2n-2) log2|a_n| + 2 sum_{i<j} log2(|z_i - z_j| + rho_i + rho_j),
/// and the matching lower bound (-inf when two discs overlap).
inline std::pair<double, double> discriminant_log2_bounds(const IntPolynomial& p, const RootSet& rs) {
  const std::size_t n = rs.roots.size();
  const double lead = bigint_log2(p.leading());
  long double hi = (2.0L * n - 2.0L) * lead, lo = hi;
  bool overlap = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(rs.roots[i] - rs.roots[j]), slack = rs.radii[i] + rs.radii[j];
      hi += 2.0L * std::log2(d + slack);
      if (d > slack) {
        lo += 2.0L * std::log2(d - slack);
      } else {
        overlap = true;
      }
    }
  }
  return {overlap ? -std::numeric_limits<double>::infinity() : static_cast<double>(lo), static_cast<double>(hi)};
}

}  // namespace detail

/// Exact discriminant, with the CRT prime count taken from the root
/// bound plus 64 bits. The result is checked against the root-derived
/// range and recomputed under the coefficient bound if it falls outside.
inline BigInt discriminant_with_roots(const IntPolynomial& p, const RootSet& rs) {
  if (p.degree() < 48) return discriminant(p);
  const auto [lo, hi] = detail::discriminant_log2_bounds(p, rs);
  BigInt d = discriminant(p, hi + 64.0);
  if (d != 0) {
    const double l2 = detail::bigint_log2(d);
    if (l2 <= hi + 1.0 && l2 >= lo - 1.0) return d;
  }
  return discriminant(p);
}

/// The Erdos-Turan right side 16 sqrt((1/n) log(||p||_D / sqrt|a_0 a_n|)),
/// given log ||p||_D.
inline double erdos_turan_rhs(const IntPolynomial& p, double log_sup_norm) {
  if (p.degree() < 1) throw PreconditionError("degree must be >= 1");
  if (p.coeff(0) == 0) throw PreconditionError("zero constant term");
  const double t = log_sup_norm - 0.5 * (log_abs(p.coeff(0)).value + log_abs(p.leading()).value);
  return 16.0 * std::sqrt(std::max(0.0, t) / p.degree());
}

/// Largest sector deviation |N/n - (phi2 - phi1)/2pi| over all sectors
/// [2 pi i / bins, 2 pi j / bins), against the Erdos-Turan bound with the
/// evaluated lower estimate of ||p||_D. Roots snapped to a boundary count
/// toward lhs_uncertainty as 1/n each.
inline DiscrepancyReport et31_report(const IntPolynomial& p, const RootSet& rs, int bins) {
  DiscrepancyReport r = detail::base_report(TheoremTag::ET31, p, rs, Domain::unit_disk());
  const ZeroStats s = zero_stats(rs, bins);
  std::vector<int> prefix(static_cast<std::size_t>(bins) + 1, 0);
  for (int j = 0; j < bins; ++j) prefix[j + 1] = prefix[j] + s.sector_counts[j];
  double worst = 0.0;
  for (int i = 0; i < bins; ++i) {
    for (int j = i + 1; j <= bins; ++j) {
      const double dev = static_cast<double>(prefix[j] - prefix[i]) / r.n - static_cast<double>(j - i) / bins;
      worst = std::max(worst, std::abs(dev));
    }
  }
  r.lhs = worst;
  r.lhs_uncertainty = static_cast<double>(s.boundary_roots) / r.n;
  const SupNorm sup = sup_norm(p, Domain::unit_disk());
  r.log_measure = sup.log_value;
  r.rhs = erdos_turan_rhs(p, sup.log_value);
  r.note = std::to_string(bins) + " sector bins";
  detail::decide(r);
  return r;
}

/// A(2R+1) sqrt(log max(n, M(p)) / n) for n >= 55. The support radius is
/// measured from the origin: R = |center| + R_phi.
inline DiscrepancyReport thm31_report(const IntPolynomial& p, const RootSet& rs, const TestFunction& phi) {
  const Domain E = Domain::unit_disk();
  DiscrepancyReport r = detail::base_report(TheoremTag::THM31, p, rs, E);
  detail::require_simple(p);
  r.test_function = phi.name;
  r.A = phi.lipschitz_A;
  r.R = std::abs(phi.support_center) + phi.support_radius_R;
  r.log_measure = log_mahler_measure(p, rs);
  r.lhs = detail::phi_discrepancy(rs, phi, E);
  r.lhs_uncertainty = r.A * rs.mean_radius();
  r.threshold_met = r.n >= 55;
  if (r.threshold_met) {
    r.rhs = r.A * (2.0 * r.R + 1.0) * std::sqrt(std::max(std::log(r.n), r.log_measure) / r.n);
  } else {
    r.note = "threshold not met: n < 55";
  }
  detail::decide(r);
  return r;
}

/// A(3R+1) sqrt(log max(n, M_[a,b](p)) / n) for n >= 25, with R measured
/// from the midpoint a + 2.
inline DiscrepancyReport thm34_report(const IntPolynomial& p, const RootSet& rs, const TestFunction& phi,
                                      const Domain& E) {
  if (E.kind != DomainKind::Segment) throw PreconditionError("thm34 requires a segment domain");
  DiscrepancyReport r = detail::base_report(TheoremTag::THM34, p, rs, E);
  detail::require_simple(p);
  r.test_function = phi.name;
  r.A = phi.lipschitz_A;
  r.R = std::abs(phi.support_center - E.center()) + phi.support_radius_R;
  r.log_measure = log_generalized_mahler(p, rs, E);
  r.lhs = detail::phi_discrepancy(rs, phi, E);
  r.lhs_uncertainty = r.A * rs.mean_radius();
  r.threshold_met = r.n >= 25;
  if (r.threshold_met) {
    r.rhs = r.A * (3.0 * r.R + 1.0) * std::sqrt(std::max(std::log(r.n), r.log_measure) / r.n);
  } else {
    r.note = "threshold not met: n < 25";
  }
  detail::decide(r);
  return r;
}

/// Energy bound for any n and r > 0:
///   omega(r) + sqrt(D/2pi) sqrt((2/n) log M - log|a_n^2 Delta|/n^2 - log(r)/n + G)
/// with G = 4r on the disk and G = 2 g_E(b + 2r) on a segment, where M is
/// M_E. Default r is 1/n on the disk and 1/n^2 on a segment. A disk with
/// adjoined points shares mu_D and g_D, so it takes the disk form with the
/// Mahler measure.
inline DiscrepancyReport energy_report(const IntPolynomial& p, const RootSet& rs, const TestFunction& phi,
                                       const Domain& E, std::optional<double> radius = {}) {
  const bool seg = E.kind == DomainKind::Segment;
  DiscrepancyReport rep = detail::base_report(seg ? TheoremTag::THM54_SEG : TheoremTag::THM52, p, rs, E);
  const int n = rep.n;
  const double r = radius ? *radius : (seg ? 1.0 / (static_cast<double>(n) * n) : 1.0 / n);
  if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("r must be a positive real");
  BigInt disc = n >= 2 ? discriminant_with_roots(p, rs) : BigInt(1);
  if (disc == 0) throw PreconditionError("multiple zeros: energy bound inapplicable");
  rep.test_function = phi.name;
  rep.r = r;
  rep.A = phi.lipschitz_A;
  rep.R = phi.support_radius_R;
  rep.log_measure = seg ? log_generalized_mahler(p, rs, E) : log_mahler_measure(p, rs);
  EnergyTerms& t = rep.energy;
  t.omega = phi.omega(r);
  t.dirichlet = phi.dirichlet_bound;
  t.measure_term = 2.0 * rep.log_measure / n;
  t.discriminant_term = -(2.0 * log_abs(p.leading()).value + log_abs(disc).value) / (static_cast<double>(n) * n);
  t.radius_term = -std::log(r) / n;
  t.green_term = seg ? 2.0 * green_max_within(E, 2.0 * r) : 4.0 * r;
  rep.rhs = t.omega + std::sqrt(t.dirichlet / detail::two_pi) * std::sqrt(t.energy());
  rep.lhs = detail::phi_discrepancy(rs, phi, E);
  rep.lhs_uncertainty = rep.A * rs.mean_radius();
  if (E.kind == DomainKind::DiskPlusPoints) rep.note = "disk equilibrium data";
  detail::decide(rep);
  return rep;
}

/// |A_n| <= 8 sqrt(log n / n) for n >= max(M, 55).
inline DiscrepancyReport cor32_report(const IntPolynomial& p, const RootSet& rs) {
  DiscrepancyReport r = detail::base_report(TheoremTag::COR32, p, rs, Domain::unit_disk());
  detail::require_simple(p);
  const ZeroStats s = zero_stats(rs);
  r.lhs = std::abs(s.mean);
  r.lhs_uncertainty = rs.mean_radius();
  r.log_measure = log_mahler_measure(p, rs);
  r.threshold_met = r.n >= 55 && r.log_measure <= std::log(r.n);
  if (r.threshold_met) {
    r.rhs = 8.0 * std::sqrt(std::log(r.n) / r.n);
  } else {
    r.note = r.n < 55 ? "threshold not met: n < 55" : "threshold not met: n < M";
  }
  detail::decide(r);
  return r;
}

/// |A_n - (a+b)/2| <= 6 max(|a|,|b|) sqrt(log n / n) for n >= max(M_E, 25).
inline DiscrepancyReport cor35_report(const IntPolynomial& p, const RootSet& rs, const Domain& E) {
  if (E.kind != DomainKind::Segment) throw PreconditionError("cor35 requires a segment domain");
  DiscrepancyReport r = detail::base_report(TheoremTag::COR35, p, rs, E);
  detail::require_simple(p);
  const ZeroStats s = zero_stats(rs);
  r.lhs = std::abs(s.mean - E.center());
  r.lhs_uncertainty = rs.mean_radius();
  r.log_measure = log_generalized_mahler(p, rs, E);
  r.threshold_met = r.n >= 25 && r.log_measure <= std::log(r.n);
  if (r.threshold_met) {
    r.rhs = 6.0 * std::max(std::abs(E.a), std::abs(E.b)) * std::sqrt(std::log(r.n) / r.n);
  } else {
    r.note = r.n < 25 ? "threshold not met: n < 25" : "threshold not met: n < M";
  }
  detail::decide(r);
  return r;
}

/// |S_n - 2| <= 24 sqrt(log n / n) on [-2, 2] for n >= max(M, 25).
inline DiscrepancyReport cor36_report(const IntPolynomial& p, const RootSet& rs) {
  const Domain E = Domain::segment(-2.0, 2.0);
  DiscrepancyReport r = detail::base_report(TheoremTag::COR36, p, rs, E);
  detail::require_simple(p);
  const ZeroStats s = zero_stats(rs);
  r.lhs = std::abs(s.mean_square - 2.0);
  double unc = 0.0;
  for (std::size_t k = 0; k < rs.roots.size(); ++k) unc += (2.0 * std::abs(rs.roots[k]) + rs.radii[k]) * rs.radii[k];
  r.lhs_uncertainty = unc / r.n;
  r.log_measure = log_generalized_mahler(p, rs, E);
  r.threshold_met = r.n >= 25 && r.log_measure <= std::log(r.n);
  if (r.threshold_met) {
    r.rhs = 24.0 * std::sqrt(std::log(r.n) / r.n);
  } else {
    r.note = r.n < 25 ? "threshold not met: n < 25" : "threshold not met: n < M";
  }
  detail::decide(r);
  return r;
}

struct GrowthRow {
  std::string id;
  int n = 0;
  double log_sup = 0.0;    // evaluated lower estimate of log ||p||_E
  double log_upper = 0.0;  // with the sampling gap
  double ratio = 0.0;      // log_sup / (sqrt(n) log n)
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  std::vector<std::string> skipped;  // members with multiple zeros or n < 2
  double max_ratio() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.ratio);
    return m;
  }
};

/// log ||p||_E against sqrt(n) log n over a family; the ratio column is an
/// empirical constant and nothing is asserted about it.
inline GrowthTable growth_report(const FamilySpec& family, const Domain& E, long n_min, long n_max) {
  GrowthTable t;
  for (const FamilyMember& m : family_members(family, n_min, n_max)) {
    const int n = m.poly.degree();
    if (n < 2 || !has_simple_zeros(m.poly)) {
      t.skipped.push_back(m.id);
      continue;
    }
    const SupNorm s = sup_norm(m.poly, E);
    t.rows.push_back({m.id, n, s.log_value, s.log_upper, s.log_value / (std::sqrt(static_cast<double>(n)) * std::log(n))});
  }
  return t;
}

}  // namespace equidist
