#pragma once

// Capacity-one compact sets with closed-form Green functions and
// equilibrium measures: the unit disk, segments of length 4, and the disk
// with finitely many exterior points adjoined.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "equidist/errors.hpp"
#include "equidist/intpoly.hpp"

namespace equidist {

enum class DomainKind { UnitDisk, Segment, DiskPlusPoints };

struct Domain {
  DomainKind kind = DomainKind::UnitDisk;
  double a = -2.0;  // segment endpoints
  double b = 2.0;
  std::vector<Complex> points;  // adjoined points, |point| > 1

  static Domain unit_disk() { return {}; }

  static Domain segment(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || std::abs((b - a) - 4.0) > 1e-12)
      throw PreconditionError("segment must satisfy b - a = 4");
    Domain d;
    d.kind = DomainKind::Segment;
    d.a = a;
    d.b = b;
    return d;
  }

  static Domain disk_plus_points(std::vector<Complex> pts) {
    if (pts.empty()) throw PreconditionError("diskplus needs at least one point");
    for (const Complex& z : pts) {
      if (!(std::abs(z) > 1.0)) throw PreconditionError("adjoined points must satisfy |point| > 1");
    }
    Domain d;
    d.kind = DomainKind::DiskPlusPoints;
    d.points = std::move(pts);
    return d;
  }

  double center() const { return kind == DomainKind::Segment ? 0.5 * (a + b) : 0.0; }

  /// Regular sets have M_E = tilde M_E.
  bool regular() const { return kind != DomainKind::DiskPlusPoints; }
};

namespace detail {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char t[40];
    std::snprintf(t, sizeof t, "%.*g", prec, x);
    if (std::strtod(t, nullptr) == x) return t;
  }
  return buf;
}

inline std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string s = z.real() != 0.0 ? format_real(z.real()) : "";
  if (z.imag() > 0 && !s.empty()) s += "+";
  return s + format_real(z.imag()) + "i";
}

/// Green function of [-2, 2] at w, without truncation at 0.
inline double segment_green_raw(Complex w) {
  if (w.imag() == 0.0) {
    const double x = std::abs(w.real());
    if (x <= 2.0) return 0.0;
    const double e = x - 2.0;
    return std::log1p(0.5 * (e + std::sqrt(e * (4.0 + e))));
  }
  if (std::abs(w) > 4.0) {
    // w + sqrt(w^2 - 4) = w (1 + sqrt(1 - 4/w^2)), principal root is the outer branch.
    const Complex u = 4.0 / (w * w);
    return std::log(std::abs(w)) + std::log(0.5 * std::abs(1.0 + std::sqrt(1.0 - u)));
  }
  const Complex s = std::sqrt(w * w - 4.0);
  const double m = std::max(std::abs(w + s), std::abs(w - s));
  return std::log(0.5 * m);
}

}  // namespace detail

/// Text form accepted by parse_domain.
inline std::string describe(const Domain& E) {
  switch (E.kind) {
    case DomainKind::UnitDisk: return "disk";
    case DomainKind::Segment: return "segment:a=" + detail::format_real(E.a) + ",b=" + detail::format_real(E.b);
    case DomainKind::DiskPlusPoints: {
      std::string s = "diskplus:points=";
      for (std::size_t k = 0; k < E.points.size(); ++k) {
        if (k) s += ";";
        s += detail::format_complex(E.points[k]);
      }
      return s;
    }
  }
  return {};
}

/// g_E(z, infinity), truncated at 0 on E. Adjoined points carry the disk
/// formula, so g is log|z| there.
inline double green(const Domain& E, Complex z) {
  if (E.kind == DomainKind::Segment) return std::max(0.0, detail::segment_green_raw(z - E.center()));
  return std::max(0.0, std::log(std::abs(z)));
}

/// Euclidean distance from z to E.
inline double distance_to(const Domain& E, Complex z) {
  switch (E.kind) {
    case DomainKind::UnitDisk: return std::max(0.0, std::abs(z) - 1.0);
    case DomainKind::Segment: {
      const double x = std::clamp(z.real(), E.a, E.b);
      return std::abs(z - Complex(x, 0.0));
    }
    case DomainKind::DiskPlusPoints: {
      double d = std::max(0.0, std::abs(z) - 1.0);
      for (const Complex& p : E.points) d = std::min(d, std::abs(z - p));
      return d;
    }
  }
  return 0.0;
}

/// Distance from z to the support of mu_E (the circle or the segment).
inline double distance_to_support(const Domain& E, Complex z) {
  if (E.kind == DomainKind::Segment) return distance_to(E, z);
  return std::abs(std::abs(z) - 1.0);
}

/// max g_E over {d_E(z) <= d}. On a segment the maximum sits on the real
/// axis beyond an endpoint; adjoined points contribute their own discs.
inline double green_max_within(const Domain& E, double d) {
  if (d < 0) throw PreconditionError("distance must be nonnegative");
  switch (E.kind) {
    case DomainKind::UnitDisk: return std::log1p(d);
    case DomainKind::Segment: return detail::segment_green_raw({2.0 + d, 0.0});
    case DomainKind::DiskPlusPoints: {
      double g = std::log1p(d);
      for (const Complex& p : E.points) g = std::max(g, std::log(std::abs(p) + d));
      return g;
    }
  }
  return 0.0;
}

/// A point on {g_E = c}: e^c for disk kinds, b + eps on the real axis for
/// segments with eps found by bisection.
inline Complex green_level_point(const Domain& E, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw PreconditionError("level must be a nonnegative real");
  if (E.kind != DomainKind::Segment) return {std::exp(c), 0.0};
  if (c == 0.0) return {E.b, 0.0};
  auto g = [](double eps) { return detail::segment_green_raw({2.0 + eps, 0.0}); };
  double lo = 0.0, hi = 1e-3;
  while (g(hi) < c) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < c ? lo : hi) = mid;
  }
  return {E.b + 0.5 * (lo + hi), 0.0};
}

struct QuadratureOptions {
  double tolerance = 1e-12;  // relative to max(1, |value|)
  int initial_nodes = 64;
  int max_nodes = 1 << 16;
};

/// Equal-weight rule with m nodes for mu_E: Gauss-Chebyshev on segments,
/// the trapezoid rule on the circle.
inline std::vector<Complex> equilibrium_nodes(const Domain& E, int m) {
  std::vector<Complex> x(static_cast<std::size_t>(m));
  constexpr double pi = 3.14159265358979323846;
  if (E.kind == DomainKind::Segment) {
    for (int j = 1; j <= m; ++j) x[j - 1] = {E.center() + 2.0 * std::cos((2.0 * j - 1.0) * pi / (2.0 * m)), 0.0};
  } else {
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * pi * j / m;
      x[j] = {std::cos(th), std::sin(th)};
    }
  }
  return x;
}

/// Integral of f against mu_E, doubling the node count until two
/// successive estimates agree.
inline double equilibrium_mean(const Domain& E, const std::function<double(Complex)>& f,
                               const QuadratureOptions& opt = {}) {
  auto rule = [&](int m) {
    double s = 0.0, comp = 0.0;
    for (const Complex& x : equilibrium_nodes(E, m)) {
      const double y = f(x) - comp;
      const double t = s + y;
      comp = (t - s) - y;
      s = t;
    }
    return s / m;
  };
  int m = opt.initial_nodes;
  double prev = rule(m);
  while (2 * m <= opt.max_nodes) {
    m *= 2;
    const double cur = rule(m);
    if (!std::isfinite(cur)) throw QuadratureError("integrand not finite on the support", prev, cur);
    if (std::abs(cur - prev) < opt.tolerance * std::max(1.0, std::abs(cur))) return cur;
    if (2 * m > opt.max_nodes) throw QuadratureError("equilibrium quadrature did not converge", prev, cur);
    prev = cur;
  }
  throw QuadratureError("equilibrium quadrature did not converge", prev, prev);
}

namespace detail {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos + 1); }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  void expect(const std::string& s) {
    if (text.compare(pos, s.size(), s) != 0) fail("expected '" + s + "'");
    pos += s.size();
  }
  double number() {
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(v)) fail("expected a number");
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }
  bool take(char ch) {
    if (peek() != ch) return false;
    ++pos;
    return true;
  }
  /// re, imi, re+imi, re-imi, with a bare i meaning unit imaginary part.
  Complex complex_number() {
    auto sign = [&]() { return take('-') ? -1.0 : (take('+'), 1.0); };
    const std::size_t start = pos;
    double s = sign();
    if (take('i')) return {0.0, s};
    pos = start;
    const double first = number();
    if (take('i')) return {0.0, first};
    if (peek() != '+' && peek() != '-') return {first, 0.0};
    s = sign();
    if (take('i')) return {first, s};
    const double second = number();
    if (!take('i')) fail("expected 'i'");
    return {first, s * second};
  }
};

}  // namespace detail

/// Parses "disk", "segment:a=-2,b=2" or "diskplus:points=2;-3;1+2i".
inline Domain parse_domain(const std::string& text) {
  detail::Cursor c{text};
  if (text == "disk") return Domain::unit_disk();
  if (text.rfind("segment", 0) == 0) {
    c.pos = 7;
    if (c.done()) return Domain::segment(-2.0, 2.0);
    c.expect(":a=");
    const double a = c.number();
    c.expect(",b=");
    const double b = c.number();
    if (!c.done()) c.fail("unexpected trailing input");
    return Domain::segment(a, b);
  }
  if (text.rfind("diskplus", 0) == 0) {
    c.pos = 8;
    c.expect(":points=");
    std::vector<Complex> pts;
    for (;;) {
      pts.push_back(c.complex_number());
      if (c.done()) break;
      c.expect(";");
    }
    return Domain::disk_plus_points(std::move(pts));
  }
  c.fail("unknown domain");
}

}  // namespace equidist
