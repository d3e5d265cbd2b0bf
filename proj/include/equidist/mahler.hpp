#pragma once

// Mahler measure, the generalized measures M_E and tilde M_E, logarithmic
// height and sampled sup-norms. Everything is carried in log space since
// the measures of degree-2000 family members overflow a double.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "equidist/errors.hpp"
#include "equidist/intpoly.hpp"
#include "equidist/potential.hpp"
#include "equidist/rootfinder.hpp"

namespace equidist {

/// Roots of p repeated by multiplicity. Each root carries the radius from
/// the squarefree factor it came from.
inline RootSet find_roots_with_multiplicity(const IntPolynomial& p, const RootOptions& opt = {}) {
  if (p.degree() < 1) throw PreconditionError("root finding requires degree >= 1");
  RootSet out;
  out.source_degree = p.degree();
  std::vector<std::pair<Complex, double>> all;
  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    const RootSet rs = find_roots(f, opt);
    out.precision_bits = std::max(out.precision_bits, rs.precision_bits);
    for (std::size_t k = 0; k < rs.roots.size(); ++k)
      for (int m = 0; m < mult; ++m) all.emplace_back(rs.roots[k], rs.radii[k]);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  for (const auto& [z, r] : all) {
    out.roots.push_back(z);
    out.radii.push_back(r);
  }
  return out;
}

inline double log_mahler_measure(const IntPolynomial& p, const RootSet& rs) {
  double s = log_abs(p.leading()).value;
  for (const Complex& z : rs.roots) s += std::max(0.0, std::log(std::abs(z)));
  return s;
}

/// |a_n| prod max(1, |z_k|), moduli used as computed.
inline double mahler_measure(const IntPolynomial& p, const RootSet& rs) { return std::exp(log_mahler_measure(p, rs)); }

/// Roots strictly in Omega_E: farther from E than their own radius.
inline std::vector<std::size_t> roots_in_omega(const RootSet& rs, const Domain& E) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < rs.roots.size(); ++k) {
    if (distance_to(E, rs.roots[k]) > rs.radii[k]) out.push_back(k);
  }
  return out;
}

inline double log_generalized_mahler(const IntPolynomial& p, const RootSet& rs, const Domain& E) {
  double s = log_abs(p.leading()).value;
  for (std::size_t k : roots_in_omega(rs, E)) s += green(E, rs.roots[k]);
  return s;
}

/// M_E = |a_n| exp(sum of g_E over roots in Omega_E).
inline double generalized_mahler(const IntPolynomial& p, const RootSet& rs, const Domain& E) {
  return std::exp(log_generalized_mahler(p, rs, E));
}

inline double log_tilde_mahler(const IntPolynomial& p, const RootSet& rs, const Domain& E) {
  double s = log_abs(p.leading()).value;
  for (const Complex& z : rs.roots) s += green(E, z);
  return s;
}

/// exp(log|a_n| + sum of the extended g_E over all roots).
inline double tilde_mahler(const IntPolynomial& p, const RootSet& rs, const Domain& E) {
  return std::exp(log_tilde_mahler(p, rs, E));
}

/// (1/n) log M(p).
inline double height(const IntPolynomial& p, const RootSet& rs) {
  if (p.degree() < 1) throw PreconditionError("height requires degree >= 1");
  return log_mahler_measure(p, rs) / p.degree();
}

namespace detail {

/// ln|p(z)| with a bound on its relative error.
struct LogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  double rel_noise = 0.0;
};

inline LogValue to_log_value(const Eval& e) {
  constexpr double ln2 = 0.69314718055994530942;
  LogValue v;
  v.log_abs = e.log2_p * ln2;
  v.rel_noise = std::isfinite(e.log2_p) ? std::exp2(std::min(e.log2_noise - e.log2_p, 0.0)) : 1.0;
  return v;
}

/// ln|p(z)| to about 60 correct bits, raising the precision as needed.
inline LogValue accurate_log_abs(const Representation& rep, Complex z) {
  constexpr double want = 60.0;
  double bits = 192.0;
  if (rep.fixed_precision_ok()) {
    Evaluator dd(rep, {Tier::DoubleDouble, 106});
    const Eval e = dd(z);
    if (e.finite && e.log2_p - e.log2_noise >= want) return to_log_value(e);
    if (e.finite && std::isfinite(e.log2_p)) bits = std::max(bits, e.log2_noise + 100.0 - e.log2_p + want + 8.0);
  }
  for (;;) {
    const auto b = static_cast<mpfr_prec_t>(std::ceil(bits / 64.0) * 64.0);
    MultiEvaluator mp(rep, b);
    const Eval e = mp(z);
    if (e.log2_p - e.log2_noise >= want || b >= 65536) return to_log_value(e);
    bits = std::isfinite(e.log2_p) ? std::max(2.0 * bits, e.log2_noise + b - e.log2_p + want + 8.0) : 2.0 * bits;
  }
}

/// ln|p(z)| exactly rounded for a Gaussian integer z.
inline double exact_log_abs_gaussian(const IntPolynomial& p, long re, long im) {
  BigInt x = 0, y = 0;
  for (int k = p.degree(); k >= 0; --k) {
    const BigInt nx = x * re - y * im + p.coeff(static_cast<std::size_t>(k));
    y = x * im + y * re;
    x = nx;
  }
  const BigInt norm = x * x + y * y;
  if (norm == 0) return -std::numeric_limits<double>::infinity();
  return 0.5 * log_abs(norm).value;
}

inline bool is_gaussian_integer(Complex z) {
  return z.real() == std::round(z.real()) && z.imag() == std::round(z.imag()) && std::abs(z.real()) < 1e15 &&
         std::abs(z.imag()) < 1e15;
}

/// In-place radix-2 transform y_j = sum x_k w^(jk), w = exp(2 pi i / M).
inline void fft(std::vector<Complex>& a) {
  const std::size_t M = a.size();
  for (std::size_t i = 1, j = 0; i < M; ++i) {
    std::size_t bit = M >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  constexpr double two_pi = 6.28318530717958647692;
  std::vector<Complex> w(M / 2);
  for (std::size_t k = 0; k < M / 2; ++k) {
    const double t = two_pi * static_cast<double>(k) / static_cast<double>(M);
    w[k] = {std::cos(t), std::sin(t)};
  }
  for (std::size_t len = 2; len <= M; len <<= 1) {
    const std::size_t step = M / len;
    for (std::size_t i = 0; i < M; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k], v = a[i + k + len / 2] * w[k * step];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

/// |p| on the sampling grid with one absolute noise bound for all points.
struct GridSamples {
  std::vector<double> log_abs;
  double log_noise = 0.0;
};

/// Circle: coefficients of p. Segment with integer center c: Laurent
/// coefficients of p(c + w + 1/w), exact. Empty for other centers.
inline std::optional<GridSamples> grid_samples(const IntPolynomial& p, const Domain& E, std::size_t M) {
  const int n = p.degree();
  const bool seg = E.kind == DomainKind::Segment;
  std::vector<BigInt> x;
  if (!seg) {
    x.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) x[static_cast<std::size_t>(k)] = p.coeff(static_cast<std::size_t>(k));
  } else {
    const double c = E.center();
    if (c != std::round(c) || std::abs(c) > 1e9) return std::nullopt;
    const long ci = std::lround(c);
    const std::size_t len = 2 * static_cast<std::size_t>(n) + 1;
    std::vector<BigInt> q(len), t(len);
    q[static_cast<std::size_t>(n)] = p.coeff(static_cast<std::size_t>(n));
    for (int k = n - 1, d = 1; k >= 0; --k, ++d) {
      for (int j = n - d; j <= n + d; ++j) {
        mpz_ptr tj = t[static_cast<std::size_t>(j)].get_mpz_t();
        mpz_mul_si(tj, q[static_cast<std::size_t>(j)].get_mpz_t(), ci);
        if (j > 0) mpz_add(tj, tj, q[static_cast<std::size_t>(j - 1)].get_mpz_t());
        if (j + 1 < static_cast<int>(len)) mpz_add(tj, tj, q[static_cast<std::size_t>(j + 1)].get_mpz_t());
      }
      t[static_cast<std::size_t>(n)] += p.coeff(static_cast<std::size_t>(k));
      std::swap(q, t);
    }
    x = std::move(q);
  }
  if (x.size() > M) return std::nullopt;
  long top = 0;
  for (const BigInt& v : x) {
    if (v != 0) top = std::max(top, static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)));
  }
  std::vector<Complex> a(M);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    long e = 0;
    const double d = mpz_get_d_2exp(&e, x[k].get_mpz_t());
    if (e - top < -1000) continue;
    a[k] = std::ldexp(d, static_cast<int>(e - top));
    norm2 += a[k].real() * a[k].real();
  }
  fft(a);

  // Error of the radix-2 transform: sqrt(M) |x|_2 L eta / (1 - L eta), with
  // twiddle error mu; inputs carry 2u relative error, dropped ones 2^-1000.
  constexpr double u = 0x1p-53, mu = 0x1p-45;
  const double L = std::log2(static_cast<double>(M));
  const double eta = mu + 4.0 * u / (1.0 - 4.0 * u) * (std::sqrt(2.0) + mu);
  const double rootM = std::sqrt(static_cast<double>(M));
  const double xnorm = std::sqrt(norm2) * (1.0 + 1e-10);
  const double abs_noise = rootM * xnorm * (L * eta / (1.0 - L * eta) + 2.0 * u) * (1.0 + 1e-10) +
                           rootM * std::sqrt(static_cast<double>(x.size())) * 0x1p-1000;
  constexpr double ln2 = 0.69314718055994530942;
  GridSamples g;
  g.log_noise = std::log(abs_noise) + static_cast<double>(top) * ln2;
  const std::size_t count = seg ? M / 2 + 1 : M;
  g.log_abs.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double r = std::abs(a[j]);
    g.log_abs[j] = r > 0.0 ? std::log(r) + static_cast<double>(top) * ln2 : -std::numeric_limits<double>::infinity();
  }
  return g;
}

}  // namespace detail

/// Sampled maximum of |p| on E. log_value is a lower bound (an actual
/// evaluation); log_upper adds the Bernstein bound for the sampling gap.
struct SupNorm {
  double log_value = 0.0;
  double log_upper = 0.0;
  Complex argmax{0.0, 0.0};
  int samples = 0;
  int refinements = 0;

  double value() const { return std::exp(log_value); }
  double gap() const { return log_upper - log_value; }
};

inline SupNorm sup_norm(const IntPolynomial& p, const Domain& E) {
  if (p.is_zero()) throw PreconditionError("sup-norm of the zero polynomial");
  SupNorm out;
  const int n = p.degree();
  if (n == 0) {
    out.log_value = out.log_upper = log_abs(p.coeff(0)).value;
    return out;
  }
  const detail::Representation rep = detail::make_representation(p);
  constexpr double pi = 3.14159265358979323846;
  const bool seg = E.kind == DomainKind::Segment;
  std::size_t M = 1;
  while (M < static_cast<std::size_t>((seg ? 2 : 1) * std::max(4096, 64 * n))) M <<= 1;
  const int m = static_cast<int>(seg ? M / 2 : M);
  const double h = 2.0 * pi / static_cast<double>(M);
  const int count = seg ? m + 1 : m;
  auto point = [&](double th) -> Complex {
    if (seg) return {E.center() + 2.0 * std::cos(th), 0.0};
    return {std::cos(th), std::sin(th)};
  };

  // Sampling pass: the whole grid at once (transform, or Horner at the
  // cheapest level), then points whose noise could still reach the top are
  // raised through the ladder.
  const std::optional<detail::GridSamples> grid = detail::grid_samples(p, E, M);
  const std::size_t base = grid ? 1 : 0;
  std::vector<detail::Level> ladder;
  if (rep.fixed_precision_ok()) {
    if (!grid) ladder.push_back({detail::Tier::Double, 53});
    ladder.push_back({detail::Tier::DoubleDouble, 106});
  }
  ladder.push_back(detail::level_for_bits(static_cast<double>(rep.scale_exp) + 256.0, mp::configured_digits()));
  constexpr double ln2 = 0.69314718055994530942;
  std::vector<detail::LogValue> f(static_cast<std::size_t>(count));
  std::vector<double> upper(static_cast<std::size_t>(count)), noise(static_cast<std::size_t>(count));
  std::vector<std::size_t> level(static_cast<std::size_t>(count), 0);
  std::vector<std::optional<detail::Evaluator>> evals(ladder.size());
  auto set_upper = [&](std::size_t i) {
    const double a = f[i].log_abs, b = noise[i];
    upper[i] = std::isfinite(a) ? std::max(a, b) + std::log1p(std::exp(-std::abs(a - b))) : b;
  };
  auto sample = [&](std::size_t i) {
    const std::size_t l = level[i] - base;
    if (!evals[l]) evals[l].emplace(rep, ladder[l]);
    const detail::Eval e = (*evals[l])(point(static_cast<double>(i) * h));
    f[i] = detail::to_log_value(e);
    noise[i] = e.log2_noise * ln2;
    set_upper(i);
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (grid) {
      f[i].log_abs = grid->log_abs[i];
      noise[i] = grid->log_noise;
      set_upper(i);
    } else {
      sample(i);
    }
  }
  double fmax = -std::numeric_limits<double>::infinity();
  std::size_t imax = 0;
  for (;;) {
    fmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].log_abs > fmax) {
        fmax = f[i].log_abs;
        imax = i;
      }
    }
    bool raised = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (level[i] + 1 >= ladder.size() + base || noise[i] < fmax - 24.0 * ln2 || upper[i] < fmax - 1.0) continue;
      ++level[i];
      sample(i);
      raised = true;
    }
    if (!raised) break;
  }
  out.samples = count;

  // Bernstein: |p|^2 is a trigonometric polynomial of degree n in theta.
  const double q = static_cast<double>(n) * n * h * h / 8.0;
  const double bernstein = -0.5 * std::log1p(-q);
  double sample_upper = -std::numeric_limits<double>::infinity();
  for (double u : upper) sample_upper = std::max(sample_upper, u);
  out.log_upper = sample_upper + bernstein;

  // Refine the local maxima that could still hold the supremum.
  std::vector<std::size_t> cand;
  for (int i = 0; i < count; ++i) {
    const double fi = f[i].log_abs;
    if (fi < fmax - 2.0 * bernstein - 1e-12) continue;
    const int l = seg ? std::max(i - 1, 0) : (i + count - 1) % count;
    const int r = seg ? std::min(i + 1, count - 1) : (i + 1) % count;
    if (fi >= f[l].log_abs && fi >= f[r].log_abs) cand.push_back(static_cast<std::size_t>(i));
  }
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return f[a].log_abs > f[b].log_abs; });
  if (cand.size() > 64) cand.resize(64);
  if (cand.empty()) cand.push_back(imax);
  out.log_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](double th) {
    const Complex z = point(th);
    const detail::LogValue v = detail::accurate_log_abs(rep, z);
    ++out.refinements;
    const double lower = v.log_abs + std::log1p(-std::min(v.rel_noise, 0.5));
    if (lower > out.log_value) {
      out.log_value = lower;
      out.argmax = z;
    }
  };
  for (std::size_t i : cand) {
    const double th = static_cast<double>(i) * h;
    consider(th);
    const int ii = static_cast<int>(i);
    const bool interior = !seg || (ii > 0 && ii < count - 1);
    if (!interior) continue;
    const double fl = f[static_cast<std::size_t>((ii + count - 1) % count)].log_abs;
    const double fr = f[static_cast<std::size_t>((ii + 1) % count)].log_abs;
    const double fc = f[i].log_abs;
    const double den = fl - 2.0 * fc + fr;
    if (!std::isfinite(fl) || !std::isfinite(fr) || !(den < 0.0)) continue;
    const double t = std::clamp(0.5 * (fl - fr) / den, -1.0, 1.0);
    if (t != 0.0) consider(th + t * h);
  }

  if (E.kind == DomainKind::DiskPlusPoints) {
    for (const Complex& pt : E.points) {
      double lv = 0.0;
      if (detail::is_gaussian_integer(pt)) {
        lv = detail::exact_log_abs_gaussian(p, std::lround(pt.real()), std::lround(pt.imag()));
      } else {
        const detail::LogValue v = detail::accurate_log_abs(rep, pt);
        out.log_upper = std::max(out.log_upper, v.log_abs + std::log1p(v.rel_noise));
        lv = v.log_abs + std::log1p(-std::min(v.rel_noise, 0.5));
      }
      out.log_upper = std::max(out.log_upper, lv);
      if (lv > out.log_value) {
        out.log_value = lv;
        out.argmax = pt;
      }
    }
  }
  out.log_upper = std::max(out.log_upper, out.log_value);
  return out;
}

/// Quadrature form of log tilde M_E, the integral of log|p| against mu_E.
struct QuadratureCheck {
  bool performed = false;
  double log_value = std::numeric_limits<double>::quiet_NaN();
  double difference = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

inline QuadratureCheck tilde_quadrature(const IntPolynomial& p, const RootSet& rs, const Domain& E,
                                        double log_tilde) {
  QuadratureCheck out;
  double dmin = std::numeric_limits<double>::infinity();
  for (const Complex& z : rs.roots) dmin = std::min(dmin, distance_to_support(E, z));
  if (dmin < 1e-6) {
    out.note = "quadrature skipped: a root lies within 1e-6 of the support of the equilibrium measure";
    return out;
  }
  const int n = std::max(p.degree(), 1);
  const detail::Representation rep = detail::make_representation(p);
  QuadratureOptions opt;
  opt.max_nodes = std::clamp((1 << 26) / n, 1024, 1 << 16);
  std::vector<detail::Evaluator> fast;
  if (rep.fixed_precision_ok()) fast.emplace_back(rep, detail::Level{detail::Tier::DoubleDouble, 106});
  auto integrand = [&](Complex x) {
    if (!fast.empty()) {
      const detail::Eval e = fast.front()(x);
      if (e.finite && e.log2_p - e.log2_noise >= 50.0) return detail::to_log_value(e).log_abs;
    }
    return detail::accurate_log_abs(rep, x).log_abs;
  };
  try {
    out.log_value = equilibrium_mean(E, integrand, opt);
    out.performed = true;
    out.difference = std::abs(out.log_value - log_tilde);
    char buf[96];
    std::snprintf(buf, sizeof buf, "quadrature cross-check differs by %.3g", out.difference);
    out.note = buf;
  } catch (const QuadratureError& e) {
    out.note = std::string("quadrature not converged: ") + e.what();
  }
  return out;
}

struct MeasureOptions {
  double tail_radius = 2.0;
  bool quadrature_check = true;
};

/// All measures of p on E, in log space, with provenance notes.
struct MeasureReport {
  Domain domain;
  int degree = 0;
  double log_mahler = 0.0;
  double log_generalized = 0.0;
  double log_tilde = 0.0;
  double height = 0.0;
  SupNorm sup;
  int omega_roots = 0;
  QuadratureCheck tilde_check;
  double leading_root = 1.0;  // |a_n|^(1/n)
  double tail_radius = 2.0;
  double log_tail_product = 0.0;  // sum of log|z_k| over |z_k| >= tail_radius
  std::vector<std::string> notes;

  double mahler() const { return std::exp(log_mahler); }
  double generalized() const { return std::exp(log_generalized); }
  double tilde() const { return std::exp(log_tilde); }
};

inline MeasureReport measure(const IntPolynomial& p, const RootSet& rs, const Domain& E,
                             const MeasureOptions& opt = {}) {
  if (p.degree() < 1) throw PreconditionError("measures require degree >= 1");
  MeasureReport r;
  r.domain = E;
  r.degree = p.degree();
  r.log_mahler = log_mahler_measure(p, rs);
  r.log_generalized = log_generalized_mahler(p, rs, E);
  r.log_tilde = log_tilde_mahler(p, rs, E);
  r.height = r.log_mahler / r.degree;
  r.omega_roots = static_cast<int>(roots_in_omega(rs, E).size());
  r.sup = sup_norm(p, E);
  r.leading_root = std::exp(log_abs(p.leading()).value / r.degree);
  r.tail_radius = opt.tail_radius;
  for (const Complex& z : rs.roots) {
    if (std::abs(z) >= opt.tail_radius) r.log_tail_product += std::log(std::abs(z));
  }
  r.notes.push_back("mahler: Jensen product over " + std::to_string(rs.roots.size()) + " roots");
  r.notes.push_back("generalized: Green sum over " + std::to_string(r.omega_roots) + " roots in the outer domain");
  r.notes.push_back("tilde: Green sum over all roots");
  if (opt.quadrature_check) {
    r.tilde_check = tilde_quadrature(p, rs, E, r.log_tilde);
    r.notes.push_back(r.tilde_check.note);
  }
  r.notes.push_back("sup_norm: " + std::to_string(r.sup.samples) + " samples, " + std::to_string(r.sup.refinements) +
                    " refined evaluations");
  return r;
}

}  // namespace equidist
