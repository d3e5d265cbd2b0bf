#pragma once

// Simultaneous Aberth-Ehrlich iteration for all complex roots of an integer
// polynomial, run on a precision ladder (double, double-double, MPFR) until
// every root carries an inclusion radius n|p/p'| below the target.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "equidist/errors.hpp"
#include "equidist/intpoly.hpp"
#include "equidist/mp.hpp"

namespace equidist {

/// Root approximations with per-root error radii, sorted by (re, im).
struct RootSet {
  std::vector<Complex> roots;
  std::vector<double> radii;
  int source_degree = 0;
  int precision_bits = 53;  // widest arithmetic used
  std::string basis = "monomial";

  double mean_radius() const {
    if (radii.empty()) return 0.0;
    double s = 0.0;
    for (double r : radii) s += r;
    return s / static_cast<double>(radii.size());
  }
  double max_radius() const {
    double m = 0.0;
    for (double r : radii) m = std::max(m, r);
    return m;
  }
};

struct RootOptions {
  double target_radius = 1e-10;
  int max_sweeps = 200;
  std::uint64_t seed = 0x5eedULL;
  int digits = mp::configured_digits();
  /// Degree above which the simple-zero precondition is trusted rather
  /// than checked exactly.
  int exactness_cutoff = 500;
};

namespace detail {

// ---------------------------------------------------------------- dd ----

/// Unevaluated sum hi + lo carrying about 106 significant bits.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD operator+(DD a, DD b) {
  const double s = a.hi + b.hi;
  const double bb = s - a.hi;
  double e = (a.hi - (s - bb)) + (b.hi - bb);
  e += a.lo + b.lo;
  return quick_two_sum(s, e);
}
inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }
inline DD operator*(DD a, DD b) {
  const double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p, e);
}
inline DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  const DD r = a - b * DD{q1, 0.0};
  const double q2 = r.hi / b.hi;
  const DD r2 = r - b * DD{q2, 0.0};
  return quick_two_sum(q1, q2) + DD{r2.hi / b.hi, 0.0};
}

inline double to_d(double x) { return x; }
inline double to_d(DD x) { return x.hi + x.lo; }

template <class T>
T from_d(double x) {
  if constexpr (std::is_same_v<T, DD>) {
    return DD{x, 0.0};
  } else {
    return x;
  }
}

/// Minimal complex type over double or DD.
template <class T>
struct Cx {
  T re{}, im{};
};

template <class T>
Cx<T> operator+(Cx<T> a, Cx<T> b) {
  return {a.re + b.re, a.im + b.im};
}
template <class T>
Cx<T> operator-(Cx<T> a, Cx<T> b) {
  return {a.re - b.re, a.im - b.im};
}
template <class T>
Cx<T> operator*(Cx<T> a, Cx<T> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
Cx<T> scale(Cx<T> a, T s) {
  return {a.re * s, a.im * s};
}
template <class T>
Complex to_c(Cx<T> a) {
  return {to_d(a.re), to_d(a.im)};
}
template <class T>
Cx<T> from_c(Complex z) {
  return {from_d<T>(z.real()), from_d<T>(z.imag())};
}

/// 1 / z with T-precision accuracy for a double input.
template <class T>
Cx<T> reciprocal(Complex z) {
  if constexpr (std::is_same_v<T, DD>) {
    const Cx<DD> zz = from_c<DD>(z);
    const DD norm = zz.re * zz.re + zz.im * zz.im;
    return {zz.re / norm, -zz.im / norm};
  } else {
    return from_c<double>(1.0 / z);
  }
}

// --------------------------------------------------------- evaluation ----

/// One evaluation: the Newton ratio p/p' and log2 magnitudes of p, p' and
/// an a-priori bound on the rounding error in p.
struct Eval {
  Complex ratio;
  double log2_p = 0.0;
  double log2_dp = 0.0;
  double log2_noise = 0.0;
  bool finite = true;
};

enum class Tier { Double, DoubleDouble, Multi };

struct Level {
  Tier tier = Tier::Double;
  mpfr_prec_t bits = 53;

  double log2_unit() const {
    switch (tier) {
      case Tier::Double: return -53.0;
      case Tier::DoubleDouble: return -100.0;
      case Tier::Multi: break;
    }
    return 1.0 - static_cast<double>(bits);
  }
};

inline double safe_log2(double x) { return x > 0.0 ? std::log2(x) : -std::numeric_limits<double>::infinity(); }

/// The polynomial in the basis chosen for evaluation. Chebyshev form
/// stores q(y) = p(y + center) = b_0 + sum_j b_j t_j(y).
struct Representation {
  int n = 0;
  bool chebyshev = false;
  long center = 0;
  std::vector<BigInt> exact;       // a_k, or c_0 = b_0, c_j = 2 b_j
  long scale_exp = 0;              // coefficients below are scaled by 2^-scale_exp
  std::vector<double> abs_scaled;  // |coefficient| * 2^-scale_exp
  std::vector<double> dbl;         // signed, scaled
  std::vector<DD> ddc;             // signed, scaled

  bool fixed_precision_ok() const { return scale_exp <= 1000; }
};

inline double bigint_log2(const BigInt& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::abs(m)) + static_cast<double>(e);
}

inline double l1_log2(const std::vector<BigInt>& v) {
  BigInt s = 0;
  for (const auto& c : v) s += abs(c);
  return bigint_log2(s);
}

/// Coefficients b_j with q(w + 1/w) = b_0 + sum_j b_j (w^j + w^-j), by Horner
/// over symmetric Laurent polynomials (additions only).
inline std::vector<BigInt> to_chebyshev_basis(const IntPolynomial& q) {
  const int n = q.degree();
  std::vector<BigInt> acc(static_cast<std::size_t>(n) + 2, 0), next(acc.size(), 0);
  int deg = 0;
  for (int k = n; k >= 0; --k) {
    // acc <- acc * (w + 1/w): b_j -> b_{j-1} + b_{j+1}, with b_{-1} = b_1.
    if (k < n) {
      for (int j = 0; j <= deg + 1; ++j) {
        next[j] = acc[j + 1];
        if (j >= 1) next[j] += acc[j - 1];
      }
      // The constant term b_0 picks up both w * w^-1 and w^-1 * w.
      next[0] = 2 * acc[1];
      ++deg;
      std::swap(acc, next);
    }
    acc[0] += q.coeff(static_cast<std::size_t>(k));
  }
  acc.resize(static_cast<std::size_t>(n) + 1);
  return acc;
}

inline Representation make_representation(const IntPolynomial& p) {
  Representation rep;
  rep.n = p.degree();
  const std::vector<BigInt> mono = to_vec(p);
  const double mono_l1 = l1_log2(mono);

  std::vector<BigInt> cheb;
  long center = 0;
  if (rep.n >= 2) {
    // Center on the mean of the roots, rounded to an integer.
    const BigInt num = -p.coeff(static_cast<std::size_t>(rep.n - 1));
    const BigInt den = p.leading() * rep.n;
    mpq_class mean(num, den);
    mean.canonicalize();
    const double m = mean.get_d();
    if (std::abs(m) < 1e15) center = std::lround(m);
    const IntPolynomial q = shift(p, BigInt(-center));
    const std::vector<BigInt> b = to_chebyshev_basis(q);
    if (l1_log2(b) + 1.0 < mono_l1 - 10.0) {
      rep.chebyshev = true;
      rep.center = center;
      cheb.resize(b.size());
      cheb[0] = b[0];
      for (std::size_t j = 1; j < b.size(); ++j) cheb[j] = 2 * b[j];
    }
  }
  rep.exact = rep.chebyshev ? std::move(cheb) : mono;

  double top = -std::numeric_limits<double>::infinity();
  for (const auto& c : rep.exact) top = std::max(top, bigint_log2(c));
  rep.scale_exp = static_cast<long>(std::floor(top));
  const std::size_t m = rep.exact.size();
  rep.abs_scaled.resize(m);
  rep.dbl.resize(m);
  rep.ddc.resize(m);
  mp::Real x(120), hi(120);
  for (std::size_t k = 0; k < m; ++k) {
    mpfr_set_z(x.get(), rep.exact[k].get_mpz_t(), mp::rnd);
    mpfr_mul_2si(x.get(), x.get(), -rep.scale_exp, mp::rnd);
    const double h = mpfr_get_d(x.get(), mp::rnd);
    mpfr_sub_d(hi.get(), x.get(), h, mp::rnd);
    rep.dbl[k] = h;
    rep.ddc[k] = quick_two_sum(h, mpfr_get_d(hi.get(), mp::rnd));
    rep.abs_scaled[k] = std::abs(h);
  }
  return rep;
}

template <class T>
const std::vector<T>& coefficients(const Representation& rep) {
  if constexpr (std::is_same_v<T, DD>) {
    return rep.ddc;
  } else {
    return rep.dbl;
  }
}

/// Joukowski preimage of y with |w| >= 1.
inline Complex joukowski_outer(Complex y) {
  const Complex x = 0.5 * y;
  const Complex s = std::sqrt(x * x - 1.0);
  const Complex w1 = x + s, w2 = x - s;
  return std::abs(w1) >= std::abs(w2) ? w1 : w2;
}

/// log2 of sum_j abs[j] aw^j for aw >= 1, computed as aw^n sum_j abs[j] aw^(j-n).
inline double log2_abs_series(const std::vector<double>& abs, double aw) {
  const int n = static_cast<int>(abs.size()) - 1;
  if (aw <= 1.0) {
    double s = 0.0;
    for (int k = n; k >= 0; --k) s = s * aw + abs[k];
    return safe_log2(s);
  }
  const double inv = 1.0 / aw;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s = s * inv + abs[k];
  return safe_log2(s) + n * std::log2(aw);
}

inline double horner_gamma(int n) { return std::log2(4.0 * n + 8.0); }
inline double clenshaw_gamma(int n) { return std::log2(4.0 * (n + 1.0) * (n + 1.0)); }

/// Horner states below 2^-900 are flushed to zero, which keeps the loop out
/// of subnormal arithmetic; each flush adds at most 2^-900 to the error.
template <class T>
bool flush_tiny(Cx<T>& a) {
  const double m = std::max(std::abs(to_d(a.re)), std::abs(to_d(a.im)));
  if (m == 0.0 || m >= 0x1p-900) return false;
  a = Cx<T>{};
  return true;
}

inline double add_flush_noise(double log2_noise, bool flushed, int n) {
  if (!flushed) return log2_noise;
  const double f = std::log2(n + 1.0) - 899.0;
  return std::max(log2_noise, f) + std::log2(1.0 + std::exp2(-std::abs(log2_noise - f)));
}

template <class T>
Eval eval_monomial(const Representation& rep, Complex z, double log2_u) {
  const auto& c = coefficients<T>(rep);
  const int n = rep.n;
  const double az = std::abs(z);
  Eval out;
  const double E = static_cast<double>(rep.scale_exp);
  bool flushed = false;
  if (az <= 1.0) {
    const Cx<T> zz = from_c<T>(z);
    Cx<T> p{c[n], T{}}, d{};
    for (int k = n - 1; k >= 0; --k) {
      d = d * zz + p;
      p = p * zz + Cx<T>{c[k], T{}};
      flushed |= flush_tiny(p);
      flush_tiny(d);
    }
    const Complex pv = to_c(p), dv = to_c(d);
    out.ratio = pv / dv;
    out.log2_p = safe_log2(std::abs(pv)) + E;
    out.log2_dp = safe_log2(std::abs(dv)) + E;
    out.log2_noise = add_flush_noise(horner_gamma(n) + log2_u + log2_abs_series(rep.abs_scaled, az), flushed, n) + E;
  } else {
    const Cx<T> u = reciprocal<T>(z);
    Cx<T> r{c[0], T{}}, rd{};
    double rt = rep.abs_scaled[0];
    const double au = 1.0 / az;
    for (int k = 1; k <= n; ++k) {
      rd = rd * u + r;
      r = r * u + Cx<T>{c[k], T{}};
      rt = rt * au + rep.abs_scaled[k];
      flushed |= flush_tiny(r);
      flush_tiny(rd);
    }
    const Cx<T> den = scale(r, from_d<T>(static_cast<double>(n))) - u * rd;
    const Complex rv = to_c(r), dv = to_c(den);
    const double lz = std::log2(az);
    out.ratio = z * rv / dv;
    out.log2_p = n * lz + safe_log2(std::abs(rv)) + E;
    out.log2_dp = (n - 1) * lz + safe_log2(std::abs(dv)) + E;
    out.log2_noise = add_flush_noise(horner_gamma(n) + log2_u + safe_log2(rt), flushed, n) + n * lz + E;
  }
  out.finite = std::isfinite(out.ratio.real()) && std::isfinite(out.ratio.imag());
  return out;
}

template <class T>
T ldexp_t(T x, int e) {
  if constexpr (std::is_same_v<T, DD>) {
    return DD{std::ldexp(x.hi, e), std::ldexp(x.lo, e)};
  } else {
    return std::ldexp(x, e);
  }
}

template <class T>
Cx<T> ldexp_c(Cx<T> a, int e) {
  return {ldexp_t(a.re, e), ldexp_t(a.im, e)};
}

inline double max_part(Complex z) { return std::max(std::abs(z.real()), std::abs(z.imag())); }

/// Chebyshev form at y (already centered). Off the segment the recurrence
/// state is rescaled by powers of two, so only |y| beyond 2^100 returns
/// finite = false.
template <class T>
Eval eval_chebyshev(const Representation& rep, Complex y, double log2_u) {
  const auto& c = coefficients<T>(rep);
  const int n = rep.n;
  Eval out;
  if (!(std::abs(y) < 0x1p100)) {
    out.finite = false;
    return out;
  }
  const Complex w = joukowski_outer(y);
  const double aw = std::abs(w);
  const double E = static_cast<double>(rep.scale_exp);
  const double log2_pt = log2_abs_series(rep.abs_scaled, aw);
  const Cx<T> x = from_c<T>(0.5 * y);
  const Cx<T> tx = from_c<T>(y);
  Cx<T> u1{}, u2{}, v1{}, v2{};
  const T two = from_d<T>(2.0);
  constexpr int step = 400;
  long sh = 0;  // true state = stored state * 2^sh
  auto coef = [&](int k) { return Cx<T>{sh == 0 ? c[k] : ldexp_t(c[k], static_cast<int>(std::max(-sh, -2000L))), T{}}; };
  for (int k = n; k >= 1; --k) {
    const Cx<T> u0 = coef(k) + tx * u1 - u2;
    const Cx<T> v0 = scale(u1, two) + tx * v1 - v2;
    u2 = u1;
    u1 = u0;
    v2 = v1;
    v1 = v0;
    if (std::max(max_part(to_c(u1)), max_part(to_c(v1))) > 0x1p400) {
      u1 = ldexp_c(u1, -step);
      u2 = ldexp_c(u2, -step);
      v1 = ldexp_c(v1, -step);
      v2 = ldexp_c(v2, -step);
      sh += step;
    }
  }
  const Cx<T> val = coef(0) + x * u1 - u2;
  const Cx<T> dval = u1 + x * v1 - v2;
  const Complex pv = to_c(val), dv = 0.5 * to_c(dval);
  out.ratio = pv / dv;
  out.log2_p = safe_log2(std::abs(pv)) + E + static_cast<double>(sh);
  out.log2_dp = safe_log2(std::abs(dv)) + E + static_cast<double>(sh);
  out.log2_noise = clenshaw_gamma(n) + log2_u + log2_pt + E;
  out.finite = std::isfinite(out.ratio.real()) && std::isfinite(out.ratio.imag());
  return out;
}

/// MPFR evaluator with coefficients prepared at a fixed precision.
class MultiEvaluator {
 public:
  MultiEvaluator(const Representation& rep, mpfr_prec_t bits)
      : rep_(rep), bits_(bits), ws_(bits), z_(bits), p_(bits), d_(bits), t_(bits), u1_(bits), u2_(bits),
        v1_(bits), v2_(bits), tmp_(bits) {
    coeffs_.reserve(rep.exact.size());
    for (const auto& c : rep.exact) coeffs_.emplace_back(bits, c);
  }

  Eval operator()(Complex z) {
    Eval out;
    const int n = rep_.n;
    if (!rep_.chebyshev) {
      z_.set(z);
      mpfr_set(p_.re.get(), coeffs_[n].get(), mp::rnd);
      mpfr_set_zero(p_.im.get(), 1);
      mp::set_zero(d_);
      for (int k = n - 1; k >= 0; --k) {
        ws_.mul_add(d_, z_, p_);
        ws_.mul_add(p_, z_, coeffs_[k]);
      }
      out.ratio = mp::ratio(p_, d_);
      out.log2_p = mp::log2_abs(p_);
      out.log2_dp = mp::log2_abs(d_);
      const double az = std::abs(z);
      out.log2_noise = horner_gamma(n) + (1.0 - static_cast<double>(bits_)) +
                       (az <= 1.0 ? log2_abs_series(rep_.abs_scaled, az)
                                  : log2_reversed(az)) +
                       static_cast<double>(rep_.scale_exp);
    } else {
      // y = z - center exactly, x = y / 2, tx = y.
      z_.set(z);
      mpfr_sub_si(z_.re.get(), z_.re.get(), rep_.center, mp::rnd);
      mp::set_zero(u1_);
      mp::set_zero(u2_);
      mp::set_zero(v1_);
      mp::set_zero(v2_);
      for (int k = n; k >= 1; --k) {
        // v0 = 2 u1 + y v1 - v2
        mpfr_set(t_.re.get(), v1_.re.get(), mp::rnd);
        mpfr_set(t_.im.get(), v1_.im.get(), mp::rnd);
        ws_.mul(t_, z_);
        mpfr_mul_2ui(tmp_.re.get(), u1_.re.get(), 1, mp::rnd);
        mpfr_mul_2ui(tmp_.im.get(), u1_.im.get(), 1, mp::rnd);
        mpfr_add(t_.re.get(), t_.re.get(), tmp_.re.get(), mp::rnd);
        mpfr_add(t_.im.get(), t_.im.get(), tmp_.im.get(), mp::rnd);
        mpfr_sub(v2_.re.get(), t_.re.get(), v2_.re.get(), mp::rnd);
        mpfr_sub(v2_.im.get(), t_.im.get(), v2_.im.get(), mp::rnd);
        std::swap(v1_, v2_);
        // u0 = c_k + y u1 - u2
        mpfr_set(t_.re.get(), u1_.re.get(), mp::rnd);
        mpfr_set(t_.im.get(), u1_.im.get(), mp::rnd);
        ws_.mul(t_, z_);
        mpfr_add(t_.re.get(), t_.re.get(), coeffs_[k].get(), mp::rnd);
        mpfr_sub(u2_.re.get(), t_.re.get(), u2_.re.get(), mp::rnd);
        mpfr_sub(u2_.im.get(), t_.im.get(), u2_.im.get(), mp::rnd);
        std::swap(u1_, u2_);
      }
      // val = c_0 + (y/2) u1 - u2, dval = u1 + (y/2) v1 - v2, p' = dval / 2
      mpfr_set(p_.re.get(), u1_.re.get(), mp::rnd);
      mpfr_set(p_.im.get(), u1_.im.get(), mp::rnd);
      ws_.mul(p_, z_);
      mpfr_div_2ui(p_.re.get(), p_.re.get(), 1, mp::rnd);
      mpfr_div_2ui(p_.im.get(), p_.im.get(), 1, mp::rnd);
      mpfr_add(p_.re.get(), p_.re.get(), coeffs_[0].get(), mp::rnd);
      mpfr_sub(p_.re.get(), p_.re.get(), u2_.re.get(), mp::rnd);
      mpfr_sub(p_.im.get(), p_.im.get(), u2_.im.get(), mp::rnd);
      mpfr_set(d_.re.get(), v1_.re.get(), mp::rnd);
      mpfr_set(d_.im.get(), v1_.im.get(), mp::rnd);
      ws_.mul(d_, z_);
      mpfr_div_2ui(d_.re.get(), d_.re.get(), 1, mp::rnd);
      mpfr_div_2ui(d_.im.get(), d_.im.get(), 1, mp::rnd);
      mpfr_add(d_.re.get(), d_.re.get(), u1_.re.get(), mp::rnd);
      mpfr_add(d_.im.get(), d_.im.get(), u1_.im.get(), mp::rnd);
      mpfr_sub(d_.re.get(), d_.re.get(), v2_.re.get(), mp::rnd);
      mpfr_sub(d_.im.get(), d_.im.get(), v2_.im.get(), mp::rnd);
      mpfr_div_2ui(d_.re.get(), d_.re.get(), 1, mp::rnd);
      mpfr_div_2ui(d_.im.get(), d_.im.get(), 1, mp::rnd);
      out.ratio = mp::ratio(p_, d_);
      out.log2_p = mp::log2_abs(p_);
      out.log2_dp = mp::log2_abs(d_);
      const double aw = std::abs(joukowski_outer(z - static_cast<double>(rep_.center)));
      out.log2_noise = clenshaw_gamma(n) + (1.0 - static_cast<double>(bits_)) +
                       log2_abs_series(rep_.abs_scaled, aw) + static_cast<double>(rep_.scale_exp);
    }
    out.finite = std::isfinite(out.ratio.real()) && std::isfinite(out.ratio.imag());
    return out;
  }

 private:
  double log2_reversed(double az) const {
    const int n = rep_.n;
    const double au = 1.0 / az;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s = s * au + rep_.abs_scaled[k];
    return safe_log2(s) + n * std::log2(az);
  }

  const Representation& rep_;
  mpfr_prec_t bits_;
  std::vector<mp::Real> coeffs_;
  mp::Workspace ws_;
  mp::Cplx z_, p_, d_, t_, u1_, u2_, v1_, v2_, tmp_;
};

/// Dispatches one evaluation at the requested level. Points are in the
/// coordinates of p; the Chebyshev form recenters internally.
class Evaluator {
 public:
  Evaluator(const Representation& rep, Level level) : rep_(rep), level_(level) {
    if (level.tier == Tier::Multi) multi_.emplace_back(rep, level.bits);
  }

  Eval operator()(Complex z) {
    const double lu = level_.log2_unit();
    Eval e;
    switch (level_.tier) {
      case Tier::Double:
        e = rep_.chebyshev ? eval_chebyshev<double>(rep_, z - static_cast<double>(rep_.center), lu)
                           : eval_monomial<double>(rep_, z, lu);
        break;
      case Tier::DoubleDouble:
        e = rep_.chebyshev ? eval_chebyshev<DD>(rep_, z - static_cast<double>(rep_.center), lu)
                           : eval_monomial<DD>(rep_, z, lu);
        break;
      case Tier::Multi: return multi_.front()(z);
    }
    if (!e.finite && rep_.chebyshev) {
      // Far from the segment: fall back to MPFR at comparable precision.
      if (fallback_.empty()) fallback_.emplace_back(rep_, static_cast<mpfr_prec_t>(2 - lu));
      return fallback_.front()(z);
    }
    return e;
  }

 private:
  const Representation& rep_;
  Level level_;
  std::vector<MultiEvaluator> multi_;
  std::vector<MultiEvaluator> fallback_;
};

// ------------------------------------------------------------ iteration ----

struct RootState {
  Complex z;
  bool final = false;
  int level = -1;
  double radius = 0.0;
};

/// Initial approximations: circles from the Newton polygon of |a_k| for the
/// monomial form, a Joukowski ellipse around the segment for the Chebyshev
/// form. Angles carry a seeded jitter to break symmetry.
inline std::vector<Complex> initial_guesses(const IntPolynomial& p, const Representation& rep, std::uint64_t seed) {
  const int n = rep.n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.15, 0.15);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  constexpr double two_pi = 6.283185307179586;
  if (rep.chebyshev) {
    const double rho = 1.0 + std::max(0.02, 2.0 / n);
    for (int k = 0; k < n; ++k) {
      const double th = two_pi * (k + 0.5 + jitter(rng)) / n;
      const Complex w = std::polar(rho, th);
      out.push_back(w + 1.0 / w + static_cast<double>(rep.center));
    }
    return out;
  }
  std::vector<std::pair<int, double>> pts;
  for (int k = 0; k <= n; ++k) {
    if (p.coeff(static_cast<std::size_t>(k)) != 0) pts.emplace_back(k, bigint_log2(p.coeff(static_cast<std::size_t>(k))));
  }
  // Upper convex hull.
  std::vector<std::pair<int, double>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (q.second - a.second) - (b.second - a.second) * (q.first - a.first);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int m = hull[e + 1].first - hull[e].first;
    const double r = std::exp2((hull[e].second - hull[e + 1].second) / m);
    const double offset = 0.7 * static_cast<double>(e) + two_pi / (4.0 * m);
    for (int t = 0; t < m; ++t) {
      out.push_back(std::polar(r, offset + two_pi * (t + jitter(rng)) / m));
    }
  }
  return out;
}

struct LevelOutcome {
  double needed_bits = 0.0;  // largest estimate among unfinished roots
  double worst_radius = 0.0;
  int sweeps = 0;
  long evaluations = 0;
};

/// Bits at which the evaluation noise contributes at most target/8 to the
/// radius of a root with the given evaluation.
inline double bits_needed(const Eval& e, const Level& lvl, int n, double target) {
  const double pt = e.log2_noise - lvl.log2_unit();
  return -(std::log2(target / 8.0) - std::log2(static_cast<double>(n)) - pt + e.log2_dp) + 4.0;
}

inline bool certified(const Eval& e, int n, double target) {
  if (!e.finite) return false;
  const double radius = n * std::abs(e.ratio);
  const double noise_radius = n * std::exp2(e.log2_noise - e.log2_dp);
  return radius <= target && noise_radius <= target / 4.0;
}

/// Gauss-Seidel Aberth sweeps over the unfinished roots at one level.
inline LevelOutcome run_level(const Representation& rep, Level lvl, int level_index, std::vector<RootState>& st,
                              const RootOptions& opt) {
  const int n = rep.n;
  Evaluator eval(rep, lvl);
  LevelOutcome out;
  std::vector<char> active(st.size(), 0);
  std::size_t n_active = 0;
  for (std::size_t k = 0; k < st.size(); ++k) {
    if (!st[k].final) {
      active[k] = 1;
      ++n_active;
    }
  }
  std::vector<Eval> last(st.size());
  for (int sweep = 0; sweep < opt.max_sweeps && n_active > 0; ++sweep) {
    out.sweeps = sweep + 1;
    for (std::size_t k = 0; k < st.size(); ++k) {
      if (!active[k]) continue;
      const Complex zk = st[k].z;
      const Eval e = eval(zk);
      ++out.evaluations;
      last[k] = e;
      if (!e.finite) {
        active[k] = 0;
        --n_active;
        continue;
      }
      const bool at_floor = e.log2_p <= e.log2_noise;
      const bool tiny_step = std::abs(e.ratio) <= 0x1p-50 * std::max(std::abs(zk), 0x1p-40);
      if (certified(e, n, opt.target_radius)) {
        // One last Newton step; the radius is re-established afterwards.
        if (!at_floor) st[k].z = zk - e.ratio;
        st[k].final = true;
        st[k].level = level_index;
        st[k].radius = n * std::abs(e.ratio);
        active[k] = 0;
        --n_active;
        continue;
      }
      if (at_floor || tiny_step) {
        active[k] = 0;
        --n_active;
        continue;
      }
      Complex s{0.0, 0.0};
      for (std::size_t j = 0; j < st.size(); ++j) {
        if (j == k) continue;
        const Complex d = zk - st[j].z;
        const double nrm = d.real() * d.real() + d.imag() * d.imag();
        if (nrm == 0.0) continue;
        s += Complex(d.real() / nrm, -d.imag() / nrm);
      }
      const Complex N = e.ratio;
      const Complex den = 1.0 - N * s;
      Complex corr = N / den;
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag()) || den == 0.0) corr = N;
      st[k].z = zk - corr;
    }
  }
  for (std::size_t k = 0; k < st.size(); ++k) {
    if (st[k].final) continue;
    const Eval& e = last[k];
    if (e.finite) {
      out.needed_bits = std::max(out.needed_bits, bits_needed(e, lvl, n, opt.target_radius));
      out.worst_radius = std::max(out.worst_radius, n * std::abs(e.ratio));
    } else {
      out.needed_bits = std::max(out.needed_bits, 2.0 * std::max(53.0, -lvl.log2_unit()));
      out.worst_radius = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

/// Averages conjugate pairs and snaps unpaired near-real roots onto the axis.
inline void enforce_conjugate_symmetry(std::vector<Complex>& z, const std::vector<double>& radii) {
  const std::size_t n = z.size();
  std::vector<std::size_t> upper, lower;
  for (std::size_t k = 0; k < n; ++k) {
    if (z[k].imag() > 0) upper.push_back(k);
    if (z[k].imag() < 0) lower.push_back(k);
  }
  std::sort(upper.begin(), upper.end(), [&](std::size_t a, std::size_t b) { return z[a].imag() > z[b].imag(); });
  std::vector<char> used(n, 0);
  for (std::size_t k : upper) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j : lower) {
      if (used[j]) continue;
      const double d = std::abs(z[k] - std::conj(z[j]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    const double tol = 4.0 * (radii[k] + (best < n ? radii[best] : 0.0)) + 1e-12 * std::abs(z[k]);
    if (best < n && best_d <= std::max(tol, 0.5 * z[k].imag())) {
      used[best] = used[k] = 1;
      const Complex avg = 0.5 * (z[k] + std::conj(z[best]));
      z[k] = avg;
      z[best] = std::conj(avg);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (used[k] || z[k].imag() == 0.0) continue;
    if (std::abs(z[k].imag()) <= std::max(radii[k], 1e-13 * std::abs(z[k]))) z[k] = {z[k].real(), 0.0};
  }
}

/// Even and odd polynomials also have roots symmetric under z -> -conj(z),
/// which is conjugation after multiplying by -i.
inline void enforce_reflection_symmetry(std::vector<Complex>& z, const std::vector<double>& radii) {
  const Complex i(0.0, 1.0);
  for (Complex& w : z) w *= -i;
  enforce_conjugate_symmetry(z, radii);
  for (Complex& w : z) w *= i;
}

inline bool has_parity(const IntPolynomial& q) {
  bool odd_zero = true, even_zero = true;
  for (std::size_t k = 0; k < q.coeffs().size(); ++k) {
    if (q.coeffs()[k] == 0) continue;
    (k % 2 ? odd_zero : even_zero) = false;
  }
  return odd_zero || even_zero;
}

inline Level level_for_bits(double bits, int digits) {
  if (bits <= 50) return {Tier::Double, 53};
  if (bits <= 98) return {Tier::DoubleDouble, 106};
  const double b = std::max(bits, static_cast<double>(mp::digits_to_bits(digits)));
  return {Tier::Multi, static_cast<mpfr_prec_t>(std::ceil(b / 64.0) * 64)};
}

inline double level_bits(const Level& l) { return -l.log2_unit(); }

}  // namespace detail

/// All complex roots of p with radii n|p(z_k)/p'(z_k)| <= target_radius.
inline RootSet find_roots(const IntPolynomial& p, const RootOptions& opt = {}) {
  const int deg = p.degree();
  if (deg < 1) throw PreconditionError("root finding requires degree >= 1");
  int zeros = 0;
  while (p.coeff(static_cast<std::size_t>(zeros)) == 0) ++zeros;
  if (zeros > 1) throw PreconditionError("polynomial has multiple zeros");
  if (deg <= opt.exactness_cutoff && !has_simple_zeros(p)) throw PreconditionError("polynomial has multiple zeros");

  RootSet out;
  out.source_degree = deg;
  std::vector<Complex> roots;
  std::vector<double> radii;
  if (zeros == 1) {
    roots.emplace_back(0.0, 0.0);
    radii.push_back(0.0);
  }
  if (deg > zeros) {
    const IntPolynomial q(std::vector<BigInt>(p.coeffs().begin() + zeros, p.coeffs().end()));
    const detail::Representation rep = detail::make_representation(q);
    out.basis = rep.chebyshev ? "chebyshev" : "monomial";
    const int n = rep.n;
    std::vector<detail::RootState> st;
    for (const Complex& z : detail::initial_guesses(q, rep, opt.seed)) st.push_back({z});

    std::vector<detail::Level> levels;
    detail::Level lvl = rep.fixed_precision_ok() ? detail::Level{detail::Tier::Double, 53}
                                                 : detail::level_for_bits(2000.0, opt.digits);
    if (!rep.fixed_precision_ok()) lvl = detail::level_for_bits(rep.scale_exp + 64.0, opt.digits);
    double worst = 0.0;
    for (;;) {
      levels.push_back(lvl);
      const detail::LevelOutcome res = detail::run_level(rep, lvl, static_cast<int>(levels.size()) - 1, st, opt);
      bool done = std::all_of(st.begin(), st.end(), [](const auto& s) { return s.final; });
      if (done) {
        // Symmetrize, then recertify every root at the level that finished it.
        std::vector<Complex> z(st.size());
        std::vector<double> r(st.size());
        std::vector<detail::Evaluator> evals;
        for (const auto& l : levels) evals.emplace_back(rep, l);
        for (std::size_t k = 0; k < st.size(); ++k) {
          z[k] = st[k].z;
          r[k] = st[k].radius;
        }
        if (detail::has_parity(q)) detail::enforce_reflection_symmetry(z, r);
        detail::enforce_conjugate_symmetry(z, r);
        for (std::size_t k = 0; k < st.size(); ++k) {
          const detail::Eval e = evals[static_cast<std::size_t>(st[k].level)](z[k]);
          st[k].z = z[k];
          if (!detail::certified(e, n, opt.target_radius)) {
            st[k].final = false;
            done = false;
            worst = std::max(worst, n * std::abs(e.ratio));
          } else {
            r[k] = n * std::abs(e.ratio);
          }
        }
        if (done) {
          for (std::size_t k = 0; k < st.size(); ++k) {
            roots.push_back(z[k]);
            radii.push_back(r[k]);
          }
          break;
        }
      }
      worst = std::max(worst, res.worst_radius);
      const double cur = detail::level_bits(lvl);
      double want = std::max(res.needed_bits, cur + 1.0);
      if (lvl.tier == detail::Tier::Multi) want = std::max(want, 2.0 * cur);
      if (want > 131072.0) throw NumericalError("root iteration did not converge", worst);
      detail::Level next = detail::level_for_bits(want, opt.digits);
      // Double-double is cheap enough to pre-converge every root even when
      // it cannot certify them.
      if (lvl.tier == detail::Tier::Double && rep.fixed_precision_ok()) next = {detail::Tier::DoubleDouble, 106};
      lvl = detail::level_bits(next) > cur ? next : detail::Level{detail::Tier::Multi, static_cast<mpfr_prec_t>(2 * cur)};
    }
    for (const auto& l : levels) out.precision_bits = std::max<int>(out.precision_bits, static_cast<int>(l.bits));
  }

  std::vector<std::size_t> order(roots.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (roots[a].real() != roots[b].real()) return roots[a].real() < roots[b].real();
    return roots[a].imag() < roots[b].imag();
  });
  for (std::size_t k : order) {
    out.roots.push_back(roots[k]);
    out.radii.push_back(radii[k]);
  }
  return out;
}

inline RootSet find_roots(const IntPolynomial& p, double target_radius) {
  RootOptions opt;
  opt.target_radius = target_radius;
  return find_roots(p, opt);
}

/// n |p(z) / p'(z)|, evaluated with enough bits to absorb coefficient size.
inline double root_residual(const IntPolynomial& p, Complex z) {
  const int n = p.degree();
  if (n < 1) throw PreconditionError("residual requires degree >= 1");
  detail::Representation rep;
  rep.n = n;
  rep.exact = detail::to_vec(p);
  double top = 0.0;
  for (const auto& c : rep.exact) top = std::max(top, detail::bigint_log2(c));
  rep.scale_exp = static_cast<long>(std::floor(top));
  rep.abs_scaled.resize(rep.exact.size());
  for (std::size_t k = 0; k < rep.exact.size(); ++k) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, rep.exact[k].get_mpz_t());
    rep.abs_scaled[k] = std::abs(std::ldexp(m, static_cast<int>(std::max(e - rep.scale_exp, -1060L))));
  }
  const double scale = std::max(1.0, std::abs(z));
  const auto bits = static_cast<mpfr_prec_t>(mp::digits_to_bits(mp::configured_digits()) + top +
                                              n * std::log2(scale) + 64);
  detail::MultiEvaluator eval(rep, bits);
  const detail::Eval e = eval(z);
  if (!std::isfinite(e.log2_dp) || !e.finite) throw NumericalError("derivative vanishes near z");
  return n * std::abs(e.ratio);
}

}  // namespace equidist
