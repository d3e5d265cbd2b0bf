#pragma once

// Thin RAII layer over MPFR for the extended-precision kernels. Operations
// are in-place and allocation-free so that inner loops stay cheap.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <utility>

namespace equidist::mp {

constexpr mpfr_rnd_t rnd = MPFR_RNDN;

/// Significant decimal digits used when no override is given.
constexpr int default_digits = 30;

/// Digits from EQUIDIST_PRECISION, falling back to default_digits.
inline int configured_digits() {
  if (const char* env = std::getenv("EQUIDIST_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 16 && v <= 100000) return static_cast<int>(v);
  }
  return default_digits;
}

inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 4;
}

class Real {
 public:
  explicit Real(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(mpfr_prec_t bits, double x) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, rnd);
  }
  Real(mpfr_prec_t bits, const mpz_class& z) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, rnd);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, rnd);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, rnd); }
  void set(double x) { mpfr_set_d(v_, x, rnd); }

 private:
  mpfr_t v_;
};

/// Complex number as a pair of MPFR reals.
struct Cplx {
  Real re, im;

  explicit Cplx(mpfr_prec_t bits) : re(bits), im(bits) {}
  Cplx(mpfr_prec_t bits, std::complex<double> z) : re(bits, z.real()), im(bits, z.imag()) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  void set(std::complex<double> z) {
    re.set(z.real());
    im.set(z.imag());
  }
};

/// Scratch registers for complex multiply-accumulate.
class Workspace {
 public:
  explicit Workspace(mpfr_prec_t bits) : t1_(bits), t2_(bits), t3_(bits) {}

  /// acc <- acc * z + c (c real)
  void mul_add(Cplx& acc, const Cplx& z, const Real& c) {
    mul(acc, z);
    mpfr_add(acc.re.get(), acc.re.get(), c.get(), rnd);
  }

  /// acc <- acc * z + c (c complex)
  void mul_add(Cplx& acc, const Cplx& z, const Cplx& c) {
    mul(acc, z);
    mpfr_add(acc.re.get(), acc.re.get(), c.re.get(), rnd);
    mpfr_add(acc.im.get(), acc.im.get(), c.im.get(), rnd);
  }

  /// acc <- acc * z
  void mul(Cplx& acc, const Cplx& z) {
    mpfr_mul(t1_.get(), acc.re.get(), z.re.get(), rnd);
    mpfr_mul(t2_.get(), acc.im.get(), z.im.get(), rnd);
    mpfr_mul(t3_.get(), acc.re.get(), z.im.get(), rnd);
    mpfr_mul(acc.im.get(), acc.im.get(), z.re.get(), rnd);
    mpfr_add(acc.im.get(), acc.im.get(), t3_.get(), rnd);
    mpfr_sub(acc.re.get(), t1_.get(), t2_.get(), rnd);
  }

 private:
  Real t1_, t2_, t3_;
};

inline void set_zero(Cplx& z) {
  mpfr_set_zero(z.re.get(), 1);
  mpfr_set_zero(z.im.get(), 1);
}

namespace detail {

struct Split {
  double mantissa = 0.0;  // in [0.5, 1) in magnitude, or 0
  long exponent = 0;
};

inline Split split(const Real& r) {
  Split s;
  if (!mpfr_zero_p(r.get())) s.mantissa = mpfr_get_d_2exp(&s.exponent, r.get(), rnd);
  return s;
}

inline double scaled(const Split& s, long shift) {
  if (s.mantissa == 0.0) return 0.0;
  const long e = std::max(s.exponent - shift, -2000L);
  return std::ldexp(s.mantissa, static_cast<int>(e));
}

/// Mantissa pair of z scaled by 2^-top, where top is the larger exponent.
inline std::pair<std::complex<double>, long> normalize(const Cplx& z) {
  const Split a = split(z.re), b = split(z.im);
  long top = 0;
  if (a.mantissa != 0.0 && b.mantissa != 0.0) {
    top = std::max(a.exponent, b.exponent);
  } else if (a.mantissa != 0.0) {
    top = a.exponent;
  } else {
    top = b.exponent;
  }
  return {{scaled(a, top), scaled(b, top)}, top};
}

}  // namespace detail

/// log2 |z|, valid far outside the double exponent range.
inline double log2_abs(const Cplx& z) {
  if (mpfr_zero_p(z.re.get()) && mpfr_zero_p(z.im.get())) return -INFINITY;
  const auto [m, e] = detail::normalize(z);
  return std::log2(std::abs(m)) + static_cast<double>(e);
}

/// num / den rounded to double, without forming either operand in double.
inline std::complex<double> ratio(const Cplx& num, const Cplx& den) {
  if (mpfr_zero_p(den.re.get()) && mpfr_zero_p(den.im.get())) return {INFINITY, 0.0};
  if (mpfr_zero_p(num.re.get()) && mpfr_zero_p(num.im.get())) return {0.0, 0.0};
  const auto [mn, en] = detail::normalize(num);
  const auto [md, ed] = detail::normalize(den);
  const long shift = std::clamp(en - ed, -4000L, 4000L);
  return (mn / md) * std::exp2(static_cast<double>(shift));
}

}  // namespace equidist::mp
