#pragma once

// Exact arithmetic on univariate integer polynomials.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "equidist/errors.hpp"

namespace equidist {

using BigInt = mpz_class;
using Complex = std::complex<double>;

/// Dense integer polynomial, coefficient k multiplies z^k. The zero
/// polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  /// c * z^k
  static IntPolynomial monomial(const BigInt& c, std::size_t k) {
    std::vector<BigInt> v(k + 1);
    v[k] = c;
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  const BigInt& coeff(std::size_t k) const {
    static const BigInt zero{0};
    return k < coeffs_.size() ? coeffs_[k] : zero;
  }

  const BigInt& leading() const {
    if (is_zero()) throw PreconditionError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }

  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }

  IntPolynomial& operator*=(const BigInt& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const BigInt& s) { return a *= s; }
  friend IntPolynomial operator-(IntPolynomial a) { return a *= BigInt(-1); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
      }
    }
    return IntPolynomial(std::move(out));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// Natural log of |i| for an arbitrary-precision integer.
struct BigLog {
  double value = 0.0;
  double relative_error = 0.0;
};

namespace detail {

inline std::vector<BigInt> to_vec(const IntPolynomial& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

inline void trim(std::vector<BigInt>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

inline int deg(const std::vector<BigInt>& v) { return static_cast<int>(v.size()) - 1; }

inline BigInt content(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& c : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline void divide_all(std::vector<BigInt>& v, const BigInt& d) {
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
inline std::vector<BigInt> pseudo_remainder(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const int db = deg(b);
  const int delta = deg(a) - db;
  const BigInt& lb = b.back();
  int steps = 0;
  BigInt lead;
  while (deg(a) >= db && !a.empty()) {
    lead = a.back();
    const int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(a[shift + j].get_mpz_t(), lead.get_mpz_t(), b[j].get_mpz_t());
    }
    trim(a);
    ++steps;
  }
  const int missing = delta + 1 - steps;
  if (missing > 0 && !a.empty()) {
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(missing));
    for (auto& c : a) c *= f;
  }
  return a;
}

inline BigInt pow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Arithmetic in F_q[x] for the simple-zero certificate.
using ModPoly = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

inline void trim(ModPoly& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

inline ModPoly reduce(const std::vector<BigInt>& v, std::uint64_t q) {
  ModPoly out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = mpz_fdiv_ui(v[k].get_mpz_t(), q);
  trim(out);
  return out;
}

/// Degree of gcd(a, b) over F_q.
inline int gcd_degree_mod(ModPoly a, ModPoly b, std::uint64_t q) {
  while (!b.empty()) {
    const std::uint64_t inv = powmod(b.back(), q - 2, q);
    while (a.size() >= b.size() && !a.empty()) {
      const std::uint64_t f = mulmod(a.back(), inv, q);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + q - mulmod(f, b[j], q)) % q;
      }
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace detail

/// Horner evaluation in double precision. Integer and Gaussian-integer
/// points are evaluated exactly and rounded once at the end.
inline Complex evaluate(const IntPolynomial& p, Complex z) {
  if (p.is_zero()) return {0.0, 0.0};
  const bool integral = z.real() == std::floor(z.real()) && z.imag() == std::floor(z.imag()) &&
                        std::abs(z.real()) < 9.0e15 && std::abs(z.imag()) < 9.0e15;
  if (integral) {
    const BigInt x(z.real()), y(z.imag());
    BigInt re = 0, im = 0, t;
    for (int k = p.degree(); k >= 0; --k) {
      t = re * x - im * y + p.coeff(k);
      im = re * y + im * x;
      re = t;
    }
    return {re.get_d(), im.get_d()};
  }
  Complex acc{0.0, 0.0};
  for (int k = p.degree(); k >= 0; --k) acc = acc * z + p.coeff(k).get_d();
  return acc;
}

/// Exact value at an integer point.
inline BigInt evaluate_exact(const IntPolynomial& p, const BigInt& x) {
  BigInt acc = 0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * x + p.coeff(k);
  return acc;
}

/// Formal derivative; constants map to the zero polynomial.
inline IntPolynomial derivative(const IntPolynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<BigInt> d(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) d[k - 1] = p.coeff(k) * k;
  return IntPolynomial(std::move(d));
}

/// Exact quotient a / b; throws if b does not divide a over Z.
inline IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return {};
    throw PreconditionError("inexact polynomial division");
  }
  std::vector<BigInt> rem = detail::to_vec(a);
  std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const BigInt& lb = b.leading();
  const int db = b.degree();
  BigInt q, r;
  for (int k = a.degree(); k >= db; --k) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[k].get_mpz_t(), lb.get_mpz_t());
    if (r != 0) throw PreconditionError("inexact polynomial division");
    quot[k - db] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) mpz_submul(rem[k - db + j].get_mpz_t(), q.get_mpz_t(), b.coeff(j).get_mpz_t());
  }
  for (int k = 0; k < db; ++k) {
    if (rem[k] != 0) throw PreconditionError("inexact polynomial division");
  }
  return IntPolynomial(std::move(quot));
}

/// Res(a, b) by the subresultant pseudo-remainder chain.
inline BigInt resultant(const IntPolynomial& a_in, const IntPolynomial& b_in) {
  if (a_in.is_zero() || b_in.is_zero()) return 0;
  std::vector<BigInt> a = detail::to_vec(a_in), b = detail::to_vec(b_in);
  BigInt s = 1;
  if (detail::deg(a) < detail::deg(b)) {
    std::swap(a, b);
    if ((detail::deg(a) & 1) && (detail::deg(b) & 1)) s = -1;
  }
  if (detail::deg(b) == 0) return s * detail::pow(b[0], static_cast<unsigned long>(detail::deg(a)));

  const BigInt ca = detail::content(a), cb = detail::content(b);
  BigInt t = detail::pow(ca, static_cast<unsigned long>(detail::deg(b))) *
             detail::pow(cb, static_cast<unsigned long>(detail::deg(a)));
  detail::divide_all(a, ca);
  detail::divide_all(b, cb);

  BigInt g = 1, h = 1;
  for (;;) {
    const int da = detail::deg(a), db = detail::deg(b);
    const int delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    std::vector<BigInt> r = detail::pseudo_remainder(a, b);
    a = std::move(b);
    if (r.empty()) return 0;
    const BigInt divisor = g * detail::pow(h, static_cast<unsigned long>(delta));
    detail::divide_all(r, divisor);
    b = std::move(r);
    g = a.back();
    // h <- g^delta / h^(delta-1)
    if (delta > 0) {
      BigInt num = detail::pow(g, static_cast<unsigned long>(delta));
      BigInt den = detail::pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (detail::deg(b) == 0) {
      const int dA = detail::deg(a);
      BigInt num = detail::pow(b[0], static_cast<unsigned long>(dA));
      BigInt den = detail::pow(h, static_cast<unsigned long>(dA - 1));
      BigInt hh;
      mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * t * hh;
    }
  }
}

namespace detail {

/// Montgomery arithmetic modulo an odd q < 2^62.
struct Montgomery {
  std::uint64_t q, qinv, r2;

  explicit Montgomery(std::uint64_t modulus) : q(modulus), qinv(1) {
    for (int k = 0; k < 6; ++k) qinv *= 2 - q * qinv;
    qinv = -qinv;
    const unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % q;
    r2 = static_cast<std::uint64_t>(r * r % q);
  }
  std::uint64_t redc(unsigned __int128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * qinv;
    const std::uint64_t u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * q) >> 64);
    return u >= q ? u - q : u;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return redc(static_cast<unsigned __int128>(a) * b); }
  std::uint64_t to(std::uint64_t a) const { return mul(a % q, r2); }
  std::uint64_t from(std::uint64_t a) const { return redc(a); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a + b >= q ? a + b - q : a + b; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q - b; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = to(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, q - 2); }
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 4) return n >= 2;
  if (n % 2 == 0) return false;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

/// Res(a, b) over F_q in Montgomery form; both leading coefficients nonzero.
inline std::uint64_t resultant_mod(ModPoly a, ModPoly b, const Montgomery& m) {
  std::uint64_t res = m.to(1);
  for (;;) {
    const std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return m.mul(res, m.pow(b[0], da));
    const std::uint64_t inv = m.inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t f = m.mul(a.back(), inv);
      const std::size_t off = a.size() - b.size();
      for (std::size_t j = 0; j + 1 < b.size(); ++j) a[off + j] = m.sub(a[off + j], m.mul(f, b[j]));
      a.pop_back();
      trim(a);
      if (a.empty()) return 0;
    }
    const std::size_t dr = a.size() - 1;
    res = m.mul(res, m.pow(b.back(), da - dr));
    if ((da & 1) && (db & 1)) res = m.sub(0, res);
    std::swap(a, b);
  }
}

inline double l2_log2(const std::vector<BigInt>& v) {
  double top = 0.0;
  for (const BigInt& c : v) {
    if (c != 0) top = std::max(top, static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  }
  return top + 0.5 * std::log2(static_cast<double>(v.size()));
}

/// Discriminant by the subresultant chain over Z.
inline BigInt discriminant_subresultant(const IntPolynomial& p);

/// Discriminant from residues modulo primes near 2^62, joined by CRT.
/// The prime count covers the Hadamard bound on the Sylvester determinant,
/// or log2_bound when that is smaller.
inline BigInt discriminant_multimodular(const IntPolynomial& p,
                                        double log2_bound = std::numeric_limits<double>::infinity()) {
  const int n = p.degree();
  const std::vector<BigInt> v = to_vec(p);
  std::vector<BigInt> dv(v.size() - 1);
  for (int k = 1; k <= n; ++k) dv[k - 1] = v[k] * k;
  const double bound = std::min((n - 1) * l2_log2(v) + n * l2_log2(dv), log2_bound) + 2.0;
  const bool odd_sign = (static_cast<long>(n) * (n - 1) / 2) % 2 != 0;
  BigInt x = 0, modulus = 1;
  double bits = 0.0;
  for (std::uint64_t q = (1ULL << 62) - 1; bits <= bound; q -= 2) {
    if (!is_prime_u64(q)) continue;
    const std::uint64_t lead = mpz_fdiv_ui(v.back().get_mpz_t(), q);
    if (lead == 0) continue;
    const Montgomery m(q);
    ModPoly a(v.size()), b(dv.size());
    for (std::size_t k = 0; k < v.size(); ++k) a[k] = m.to(mpz_fdiv_ui(v[k].get_mpz_t(), q));
    for (std::size_t k = 0; k < dv.size(); ++k) b[k] = m.to(mpz_fdiv_ui(dv[k].get_mpz_t(), q));
    std::uint64_t r = m.mul(resultant_mod(std::move(a), std::move(b), m), m.inv(m.to(lead)));
    if (odd_sign) r = m.sub(0, r);
    r = m.from(r);
    // Garner step: x <- x + modulus * ((r - x) / modulus mod q)
    const std::uint64_t xq = mpz_fdiv_ui(x.get_mpz_t(), q);
    const std::uint64_t mq = m.to(mpz_fdiv_ui(modulus.get_mpz_t(), q));
    const std::uint64_t t = m.from(m.mul(m.sub(m.to(r), m.to(xq)), m.inv(mq)));
    mpz_addmul_ui(x.get_mpz_t(), modulus.get_mpz_t(), t);
    modulus *= static_cast<unsigned long>(q);
    bits += 61.0;
  }
  if (2 * x > modulus) x -= modulus;
  return x;
}

inline BigInt discriminant_subresultant(const IntPolynomial& p) {
  const int n = p.degree();
  BigInt res = resultant(p, derivative(p));
  BigInt out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) out = -out;
  return out;
}

}  // namespace detail

/// Discriminant (-1)^(n(n-1)/2) Res(p, p') / a_n; requires degree >= 2.
/// Low degrees use the subresultant chain, higher degrees a multimodular
/// resultant. A caller that knows log2|disc| <= log2_bound may pass it to
/// cut the prime count; the result is only correct if the bound holds.
inline BigInt discriminant(const IntPolynomial& p, double log2_bound = std::numeric_limits<double>::infinity()) {
  const int n = p.degree();
  if (n < 2) throw PreconditionError("discriminant requires degree >= 2");
  return n < 48 ? detail::discriminant_subresultant(p) : detail::discriminant_multimodular(p, log2_bound);
}

/// True iff p has no repeated root. A coprimality certificate modulo a
/// large prime settles the common case; otherwise the exact discriminant
/// decides.
inline bool has_simple_zeros(const IntPolynomial& p) {
  const int n = p.degree();
  if (n < 1) throw PreconditionError("simple-zero test requires degree >= 1");
  if (n == 1) return true;
  static constexpr std::array<std::uint64_t, 3> primes{2305843009213693951ULL, 4294967291ULL,
                                                       1000000007ULL};
  const std::vector<BigInt> v = detail::to_vec(p);
  const std::vector<BigInt> dv = detail::to_vec(derivative(p));
  for (std::uint64_t q : primes) {
    if (static_cast<std::uint64_t>(n) >= q) continue;
    detail::ModPoly a = detail::reduce(v, q);
    if (detail::deg(v) != static_cast<int>(a.size()) - 1) continue;  // q | a_n
    if (detail::gcd_degree_mod(a, detail::reduce(dv, q), q) == 0) return true;
  }
  return discriminant(p) != 0;
}

/// ln|i| from the bit length plus a 53-bit leading mantissa.
inline BigLog log_abs(const BigInt& i) {
  if (i == 0) throw PreconditionError("log of zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, i.get_mpz_t());
  const double value = std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
  const double abs_err = 2.3e-16 * (1.0 + std::abs(static_cast<double>(exp)));
  return {value, value == 0.0 ? 0.0 : abs_err / std::abs(value)};
}

/// p(z - c): translates every zero by +c.
inline IntPolynomial shift(const IntPolynomial& p, const BigInt& c) {
  if (p.is_zero() || c == 0) return p;
  // Taylor shift by repeated synthetic division with root -c.
  std::vector<BigInt> a = detail::to_vec(p);
  const BigInt mc = -c;
  const int n = p.degree();
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) mpz_addmul(a[k].get_mpz_t(), a[k + 1].get_mpz_t(), mc.get_mpz_t());
  }
  return IntPolynomial(std::move(a));
}

/// Primitive part with positive leading coefficient.
inline IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  std::vector<BigInt> v = detail::to_vec(p);
  BigInt c = detail::content(v);
  if (v.back() < 0) c = -c;
  detail::divide_all(v, c);
  return IntPolynomial(std::move(v));
}

/// Greatest common divisor over Z by the primitive remainder sequence,
/// normalized to a positive leading coefficient.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return primitive_part(b) * abs(detail::content(detail::to_vec(b)));
  if (b.is_zero()) return primitive_part(a) * abs(detail::content(detail::to_vec(a)));
  BigInt g;
  const BigInt ca = detail::content(detail::to_vec(a)), cb = detail::content(detail::to_vec(b));
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  std::vector<BigInt> x = detail::to_vec(primitive_part(a)), y = detail::to_vec(primitive_part(b));
  if (detail::deg(x) < detail::deg(y)) std::swap(x, y);
  while (!y.empty()) {
    std::vector<BigInt> r = detail::pseudo_remainder(x, y);
    x = std::move(y);
    y = detail::to_vec(primitive_part(IntPolynomial(std::move(r))));
  }
  return primitive_part(IntPolynomial(std::move(x))) * g;
}

/// Yun's algorithm: primitive squarefree factors paired with their
/// multiplicities. Constant factors are dropped.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<std::pair<IntPolynomial, int>> out;
  const IntPolynomial f = primitive_part(p);
  const IntPolynomial df = derivative(f);
  const IntPolynomial a0 = primitive_part(gcd(f, df));
  IntPolynomial b = divide_exact(f, a0);
  IntPolynomial c = divide_exact(df, a0);
  IntPolynomial d = c - derivative(b);
  for (int i = 1; b.degree() >= 1; ++i) {
    const IntPolynomial a = primitive_part(gcd(b, d));
    if (a.degree() >= 1) out.emplace_back(a, i);
    const IntPolynomial nb = divide_exact(b, a);
    c = divide_exact(d, a);
    b = nb;
    d = c - derivative(b);
  }
  return out;
}

}  // namespace equidist
