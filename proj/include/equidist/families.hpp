#pragma once

// Generators for the integer polynomial corpora: cyclotomic products,
// Chebyshev polynomials, minimal polynomials of 4cos^2(pi/p) and z^n - 1.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equidist/errors.hpp"
#include "equidist/intpoly.hpp"
#include "equidist/mp.hpp"
#include "equidist/poly_format.hpp"

namespace equidist {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Euler's totient.
inline long totient(long n) {
  long out = n;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    out -= out / d;
  }
  if (n > 1) out -= out / n;
  return out;
}

/// z^n - 1
inline IntPolynomial power_minus_one(int n) {
  if (n < 1) throw PreconditionError("z^n - 1 requires n >= 1");
  return IntPolynomial::monomial(1, static_cast<std::size_t>(n)) - IntPolynomial{1};
}

/// Phi_1, ..., Phi_k, each by exact division of z^d - 1 by the earlier
/// factors indexed by proper divisors.
inline std::vector<IntPolynomial> cyclotomic_table(int k) {
  if (k < 1) throw PreconditionError("cyclotomic index must be >= 1");
  std::vector<IntPolynomial> table(static_cast<std::size_t>(k) + 1);
  for (int d = 1; d <= k; ++d) {
    IntPolynomial num = power_minus_one(d);
    IntPolynomial den{1};
    for (int e = 1; e < d; ++e) {
      if (d % e == 0) den = den * table[e];
    }
    table[d] = divide_exact(num, den);
  }
  return table;
}

inline IntPolynomial cyclotomic(int d) { return cyclotomic_table(d)[static_cast<std::size_t>(d)]; }

/// Product of Phi_d over 1 <= d <= k.
inline IntPolynomial cyclotomic_product(int k) {
  const std::vector<IntPolynomial> table = cyclotomic_table(k);
  IntPolynomial out{1};
  for (int d = 1; d <= k; ++d) out = out * table[d];
  return out;
}

/// Degree of cyclotomic_product(k) without building it.
inline long cyclotomic_product_degree(int k) {
  long n = 0;
  for (int d = 1; d <= k; ++d) n += totient(d);
  return n;
}

/// t_n(x) = 2 cos(n arccos(x/2)): t_0 = 2, t_1 = x, t_{n+1} = x t_n - t_{n-1}.
inline IntPolynomial chebyshev_t(int n) {
  if (n < 0) throw PreconditionError("Chebyshev index must be >= 0");
  IntPolynomial prev{2}, cur{0, 1};
  if (n == 0) return prev;
  const IntPolynomial x{0, 1};
  for (int k = 1; k < n; ++k) {
    IntPolynomial next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Minimal polynomial of 4cos^2(pi/p) from roots at the given working
/// precision. Throws InsufficientPrecision when the rounding cannot be
/// certified.
inline IntPolynomial totally_positive_minpoly_at(long p, int digits) {
  if (p < 3 || !is_prime(p)) throw PreconditionError("trace family requires an odd prime p");
  const int m = static_cast<int>((p - 1) / 2);
  const mpfr_prec_t bits = mp::digits_to_bits(digits);

  // Expand prod (x - r_k) with r_k = 4cos^2(k pi / p) = 2 + 2cos(2 k pi / p).
  std::vector<mp::Real> c;
  c.reserve(static_cast<std::size_t>(m) + 1);
  c.emplace_back(bits, 1.0);
  mp::Real root(bits), t(bits), abs_prod(bits, 1.0);
  mpfr_const_pi(t.get(), mp::rnd);
  for (int k = 1; k <= m; ++k) {
    mpfr_mul_si(root.get(), t.get(), 2 * k, mp::rnd);
    mpfr_div_si(root.get(), root.get(), p, mp::rnd);
    mpfr_cos(root.get(), root.get(), mp::rnd);
    mpfr_mul_ui(root.get(), root.get(), 2, mp::rnd);
    mpfr_add_ui(root.get(), root.get(), 2, mp::rnd);
    // c <- c * (x - root), coefficients stored low to high
    c.emplace_back(bits, 0.0);
    mp::Real tmp(bits);
    for (std::size_t j = c.size() - 1; j >= 1; --j) {
      mpfr_mul(tmp.get(), c[j].get(), root.get(), mp::rnd);
      mpfr_sub(c[j].get(), c[j - 1].get(), tmp.get(), mp::rnd);
    }
    mpfr_mul(c[0].get(), c[0].get(), root.get(), mp::rnd);
    mpfr_neg(c[0].get(), c[0].get(), mp::rnd);
    mpfr_add_ui(tmp.get(), root.get(), 1, mp::rnd);
    mpfr_mul(abs_prod.get(), abs_prod.get(), tmp.get(), mp::rnd);
  }

  // Forward error of the expansion, bounded by (2m + 4) u prod(1 + |r_k|).
  mp::Real bound(bits);
  mpfr_mul_ui(bound.get(), abs_prod.get(), static_cast<unsigned long>(2 * m + 4), mp::rnd);
  mpfr_mul_2si(bound.get(), bound.get(), -static_cast<long>(bits) + 1, mp::rnd);
  const double err = bound.to_double();

  std::vector<BigInt> coeffs(c.size());
  double worst = 0.0;
  mp::Real diff(bits);
  for (std::size_t j = 0; j < c.size(); ++j) {
    mpfr_round(diff.get(), c[j].get());
    mpfr_get_z(coeffs[j].get_mpz_t(), diff.get(), mp::rnd);
    mpfr_sub(diff.get(), c[j].get(), diff.get(), mp::rnd);
    worst = std::max(worst, std::abs(diff.to_double()));
  }
  if (worst >= 0.25 || err >= 0.25) {
    throw InsufficientPrecision("insufficient precision", std::max(worst, err));
  }
  return IntPolynomial(std::move(coeffs));
}

/// Round-and-verify starting at the configured digit count, doubling on
/// failure.
inline IntPolynomial totally_positive_minpoly(long p) {
  int digits = mp::configured_digits();
  for (;;) {
    try {
      return totally_positive_minpoly_at(p, digits);
    } catch (const InsufficientPrecision&) {
      if (digits > 100000) throw;
      digits *= 2;
    }
  }
}

enum class FamilyKind { CyclotomicProduct, ChebyshevT, TotallyPositiveMinPoly, ShiftedChebyshev, PowerMinusOne, Custom };

/// One family member, or a whole family when parameter is empty.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Custom;
  std::optional<long> parameter;
  long shift = 0;
  IntPolynomial literal;  // Custom only
};

/// A generated polynomial with a stable identifier.
struct FamilyMember {
  std::string id;
  long parameter = 0;
  IntPolynomial poly;
};

namespace detail {

struct FamilyName {
  std::string_view name;
  FamilyKind kind;
  char key;
};

inline constexpr FamilyName family_names[] = {
    {"cycloprod", FamilyKind::CyclotomicProduct, 'k'},
    {"chebyshev", FamilyKind::ChebyshevT, 'n'},
    {"trace", FamilyKind::TotallyPositiveMinPoly, 'p'},
    {"shiftcheb", FamilyKind::ShiftedChebyshev, 'n'},
    {"powm1", FamilyKind::PowerMinusOne, 'n'},
};

inline const FamilyName* find_family(FamilyKind kind) {
  for (const auto& f : family_names) {
    if (f.kind == kind) return &f;
  }
  return nullptr;
}

}  // namespace detail

inline std::string family_name(FamilyKind kind) {
  const auto* f = detail::find_family(kind);
  return f ? std::string(f->name) : "custom";
}

inline void validate(const FamilySpec& spec) {
  if (!spec.parameter) return;
  const long v = *spec.parameter;
  switch (spec.kind) {
    case FamilyKind::TotallyPositiveMinPoly:
      if (v < 3 || !is_prime(v)) throw PreconditionError("trace family requires an odd prime p");
      break;
    case FamilyKind::CyclotomicProduct:
      if (v < 1) throw PreconditionError("cycloprod requires k >= 1");
      break;
    case FamilyKind::PowerMinusOne:
      if (v < 1) throw PreconditionError("powm1 requires n >= 1");
      break;
    default:
      if (v < 0) throw PreconditionError("family parameter must be >= 0");
  }
}

/// Parses "name" or "name:key=value", e.g. "cycloprod:k=200" or "trace:p=97".
/// Any other text is read as a literal polynomial.
inline FamilySpec parse_family(std::string_view text, long shift_by = 0) {
  FamilySpec spec;
  spec.shift = shift_by;
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  for (const auto& f : detail::family_names) {
    if (head != f.name) continue;
    spec.kind = f.kind;
    if (colon != std::string_view::npos) {
      const std::string_view rest = text.substr(colon + 1);
      const std::size_t base = colon + 1;
      if (rest.size() < 3 || rest[0] != f.key || rest[1] != '=') {
        throw ParseError(std::string("expected '") + f.key + "=<integer>'", 1, base + 1);
      }
      const std::string_view digits = rest.substr(2);
      long v = 0;
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < '0' || digits[i] > '9') throw ParseError("expected integer", 1, base + 3 + i);
        v = v * 10 + (digits[i] - '0');
        if (v > 100000000) throw ParseError("parameter out of range", 1, base + 3 + i);
      }
      spec.parameter = v;
    }
    validate(spec);
    return spec;
  }
  spec.kind = FamilyKind::Custom;
  spec.literal = parse_polynomial(text);
  return spec;
}

/// Member of a parameterized family before any shift.
inline IntPolynomial family_polynomial(FamilyKind kind, long parameter) {
  switch (kind) {
    case FamilyKind::CyclotomicProduct: return cyclotomic_product(static_cast<int>(parameter));
    case FamilyKind::ChebyshevT: return chebyshev_t(static_cast<int>(parameter));
    case FamilyKind::TotallyPositiveMinPoly: return totally_positive_minpoly(parameter);
    case FamilyKind::ShiftedChebyshev: return shift(chebyshev_t(static_cast<int>(parameter)), 2);
    case FamilyKind::PowerMinusOne: return power_minus_one(static_cast<int>(parameter));
    case FamilyKind::Custom: break;
  }
  throw PreconditionError("custom family has no parameter");
}

/// Degree of the member with this parameter.
inline long family_degree(FamilyKind kind, long parameter) {
  switch (kind) {
    case FamilyKind::CyclotomicProduct: return cyclotomic_product_degree(static_cast<int>(parameter));
    case FamilyKind::TotallyPositiveMinPoly: return (parameter - 1) / 2;
    default: return parameter;
  }
}

inline std::string member_id(const FamilySpec& spec, long parameter) {
  std::string id;
  if (spec.kind == FamilyKind::Custom) {
    id = format_symbolic(spec.literal);
  } else {
    const auto* f = detail::find_family(spec.kind);
    id = std::string(f->name) + ':' + f->key + '=' + std::to_string(parameter);
  }
  if (spec.shift != 0) id += ";shift=" + std::to_string(spec.shift);
  return id;
}

/// Parameters whose members have degree in [n_min, n_max], ascending.
inline std::vector<long> family_parameters(const FamilySpec& spec, long n_min, long n_max) {
  if (spec.kind == FamilyKind::Custom) return {};
  if (spec.parameter) return {*spec.parameter};
  std::vector<long> out;
  switch (spec.kind) {
    case FamilyKind::CyclotomicProduct:
      for (long k = 1, n = 1; n <= n_max; ++k, n += totient(k)) {
        if (n >= n_min) out.push_back(k);
      }
      break;
    case FamilyKind::TotallyPositiveMinPoly:
      for (long p = 3; (p - 1) / 2 <= n_max; p += 2) {
        if (is_prime(p) && (p - 1) / 2 >= n_min) out.push_back(p);
      }
      break;
    default:
      for (long n = std::max(n_min, spec.kind == FamilyKind::PowerMinusOne ? 1L : 0L); n <= n_max; ++n) out.push_back(n);
  }
  return out;
}

inline FamilyMember make_member(const FamilySpec& spec, long parameter) {
  IntPolynomial p = spec.kind == FamilyKind::Custom ? spec.literal : family_polynomial(spec.kind, parameter);
  if (spec.shift != 0) p = shift(p, spec.shift);
  return {member_id(spec, parameter), parameter, std::move(p)};
}

/// All members of the spec with degree in [n_min, n_max]. A literal or a
/// fixed parameter yields a single member regardless of the range.
inline std::vector<FamilyMember> family_members(const FamilySpec& spec, long n_min, long n_max) {
  std::vector<FamilyMember> out;
  if (spec.kind == FamilyKind::Custom) {
    out.push_back(make_member(spec, 0));
    return out;
  }
  for (long param : family_parameters(spec, n_min, n_max)) out.push_back(make_member(spec, param));
  return out;
}

}  // namespace equidist
