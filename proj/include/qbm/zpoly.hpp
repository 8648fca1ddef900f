#pragma once

// Dense univariate polynomials over the integers.
//
// This is the arithmetic kernel underneath every rational function in the
// library. Multiplication switches between a sparse loop, schoolbook and
// Kronecker substitution (one big-integer product) depending on operand
// shape; gcd is the modular dense algorithm with exact-division
// verification.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace qbm {

using Integer = mpz_class;
using Rational = mpq_class;

/// Polynomial in q with integer coefficients, ascending degree, trailing
/// zeros stripped (the zero polynomial has no coefficients).
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<Integer> coeffs);

  static ZPoly constant(const Integer& c);
  static ZPoly monomial(const Integer& c, std::size_t exponent);
  /// 1 + q^step + q^{2 step} + ... with `count` terms.
  static ZPoly geometric(std::size_t count, std::size_t step);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::size_t size() const { return c_.size(); }
  std::size_t nonzeros() const;

  const Integer& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Integer>& coeffs() const { return c_; }
  const Integer& lead() const { return c_.back(); }

  /// Coefficient of q^i, zero beyond the degree.
  Integer coeff(std::size_t i) const;

  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly& operator*=(const Integer& k);

  /// this += k * q^shift * o, without temporaries.
  void add_scaled(const ZPoly& o, const Integer& k, std::size_t shift = 0);

  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Integer> c_;
};

ZPoly operator+(ZPoly a, const ZPoly& b);
ZPoly operator-(ZPoly a, const ZPoly& b);
ZPoly operator-(ZPoly a);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator*(ZPoly a, const Integer& k);

/// Multiply by q^k.
ZPoly shift(const ZPoly& a, std::size_t k);

/// a(q^t) for t >= 1.
ZPoly substitute_power(const ZPoly& a, std::size_t t);

/// q^{deg a} a(1/q).
ZPoly reversed(const ZPoly& a);

ZPoly pow(const ZPoly& a, unsigned e);

/// Largest power of q dividing a (0 for the zero polynomial).
std::size_t low_order(const ZPoly& a);

Integer content(const ZPoly& a);

/// a / content(a) with positive leading coefficient.
ZPoly primitive_part(const ZPoly& a);

/// a / b when b divides a in Z[q], otherwise nullopt. Throws on b = 0.
std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b);

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

struct GcdCofactors {
  ZPoly gcd;       // primitive, positive leading coefficient
  ZPoly a_over_g;  // a == gcd * a_over_g exactly
  ZPoly b_over_g;
};

GcdCofactors gcd_cofactors(const ZPoly& a, const ZPoly& b);

Integer eval(const ZPoly& a, const Integer& x);
Rational eval(const ZPoly& a, const Rational& x);

namespace detail {
// Exposed for tests: the individual product strategies.
ZPoly mul_schoolbook(const ZPoly& a, const ZPoly& b);
ZPoly mul_sparse(const ZPoly& a, const ZPoly& b);
ZPoly mul_kronecker(const ZPoly& a, const ZPoly& b);
}  // namespace detail

}  // namespace qbm
