#pragma once

#include <string>
#include <vector>

#include "qbm/zpoly.hpp"

namespace qbm {

/// Element of Q(q) in canonical form  scale * num / den  where num and den are
/// primitive integer polynomials with positive leading coefficients and
/// gcd(num, den) = 1. Zero is scale 0, num 0, den 1. Two values are equal iff
/// their canonical triples are identical.
class RatFunc {
 public:
  RatFunc() : den_(ZPoly::constant(1)) {}
  RatFunc(long v);  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& v);  // NOLINT(google-explicit-constructor)
  explicit RatFunc(const ZPoly& p);

  /// Reduces an arbitrary ratio; throws DivisionByZero when den = 0.
  static RatFunc make(const Rational& scale, const ZPoly& num, const ZPoly& den);
  static RatFunc fraction(const ZPoly& num, const ZPoly& den) { return make(1, num, den); }
  static RatFunc q_power(long e);

  bool is_zero() const { return scale_ == 0; }
  bool is_one() const { return scale_ == 1 && num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  const Rational& scale() const { return scale_; }
  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  RatFunc inverse() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.scale_ == b.scale_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  /// f(q^t), t != 0.
  RatFunc substitute(long t) const;

  /// The q -> 1 limit; throws PoleAtOne when the reduced denominator vanishes at 1.
  Rational eval_at_one() const;

  Rational eval(const Rational& x) const;

  /// Numerator of the monic-denominator form, as rational coefficients.
  std::vector<Rational> monic_numerator() const;
  /// Denominator divided by its leading coefficient.
  std::vector<Rational> monic_denominator() const;

  /// "(num)/(den)" with monic den, or just "num" for polynomials.
  std::string to_string() const;

 private:
  Rational scale_;
  ZPoly num_;
  ZPoly den_;
};

/// Renders a polynomial given by rational coefficients (ascending) in
/// descending degree, e.g. "q^2 - 1/2*q + 3".
std::string format_poly(const std::vector<Rational>& coeffs);

/// [x]_{q^c} = (1 - q^{cx}) / (1 - q^c) for integer x >= 0, c != 0.
RatFunc qnumber_rf(long x, long c = 1);
/// The same bracket as a polynomial when c > 0.
ZPoly qnumber_poly(std::size_t x, std::size_t c = 1);

/// An unreduced ratio of integer polynomials. Used on verification paths
/// where only equality matters: sums and products never compute a gcd, and
/// operands sharing the same denominator are added without growth.
struct Frac {
  ZPoly num;
  ZPoly den = ZPoly::constant(1);

  Frac() = default;
  Frac(ZPoly n, ZPoly d) : num(std::move(n)), den(std::move(d)) {}
  explicit Frac(const RatFunc& f);

  bool is_zero() const { return num.is_zero(); }
  Frac substitute(std::size_t t) const;
  RatFunc reduce() const;
};

Frac operator+(const Frac& a, const Frac& b);
Frac operator-(const Frac& a, const Frac& b);
Frac operator*(const Frac& a, const Frac& b);
Frac operator*(const Frac& a, const ZPoly& p);
Frac operator*(const Frac& a, const Integer& k);

/// Exact equality by cross multiplication.
bool equal(const Frac& a, const Frac& b);

/// a - b reduced; skips the gcd work entirely when the difference is zero.
RatFunc difference(const Frac& a, const Frac& b);

}  // namespace qbm
