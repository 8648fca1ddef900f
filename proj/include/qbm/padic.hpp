#pragma once

// Finite-precision p-adic numbers with certified absolute precision.
//
// A PAdic is a rational representative plus a precision M: the true value
// lies in value + p^M Z_p. Exact values (M = infinity) stay exact rationals
// through every operation; finite-precision values are reduced to the
// canonical representative p^v * u with 0 <= u < p^{M-v} after each step.

#include <climits>
#include <string>
#include <vector>

#include "qbm/cyclotomic.hpp"
#include "qbm/field.hpp"
#include "qbm/zpoly.hpp"

namespace qbm {

inline constexpr long kInfinity = LONG_MAX;

/// nu_p(x); kInfinity for x = 0.
long vp(const Rational& x, long p);
long vp(const Integer& x, long p);

bool is_prime(long n);

class PAdic {
 public:
  PAdic(long p, const Rational& value, long prec = kInfinity);

  static PAdic exact(long p, const Rational& value) { return PAdic(p, value, kInfinity); }

  long p() const { return p_; }
  const Rational& value() const { return value_; }
  long prec() const { return prec_; }
  bool is_exact() const { return prec_ == kInfinity; }
  /// Valuation of the representative (kInfinity for zero).
  long valuation() const { return vp(value_, p_); }
  /// min(valuation, prec): the valuation this value is certified to have at least.
  long certified_valuation() const;
  /// Indistinguishable from zero at the current precision.
  bool is_zero() const { return value_ == 0; }

  PAdic with_precision(long prec) const;

  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a);
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  /// DivisionByZero for an exact zero divisor, PrecisionLoss when the
  /// divisor is zero only at its (finite) precision.
  friend PAdic operator/(const PAdic& a, const PAdic& b);

  PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
  PAdic& operator*=(const PAdic& o) { return *this = *this * o; }

  PAdic pow(long n) const;

  /// Same class at the coarser of the two precisions.
  bool congruent(const PAdic& o) const;

  /// Base-p digit expansion "d0 + d1*p + ... + O(p^M)"; exact values are
  /// shown to `shown` digits past the valuation.
  std::string digits(long shown = 20) const;

 private:
  void normalize();

  long p_;
  Rational value_;
  long prec_;
};

/// A base point q in Q_p with v_p(q - 1) >= 1.
class QPoint {
 public:
  explicit QPoint(const PAdic& q);
  QPoint(long p, const Rational& q) : QPoint(PAdic::exact(p, q)) {}

  /// Parses "1+3", "4", "-2", "7/4" or "1+p" (p is substituted).
  static QPoint parse(long p, const std::string& text);

  const PAdic& value() const { return q_; }
  long p() const { return q_.p(); }
  /// v_p(q - 1), capped by the precision of q.
  long distance_to_one() const;

 private:
  PAdic q_;
};

/// q^t via the binomial series sum_j C(t, j) (q-1)^j, t in Z_p.
PAdic q_power(const QPoint& q, const Rational& t, long target_prec);
/// q^t for any base with v_p(base - 1) >= 1 (integer t uses exact powers).
PAdic base_power(const PAdic& base, const Rational& t, long target_prec);

/// [y]_{base^c} = (1 - base^{c y}) / (1 - base^c) for rational y, c in Z_p.
PAdic bracket(const PAdic& base, const Rational& y, const Rational& c, long target_prec);

PAdic eval_poly(const ZPoly& f, const PAdic& x);
PAdic eval_ratfunc(const RatFunc& f, const PAdic& x);

/// Element of Q_p(zeta_m) as PAdic coordinates in the power basis.
class CycPAdic {
 public:
  CycPAdic(long p, unsigned m);
  explicit CycPAdic(const PAdic& x);
  CycPAdic(unsigned m, std::vector<PAdic> coords);

  long p() const { return coords_.front().p(); }
  unsigned order() const { return m_; }
  const std::vector<PAdic>& coords() const { return coords_; }
  long certified_valuation() const;
  long prec() const;

  CycPAdic embed(unsigned n) const;

  friend CycPAdic operator+(const CycPAdic& a, const CycPAdic& b);
  friend CycPAdic operator-(const CycPAdic& a, const CycPAdic& b);
  friend CycPAdic operator*(const CycPAdic& a, const CycPAdic& b);
  friend CycPAdic operator*(const CycPAdic& a, const PAdic& s);
  friend CycPAdic operator*(const CycPAdic& a, const CycElem& c);

 private:
  unsigned m_;
  std::vector<PAdic> coords_;
};

/// Evaluates a symbolic value at a p-adic base point.
PAdic eval_field_elem(const RatFunc& f, const QPoint& q);
CycPAdic eval_field_elem(const FieldElem& f, const PAdic& base);

}  // namespace qbm
