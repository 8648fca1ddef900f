#pragma once

// The universal symbolic value type: elements of Q(zeta_m)(q).

#include <string>
#include <vector>

#include "qbm/cyclotomic.hpp"
#include "qbm/ratfunc.hpp"

namespace qbm {

/// Element of Q(zeta_m)(q), stored as coordinates over Q(q) in the power
/// basis 1, zeta_m, ..., zeta_m^{phi(m)-1}. Each coordinate is a canonical
/// RatFunc, so equality is coordinate-wise equality of canonical forms.
/// Binary operations on different orders work in Q(zeta_lcm).
class FieldElem {
 public:
  FieldElem() : FieldElem(RatFunc()) {}
  FieldElem(const RatFunc& f);  // NOLINT(google-explicit-constructor)
  FieldElem(long v) : FieldElem(RatFunc(v)) {}  // NOLINT(google-explicit-constructor)
  FieldElem(unsigned m, std::vector<RatFunc> coords);
  explicit FieldElem(const CycElem& c);

  unsigned order() const { return m_; }
  const std::vector<RatFunc>& coords() const { return coords_; }
  bool is_zero() const;
  /// True when every non-constant zeta coordinate vanishes.
  bool in_base_field() const;
  /// The Q(q) value; throws InvalidArgument when not in_base_field().
  const RatFunc& base_value() const;

  FieldElem embed(unsigned n) const;
  FieldElem inverse() const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend bool operator==(const FieldElem& a, const FieldElem& b);

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }

  /// Canonical string: one ratio with the monic lcm of coordinate
  /// denominators below and zeta powers written as z^j in the coefficients.
  std::string to_string() const;

 private:
  unsigned m_;
  std::vector<RatFunc> coords_;
};

enum class FieldOp { Add, Sub, Mul, Div };

FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op);

/// [x]_{q^c}.
FieldElem qnumber(long x, long c = 1);

/// f with q replaced by q^t.
FieldElem substitute_q_power(const FieldElem& f, long t);

/// The q -> 1 limit, or PoleAtOne.
CycElem eval_at_one(const FieldElem& f);

/// Unreduced counterpart of FieldElem for verification sums: coordinates are
/// Frac values and nothing is gcd-reduced until reduce().
struct LazyField {
  unsigned m = 1;
  std::vector<Frac> coords = std::vector<Frac>(1);

  LazyField() = default;
  explicit LazyField(unsigned order) : m(order), coords(totient(order)) {}
  explicit LazyField(const Frac& f) : coords{f} {}
  explicit LazyField(const FieldElem& f);

  LazyField embed(unsigned n) const;
  LazyField substitute(std::size_t t) const;
  FieldElem reduce() const;
  bool is_zero() const;
};

LazyField operator+(const LazyField& a, const LazyField& b);
LazyField operator-(const LazyField& a, const LazyField& b);
LazyField operator*(const LazyField& a, const Frac& f);
LazyField operator*(const LazyField& a, const CycElem& c);

/// Exact equality by coordinate-wise cross multiplication.
bool equal(const LazyField& a, const LazyField& b);

/// a - b as a canonical FieldElem; zero is returned without any gcd work.
FieldElem difference(const LazyField& a, const LazyField& b);

}  // namespace qbm
