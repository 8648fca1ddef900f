#include "qbm/ratfunc.hpp"

#include <sstream>

#include "qbm/error.hpp"

namespace qbm {

RatFunc::RatFunc(long v) : RatFunc(Rational(v)) {}

RatFunc::RatFunc(const Rational& v) : den_(ZPoly::constant(1)) {
  if (v != 0) {
    scale_ = v;
    num_ = ZPoly::constant(1);
  }
}

RatFunc::RatFunc(const ZPoly& p) : den_(ZPoly::constant(1)) {
  if (p.is_zero()) return;
  num_ = primitive_part(p);
  Integer c = content(p);
  scale_ = (p.lead() < 0) ? Rational(-c) : Rational(c);
}

RatFunc RatFunc::make(const Rational& scale, const ZPoly& num, const ZPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  RatFunc r;
  if (scale == 0 || num.is_zero()) return r;
  GcdCofactors g = gcd_cofactors(num, den);
  Integer cn = content(g.a_over_g), cd = content(g.b_over_g);
  if (g.a_over_g.lead() < 0) cn = -cn;
  if (g.b_over_g.lead() < 0) cd = -cd;
  r.num_ = primitive_part(g.a_over_g);
  r.den_ = primitive_part(g.b_over_g);
  r.scale_ = scale * Rational(cn) / Rational(cd);
  return r;
}

RatFunc RatFunc::q_power(long e) {
  RatFunc r;
  r.scale_ = 1;
  if (e >= 0) {
    r.num_ = ZPoly::monomial(1, static_cast<std::size_t>(e));
  } else {
    r.num_ = ZPoly::constant(1);
    r.den_ = ZPoly::monomial(1, static_cast<std::size_t>(-e));
  }
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero rational function");
  RatFunc r;
  r.scale_ = 1 / scale_;
  r.num_ = den_;
  r.den_ = num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  GcdCofactors g = gcd_cofactors(a.den_, b.den_);
  const Integer& a1 = a.scale_.get_num();
  const Integer& b1 = a.scale_.get_den();
  const Integer& a2 = b.scale_.get_num();
  const Integer& b2 = b.scale_.get_den();
  ZPoly t = (a.num_ * g.b_over_g) * Integer(a1 * b2);
  t += (b.num_ * g.a_over_g) * Integer(a2 * b1);
  if (t.is_zero()) return {};
  GcdCofactors h = gcd_cofactors(t, g.gcd);
  RatFunc r;
  Integer ct = content(h.a_over_g);
  if (h.a_over_g.lead() < 0) ct = -ct;
  r.num_ = primitive_part(h.a_over_g);
  r.den_ = primitive_part(h.b_over_g * g.a_over_g * g.b_over_g);
  r.scale_ = Rational(ct) / Rational(b1 * b2);
  return r;
}

RatFunc operator-(const RatFunc& a) {
  RatFunc r = a;
  r.scale_ = -r.scale_;
  return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  GcdCofactors g1 = gcd_cofactors(a.num_, b.den_);
  GcdCofactors g2 = gcd_cofactors(b.num_, a.den_);
  RatFunc r;
  r.scale_ = a.scale_ * b.scale_;
  r.num_ = primitive_part(g1.a_over_g * g2.a_over_g);
  r.den_ = primitive_part(g2.b_over_g * g1.b_over_g);
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::substitute(long t) const {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "substitute_q_power: exponent must be nonzero");
  if (is_zero() || t == 1) return *this;
  if (t > 0) {
    RatFunc r = *this;
    r.num_ = substitute_power(num_, static_cast<std::size_t>(t));
    r.den_ = substitute_power(den_, static_cast<std::size_t>(t));
    return r;
  }
  // f(q^{-s}) = q^{s (deg den - deg num)} rev(num)(q^s) / rev(den)(q^s)
  const auto s = static_cast<std::size_t>(-t);
  ZPoly n = substitute_power(reversed(num_), s);
  ZPoly d = substitute_power(reversed(den_), s);
  long shift_by = static_cast<long>(s) * (den_.degree() - num_.degree());
  if (shift_by >= 0) {
    n = shift(n, static_cast<std::size_t>(shift_by));
  } else {
    d = shift(d, static_cast<std::size_t>(-shift_by));
  }
  return make(scale_, n, d);
}

Rational RatFunc::eval_at_one() const {
  if (is_zero()) return 0;
  Integer d = qbm::eval(den_, Integer(1));
  if (d == 0) throw Error(ErrorCode::PoleAtOne, "rational function has a pole at q = 1");
  Rational r(qbm::eval(num_, Integer(1)), d);
  r.canonicalize();
  return scale_ * r;
}

Rational RatFunc::eval(const Rational& x) const {
  if (is_zero()) return 0;
  Rational d = qbm::eval(den_, x);
  if (d == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes at evaluation point");
  return scale_ * qbm::eval(num_, x) / d;
}

std::vector<Rational> RatFunc::monic_numerator() const {
  std::vector<Rational> v;
  if (is_zero()) return v;
  Rational f = scale_ * Rational(den_.lead());
  for (const auto& c : num_.coeffs()) v.emplace_back(f * c);
  return v;
}

std::vector<Rational> RatFunc::monic_denominator() const {
  std::vector<Rational> v;
  for (const auto& c : den_.coeffs()) v.emplace_back(Rational(c, den_.lead()));
  for (auto& x : v) x.canonicalize();
  return v;
}

std::string format_poly(const std::vector<Rational>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "q";
    if (i > 1) os << "^" << i;
  }
  return first ? std::string("0") : os.str();
}

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  std::string n = format_poly(monic_numerator());
  if (den_.is_one()) return n;
  return "(" + n + ")/(" + format_poly(monic_denominator()) + ")";
}

ZPoly qnumber_poly(std::size_t x, std::size_t c) { return ZPoly::geometric(x, c); }

RatFunc qnumber_rf(long x, long c) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "qnumber: x must be nonnegative");
  if (c == 0) throw Error(ErrorCode::InvalidArgument, "qnumber: base exponent must be nonzero");
  if (x == 0) return {};
  if (c > 0) return RatFunc(ZPoly::geometric(static_cast<std::size_t>(x), static_cast<std::size_t>(c)));
  const auto s = static_cast<std::size_t>(-c);
  return RatFunc::fraction(ZPoly::geometric(static_cast<std::size_t>(x), s),
                           ZPoly::monomial(1, s * static_cast<std::size_t>(x - 1)));
}

// ---------------------------------------------------------------------------

Frac::Frac(const RatFunc& f)
    : num(f.num() * Integer(f.scale().get_num())), den(f.den() * Integer(f.scale().get_den())) {}

Frac Frac::substitute(std::size_t t) const { return {substitute_power(num, t), substitute_power(den, t)}; }

RatFunc Frac::reduce() const { return RatFunc::make(1, num, den); }

Frac operator+(const Frac& a, const Frac& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den == b.den) return {a.num + b.num, a.den};
  if (b.den.is_one()) return {a.num + b.num * a.den, a.den};
  if (a.den.is_one()) return {a.num * b.den + b.num, b.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Frac operator-(const Frac& a, const Frac& b) { return a + Frac{-b.num, b.den}; }

Frac operator*(const Frac& a, const Frac& b) {
  if (a.is_zero() || b.is_zero()) return {};
  ZPoly d = a.den.is_one() ? b.den : (b.den.is_one() ? a.den : a.den * b.den);
  return {a.num * b.num, std::move(d)};
}

Frac operator*(const Frac& a, const ZPoly& p) { return {a.num * p, a.den}; }

Frac operator*(const Frac& a, const Integer& k) { return {a.num * k, a.den}; }

bool equal(const Frac& a, const Frac& b) {
  if (a.den == b.den) return a.num == b.num;
  return a.num * b.den == b.num * a.den;
}

RatFunc difference(const Frac& a, const Frac& b) {
  if (equal(a, b)) return {};
  return (a - b).reduce();
}

}  // namespace qbm
