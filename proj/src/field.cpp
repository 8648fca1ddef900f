#include "qbm/field.hpp"

#include <numeric>
#include <sstream>

#include "qbm/error.hpp"

namespace qbm {

FieldElem::FieldElem(const RatFunc& f) : m_(1), coords_{f} {}

FieldElem::FieldElem(unsigned m, std::vector<RatFunc> coords) : m_(m), coords_(std::move(coords)) {
  if (coords_.size() != totient(m)) {
    std::vector<RatFunc> v = std::move(coords_);
    reduce_cyclotomic(v, m, RatFunc(), [](const RatFunc& a, const Integer& k) { return a * RatFunc(Rational(k)); });
    coords_ = std::move(v);
  }
}

FieldElem::FieldElem(const CycElem& c) : m_(c.order()) {
  for (const auto& x : c.coords()) coords_.emplace_back(x);
}

bool FieldElem::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool FieldElem::in_base_field() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return false;
  return true;
}

const RatFunc& FieldElem::base_value() const {
  if (!in_base_field()) throw Error(ErrorCode::InvalidArgument, "value has nonzero cyclotomic coordinates");
  return coords_[0];
}

FieldElem FieldElem::embed(unsigned n) const {
  if (n == m_) return *this;
  if (n % m_ != 0) throw Error(ErrorCode::InvalidArgument, "cannot embed Q(zeta_m)(q) unless m | n");
  std::vector<RatFunc> out(totient(n));
  const long step = static_cast<long>(n / m_);
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j].is_zero()) continue;
    const auto& z = zeta_power_coords(n, static_cast<long>(j) * step);
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != 0) out[i] += coords_[j] * RatFunc(Rational(z[i]));
  }
  return FieldElem(n, std::move(out));
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  unsigned m = std::lcm(a.m_, b.m_);
  FieldElem r = a.embed(m);
  FieldElem bb = b.embed(m);
  for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += bb.coords_[i];
  return r;
}

FieldElem operator-(const FieldElem& a) {
  FieldElem r = a;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  unsigned m = std::lcm(a.m_, b.m_);
  FieldElem x = a.embed(m), y = b.embed(m);
  const std::size_t n = x.coords_.size();
  if (n == 1) return FieldElem(x.coords_[0] * y.coords_[0]);
  std::vector<RatFunc> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!y.coords_[j].is_zero()) prod[i + j] += x.coords_[i] * y.coords_[j];
    }
  }
  return FieldElem(m, std::move(prod));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero field element");
  const std::size_t n = coords_.size();
  if (n == 1) return FieldElem(coords_[0].inverse());
  // Gaussian elimination over Q(q) on the multiplication-by-this matrix.
  std::vector<std::vector<RatFunc>> a(n, std::vector<RatFunc>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    FieldElem col = *this * FieldElem(CycElem::zeta_power(m_, static_cast<long>(j)));
    for (std::size_t i = 0; i < n; ++i) a[i][j] = col.coords_[i];
  }
  a[0][n] = RatFunc(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c].is_zero()) ++piv;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      RatFunc f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<RatFunc> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i][n] / a[i][i];
  return FieldElem(m_, std::move(y));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

bool operator==(const FieldElem& a, const FieldElem& b) {
  unsigned m = std::lcm(a.m_, b.m_);
  FieldElem x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.coords_.size(); ++i)
    if (!(x.coords_[i] == y.coords_[i])) return false;
  return true;
}

std::string FieldElem::to_string() const {
  if (in_base_field()) return coords_[0].to_string();
  // Common monic denominator L over Q, numerator with Q(zeta_m) coefficients.
  ZPoly lcm = ZPoly::constant(1);
  for (const auto& c : coords_) {
    if (c.is_zero()) continue;
    GcdCofactors g = gcd_cofactors(lcm, c.den());
    lcm = lcm * g.b_over_g;
  }
  std::vector<std::vector<Rational>> num_coords;  // [degree][zeta index]
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const RatFunc& c = coords_[j];
    if (c.is_zero()) continue;
    ZPoly part = c.num() * *divide_exact(lcm, c.den());
    Rational f = c.scale() / Rational(lcm.lead());
    if (num_coords.size() < part.size()) num_coords.resize(part.size(), std::vector<Rational>(coords_.size()));
    for (std::size_t e = 0; e < part.size(); ++e) num_coords[e][j] += f * part[e];
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t e = num_coords.size(); e-- > 0;) {
    CycElem coef(m_, num_coords[e]);
    if (coef.is_zero()) continue;
    std::string cs;
    bool negative = false;
    if (coef.is_rational()) {
      const Rational& r = coef.coords()[0];
      negative = r < 0;
      Rational mag = abs(r);
      cs = (mag == 1 && e > 0) ? "" : mag.get_str();
    } else {
      cs = "(" + coef.to_string() + ")";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    os << cs;
    if (e > 0) {
      if (!cs.empty()) os << "*";
      os << "q";
      if (e > 1) os << "^" << e;
    }
  }
  std::string n = first ? "0" : os.str();
  if (lcm.is_one()) return n;
  std::vector<Rational> dv;
  for (const auto& c : lcm.coeffs()) dv.emplace_back(Rational(c, lcm.lead()));
  for (auto& x : dv) x.canonicalize();
  return "(" + n + ")/(" + format_poly(dv) + ")";
}

FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add:
      return a + b;
    case FieldOp::Sub:
      return a - b;
    case FieldOp::Mul:
      return a * b;
    case FieldOp::Div:
      return a / b;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown field operation");
}

FieldElem qnumber(long x, long c) { return FieldElem(qnumber_rf(x, c)); }

FieldElem substitute_q_power(const FieldElem& f, long t) {
  std::vector<RatFunc> v;
  v.reserve(f.coords().size());
  for (const auto& c : f.coords()) v.push_back(c.substitute(t));
  return FieldElem(f.order(), std::move(v));
}

CycElem eval_at_one(const FieldElem& f) {
  std::vector<Rational> v;
  for (const auto& c : f.coords()) v.push_back(c.eval_at_one());
  return CycElem(f.order(), std::move(v));
}

// ---------------------------------------------------------------------------

LazyField::LazyField(const FieldElem& f) : m(f.order()), coords() {
  for (const auto& c : f.coords()) coords.emplace_back(c);
}

LazyField LazyField::embed(unsigned n) const {
  if (n == m) return *this;
  if (n % m != 0) throw Error(ErrorCode::InvalidArgument, "cannot embed lazy value unless m | n");
  LazyField out(n);
  const long step = static_cast<long>(n / m);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j].is_zero()) continue;
    const auto& z = zeta_power_coords(n, static_cast<long>(j) * step);
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != 0) out.coords[i] = out.coords[i] + coords[j] * z[i];
  }
  return out;
}

LazyField LazyField::substitute(std::size_t t) const {
  LazyField out = *this;
  for (auto& c : out.coords) c = c.substitute(t);
  return out;
}

FieldElem LazyField::reduce() const {
  std::vector<RatFunc> v;
  for (const auto& c : coords) v.push_back(c.reduce());
  return FieldElem(m, std::move(v));
}

bool LazyField::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

LazyField operator+(const LazyField& a, const LazyField& b) {
  unsigned m = std::lcm(a.m, b.m);
  LazyField x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.coords.size(); ++i) x.coords[i] = x.coords[i] + y.coords[i];
  return x;
}

LazyField operator-(const LazyField& a, const LazyField& b) {
  LazyField nb = b;
  for (auto& c : nb.coords) c.num = -c.num;
  return a + nb;
}

LazyField operator*(const LazyField& a, const Frac& f) {
  LazyField out = a;
  for (auto& c : out.coords) c = c * f;
  return out;
}

LazyField operator*(const LazyField& a, const CycElem& c) {
  unsigned m = std::lcm(a.m, c.order());
  LazyField x = a.embed(m);
  CycElem y = c.embed(m);
  const std::size_t n = x.coords.size();
  std::vector<Frac> prod(2 * n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& cj = y.coords()[j];
    if (cj == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (x.coords[i].is_zero()) continue;
      Frac term = x.coords[i] * Integer(cj.get_num());
      if (cj.get_den() != 1) term.den = term.den * Integer(cj.get_den());
      prod[i + j] = prod[i + j] + term;
    }
  }
  reduce_cyclotomic(prod, m, Frac(), [](const Frac& f, const Integer& k) { return f * k; });
  LazyField out(m);
  out.coords = std::move(prod);
  return out;
}

bool equal(const LazyField& a, const LazyField& b) {
  unsigned m = std::lcm(a.m, b.m);
  LazyField x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    if (!equal(x.coords[i], y.coords[i])) return false;
  return true;
}

FieldElem difference(const LazyField& a, const LazyField& b) {
  unsigned m = std::lcm(a.m, b.m);
  LazyField x = a.embed(m), y = b.embed(m);
  std::vector<RatFunc> v;
  for (std::size_t i = 0; i < x.coords.size(); ++i) v.push_back(difference(x.coords[i], y.coords[i]));
  return FieldElem(m, std::move(v));
}

}  // namespace qbm
