#include "qbm/padic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "qbm/error.hpp"

namespace qbm {

namespace {

long add_sat(long a, long b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

long sub_sat(long a, long b) {
  if (a == kInfinity) return kInfinity;
  return a - b;
}

Integer ipow(long p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

void check_same_prime(const PAdic& a, const PAdic& b) {
  if (a.p() != b.p()) throw Error(ErrorCode::InvalidArgument, "p-adic operands over different primes");
}

}  // namespace

long vp(const Integer& x, long p) {
  if (x == 0) return kInfinity;
  Integer r = x;
  long v = 0;
  while (mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

long vp(const Rational& x, long p) {
  if (x == 0) return kInfinity;
  return vp(Integer(x.get_num()), p) - vp(Integer(x.get_den()), p);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PAdic::PAdic(long p, const Rational& value, long prec) : p_(p), value_(value), prec_(prec) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "p-adic prime must be >= 2");
  value_.canonicalize();
  normalize();
}

void PAdic::normalize() {
  if (prec_ == kInfinity || value_ == 0) return;
  long v = vp(value_, p_);
  if (v >= prec_) {
    value_ = 0;
    return;
  }
  Integer num = value_.get_num(), den = value_.get_den();
  if (v >= 0) {
    num /= ipow(p_, v);
  } else {
    den /= ipow(p_, -v);
  }
  Integer mod = ipow(p_, prec_ - v);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Integer u = num * inv;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  if (v >= 0) {
    value_ = Rational(u * ipow(p_, v));
  } else {
    value_ = Rational(u, ipow(p_, -v));
    value_.canonicalize();
  }
}

long PAdic::certified_valuation() const { return std::min(valuation(), prec_); }

PAdic PAdic::with_precision(long prec) const { return PAdic(p_, value_, std::min(prec, prec_)); }

PAdic operator+(const PAdic& a, const PAdic& b) {
  check_same_prime(a, b);
  return PAdic(a.p_, a.value_ + b.value_, std::min(a.prec_, b.prec_));
}

PAdic operator-(const PAdic& a) { return PAdic(a.p_, -a.value_, a.prec_); }

PAdic operator-(const PAdic& a, const PAdic& b) {
  check_same_prime(a, b);
  return PAdic(a.p_, a.value_ - b.value_, std::min(a.prec_, b.prec_));
}

PAdic operator*(const PAdic& a, const PAdic& b) {
  check_same_prime(a, b);
  long prec = std::min(add_sat(a.prec_, b.certified_valuation()), add_sat(b.prec_, a.certified_valuation()));
  return PAdic(a.p_, a.value_ * b.value_, prec);
}

PAdic operator/(const PAdic& a, const PAdic& b) {
  check_same_prime(a, b);
  if (b.value_ == 0) {
    if (b.is_exact()) throw Error(ErrorCode::DivisionByZero, "p-adic division by zero");
    throw Error(ErrorCode::PrecisionLoss, "p-adic divisor is zero at its precision O(p^" +
                                              std::to_string(b.prec_) + ")");
  }
  const long vb = b.valuation();
  long prec = std::min(sub_sat(a.prec_, vb), sub_sat(add_sat(b.prec_, a.certified_valuation()), 2 * vb));
  return PAdic(a.p_, a.value_ / b.value_, prec);
}

PAdic PAdic::pow(long n) const {
  if (n < 0) return PAdic::exact(p_, 1) / pow(-n);
  PAdic result = PAdic::exact(p_, 1);
  PAdic base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool PAdic::congruent(const PAdic& o) const {
  check_same_prime(*this, o);
  long m = std::min(prec_, o.prec_);
  Rational d = value_ - o.value_;
  if (d == 0) return true;
  return m != kInfinity && vp(d, p_) >= m;
}

std::string PAdic::digits(long shown) const {
  const std::string ps = std::to_string(p_);
  std::ostringstream os;
  if (value_ == 0) {
    if (is_exact()) return "0";
    return "O(" + ps + "^" + std::to_string(prec_) + ")";
  }
  const long v = valuation();
  const long top = is_exact() ? v + shown : prec_;
  Rational unit = value_;
  if (v >= 0) {
    unit /= Rational(ipow(p_, v));
  } else {
    unit *= Rational(ipow(p_, -v));
  }
  Integer mod = ipow(p_, top - v);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), unit.get_den().get_mpz_t(), mod.get_mpz_t());
  Integer u = unit.get_num() * inv;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  bool first = true;
  for (long i = v; i < top; ++i) {
    unsigned long d = mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p_));
    if (d == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << d;
    if (i == 1) {
      os << "*" << ps;
    } else if (i != 0) {
      os << "*" << ps << "^" << i;
    }
  }
  if (first) os << "0";
  bool terminated = is_exact() && value_.get_den() == 1 && value_ >= 0 && value_ < Rational(ipow(p_, top));
  if (!is_exact()) {
    os << " + O(" << ps << "^" << prec_ << ")";
  } else if (!terminated) {
    os << " + ...";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

QPoint::QPoint(const PAdic& q) : q_(q) {
  if (distance_to_one() < 1)
    throw Error(ErrorCode::InvalidArgument, "base point must satisfy |1 - q|_p < 1 (q = " + q.value().get_str() + ")");
}

long QPoint::distance_to_one() const { return (q_ - PAdic::exact(q_.p(), 1)).certified_valuation(); }

namespace {

class ExprParser {
 public:
  ExprParser(std::string text, long p) : s_(std::move(text)), p_(p) {}

  Rational parse() {
    Rational r = expr();
    if (i_ != s_.size()) fail();
    return r;
  }

 private:
  [[noreturn]] void fail() const {
    throw Error(ErrorCode::Config, "cannot parse exact value '" + s_ + "'");
  }
  Rational expr() {
    Rational r;
    bool neg = false;
    if (peek('-')) {
      ++i_;
      neg = true;
    } else if (peek('+')) {
      ++i_;
    }
    r = term();
    if (neg) r = -r;
    while (peek('+') || peek('-')) {
      char op = s_[i_++];
      Rational t = term();
      r = (op == '+') ? Rational(r + t) : Rational(r - t);
    }
    return r;
  }
  Rational term() {
    Rational r = factor();
    while (peek('*') || peek('/')) {
      char op = s_[i_++];
      Rational f = factor();
      if (op == '/' && f == 0) fail();
      r = (op == '*') ? Rational(r * f) : Rational(r / f);
    }
    return r;
  }
  Rational factor() {
    Rational base;
    if (peek('(')) {
      ++i_;
      base = expr();
      if (!peek(')')) fail();
      ++i_;
    } else {
      base = number();
    }
    if (peek('^')) {
      ++i_;
      Rational e = number();
      if (e.get_den() != 1 || e < 0 || e > 4096) fail();
      Rational r = 1;
      for (long k = 0; k < e.get_num().get_si(); ++k) r *= base;
      return r;
    }
    return base;
  }
  Rational number() {
    if (peek('p')) {
      ++i_;
      return Rational(p_);
    }
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail();
    return Rational(Integer(s_.substr(start, i_ - start)));
  }
  bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }

  std::string s_;
  long p_;
  std::size_t i_ = 0;
};

}  // namespace

QPoint QPoint::parse(long p, const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  return QPoint(PAdic::exact(p, ExprParser(t, p).parse()));
}

PAdic q_power(const QPoint& q, const Rational& t, long target_prec) {
  const long p = q.p();
  if (vp(Integer(t.get_den()), p) > 0)
    throw Error(ErrorCode::NotPAdicInteger, "exponent " + t.get_str() + " is not a p-adic integer");
  const PAdic& base = q.value();
  Rational x = base.value() - 1;
  long prec = std::min(target_prec, base.prec());
  if (x == 0) return PAdic(p, 1, base.is_exact() ? kInfinity : prec);
  const long w = q.distance_to_one();
  long terms = (target_prec + w - 1) / w;  // K + 1 with (K+1) w >= target
  if (terms < 1) terms = 1;
  Rational sum = 0, binom = 1, xpow = 1;
  for (long j = 0; j < terms; ++j) {
    if (j > 0) {
      binom *= (t - (j - 1));
      binom /= j;
      xpow *= x;
    }
    if (binom == 0) break;
    sum += binom * xpow;
  }
  return PAdic(p, sum, prec);
}

PAdic base_power(const PAdic& base, const Rational& t, long target_prec) {
  if (t.get_den() == 1) return base.pow(t.get_num().get_si());
  return q_power(QPoint(base), t, target_prec);
}

PAdic bracket(const PAdic& base, const Rational& y, const Rational& c, long target_prec) {
  const long p = base.p();
  Rational cy = c * y;
  if (y.get_den() == 1 && c.get_den() == 1 && y >= 0 && c > 0) {
    // finite geometric sum, no division
    PAdic step = base.pow(c.get_num().get_si());
    PAdic sum = PAdic::exact(p, 0), term = PAdic::exact(p, 1);
    for (long i = 0; i < y.get_num().get_si(); ++i) {
      sum = sum + term;
      term = term * step;
    }
    return sum;
  }
  PAdic one = PAdic::exact(p, 1);
  return (one - base_power(base, cy, target_prec)) / (one - base_power(base, c, target_prec));
}

PAdic eval_poly(const ZPoly& f, const PAdic& x) {
  const long p = x.p();
  if (x.is_exact()) return PAdic::exact(p, eval(f, x.value()));
  if (x.value().get_den() == 1) {
    // integral representative: Horner modulo p^prec keeps everything small
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(x.prec()));
    const Integer& xv = x.value().get_num();
    Integer acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
      acc *= xv;
      acc += f[i];
      mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    }
    return PAdic(p, Rational(acc), x.prec());
  }
  PAdic acc = PAdic::exact(p, 0);
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + PAdic::exact(p, Rational(f[i]));
  return acc;
}

PAdic eval_ratfunc(const RatFunc& f, const PAdic& x) {
  const long p = x.p();
  if (f.is_zero()) return PAdic::exact(p, 0);
  PAdic n = eval_poly(f.num(), x);
  PAdic d = eval_poly(f.den(), x);
  return PAdic::exact(p, f.scale()) * n / d;
}

PAdic eval_field_elem(const RatFunc& f, const QPoint& q) { return eval_ratfunc(f, q.value()); }

CycPAdic eval_field_elem(const FieldElem& f, const PAdic& base) {
  std::vector<PAdic> v;
  for (const auto& c : f.coords()) v.push_back(eval_ratfunc(c, base));
  return CycPAdic(f.order(), std::move(v));
}

// ---------------------------------------------------------------------------

CycPAdic::CycPAdic(long p, unsigned m) : m_(m), coords_(totient(m), PAdic::exact(p, 0)) {}

CycPAdic::CycPAdic(const PAdic& x) : m_(1), coords_{x} {}

CycPAdic::CycPAdic(unsigned m, std::vector<PAdic> coords) : m_(m), coords_(std::move(coords)) {
  if (coords_.size() != totient(m)) {
    const long p = coords_.front().p();
    std::vector<PAdic> v = std::move(coords_);
    reduce_cyclotomic(v, m, PAdic::exact(p, 0),
                      [p](const PAdic& a, const Integer& k) { return a * PAdic::exact(p, Rational(k)); });
    coords_ = std::move(v);
  }
}

long CycPAdic::certified_valuation() const {
  long v = kInfinity;
  for (const auto& c : coords_) v = std::min(v, c.certified_valuation());
  return v;
}

long CycPAdic::prec() const {
  long v = kInfinity;
  for (const auto& c : coords_) v = std::min(v, c.prec());
  return v;
}

CycPAdic CycPAdic::embed(unsigned n) const {
  if (n == m_) return *this;
  if (n % m_ != 0) throw Error(ErrorCode::InvalidArgument, "cannot embed Q_p(zeta_m) unless m | n");
  const long p = this->p();
  CycPAdic r(p, n);
  const long step = static_cast<long>(n / m_);
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const auto& z = zeta_power_coords(n, static_cast<long>(j) * step);
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != 0) r.coords_[i] = r.coords_[i] + coords_[j] * PAdic::exact(p, Rational(z[i]));
  }
  return r;
}

CycPAdic operator+(const CycPAdic& a, const CycPAdic& b) {
  unsigned m = std::lcm(a.m_, b.m_);
  CycPAdic x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] = x.coords_[i] + y.coords_[i];
  return x;
}

CycPAdic operator-(const CycPAdic& a, const CycPAdic& b) {
  unsigned m = std::lcm(a.m_, b.m_);
  CycPAdic x = a.embed(m), y = b.embed(m);
  for (std::size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] = x.coords_[i] - y.coords_[i];
  return x;
}

CycPAdic operator*(const CycPAdic& a, const CycPAdic& b) {
  unsigned m = std::lcm(a.m_, b.m_);
  CycPAdic x = a.embed(m), y = b.embed(m);
  const long p = x.p();
  const std::size_t n = x.coords_.size();
  std::vector<PAdic> prod(2 * n - 1, PAdic::exact(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = prod[i + j] + x.coords_[i] * y.coords_[j];
  return CycPAdic(m, std::move(prod));
}

CycPAdic operator*(const CycPAdic& a, const PAdic& s) {
  CycPAdic r = a;
  for (auto& c : r.coords_) c = c * s;
  return r;
}

CycPAdic operator*(const CycPAdic& a, const CycElem& c) {
  const long p = a.p();
  std::vector<PAdic> v;
  for (const auto& x : c.coords()) v.push_back(PAdic::exact(p, x));
  return a * CycPAdic(c.order(), std::move(v));
}

}  // namespace qbm
