#include "qbm/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qbm/error.hpp"

namespace qbm {

unsigned totient(unsigned m) {
  unsigned result = m, n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {
std::mutex& cyc_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

const ZPoly& cyclotomic_poly(unsigned m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  static std::map<unsigned, ZPoly> cache;
  {
    std::lock_guard<std::mutex> lock(cyc_mutex());
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // q^m - 1 divided by Phi_d for every proper divisor d.
  ZPoly f = ZPoly::monomial(1, m) - ZPoly::constant(1);
  for (unsigned d = 1; d < m; ++d) {
    if (m % d == 0) f = *divide_exact(f, cyclotomic_poly(d));
  }
  std::lock_guard<std::mutex> lock(cyc_mutex());
  return cache.emplace(m, std::move(f)).first->second;
}

const std::vector<Integer>& zeta_power_coords(unsigned m, long e) {
  static std::map<std::pair<unsigned, long>, std::vector<Integer>> cache;
  long em = ((e % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m);
  auto key = std::make_pair(m, em);
  {
    std::lock_guard<std::mutex> lock(cyc_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  cyclotomic_poly(m);
  std::vector<Integer> v(static_cast<std::size_t>(em) + 1);
  v[static_cast<std::size_t>(em)] = 1;
  reduce_cyclotomic(v, m, Integer(0), [](const Integer& a, const Integer& b) { return Integer(a * b); });
  std::lock_guard<std::mutex> lock(cyc_mutex());
  return cache.emplace(key, std::move(v)).first->second;
}

CycElem::CycElem(unsigned m) : m_(m), coords_(totient(m)) {}

CycElem::CycElem(unsigned m, const Rational& r) : CycElem(m) { coords_[0] = r; }

CycElem::CycElem(unsigned m, std::vector<Rational> coords) : m_(m), coords_(std::move(coords)) {
  if (coords_.size() != totient(m)) {
    std::vector<Rational> v = std::move(coords_);
    reduce_cyclotomic(v, m, Rational(0), [](const Rational& a, const Integer& b) { return Rational(a * b); });
    coords_ = std::move(v);
  }
  for (auto& c : coords_) c.canonicalize();
}

CycElem CycElem::zeta_power(unsigned m, long e) {
  const auto& z = zeta_power_coords(m, e);
  std::vector<Rational> v(z.begin(), z.end());
  return CycElem(m, std::move(v));
}

bool CycElem::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CycElem::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

CycElem CycElem::embed(unsigned n) const {
  if (n == m_) return *this;
  if (n % m_ != 0) throw Error(ErrorCode::InvalidArgument, "cannot embed Q(zeta_m) into Q(zeta_n) unless m | n");
  CycElem r(n);
  const long step = static_cast<long>(n / m_);
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j] == 0) continue;
    const auto& z = zeta_power_coords(n, static_cast<long>(j) * step);
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != 0) r.coords_[i] += coords_[j] * z[i];
  }
  return r;
}

namespace {
unsigned common_order(const CycElem& a, const CycElem& b) { return std::lcm(a.order(), b.order()); }
}  // namespace

CycElem operator+(const CycElem& a, const CycElem& b) {
  unsigned m = common_order(a, b);
  CycElem r = a.embed(m);
  CycElem bb = b.embed(m);
  for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += bb.coords_[i];
  return r;
}

CycElem operator-(const CycElem& a) {
  CycElem r = a;
  for (auto& c : r.coords_) c = -c;
  return r;
}

CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }

CycElem operator*(const CycElem& a, const CycElem& b) {
  unsigned m = common_order(a, b);
  CycElem x = a.embed(m), y = b.embed(m);
  const std::size_t n = x.coords_.size();
  std::vector<Rational> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.coords_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += x.coords_[i] * y.coords_[j];
  }
  return CycElem(m, std::move(prod));
}

CycElem CycElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero cyclotomic element");
  const std::size_t n = coords_.size();
  // Solve (multiplication-by-this matrix) * y = e_0 by Gaussian elimination.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    CycElem col = *this * CycElem::zeta_power(m_, static_cast<long>(j));
    for (std::size_t i = 0; i < n; ++i) a[i][j] = col.coords_[i];
  }
  a[0][n] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i][n] / a[i][i];
  return CycElem(m_, std::move(y));
}

CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inverse(); }

bool operator==(const CycElem& a, const CycElem& b) {
  unsigned m = common_order(a, b);
  return a.embed(m).coords_ == b.embed(m).coords_;
}

std::string CycElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const Rational& c = coords_[j];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z";
    if (j > 1) os << "^" << j;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace qbm
