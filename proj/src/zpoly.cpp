#include "qbm/zpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <utility>

#include "qbm/error.hpp"

namespace qbm {

ZPoly::ZPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::constant(const Integer& c) { return ZPoly(std::vector<Integer>{c}); }

ZPoly ZPoly::monomial(const Integer& c, std::size_t exponent) {
  if (c == 0) return {};
  std::vector<Integer> v(exponent + 1);
  v[exponent] = c;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::geometric(std::size_t count, std::size_t step) {
  if (count == 0) return {};
  if (step == 0) return constant(Integer(static_cast<unsigned long>(count)));
  std::vector<Integer> v((count - 1) * step + 1);
  for (std::size_t i = 0; i < count; ++i) v[i * step] = 1;
  return ZPoly(std::move(v));
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t ZPoly::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(c_.begin(), c_.end(), [](const Integer& x) { return x != 0; }));
}

Integer ZPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator*=(const Integer& k) {
  if (k == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= k;
  return *this;
}

void ZPoly::add_scaled(const ZPoly& o, const Integer& k, std::size_t shift) {
  if (o.is_zero() || k == 0) return;
  if (o.c_.size() + shift > c_.size()) c_.resize(o.c_.size() + shift);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    if (o.c_[i] != 0)
      mpz_addmul(c_[i + shift].get_mpz_t(), o.c_[i].get_mpz_t(), k.get_mpz_t());
  }
  trim();
}

ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
ZPoly operator-(ZPoly a) { return a *= Integer(-1); }
ZPoly operator*(ZPoly a, const Integer& k) { return a *= k; }

namespace detail {

ZPoly mul_schoolbook(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return ZPoly(std::move(r));
}

ZPoly mul_sparse(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::size_t> nb;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j] != 0) nb.push_back(j);
  std::vector<Integer> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j : nb)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return ZPoly(std::move(r));
}

namespace {

std::size_t max_bits(const ZPoly& a) {
  std::size_t m = 0;
  for (const auto& x : a.coeffs()) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  return m;
}

// Evaluates sum a[i] 2^{k i}; signed coefficients are fine.
void pack(mpz_t out, const Integer* a, std::size_t n, std::size_t k) {
  if (n <= 8) {
    mpz_set_ui(out, 0);
    for (std::size_t i = n; i-- > 0;) {
      mpz_mul_2exp(out, out, k);
      mpz_add(out, out, a[i].get_mpz_t());
    }
    return;
  }
  std::size_t h = n / 2;
  mpz_t hi;
  mpz_init(hi);
  pack(out, a, h, k);
  pack(hi, a + h, n - h, k);
  mpz_mul_2exp(hi, hi, k * h);
  mpz_add(out, out, hi);
  mpz_clear(hi);
}

// Inverse of pack under the balanced-digit convention |a[i]| < 2^{k-2}.
void unpack(mpz_t value, Integer* out, std::size_t n, std::size_t k) {
  if (n == 1) {
    mpz_set(out[0].get_mpz_t(), value);
    return;
  }
  std::size_t h = (n <= 8) ? 1 : n / 2;
  std::size_t bits = k * h;
  mpz_t low;
  mpz_init(low);
  mpz_fdiv_r_2exp(low, value, bits);
  if (mpz_sizeinbase(low, 2) >= bits && mpz_sgn(low) != 0) {
    // low >= 2^{bits-1}: take the negative representative
    mpz_t top;
    mpz_init(top);
    mpz_setbit(top, bits);
    mpz_sub(low, low, top);
    mpz_clear(top);
  }
  mpz_sub(value, value, low);
  mpz_fdiv_q_2exp(value, value, bits);
  unpack(low, out, h, k);
  unpack(value, out + h, n - h, k);
  mpz_clear(low);
}

}  // namespace

ZPoly mul_kronecker(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::size_t len = std::min(a.size(), b.size());
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < len) ++lg;
  std::size_t k = max_bits(a) + max_bits(b) + lg + 3;
  mpz_t va, vb;
  mpz_init(va);
  mpz_init(vb);
  pack(va, a.coeffs().data(), a.size(), k);
  pack(vb, b.coeffs().data(), b.size(), k);
  mpz_mul(va, va, vb);
  std::vector<Integer> r(a.size() + b.size() - 1);
  unpack(va, r.data(), r.size(), k);
  mpz_clear(va);
  mpz_clear(vb);
  return ZPoly(std::move(r));
}

}  // namespace detail

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::size_t na = a.nonzeros(), nb = b.nonzeros();
  if (na > nb) return b * a;
  if (na <= 12 || na * nb <= 4096) return detail::mul_sparse(b, a);
  return detail::mul_kronecker(a, b);
}

ZPoly shift(const ZPoly& a, std::size_t k) {
  if (a.is_zero() || k == 0) return a;
  std::vector<Integer> v(a.size() + k);
  for (std::size_t i = 0; i < a.size(); ++i) v[i + k] = a[i];
  return ZPoly(std::move(v));
}

ZPoly substitute_power(const ZPoly& a, std::size_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "substitute_power: exponent must be >= 1");
  if (t == 1 || a.degree() <= 0) return a;
  std::vector<Integer> v(static_cast<std::size_t>(a.degree()) * t + 1);
  for (std::size_t i = 0; i < a.size(); ++i) v[i * t] = a[i];
  return ZPoly(std::move(v));
}

ZPoly reversed(const ZPoly& a) {
  std::vector<Integer> v(a.coeffs().rbegin(), a.coeffs().rend());
  return ZPoly(std::move(v));
}

ZPoly pow(const ZPoly& a, unsigned e) {
  ZPoly result = ZPoly::constant(1);
  ZPoly base = a;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::size_t low_order(const ZPoly& a) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0) ++i;
  return a.is_zero() ? 0 : i;
}

Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& x : a.coeffs()) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& a) {
  if (a.is_zero()) return a;
  Integer c = content(a);
  if (a.lead() < 0) c = -c;
  if (c == 1) return a;
  std::vector<Integer> v = a.coeffs();
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return ZPoly(std::move(v));
}

std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return ZPoly{};
  const int da = a.degree(), db = b.degree();
  if (da < db) return std::nullopt;
  if (db == 0) {
    std::vector<Integer> v = a.coeffs();
    for (auto& x : v) {
      if (!mpz_divisible_p(x.get_mpz_t(), b[0].get_mpz_t())) return std::nullopt;
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), b[0].get_mpz_t());
    }
    return ZPoly(std::move(v));
  }
  std::vector<std::size_t> nz;
  for (int j = 0; j < db; ++j)
    if (b[j] != 0) nz.push_back(static_cast<std::size_t>(j));
  const Integer& lb = b.lead();
  const bool unit = (lb == 1 || lb == -1);
  std::vector<Integer> r = a.coeffs();
  std::vector<Integer> quot(static_cast<std::size_t>(da - db + 1));
  Integer qi;
  for (int i = da - db; i >= 0; --i) {
    Integer& top = r[static_cast<std::size_t>(i + db)];
    if (top == 0) continue;
    if (unit) {
      qi = (lb == 1) ? top : Integer(-top);
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
      mpz_divexact(qi.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    }
    for (std::size_t j : nz)
      mpz_submul(r[static_cast<std::size_t>(i) + j].get_mpz_t(), qi.get_mpz_t(), b[j].get_mpz_t());
    top = 0;
    quot[static_cast<std::size_t>(i)] = qi;
  }
  for (int i = 0; i < db; ++i)
    if (r[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  return ZPoly(std::move(quot));
}

// ---------------------------------------------------------------------------
// Modular gcd

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes just below 2^62, generated on demand and shared between threads.
u64 gcd_prime(std::size_t index) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  u64 candidate = primes.empty() ? (u64{1} << 62) - 1 : primes.back() - 2;
  while (primes.size() <= index) {
    if (is_prime_u64(candidate)) primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[index];
}

using ModPoly = std::vector<u64>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly reduce(const ZPoly& a, u64 p) {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  trim(r);
  return r;
}

void make_monic(ModPoly& a, u64 p) {
  u64 inv = powmod(a.back(), p - 2, p);
  for (auto& x : a) x = mulmod(x, inv, p);
}

// a <- a mod b, b monic.
void rem_monic(ModPoly& a, const ModPoly& b, u64 p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    u64 t = a.back();
    if (t != 0) {
      std::size_t off = a.size() - 1 - db;
      for (std::size_t j = 0; j < db; ++j) {
        u64 s = mulmod(t, b[j], p);
        a[off + j] = a[off + j] >= s ? a[off + j] - s : a[off + j] + p - s;
      }
    }
    a.pop_back();
    trim(a);
  }
}

ModPoly gcd_mod(ModPoly a, ModPoly b, u64 p) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    make_monic(b, p);
    rem_monic(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty()) make_monic(a, p);
  return a;
}

ZPoly symmetric(const std::vector<Integer>& h, const Integer& modulus) {
  Integer half = modulus / 2;
  std::vector<Integer> v(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) v[i] = (h[i] > half) ? Integer(h[i] - modulus) : h[i];
  return ZPoly(std::move(v));
}

}  // namespace

GcdCofactors gcd_cofactors(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() && b.is_zero()) return {ZPoly{}, ZPoly{}, ZPoly{}};
  if (a.is_zero()) {
    ZPoly g = primitive_part(b);
    return {g, ZPoly{}, *divide_exact(b, g)};
  }
  if (b.is_zero()) {
    ZPoly g = primitive_part(a);
    return {g, *divide_exact(a, g), ZPoly{}};
  }
  ZPoly one = ZPoly::constant(1);
  if (a.degree() == 0 || b.degree() == 0) return {one, a, b};
  if (a == b) {
    ZPoly g = primitive_part(a);
    ZPoly c = *divide_exact(a, g);
    return {g, c, c};
  }

  // The power of q shared by both is split off first; it is common and cheap.
  std::size_t lo = std::min(low_order(a), low_order(b));
  ZPoly qpow = ZPoly::monomial(1, lo);
  auto strip = [lo](const ZPoly& x) {
    if (lo == 0) return x;
    std::vector<Integer> v(x.coeffs().begin() + static_cast<std::ptrdiff_t>(lo), x.coeffs().end());
    return ZPoly(std::move(v));
  };
  ZPoly as = strip(a), bs = strip(b);
  if (as.degree() == 0 || bs.degree() == 0) return {qpow, as, bs};

  ZPoly pa = primitive_part(as), pb = primitive_part(bs);
  Integer lcg;
  mpz_gcd(lcg.get_mpz_t(), pa.lead().get_mpz_t(), pb.lead().get_mpz_t());

  std::vector<Integer> h;
  Integer modulus;
  int hdeg = -1;
  std::optional<ZPoly> previous;
  for (std::size_t idx = 0;; ++idx) {
    u64 p = gcd_prime(idx);
    if (mpz_fdiv_ui(pa.lead().get_mpz_t(), p) == 0 || mpz_fdiv_ui(pb.lead().get_mpz_t(), p) == 0)
      continue;
    ModPoly g = gcd_mod(reduce(pa, p), reduce(pb, p), p);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return {qpow, as, bs};
    u64 scale = mpz_fdiv_ui(lcg.get_mpz_t(), p);
    for (auto& x : g) x = mulmod(x, scale, p);
    if (hdeg == -1 || dg < hdeg) {
      hdeg = dg;
      h.assign(g.size(), Integer(0));
      for (std::size_t i = 0; i < g.size(); ++i) mpz_set_ui(h[i].get_mpz_t(), g[i]);
      modulus = Integer(static_cast<unsigned long>(p));
      previous.reset();
      continue;
    }
    if (dg > hdeg) continue;
    // CRT: h <- h + modulus * ((g - h) * modulus^{-1} mod p)
    u64 minv = powmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
    for (std::size_t i = 0; i < h.size(); ++i) {
      u64 hm = mpz_fdiv_ui(h[i].get_mpz_t(), p);
      u64 diff = g[i] >= hm ? g[i] - hm : g[i] + p - hm;
      u64 t = mulmod(diff, minv, p);
      mpz_addmul_ui(h[i].get_mpz_t(), modulus.get_mpz_t(), t);
    }
    mpz_mul_ui(modulus.get_mpz_t(), modulus.get_mpz_t(), p);
    ZPoly candidate = symmetric(h, modulus);
    if (previous && *previous == candidate) {
      ZPoly g0 = primitive_part(candidate);
      auto qa = divide_exact(as, g0);
      if (qa) {
        auto qb = divide_exact(bs, g0);
        if (qb) return {shift(g0, lo), std::move(*qa), std::move(*qb)};
      }
    }
    previous = std::move(candidate);
  }
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) { return gcd_cofactors(a, b).gcd; }

Integer eval(const ZPoly& a, const Integer& x) {
  Integer r = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    r *= x;
    r += a[i];
  }
  return r;
}

Rational eval(const ZPoly& a, const Rational& x) {
  // Horner on numerator with the denominator power tracked separately.
  const Integer& n = x.get_num();
  const Integer& d = x.get_den();
  Integer acc = 0, dpow = 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc *= n;
    acc += a[i] * dpow;
    dpow *= d;
  }
  // acc = d^{deg} a(n/d); dpow = d^{deg+1}
  Rational r(acc, a.is_zero() ? Integer(1) : Integer(dpow / d));
  r.canonicalize();
  return r;
}

}  // namespace qbm
