#include "qbm/characters.hpp"

#include <numeric>

#include "qbm/error.hpp"
#include "qbm/qbernoulli.hpp"

namespace qbm {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mulmod(long a, long b, long m) { return static_cast<long>((static_cast<__int128>(a) * b) % m); }

long powmod(long b, long e, long m) {
  long r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

long mult_order(long g, long m) {
  long x = mod(g, m), k = 1;
  while (x != 1 % m) {
    x = mulmod(x, g, m);
    ++k;
  }
  return k;
}

long inverse_mod(long a, long m) {
  long t = 0, nt = 1, r = m, nr = mod(a, m);
  while (nr != 0) {
    long qq = r / nr;
    t -= qq * nt;
    std::swap(t, nt);
    r -= qq * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw Error(ErrorCode::NotInvertible, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod(t, m);
}

/// x = r mod pe, x = 1 mod rest.
long crt_lift(long r, long pe, long rest) {
  if (rest == 1) return mod(r, pe);
  // x = 1 + rest * t, rest * t = r - 1 mod pe
  long t = mulmod(mod(r - 1, pe), inverse_mod(rest, pe), pe);
  return mod(1 + rest * t, pe * rest);
}

}  // namespace

std::vector<UnitGenerator> unit_group_generators(long d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "character modulus must be >= 1");
  std::vector<UnitGenerator> gens;
  long rest = d;
  for (long p = 2; p * p <= rest || rest > 1; ++p) {
    if (p * p > rest) p = rest;  // remaining prime
    if (rest % p != 0) continue;
    long pe = 1, e = 0;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
      ++e;
    }
    const long other = d / pe;
    if (p == 2) {
      if (e == 2) gens.push_back({crt_lift(pe - 1, pe, other), 2});
      if (e >= 3) {
        gens.push_back({crt_lift(pe - 1, pe, other), 2});
        gens.push_back({crt_lift(5, pe, other), pe / 4});
      }
      continue;
    }
    const long phi = pe / p * (p - 1);
    long g = 2;
    while (g % p == 0 || mult_order(g, pe) != phi) ++g;
    gens.push_back({crt_lift(g, pe, other), phi});
  }
  return gens;
}

namespace {

/// Discrete logs of every unit on the canonical generators; -1 rows for non-units.
struct LogTable {
  std::vector<UnitGenerator> gens;
  std::vector<std::vector<long>> logs;
};

LogTable log_table(long d) {
  LogTable t;
  t.gens = unit_group_generators(d);
  t.logs.assign(static_cast<std::size_t>(d), {});
  std::vector<long> tuple(t.gens.size(), 0);
  while (true) {
    long u = 1 % d;
    for (std::size_t i = 0; i < tuple.size(); ++i) u = mulmod(u, powmod(t.gens[i].residue, tuple[i], d), d);
    t.logs[static_cast<std::size_t>(u)] = tuple;
    std::size_t i = tuple.size();
    while (i > 0) {
      --i;
      if (++tuple[i] < t.gens[i].order) break;
      tuple[i] = 0;
      if (i == 0) return t;
    }
    if (tuple.empty()) return t;
  }
}

}  // namespace

DirichletChar::DirichletChar(long d, std::vector<long> generator_exponents)
    : d_(d), gen_exps_(std::move(generator_exponents)) {
  LogTable t = log_table(d);
  if (gen_exps_.size() != t.gens.size())
    throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(d) + " has " + std::to_string(t.gens.size()) +
                                                " canonical generators, got " + std::to_string(gen_exps_.size()) +
                                                " exponents");
  long L = 1;
  for (std::size_t i = 0; i < t.gens.size(); ++i) {
    if (gen_exps_[i] < 0 || gen_exps_[i] >= t.gens[i].order)
      throw Error(ErrorCode::InvalidArgument, "generator exponent out of range [0, " +
                                                  std::to_string(t.gens[i].order) + ")");
    L = std::lcm(L, t.gens[i].order);
  }
  std::vector<long> eL(static_cast<std::size_t>(d), -1);
  long g = L;
  for (long a = 0; a < d; ++a) {
    const auto& lg = t.logs[static_cast<std::size_t>(a)];
    if (std::gcd(a, d) != 1) continue;
    long e = 0;
    for (std::size_t i = 0; i < lg.size(); ++i) e = mod(e + lg[i] * gen_exps_[i] * (L / t.gens[i].order), L);
    eL[static_cast<std::size_t>(a)] = e;
    g = std::gcd(g, e);
  }
  m_ = static_cast<unsigned>(L / g);
  exps_.assign(static_cast<std::size_t>(d), -1);
  for (long a = 0; a < d; ++a)
    if (eL[static_cast<std::size_t>(a)] >= 0) exps_[static_cast<std::size_t>(a)] = eL[static_cast<std::size_t>(a)] / g;
  for (long f = 1; f <= d; ++f) {
    if (d % f != 0) continue;
    bool ok = true;
    for (long a = 1; a < d && ok; a += f)
      if (std::gcd(a, d) == 1 && exps_[static_cast<std::size_t>(a)] != 0) ok = false;
    if (ok) {
      conductor_ = f;
      break;
    }
  }
}

long DirichletChar::exponent(long a) const { return exps_[static_cast<std::size_t>(mod(a, d_))]; }

long DirichletChar::index() const {
  auto gens = unit_group_generators(d_);
  long idx = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) idx = idx * gens[i].order + gen_exps_[i];
  return idx;
}

DirichletChar DirichletChar::primitive() const {
  const long f = conductor_;
  auto gens = unit_group_generators(f);
  std::vector<long> c;
  for (const auto& gen : gens) {
    // lift the generator mod f to a unit mod d
    long u = gen.residue;
    while (std::gcd(u, d_) != 1) u += f;
    long e = exponent(u);  // chi(u) = zeta_m^e, must equal zeta_ord^c
    // zeta_m^e has order dividing gen.order: c = e * ord / m
    c.push_back(mod(e * gen.order / static_cast<long>(m_), gen.order));
  }
  return DirichletChar(f, c);
}

std::vector<DirichletChar> enumerate_characters(long d) {
  auto gens = unit_group_generators(d);
  std::vector<DirichletChar> out;
  std::vector<long> tuple(gens.size(), 0);
  while (true) {
    out.emplace_back(d, tuple);
    std::size_t i = tuple.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++tuple[i] < gens[i].order) {
        done = false;
        break;
      }
      tuple[i] = 0;
    }
    if (done) break;
  }
  return out;
}

DirichletChar dirichlet_character(long d, long index) {
  auto gens = unit_group_generators(d);
  long count = 1;
  for (const auto& g : gens) count *= g.order;
  if (index < 0 || index >= count)
    throw Error(ErrorCode::InvalidArgument, "character index " + std::to_string(index) + " out of range for modulus " +
                                                std::to_string(d) + " (" + std::to_string(count) + " characters)");
  std::vector<long> c(gens.size());
  for (std::size_t i = gens.size(); i-- > 0;) {
    c[i] = index % gens[i].order;
    index /= gens[i].order;
  }
  return DirichletChar(d, c);
}

CycElem char_eval(const DirichletChar& chi, long x) {
  long e = chi.exponent(x);
  if (e < 0) return CycElem(chi.order());
  return CycElem::zeta_power(chi.order(), e);
}

CycElem char_eval_ratio(const DirichletChar& chi, long y, long beta) {
  const long d = chi.modulus();
  if (std::gcd(mod(beta, d), d) != 1)
    throw Error(ErrorCode::NotInvertible, "chi(y/beta) needs gcd(beta, d) = 1 (beta = " + std::to_string(beta) +
                                              ", d = " + std::to_string(d) + ")");
  long inv = d == 1 ? 0 : inverse_mod(beta, d);
  return char_eval(chi, mulmod(mod(y, d), inv, d));
}

LazyField generalized_beta_lazy(const DirichletChar& chi, long alpha, long n) {
  std::vector<WeightedPoint> pts;
  for (long a = 0; a < chi.modulus(); ++a) {
    CycElem w = char_eval(chi, a);
    if (!w.is_zero()) pts.push_back({a, w});
  }
  return rescaled_sum(alpha, n, chi.modulus(), pts);
}

FieldElem generalized_beta(const DirichletChar& chi, long alpha, long n) {
  return generalized_beta_lazy(chi, alpha, n).reduce();
}

CycPAdic generalized_beta_padic(const DirichletChar& chi, long alpha, long n, const PAdic& base, long prec) {
  const long p = base.p();
  const long d = chi.modulus();
  const PAdic Qd = base.pow(d);
  std::vector<PAdic> wb;
  for (long l = 0; l <= n; ++l) wb.push_back(eval_ratfunc(qbern_rf(Family::Weighted, alpha, l), Qd));
  const PAdic bd_alpha = bracket(base, d, alpha, prec);  // [d]_{Q^alpha}
  CycPAdic sum(p, chi.order());
  PAdic Qa = PAdic::exact(p, 1);
  for (long a = 0; a < d; ++a, Qa = Qa * base) {
    CycElem w = char_eval(chi, a);
    if (w.is_zero()) continue;
    // wb_{n,Q^d}(a/d) with [a/d]_{Q^{d alpha}} = [a]_{Q^alpha} / [d]_{Q^alpha}
    const PAdic ratio = bracket(base, a, alpha, prec) / bd_alpha;
    const PAdic Qaa = base.pow(alpha * a);
    PAdic poly = PAdic::exact(p, 0);
    for (long l = 0; l <= n; ++l)
      poly = poly + PAdic::exact(p, Rational(binomial(n, l))) * ratio.pow(n - l) * Qaa.pow(l) * wb[l];
    sum = sum + CycPAdic(Qa * poly) * w;
  }
  return sum * (bd_alpha.pow(n) / bracket(base, d, 1, prec));
}

}  // namespace qbm
