#include "qbm/qbernoulli.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <mutex>

#include "qbm/error.hpp"

namespace qbm {

const char* family_name(Family f) {
  switch (f) {
    case Family::Xi:
      return "xi";
    case Family::Carlitz:
      return "carlitz";
    case Family::Extended:
      return "extended";
    case Family::Weighted:
      return "weighted";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "xi") return Family::Xi;
  if (name == "carlitz") return Family::Carlitz;
  if (name == "extended") return Family::Extended;
  if (name == "weighted") return Family::Weighted;
  throw Error(ErrorCode::Config, "unknown family '" + name + "' (expected xi, carlitz, extended or weighted)");
}

Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

RatFunc qnumber_int(long x, long c) {
  if (x >= 0) return qnumber_rf(x, c);
  // [x]_{q^c} = -q^{c x} [-x]_{q^c}
  return -(RatFunc::q_power(c * x) * qnumber_rf(-x, c));
}

UmbralEquation umbral_equation(Family f, long param) {
  switch (f) {
    case Family::Xi:
      return {0, 1, RatFunc(1), RatFunc(1)};
    case Family::Carlitz:
      return {1, 1, RatFunc(1), RatFunc(1)};
    case Family::Extended:
      if (param == 0) throw Error(ErrorCode::InvalidArgument, "extended family requires h != 0");
      return {param, 1, RatFunc(Rational(param)) / qnumber_int(param, 1), RatFunc(1)};
    case Family::Weighted:
      if (param < 1) throw Error(ErrorCode::InvalidArgument, "weight alpha must be >= 1");
      return {1, param, RatFunc(1), RatFunc(Rational(param)) / qnumber_rf(param, 1)};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

namespace {

struct Table {
  UmbralEquation eq;
  std::deque<RatFunc> values;  // references handed out stay valid as it grows
};

std::mutex g_table_mutex;
std::map<std::pair<int, long>, Table>& tables() {
  static std::map<std::pair<int, long>, Table> t;
  return t;
}

long normalized_param(Family f, long param) {
  return (f == Family::Extended || f == Family::Weighted) ? param : 0;
}

}  // namespace

const RatFunc& qbern_rf(Family f, long param, long n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "index n must be nonnegative");
  param = normalized_param(f, param);
  std::lock_guard<std::mutex> lock(g_table_mutex);
  auto key = std::make_pair(static_cast<int>(f), param);
  auto it = tables().find(key);
  if (it == tables().end()) {
    UmbralEquation eq = umbral_equation(f, param);
    it = tables().emplace(key, Table{eq, {eq.seed}}).first;
  }
  Table& t = it->second;
  const long s = t.eq.prefactor_exp, c = t.eq.inner_exp;
  while (static_cast<long>(t.values.size()) <= n) {
    const long m = static_cast<long>(t.values.size());
    const long lead = s + c * m;
    if (lead == 0)
      throw Error(ErrorCode::DegenerateEquation, std::string("equation ") + std::to_string(m) + " of the " +
                                                     family_name(f) + " family has a vanishing leading coefficient");
    // (q^{s+cm} - 1) b_m = rhs_m - q^s sum_{j<m} C(m,j) q^{cj} b_j
    RatFunc acc;
    for (long j = 0; j < m; ++j) {
      if (t.values[j].is_zero()) continue;
      acc += RatFunc(Rational(binomial(m, j))) * RatFunc::q_power(c * j) * t.values[j];
    }
    RatFunc rhs = (m == 1) ? t.eq.rhs_at_one : RatFunc();
    RatFunc num = rhs - RatFunc::q_power(s) * acc;
    RatFunc coef = RatFunc::q_power(lead) - RatFunc(1);
    t.values.push_back(num / coef);
  }
  return t.values[n];
}

FieldElem qbern(Family f, long param, long n) { return FieldElem(qbern_rf(f, param, n)); }

RatFunc umbral_residual(const UmbralEquation& eq, const std::vector<RatFunc>& values, long n) {
  if (n == 0) return values.at(0) - eq.seed;
  RatFunc acc;
  for (long j = 0; j <= n; ++j)
    acc += RatFunc(Rational(binomial(n, j))) * RatFunc::q_power(eq.inner_exp * j) * values.at(j);
  RatFunc lhs = RatFunc::q_power(eq.prefactor_exp) * acc - values.at(n);
  return lhs - ((n == 1) ? eq.rhs_at_one : RatFunc());
}

FieldElem xi(long k) { return qbern(Family::Xi, 0, k); }
FieldElem carlitz_beta(long k) { return qbern(Family::Carlitz, 0, k); }
FieldElem extended_beta(long h, long k) { return qbern(Family::Extended, h, k); }
FieldElem weighted_beta(long alpha, long n) { return qbern(Family::Weighted, alpha, n); }

FieldElem weighted_beta_poly(long alpha, long n, long x) {
  if (alpha < 1) throw Error(ErrorCode::InvalidArgument, "weight alpha must be >= 1");
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "symbolic polynomial argument must be >= 0");
  RatFunc bx = qnumber_rf(x, alpha);
  RatFunc sum;
  for (long l = 0; l <= n; ++l) {
    RatFunc term = RatFunc(Rational(binomial(n, l))) * RatFunc::q_power(alpha * l * x) *
                   qbern_rf(Family::Weighted, alpha, l);
    for (long i = 0; i < n - l; ++i) term *= bx;  // 0^0 = 1
    sum += term;
  }
  return FieldElem(sum);
}

PAdic weighted_beta_poly_padic(long alpha, long n, const Rational& x, const QPoint& q, long prec) {
  if (alpha < 1) throw Error(ErrorCode::InvalidArgument, "weight alpha must be >= 1");
  const long p = q.p();
  if (vp(Integer(x.get_den()), p) > 0)
    throw Error(ErrorCode::NotPAdicInteger, "argument " + x.get_str() + " is not a p-adic integer");
  PAdic base = q.value();
  PAdic bx = bracket(base, x, Rational(alpha), prec);
  PAdic sum = PAdic::exact(p, 0);
  for (long l = 0; l <= n; ++l) {
    PAdic term = PAdic::exact(p, Rational(binomial(n, l))) * q_power(q, Rational(alpha * l) * x, prec) *
                 eval_ratfunc(qbern_rf(Family::Weighted, alpha, l), base);
    term = term * bx.pow(n - l);
    sum = sum + term;
  }
  return sum;
}

const SharedDenominator& weighted_beta_shared(long alpha, long n) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, SharedDenominator> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({alpha, n});
    if (it != cache.end()) return it->second;
  }
  std::vector<Frac> parts;
  ZPoly lcm = ZPoly::constant(1);
  for (long l = 0; l <= n; ++l) {
    parts.emplace_back(qbern_rf(Family::Weighted, alpha, l));
    GcdCofactors g = gcd_cofactors(lcm, parts.back().den);
    lcm = lcm * g.b_over_g;
  }
  SharedDenominator sd;
  sd.denominator = lcm;
  for (const Frac& f : parts) sd.numerators.push_back(f.num * *divide_exact(lcm, f.den));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(alpha, n), std::move(sd)).first->second;
}

namespace {

/// 1 - q^e as a polynomial (e >= 1).
ZPoly one_minus_power(std::size_t e) {
  std::vector<Integer> c(e + 1);
  c[0] = 1;
  c[e] = -1;
  return ZPoly(std::move(c));
}

}  // namespace

LazyField rescaled_sum(long alpha, long n, long M, const std::vector<WeightedPoint>& points) {
  if (alpha < 1 || n < 0 || M < 1) throw Error(ErrorCode::InvalidArgument, "rescaled_sum: need alpha >= 1, n >= 0, M >= 1");
  unsigned m = 1;
  long max_a = 0;
  for (const auto& pt : points) {
    if (pt.A < 0) throw Error(ErrorCode::InvalidArgument, "rescaled_sum: points must be nonnegative");
    m = std::lcm(m, pt.w.order());
    max_a = std::max(max_a, pt.A);
  }
  const std::size_t nc = totient(m);
  // Embed weights and clear their denominators.
  std::vector<CycElem> embedded;
  Integer wden = 1;
  for (const auto& pt : points) {
    embedded.push_back(pt.w.embed(m));
    for (const auto& c : embedded.back().coords())
      mpz_lcm(wden.get_mpz_t(), wden.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<std::vector<Integer>> weights;
  for (const auto& e : embedded) {
    std::vector<Integer> w;
    for (const auto& c : e.coords()) w.emplace_back(Integer(c.get_num() * (wden / c.get_den())));
    weights.push_back(std::move(w));
  }

  const SharedDenominator& base = weighted_beta_shared(alpha, n);
  const auto Mu = static_cast<std::size_t>(M);
  const ZPoly one_minus_aM = one_minus_power(static_cast<std::size_t>(alpha) * Mu);

  std::vector<ZPoly> num(nc);
  ZPoly power_aM = ZPoly::constant(1);  // (1 - q^{alpha M})^l
  for (long l = 0; l <= n; ++l) {
    // W_l = sum_A w_A q^{A(1 + alpha l)} (1 - q^{alpha A})^{n-l}
    const long j = n - l;
    const std::size_t top = static_cast<std::size_t>(max_a) * static_cast<std::size_t>(1 + alpha * n) + 1;
    std::vector<std::vector<Integer>> dense(nc);
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
      const auto& w = weights[pi];
      const auto A = static_cast<std::size_t>(points[pi].A);
      for (long t = 0; t <= j; ++t) {
        Integer coef = binomial(j, t);
        if (t & 1) coef = -coef;
        const std::size_t e = A * static_cast<std::size_t>(1 + alpha * l) + A * static_cast<std::size_t>(alpha * t);
        for (std::size_t i = 0; i < nc; ++i) {
          if (w[i] == 0) continue;
          if (dense[i].empty()) dense[i].resize(top);
          dense[i][e] += coef * w[i];
        }
      }
    }
    ZPoly factor = (power_aM * Integer(binomial(n, l))) * substitute_power(base.numerators[l], Mu);
    for (std::size_t i = 0; i < nc; ++i) {
      if (dense[i].empty()) continue;
      ZPoly W(std::move(dense[i]));
      if (W.is_zero()) continue;
      num[i] += W * factor;
    }
    power_aM = power_aM * one_minus_aM;
  }
  ZPoly den = pow(one_minus_power(static_cast<std::size_t>(alpha)), static_cast<unsigned>(n)) *
              ZPoly::geometric(Mu, 1) * substitute_power(base.denominator, Mu);
  den *= wden;
  LazyField out(m);
  for (std::size_t i = 0; i < nc; ++i) out.coords[i] = Frac(std::move(num[i]), den);
  return out;
}

FieldElem distribution_check(long alpha, long n, long d, long x) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "distribution_check: d must be >= 1");
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "distribution_check: x must be >= 0");
  std::vector<WeightedPoint> pts;
  for (long a = 0; a < d; ++a) pts.push_back({x + a, CycElem(1, Rational(1))});
  // rescaled_sum carries q^{x+a}; the relation has q^a, so compare against q^x * lhs
  LazyField rhs = rescaled_sum(alpha, n, d, pts);
  LazyField lhs = LazyField(weighted_beta_poly(alpha, n, x)) * Frac(ZPoly::monomial(1, static_cast<std::size_t>(x)), ZPoly::constant(1));
  FieldElem diff = difference(lhs, rhs);
  return diff.is_zero() ? diff : diff * FieldElem(RatFunc::q_power(-x));
}

}  // namespace qbm
