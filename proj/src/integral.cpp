#include "qbm/integral.hpp"

#include "qbm/error.hpp"
#include "qbm/qbernoulli.hpp"

namespace qbm {

namespace {

void check_spec(const RiemannSumSpec& s) {
  if (!is_prime(s.p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(s.p) + " is not prime");
  if (s.N < 0 || s.n < 0 || s.alpha < 1 || s.shift < 0)
    throw Error(ErrorCode::InvalidArgument, "Riemann sum needs N >= 0, n >= 0, alpha >= 1, shift >= 0");
}

long level_size(long p, long N) {
  long r = 1;
  for (long i = 0; i < N; ++i) r *= p;
  return r;
}

}  // namespace

FieldElem riemann_sum(const RiemannSumSpec& spec) {
  check_spec(spec);
  const long M = level_size(spec.p, spec.N);
  const unsigned m = spec.chi ? spec.chi->order() : 1;
  std::vector<ZPoly> coords(totient(m));
  for (long x = 0; x < M; ++x) {
    CycElem w = spec.chi ? char_eval(*spec.chi, x) : CycElem(1, Rational(1));
    if (w.is_zero()) continue;
    ZPoly term = shift(pow(qnumber_poly(static_cast<std::size_t>(x + spec.shift), static_cast<std::size_t>(spec.alpha)),
                           static_cast<unsigned>(spec.n)),
                       static_cast<std::size_t>(x));
    if (spec.n == 0) term = ZPoly::monomial(1, static_cast<std::size_t>(x));
    const CycElem we = w.embed(m);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (we.coords()[i] != 0) coords[i] += term * Integer(we.coords()[i].get_num());
  }
  const RatFunc inv = RatFunc(1) / qnumber_rf(M);
  std::vector<RatFunc> v;
  for (const auto& c : coords) v.push_back(RatFunc(c) * inv);
  return FieldElem(m, std::move(v));
}

CycElem riemann_sum_at(const RiemannSumSpec& spec, const Rational& q) {
  check_spec(spec);
  const long M = level_size(spec.p, spec.N);
  const unsigned m = spec.chi ? spec.chi->order() : 1;
  const Rational qa = [&] {
    Rational r = 1;
    for (long i = 0; i < spec.alpha; ++i) r *= q;
    return r;
  }();
  // [shift]_{q^alpha} and q^{alpha shift} to start
  Rational bracket = 0, step = 1;
  for (long i = 0; i < spec.shift; ++i) {
    bracket += step;
    step *= qa;
  }
  std::vector<Rational> acc(totient(m));
  Rational qx = 1;
  for (long x = 0; x < M; ++x) {
    CycElem w = spec.chi ? char_eval(*spec.chi, x) : CycElem(1, Rational(1));
    if (!w.is_zero()) {
      Rational t = qx;
      for (long i = 0; i < spec.n; ++i) t *= bracket;
      const CycElem we = w.embed(m);
      for (std::size_t i = 0; i < acc.size(); ++i)
        if (we.coords()[i] != 0) acc[i] += t * we.coords()[i];
    }
    bracket += step;  // [x+1+shift] = [x+shift] + q^{alpha(x+shift)}
    step *= qa;
    qx *= q;
  }
  const Rational denom = qnumber_rf(M).eval(q);
  if (denom == 0) throw Error(ErrorCode::DivisionByZero, "[p^N]_q vanishes at this q");
  for (auto& a : acc) a /= denom;
  return CycElem(m, std::move(acc));
}

WittProfile witt_convergence(long alpha, long n, long shift, const QPoint& q, long n_max, long floor_offset) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "witt_convergence needs at least one level");
  const long p = q.p();
  const Rational qv = q.value().value();
  WittProfile prof{p, alpha, n, shift, weighted_beta_poly(alpha, n, shift).base_value().eval(qv), {}};
  std::optional<long> prev;
  bool first = true;
  for (long N = 1; N <= n_max; ++N) {
    RiemannSumSpec spec{p, N, n, alpha, shift, std::nullopt};
    WittLevel lv{N, riemann_sum_at(spec, qv).coords()[0], std::nullopt};
    Rational diff = lv.sum - prof.target;
    if (diff != 0) lv.valuation = vp(diff, p);
    // nullopt stands for +infinity
    if (!first) {
      bool dec = lv.valuation.has_value() && (!prev.has_value() || *lv.valuation < *prev);
      if (dec) prof.nondecreasing = false;
    }
    if (lv.valuation.has_value() && *lv.valuation < N - floor_offset) prof.above_floor = false;
    prev = lv.valuation;
    first = false;
    prof.levels.push_back(std::move(lv));
  }
  return prof;
}

}  // namespace qbm
