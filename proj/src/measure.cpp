#include "qbm/measure.hpp"

#include <numeric>

#include "qbm/error.hpp"
#include "qbm/qbernoulli.hpp"

namespace qbm {

namespace {

long ipow_long(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

ZPoly one_minus_power(std::size_t e) {
  if (e == 0) return {};
  std::vector<Integer> c(e + 1);
  c[0] = 1;
  c[e] = -1;
  return ZPoly(std::move(c));
}

ZPoly power_of(const ZPoly& a, long e) { return e == 0 ? ZPoly::constant(1) : pow(a, static_cast<unsigned>(e)); }

void check_params(const MeasureParams& mp) {
  if (mp.k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  if (mp.alpha < 1) throw Error(ErrorCode::InvalidArgument, "weight alpha must be >= 1");
}

void check_coprime(long d, long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (std::gcd(d, p) != 1)
    throw Error(ErrorCode::InvalidArgument, "modulus d = " + std::to_string(d) + " must be coprime to p = " + std::to_string(p));
}

CycElem unit_weight() { return CycElem(1, Rational(1)); }

/// [y]^k_{q^alpha} / [y]_q for integer y >= 1.
Frac bracket_ratio(long y, const MeasureParams& mp) {
  const auto yy = static_cast<std::size_t>(y);
  return {power_of(ZPoly::geometric(yy, static_cast<std::size_t>(mp.alpha)), mp.k), ZPoly::geometric(yy, 1)};
}

}  // namespace

long residue_reduce(long a, long modulus) {
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  long r = a % modulus;
  return r < 0 ? r + modulus : r;
}

Ball::Ball(long d_, long p_, long N_, long a_) : d(d_), p(p_), N(N_), a(a_) {
  if (d < 1 || N < 0) throw Error(ErrorCode::InvalidArgument, "ball needs d >= 1 and N >= 0");
  check_coprime(d, p);
  if (a < 0 || a >= modulus())
    throw Error(ErrorCode::InvalidArgument, "ball representative must satisfy 0 <= a < d p^N");
}

long Ball::modulus() const { return d * ipow_long(p, N); }

std::vector<Ball> Ball::children() const {
  std::vector<Ball> out;
  for (long b = 0; b < p; ++b) out.emplace_back(d, p, N + 1, a + b * modulus());
  return out;
}

LazyField mu_ball_lazy(const MeasureParams& mp, const Ball& ball) {
  check_params(mp);
  return rescaled_sum(mp.alpha, mp.k, ball.modulus(), {{ball.a, unit_weight()}});
}

FieldElem mu_ball(const MeasureParams& mp, const Ball& ball) { return mu_ball_lazy(mp, ball).reduce(); }

PAdic mu_ball_padic(const MeasureParams& mp, const Ball& ball, const QPoint& q, long prec) {
  check_params(mp);
  const long p = q.p();
  const long M = ball.modulus();
  const PAdic Q = q.value().with_precision(prec);
  const PAdic QM = Q.pow(M);
  const PAdic bM = bracket(Q, M, mp.alpha, prec);
  const PAdic ba = bracket(Q, ball.a, mp.alpha, prec);
  const PAdic Qaa = Q.pow(mp.alpha * ball.a);
  PAdic sum = PAdic::exact(p, 0);
  for (long l = 0; l <= mp.k; ++l) {
    PAdic wb = eval_ratfunc(qbern_rf(Family::Weighted, mp.alpha, l), QM);
    sum = sum + PAdic::exact(p, Rational(binomial(mp.k, l))) * ba.pow(mp.k - l) * bM.pow(l) * Qaa.pow(l) * wb;
  }
  return Q.pow(ball.a) * sum / bracket(Q, M, 1, prec);
}

FieldElem additivity_check(const MeasureParams& mp, const Ball& parent) {
  check_params(mp);
  std::vector<WeightedPoint> pts;
  for (const Ball& c : parent.children()) pts.push_back({c.a, unit_weight()});
  LazyField kids = rescaled_sum(mp.alpha, mp.k, parent.modulus() * parent.p, pts);
  return difference(mu_ball_lazy(mp, parent), kids);
}

PAdic additivity_check_padic(const MeasureParams& mp, const Ball& parent, const QPoint& q, long prec) {
  PAdic diff = mu_ball_padic(mp, parent, q, prec);
  for (const Ball& c : parent.children()) diff = diff - mu_ball_padic(mp, c, q, prec);
  return diff;
}

SeedFunction weighted_beta_seed() {
  return {"weighted_beta", [](long k, long alpha, long A, long M) {
            // sum_l C(k,l) ([A]_{q^alpha}/[M]_{q^alpha})^{k-l} q^{alpha l A} wb_l(q^M)
            const SharedDenominator& sd = weighted_beta_shared(alpha, k);
            const auto Mu = static_cast<std::size_t>(M);
            const ZPoly a_part = one_minus_power(static_cast<std::size_t>(alpha * A));
            const ZPoly m_part = one_minus_power(static_cast<std::size_t>(alpha) * Mu);
            ZPoly num;
            for (long l = 0; l <= k; ++l) {
              ZPoly t = power_of(a_part, k - l) * power_of(m_part, l);
              t = shift(t, static_cast<std::size_t>(alpha * l * A)) * substitute_power(sd.numerators[l], Mu);
              num += t * Integer(binomial(k, l));
            }
            return Frac(std::move(num), power_of(m_part, k) * substitute_power(sd.denominator, Mu));
          }};
}

SeedFunction constant_seed() {
  return {"constant", [](long, long, long, long) { return Frac(ZPoly::constant(1), ZPoly::constant(1)); }};
}

FieldElem theorem2_criterion(const MeasureParams& mp, const SeedFunction& seed, long p, long n, long a) {
  check_params(mp);
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (n < 0 || a < 0) throw Error(ErrorCode::InvalidArgument, "theorem2_criterion needs n >= 0 and a >= 0");
  const long P = ipow_long(p, n);
  const auto Pu = static_cast<std::size_t>(P);
  Frac sum;
  for (long b = 0; b < p; ++b)
    sum = sum + seed.value(mp.k, mp.alpha, a + b * P, p * P) * ZPoly::monomial(1, static_cast<std::size_t>(b) * Pu);
  Frac factor(power_of(ZPoly::geometric(static_cast<std::size_t>(p), static_cast<std::size_t>(mp.alpha) * Pu), mp.k),
              ZPoly::geometric(static_cast<std::size_t>(p), Pu));
  return FieldElem(difference(sum * factor, seed.value(mp.k, mp.alpha, a, P)));
}

TotalMass total_mass(const MeasureParams& mp, long d, long p, long n_max, const std::optional<QPoint>& q, long prec) {
  check_params(mp);
  check_coprime(d, p);
  TotalMass out{weighted_beta(mp.alpha, mp.k), {}};
  const LazyField target(out.target);
  for (long N = 0; N <= n_max; ++N) {
    const long M = d * ipow_long(p, N);
    std::vector<WeightedPoint> pts;
    for (long a = 0; a < M; ++a) pts.push_back({a, unit_weight()});
    LazyField level = rescaled_sum(mp.alpha, mp.k, M, pts);
    MassLevel ml;
    ml.N = N;
    ml.exact = equal(level, target);
    if (!ml.exact) ml.witness = difference(level, target).to_string();
    if (q) {
      if (q->p() != p) throw Error(ErrorCode::InvalidArgument, "base point prime differs from p");
      const PAdic Q = q->value().with_precision(prec);
      const PAdic QM = Q.pow(M);
      const PAdic bM = bracket(Q, M, mp.alpha, prec);
      std::vector<PAdic> wb;
      for (long l = 0; l <= mp.k; ++l) wb.push_back(eval_ratfunc(qbern_rf(Family::Weighted, mp.alpha, l), QM));
      const PAdic Qalpha = Q.pow(mp.alpha);
      PAdic Qa = PAdic::exact(p, 1), Ba = PAdic::exact(p, 0), Qaa = PAdic::exact(p, 1);
      PAdic sum = PAdic::exact(p, 0);
      for (long a = 0; a < M; ++a) {
        PAdic inner = PAdic::exact(p, 0);
        for (long l = 0; l <= mp.k; ++l)
          inner = inner + PAdic::exact(p, Rational(binomial(mp.k, l))) * Ba.pow(mp.k - l) * bM.pow(l) * Qaa.pow(l) * wb[l];
        sum = sum + Qa * inner;
        Ba = Ba + Qaa;  // [a+1] = [a] + q^{alpha a}
        Qa = Qa * Q;
        Qaa = Qaa * Qalpha;
      }
      sum = sum / bracket(Q, M, 1, prec);
      PAdic diff = sum - eval_ratfunc(out.target.base_value(), Q);
      if (!diff.is_zero()) ml.valuation = diff.valuation();
      ml.precision = diff.prec();
    }
    out.levels.push_back(std::move(ml));
  }
  return out;
}

FieldElem integral_char_X(const DirichletChar& chi, const MeasureParams& mp) {
  check_params(mp);
  return generalized_beta(chi, mp.alpha, mp.k);
}

LazyField integral_char_pX_lazy(const DirichletChar& chi, const MeasureParams& mp, long p) {
  check_params(mp);
  check_coprime(chi.modulus(), p);
  LazyField g = generalized_beta_lazy(chi, mp.alpha, mp.k).substitute(static_cast<std::size_t>(p));
  return (g * bracket_ratio(p, mp)) * char_eval(chi, p);
}

FieldElem integral_char_pX(const DirichletChar& chi, const MeasureParams& mp, long p) {
  return integral_char_pX_lazy(chi, mp, p).reduce();
}

LazyField integral_char_X_level(const DirichletChar& chi, const MeasureParams& mp, long p, long N) {
  check_params(mp);
  check_coprime(chi.modulus(), p);
  const long M = chi.modulus() * ipow_long(p, N);
  std::vector<WeightedPoint> pts;
  for (long x = 0; x < M; ++x) {
    CycElem w = char_eval(chi, x);
    if (!w.is_zero()) pts.push_back({x, w});
  }
  return rescaled_sum(mp.alpha, mp.k, M, pts);
}

LazyField integral_char_pX_level(const DirichletChar& chi, const MeasureParams& mp, long p, long N) {
  check_params(mp);
  check_coprime(chi.modulus(), p);
  const long M = chi.modulus() * ipow_long(p, N);
  std::vector<WeightedPoint> pts;
  for (long y = 0; y < M; ++y) {
    CycElem w = char_eval(chi, p * y);
    if (!w.is_zero()) pts.push_back({p * y, w});
  }
  return rescaled_sum(mp.alpha, mp.k, M * p, pts);
}

namespace {

void check_beta(const DirichletChar& chi, long beta, long p) {
  if (beta == 1) throw Error(ErrorCode::InvalidArgument, "beta must differ from 1");
  if (beta == 0 || std::gcd(beta, p) != 1)
    throw Error(ErrorCode::InvalidArgument, "beta = " + std::to_string(beta) + " must be a unit of Z_p");
  if (std::gcd(beta, chi.modulus()) != 1)
    throw Error(ErrorCode::NotInvertible, "beta = " + std::to_string(beta) + " is not invertible mod " +
                                              std::to_string(chi.modulus()));
}

}  // namespace

CycPAdic integral_char_scaled(const DirichletChar& chi, const MeasureParams& mp, long beta, Region region, long p,
                              const QPoint& q, long prec) {
  check_params(mp);
  check_coprime(chi.modulus(), p);
  check_beta(chi, beta, p);
  if (q.p() != p) throw Error(ErrorCode::InvalidArgument, "base point prime differs from p");
  const QPoint qq(q.value().with_precision(prec));
  const PAdic Q = q_power(qq, Rational(1, beta), prec);  // q^{1/beta}
  if (region == Region::X) return generalized_beta_padic(chi, mp.alpha, mp.k, Q, prec) * char_eval_ratio(chi, 1, beta);
  const PAdic factor = bracket(Q, p, mp.alpha, prec).pow(mp.k) / bracket(Q, p, 1, prec);
  return generalized_beta_padic(chi, mp.alpha, mp.k, Q.pow(p), prec) * factor * char_eval_ratio(chi, p, beta);
}

CycPAdic regularized_integral_Xstar(const DirichletChar& chi, const MeasureParams& mp, long beta, long p,
                                    const QPoint& q, long prec) {
  check_params(mp);
  check_coprime(chi.modulus(), p);
  check_beta(chi, beta, p);
  const PAdic Q = q.value().with_precision(prec);
  const CycPAdic IX = generalized_beta_padic(chi, mp.alpha, mp.k, Q, prec);
  const PAdic pfac = bracket(Q, p, mp.alpha, prec).pow(mp.k) / bracket(Q, p, 1, prec);
  const CycPAdic IpX = generalized_beta_padic(chi, mp.alpha, mp.k, Q.pow(p), prec) * pfac * char_eval(chi, p);
  const Rational inv(1, beta);
  const PAdic c = PAdic::exact(p, inv) * bracket(Q, inv, mp.alpha, prec).pow(mp.k) / bracket(Q, inv, 1, prec);
  const CycPAdic SX = integral_char_scaled(chi, mp, beta, Region::X, p, q, prec);
  const CycPAdic SpX = integral_char_scaled(chi, mp, beta, Region::pX, p, q, prec);
  return (IX - IpX) - (SX - SpX) * c;
}

LazyField chi_operator(const DirichletChar& chi, long y, const MeasureParams& mp, const LazyField& f) {
  check_params(mp);
  if (y < 1) throw Error(ErrorCode::InvalidArgument, "symbolic chi^y needs an integer y >= 1");
  return (f.substitute(static_cast<std::size_t>(y)) * bracket_ratio(y, mp)) * char_eval(chi, y);
}

BaseFunction chi_operator_padic(const DirichletChar& chi, const Rational& y, const MeasureParams& mp, BaseFunction f,
                                long prec) {
  check_params(mp);
  const CycElem cy = char_eval_ratio(chi, y.get_num().get_si(), y.get_den().get_si());
  return [=](const PAdic& base) {
    const PAdic factor = bracket(base, y, mp.alpha, prec).pow(mp.k) / bracket(base, y, 1, prec);
    return f(base_power(base, y, prec)) * factor * cy;
  };
}

FieldElem composition_check(const DirichletChar& chi, const MeasureParams& mp, long x, long y) {
  const LazyField f = generalized_beta_lazy(chi, mp.alpha, mp.k);
  const LazyField lhs = chi_operator(chi, x, mp, chi_operator(chi, y, mp, f));
  const LazyField rhs = chi_operator(chi, x * y, mp, f);
  return difference(lhs, rhs);
}

Eq22Result eq22_check(const DirichletChar& chi, const MeasureParams& mp, long beta, long p, const QPoint& q,
                      long target_prec, long working_prec) {
  check_params(mp);
  check_coprime(chi.modulus(), p);
  check_beta(chi, beta, p);
  if (target_prec < 1) throw Error(ErrorCode::InvalidArgument, "target precision must be >= 1");
  long W = working_prec > 0 ? working_prec : std::max(22L, target_prec + 10);
  const long cap = std::max(W, 16 * (target_prec + 10));
  const FieldElem fsym = generalized_beta(chi, mp.alpha, mp.k);
  const Rational inv(1, beta);
  while (true) {
    try {
      const QPoint qw(q.value().with_precision(W));
      const PAdic base = qw.value();
      CycPAdic lhs = regularized_integral_Xstar(chi, mp, beta, p, qw, W);
      BaseFunction f = [&fsym](const PAdic& b) { return eval_field_elem(fsym, b); };
      BaseFunction op_inv = chi_operator_padic(chi, inv, mp, f, W);
      BaseFunction op_p = chi_operator_padic(chi, Rational(p), mp, f, W);
      BaseFunction op_p_inv = chi_operator_padic(chi, Rational(p), mp, op_inv, W);
      const PAdic ib = PAdic::exact(p, inv);
      CycPAdic rhs = f(base) - op_inv(base) * ib - op_p(base) + op_p_inv(base) * ib;
      CycPAdic diff = lhs - rhs;
      long cert = diff.certified_valuation();
      if (cert >= target_prec || W >= cap) return {lhs, rhs, diff, cert, W};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionLoss || W >= cap) throw;
    }
    W *= 2;
  }
}

}  // namespace qbm
