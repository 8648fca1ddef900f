#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qbm/error.hpp"
#include "qbm/measure.hpp"
#include "qbm/qbernoulli.hpp"

using namespace qbm;

namespace {

ZPoly poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return ZPoly(v);
}

// mu(a + M Z_p) at numeric q straight from the definition, with the argument
// a/M handled as Q^{a/M} = q^a for Q = q^M.
oracle::Q mu_point(const oracle::Q& q, long alpha, long k, long a, long M) {
  auto b = oracle::weighted(oracle::power(q, M), alpha, k);
  oracle::Q br = (1 - oracle::power(q, alpha * a)) / (1 - oracle::power(q, alpha * M));
  oracle::Q poly = 0;
  for (long l = 0; l <= k; ++l)
    poly += oracle::Q(oracle::choose(k, l)) * oracle::power(br, k - l) * oracle::power(q, alpha * l * a) * b[l];
  return oracle::power(oracle::qnum(M, oracle::power(q, alpha)), k) / oracle::qnum(M, q) * oracle::power(q, a) * poly;
}

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("residues and balls") {
  CHECK(residue_reduce(7, 4) == 3);
  CHECK(residue_reduce(-1, 9) == 8);
  CHECK(residue_reduce(12, 12) == 0);
  CHECK_THROWS_AS(Ball(2, 2, 1, 0), Error);
  CHECK_THROWS_AS(Ball(1, 3, 1, 3), Error);
  CHECK(Ball(2, 3, 1, 5).children().size() == 3);
}

TEST_CASE("ball masses") {
  for (long k = 0; k <= 3; ++k) CHECK(mu_ball({k, 2}, Ball(1, 3, 0, 0)) == weighted_beta(2, k));
  for (long N = 0; N <= 2; ++N)
    for (long a = 0; a < 2 * ipow(3, N); a += 2) {
      Ball b(2, 3, N, a);
      CHECK(mu_ball({0, 1}, b) == FieldElem(RatFunc::q_power(a) / qnumber_rf(b.modulus())));
    }
  FieldElem expect = FieldElem(RatFunc::q_power(1) / qnumber_rf(2)) - FieldElem(RatFunc::q_power(2) / RatFunc(poly({1, 0, 1})));
  CHECK(mu_ball({1, 1}, Ball(1, 2, 1, 1)) == expect);
  const oracle::Q q(7, 3);
  for (long alpha = 1; alpha <= 2; ++alpha)
    for (long k = 0; k <= 3; ++k)
      for (long a = 0; a < 6; ++a) CHECK(mu_ball({k, alpha}, Ball(2, 3, 1, a)).base_value().eval(q) == mu_point(q, alpha, k, a, 6));
}

TEST_CASE("additivity") {
  CHECK(additivity_check({1, 1}, Ball(1, 2, 0, 0)).is_zero());
  for (long k = 0; k <= 3; ++k)
    for (long alpha = 1; alpha <= 2; ++alpha)
      for (long a = 0; a < 6; ++a) CHECK(additivity_check({k, alpha}, Ball(2, 3, 1, a)).is_zero());
  QPoint q = QPoint::parse(3, "1+3");
  PAdic diff = additivity_check_padic({2, 2}, Ball(2, 3, 1, 4), q, 20);
  CHECK(diff.is_zero());
  CHECK(diff.prec() >= 15);
  PAdic sym = eval_ratfunc(mu_ball({2, 2}, Ball(2, 3, 1, 4)).base_value(), q.value());
  CHECK(mu_ball_padic({2, 2}, Ball(2, 3, 1, 4), q, 20).congruent(sym));
}

TEST_CASE("distribution criterion over seeds") {
  CHECK(theorem2_criterion({1, 1}, weighted_beta_seed(), 2, 0, 0).is_zero());
  CHECK(theorem2_criterion({2, 2}, weighted_beta_seed(), 3, 1, 2).is_zero());
  for (long a = 0; a < 9; ++a) CHECK(theorem2_criterion({3, 1}, weighted_beta_seed(), 3, 2, a).is_zero());
  FieldElem wrong = theorem2_criterion({1, 1}, constant_seed(), 2, 0, 0);
  CHECK_FALSE(wrong.is_zero());
  CHECK(wrong.to_string() == "q");  // (1 + q) - 1
  CHECK(theorem2_criterion({0, 1}, constant_seed(), 2, 0, 0).is_zero());
}

TEST_CASE("total mass") {
  for (long k : {0L, 1L}) {
    TotalMass t = total_mass({k, 1}, 1, 2, 3);
    for (const auto& l : t.levels) CHECK(l.exact);
  }
  TotalMass t = total_mass({2, 2}, 3, 2, 2, QPoint::parse(2, "1+4"), 20);
  CHECK(t.target == weighted_beta(2, 2));
  for (const auto& l : t.levels) {
    CHECK(l.exact);
    CHECK_FALSE(l.valuation.has_value());
    CHECK(l.precision >= 10);
  }
}

TEST_CASE("character integrals over X and pX") {
  auto triv = dirichlet_character(1, 0);
  auto c4 = dirichlet_character(4, 1);
  CHECK(integral_char_X(triv, {2, 1}) == weighted_beta(1, 2));
  CHECK(integral_char_pX(triv, {0, 1}, 3) == FieldElem(RatFunc(1) / qnumber_rf(3)));
  // chi(3) (1/[3]_q) q^3 (1 - q^3)/(1 + q^6)
  FieldElem expect = FieldElem(-1) * FieldElem(RatFunc::fraction(poly({0, 0, 0, 1, 0, 0, -1}), poly({1, 0, 0, 0, 0, 0, 1})) /
                                               qnumber_rf(3));
  CHECK(integral_char_pX(c4, {0, 1}, 3) == expect);
  for (long k = 0; k <= 2; ++k) {
    LazyField X(integral_char_X(c4, {k, 1}));
    LazyField pX = integral_char_pX_lazy(c4, {k, 1}, 3);
    for (long N = 0; N <= 2; ++N) {
      CHECK(equal(integral_char_X_level(c4, {k, 1}, 3, N), X));
      CHECK(equal(integral_char_pX_level(c4, {k, 1}, 3, N), pX));
    }
  }
}

TEST_CASE("operator chi^y") {
  auto triv = dirichlet_character(1, 0);
  auto c4 = dirichlet_character(4, 1);
  LazyField f(generalized_beta(c4, 2, 2));
  CHECK(equal(chi_operator(c4, 1, {2, 2}, f), f));
  LazyField g(weighted_beta(1, 3));
  FieldElem lhs = chi_operator(triv, 3, {0, 1}, g).reduce();
  CHECK(lhs == substitute_q_power(weighted_beta(1, 3), 3) / FieldElem(qnumber_rf(3)));
  for (long x = 2; x <= 3; ++x)
    for (long y = 2; y <= 3; ++y) CHECK(composition_check(c4, {2, 2}, x, y).is_zero());
}

TEST_CASE("scaled integrals and the final identity") {
  auto triv = dirichlet_character(1, 0);
  auto c4 = dirichlet_character(4, 1);
  QPoint q = QPoint::parse(3, "1+3");
  CycPAdic one = integral_char_scaled(triv, {0, 1}, 5, Region::X, 3, q, 20);
  CHECK((one - CycPAdic(PAdic::exact(3, 1))).certified_valuation() >= 15);
  // k = 0, trivial chi: the four-term value in closed form
  const long p = 3, beta = 5;
  PAdic Q = q.value().with_precision(30);
  PAdic inv_b = PAdic::exact(3, Rational(1, beta));
  PAdic b1 = bracket(Q, Rational(1, beta), 1, 30);
  PAdic bp = bracket(Q, Rational(p, beta), 1, 30);
  PAdic expect = PAdic::exact(3, 1) - PAdic::exact(3, 1) / bracket(Q, p, 1, 30) - inv_b / b1 + inv_b / bp;
  CycPAdic reg = regularized_integral_Xstar(triv, {0, 1}, beta, p, q, 30);
  CHECK((reg - CycPAdic(expect)).certified_valuation() >= 20);
  CHECK_THROWS_AS(integral_char_scaled(c4, {1, 1}, 2, Region::X, 3, q, 20), Error);
  CHECK_THROWS_AS(integral_char_scaled(c4, {1, 1}, 1, Region::X, 3, q, 20), Error);
  for (long k = 0; k <= 1; ++k) {
    Eq22Result r = eq22_check(c4, {k, 1}, 5, 3, q, 12);
    CHECK(r.certified_valuation >= 12);
    CHECK(r.working_precision >= 22);
    Eq22Result t = eq22_check(triv, {k, 2}, 5, 3, q, 12);
    CHECK(t.certified_valuation >= 12);
  }
}
