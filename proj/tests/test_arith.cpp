#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qbm/error.hpp"
#include "qbm/field.hpp"
#include "qbm/padic.hpp"

using namespace qbm;

namespace {

ZPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Integer> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  return ZPoly(c);
}

ZPoly poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return ZPoly(v);
}

const Rational kPoints[] = {Rational(2), Rational(-3), Rational(5, 7), Rational(-11, 4), Rational(13, 9)};

}  // namespace

TEST_CASE("product strategies agree") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    ZPoly a = random_poly(rng, 1 + t * 7, t % 2 ? 1000000000L : 3);
    ZPoly b = random_poly(rng, 3 + t * 5, 50);
    ZPoly s = detail::mul_schoolbook(a, b);
    CHECK(detail::mul_sparse(a, b) == s);
    CHECK(detail::mul_kronecker(a, b) == s);
    CHECK(a * b == s);
  }
}

TEST_CASE("gcd and exact division") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    ZPoly g = random_poly(rng, 1 + t % 6, 20);
    ZPoly a = random_poly(rng, 2 + t, 20) * g;
    ZPoly b = random_poly(rng, 3 + t % 4, 20) * g;
    GcdCofactors r = gcd_cofactors(a, b);
    CHECK(r.gcd * r.a_over_g == a);
    CHECK(r.gcd * r.b_over_g == b);
    CHECK(divide_exact(r.gcd, primitive_part(g)).has_value());
    CHECK(gcd(r.a_over_g, r.b_over_g).is_one());
  }
  CHECK(gcd(poly({-1, 0, 1}), poly({-1, 1})) == poly({-1, 1}));
  CHECK_FALSE(divide_exact(poly({1, 0, 1}), poly({-1, 1})).has_value());
  CHECK_THROWS_AS(divide_exact(poly({1}), ZPoly()), Error);
}

TEST_CASE("rational functions agree with pointwise evaluation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 25; ++t) {
    RatFunc f = RatFunc::fraction(random_poly(rng, 1 + t % 5, 9), random_poly(rng, 1 + t % 3, 9) + poly({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
    RatFunc g = RatFunc::fraction(random_poly(rng, 2, 9), poly({1, 1}) * poly({1, 0, 1}));
    for (const Rational& x : kPoints) {
      Rational fx = f.eval(x), gx = g.eval(x);
      CHECK((f + g).eval(x) == fx + gx);
      CHECK((f - g).eval(x) == fx - gx);
      CHECK((f * g).eval(x) == fx * gx);
      if (gx != 0) CHECK((f / g).eval(x) == fx / gx);
      CHECK(f.substitute(3).eval(x) == f.eval(x * x * x));
      CHECK(f.substitute(-2).eval(x) == f.eval(1 / (x * x)));
    }
    CHECK(f - f == RatFunc());
  }
}

TEST_CASE("canonical forms and strings") {
  RatFunc a = RatFunc::fraction(poly({2, 4}), poly({6, 6}));
  CHECK(a.to_string() == "(2/3*q + 1/3)/(q + 1)");
  CHECK(qnumber_rf(3).to_string() == "q^2 + q + 1");
  CHECK(qnumber_rf(2, -1).to_string() == "(q + 1)/(q)");
  CHECK(RatFunc::fraction(poly({-1}), poly({1, 1})).to_string() == "(-1)/(q + 1)");
  CHECK(RatFunc(Rational(-1, 2)).to_string() == "-1/2");
  CHECK_THROWS_AS(RatFunc::fraction(poly({1}), poly({-1, 1})).eval_at_one(), Error);
  CHECK(RatFunc::fraction(poly({-1, 0, 1}), poly({-1, 1})).eval_at_one() == 2);
}

TEST_CASE("cyclotomic field") {
  CycElem z = CycElem::zeta_power(3, 1);
  CHECK(z * z * z == CycElem(3, Rational(1)));
  CHECK(z * z + z + CycElem(3, Rational(1)) == CycElem(3));
  CycElem i = CycElem::zeta_power(4, 1);
  CHECK(i * i == CycElem(4, Rational(-1)));
  CycElem w = z + i;  // lives in Q(zeta_12)
  CHECK(w.order() == 12);
  CHECK(w * w.inverse() == CycElem(12, Rational(1)));
  for (unsigned m : {1u, 2u, 3u, 4u, 5u, 8u, 12u, 15u}) {
    CycElem s(m);
    for (unsigned j = 0; j < m; ++j) s = s + CycElem::zeta_power(m, j);
    CHECK(s == CycElem(m, Rational(m == 1 ? 1 : 0)));
  }
}

TEST_CASE("field elements over cyclotomic coefficients") {
  FieldElem z(CycElem::zeta_power(5, 2));
  FieldElem q(RatFunc::q_power(1));
  FieldElem x = (q + z) / (q * q + FieldElem(1));
  FieldElem y = x * (q * q + FieldElem(1)) - q;
  CHECK(y == z);
  CHECK((x / x) == FieldElem(1));
  CHECK(x.inverse() * x == FieldElem(1));
  LazyField lx(x), lz(z);
  CHECK(equal(lx * Frac(RatFunc::fraction(poly({1, 0, 1}), poly({1}))), LazyField(q) + lz));
  CHECK(difference(lx, lx).is_zero());
  CHECK(FieldElem(CycElem::zeta_power(4, 1)).to_string() == "(z)");
}

TEST_CASE("p-adic normalization and precision") {
  PAdic a(3, Rational(1), 3), b(3, Rational(3), 3);
  PAdic c = a / b;
  CHECK(c.prec() == 1);
  CHECK(c.valuation() == -1);
  CHECK(PAdic(5, Rational(1, 2), 4).value() == Rational(313));
  CHECK(PAdic(3, Rational(27), 3).is_zero());
  CHECK_THROWS_AS(a / PAdic::exact(3, 0), Error);
  try {
    (void)(a / PAdic(3, Rational(9), 2));
    FAIL("expected PrecisionLoss");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionLoss);
  }
  PAdic d = PAdic(3, Rational(1), 4) - PAdic(3, Rational(1), 4);
  CHECK(d.is_zero());
  CHECK(d.prec() == 4);
  CHECK(PAdic(3, Rational(7), 3).digits() == "1 + 2*3 + O(3^3)");
  CHECK(PAdic::exact(2, 5).digits() == "1 + 1*2^2");
}

// Every lift of the inputs must give an output in the reported ball.
TEST_CASE("p-adic precision is sound under enumeration of lifts") {
  const long p = 3;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> small(1, 200);
  for (int t = 0; t < 60; ++t) {
    long pa = 1 + t % 4, pb = 1 + (t / 4) % 4;
    PAdic a(p, Rational(small(rng) * (t % 3 == 0 ? 3 : 1)), pa);
    PAdic b(p, Rational(small(rng) * (t % 5 == 0 ? 3 : 1)), pb);
    if (b.is_zero()) continue;
    PAdic prod = a * b, sum = a + b, quo = a / b;
    long mod_a = 1, mod_b = 1;
    for (long i = 0; i < pa; ++i) mod_a *= p;
    for (long i = 0; i < pb; ++i) mod_b *= p;
    for (long i = 0; i < 4; ++i) {
      for (long j = 0; j < 4; ++j) {
        Rational la = a.value() + i * mod_a, lb = b.value() + j * mod_b;
        CHECK(PAdic::exact(p, la + lb).congruent(sum));
        CHECK(PAdic::exact(p, la * lb).congruent(prod));
        if (lb != 0) CHECK(PAdic::exact(p, la / lb).congruent(quo));
      }
    }
  }
}

TEST_CASE("q powers and brackets") {
  QPoint q = QPoint::parse(3, "1+3");
  CHECK(q.value().value() == 4);
  CHECK(QPoint::parse(5, "1+p^2").value().value() == 26);
  CHECK(QPoint::parse(3, "7/4").distance_to_one() == 1);
  CHECK_THROWS_AS(QPoint::parse(3, "2"), Error);
  CHECK(q_power(q, 5, 30).value() == 1024);
  PAdic r = q_power(q, Rational(1, 2), 20);
  CHECK(r.prec() == 20);
  CHECK((r * r).congruent(PAdic(3, Rational(4), 20)));
  CHECK_THROWS_AS(q_power(q, Rational(1, 3), 10), Error);
  PAdic half = q_power(q, Rational(-1, 2), 20);
  CHECK((half * r).congruent(PAdic(3, Rational(1), 20)));
  CHECK(bracket(q.value(), 3, 1, 20).value() == 21);
  PAdic br = bracket(q.value(), Rational(1, 2), 1, 20);
  CHECK((br * (PAdic::exact(3, 1) - q.value())).congruent(PAdic::exact(3, 1) - r.with_precision(19)));
  RatFunc f = qnumber_rf(4, 1) / qnumber_rf(3, 1);
  CHECK(eval_ratfunc(f, PAdic(3, Rational(4), 15)).congruent(PAdic::exact(3, f.eval(4))));
}

TEST_CASE("valuations and basic p-adic examples") {
  CHECK(vp(Rational(12), 3) == 1);
  for (long p : {2L, 3L, 5L, 7L}) CHECK(vp(Rational(1), p) == 0);
  CHECK(vp(Rational(9, 2), 3) == 2);
  CHECK(vp(Rational(9, 2), 2) == -1);
  CHECK(vp(Rational(0), 5) == kInfinity);

  PAdic s = PAdic(3, Rational(1), 5) + PAdic(3, Rational(2), 5);
  CHECK(s.value() == 3);
  CHECK(s.prec() == 5);
  PAdic m = PAdic(3, Rational(3), 4) * PAdic(3, Rational(3), 4);
  CHECK(m.value() == 9);
  CHECK(m.prec() == 5);
}

TEST_CASE("square root of 4 in Z_3 by Hensel lifting") {
  // brute force: the root of x^2 = 4 mod 27 with x = 1 mod 3
  long root = -1;
  for (long x = 0; x < 27; ++x)
    if ((x * x - 4) % 27 == 0 && x % 3 == 1) root = x;
  REQUIRE(root == 25);
  PAdic r = q_power(QPoint(3, Rational(4)), Rational(1, 2), 3);
  CHECK(r.prec() >= 3);
  CHECK(r.congruent(PAdic(3, Rational(root), 3)));
}

TEST_CASE("q power exponent laws") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 30);
  for (long p : {2L, 3L, 5L, 7L}) {
    const QPoint q = QPoint::parse(p, p == 2 ? "1+4" : "1+p");
    const long prec = 25;
    CHECK(q_power(q, 0, prec).value() == 1);
    // integer exponents against direct multiplication
    Rational direct = 1;
    for (long n = 0; n <= 20; ++n) {
      CHECK(q_power(q, n, prec).congruent(PAdic(p, direct, prec)));
      direct *= q.value().value();
    }
    for (int t = 0; t < 20; ++t) {
      long sd = den(rng), td = den(rng);
      while (sd % p == 0) ++sd;
      while (td % p == 0) ++td;
      Rational a(num(rng), sd), b(num(rng), td);
      a.canonicalize();
      b.canonicalize();
      PAdic lhs = q_power(q, a + b, prec);
      PAdic rhs = q_power(q, a, prec) * q_power(q, b, prec);
      CHECK(lhs.congruent(rhs));
      CHECK(std::min(lhs.prec(), rhs.prec()) >= prec - 1);
    }
    for (long beta : {2L, 5L, 7L}) {
      if (beta % p == 0) continue;
      PAdic root = q_power(q, Rational(1, beta), prec);
      PAdic back = root.pow(beta);
      CHECK(back.prec() >= prec - 1);
      CHECK(back.congruent(q.value()));
    }
  }
  CHECK(q_power(QPoint::parse(3, "1+3"), 2, 5).congruent(PAdic(3, Rational(16), 5)));
}

TEST_CASE("evaluating symbolic values at a p-adic point") {
  const QPoint q = QPoint::parse(3, "1+3");
  PAdic a = eval_field_elem(RatFunc(poly({1, 1})), q).with_precision(6);
  CHECK(a.value() == 5);
  CHECK(a.prec() == 6);
  PAdic b = eval_field_elem(RatFunc(-1) / RatFunc(poly({1, 1})), q);
  // -1/5 mod 27 by the extended gcd: 5 * 16 = 80 = -1 mod 27
  CHECK(b.congruent(PAdic(3, Rational(16), 3)));
  CHECK(eval_field_elem(qnumber_rf(3), q).value() == 21);
}
