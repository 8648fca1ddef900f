// Acceptance run: one PASS/FAIL line per criterion with its runtime budget.
// Reference values come from pointwise rational oracles (oracles.hpp and the
// helpers below), never from the symbolic code under test.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qbm/characters.hpp"
#include "qbm/error.hpp"
#include "qbm/integral.hpp"
#include "qbm/measure.hpp"
#include "qbm/qbernoulli.hpp"

using namespace qbm;
using oracle::Q;

namespace {

// Pinned tolerances.
constexpr long kFinalMinValuation = 12;
constexpr long kFinalWorkingDigits = 22;
constexpr long kWittFloorOffset = 2;  // v_N >= N - 2
constexpr long kWittLevels = 5;
constexpr long kKernelMaxPrec = 4;

const Q kQ1(5, 3);   // sample points for pointwise oracles
const Q kQ2(-7, 2);

struct Outcome {
  bool ok = true;
  std::string detail;
  long checks = 0;
  void expect(bool c, const std::string& what) {
    ++checks;
    if (!c && ok) {
      ok = false;
      detail = what;
    }
  }
};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Config;  // "no error" sentinel: never raised by the code under test here
}

std::string str(long v) { return std::to_string(v); }

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ---- pointwise oracles -----------------------------------------------------

/// (1 - q^e)/(1 - q) for any integer e.
Q bracket_int(const Q& q, long e) { return (1 - oracle::power(q, e)) / (1 - q); }

/// wb_{n,Q}(y) for y = A/M and Q = q^M: [y]_{Q^alpha} = (1 - q^{alpha A})/(1 - q^{alpha M}), Q^{alpha l y} = q^{alpha l A}.
Q wb_at_ratio(const Q& q, long alpha, long n, long A, long M) {
  auto b = oracle::weighted(oracle::power(q, M), alpha, n);
  Q br = (1 - oracle::power(q, alpha * A)) / (1 - oracle::power(q, alpha * M));
  Q s = 0;
  for (long l = 0; l <= n; ++l)
    s += Q(oracle::choose(n, l)) * oracle::power(br, n - l) * oracle::power(q, alpha * l * A) * b[l];
  return s;
}

/// mu(a + M Z_p) straight from the definition.
Q mu_point(const Q& q, long alpha, long k, long a, long M) {
  return oracle::power(oracle::qnum(M, oracle::power(q, alpha)), k) / oracle::qnum(M, q) * oracle::power(q, a) *
         wb_at_ratio(q, alpha, k, a, M);
}

/// Gaussian rationals, enough for characters of order dividing 4.
struct G {
  Q re = 0, im = 0;
};
G operator+(const G& a, const G& b) { return {a.re + b.re, a.im + b.im}; }
G operator*(const G& a, const Q& s) { return {a.re * s, a.im * s}; }
bool operator==(const G& a, const G& b) { return a.re == b.re && a.im == b.im; }

/// i^e.
G i_power(long e) {
  switch (((e % 4) + 4) % 4) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

/// Characters mod 4 and mod 5 written out by hand: mod 4 index j has chi(3) = (-1)^j,
/// mod 5 index j has chi(2) = i^j (2 generates (Z/5)^*).
G chi_value(long d, long j, long a) {
  a %= d;
  if (d == 1) return {1, 0};
  if (d == 4) {
    if (a % 2 == 0) return {0, 0};
    return a == 1 ? G{1, 0} : i_power(2 * j);
  }
  if (d == 5) {
    if (a == 0) return {0, 0};
    long e = 0;
    for (long t = 1; t != a; t = t * 2 % 5) ++e;
    return i_power(j * e);
  }
  throw Error(ErrorCode::InvalidArgument, "oracle covers moduli 1, 4, 5");
}

/// Generalized number by its defining sum at numeric q.
G generalized_point(const Q& q, long d, long j, long alpha, long n) {
  G s;
  for (long a = 0; a < d; ++a) s = s + chi_value(d, j, a) * (oracle::power(q, a) * wb_at_ratio(q, alpha, n, a, d));
  return s * (oracle::power(oracle::qnum(d, oracle::power(q, alpha)), n) / oracle::qnum(d, q));
}

/// A symbolic value of order dividing 4 evaluated at q as a Gaussian rational.
G to_gaussian(const FieldElem& f, const Q& q) {
  const unsigned m = f.order();
  G s;
  for (std::size_t t = 0; t < f.coords().size(); ++t) {
    Q c = f.coords()[t].eval(Rational(q));
    G z = m == 1 ? G{1, 0} : (m == 2 ? i_power(2 * static_cast<long>(t)) : i_power(static_cast<long>(t)));
    if (m != 1 && m != 2 && m != 4) throw Error(ErrorCode::InvalidArgument, "oracle covers orders dividing 4");
    s = s + z * c;
  }
  return s;
}

/// Riemann sum S_N at numeric q with every term computed from scratch.
Q riemann_point(const Q& q, long alpha, long n, long p, long N) {
  const long M = ipow(p, N);
  Q s = 0;
  for (long x = 0; x < M; ++x) s += oracle::power(oracle::qnum(x, oracle::power(q, alpha)), n) * oracle::power(q, x);
  return s / oracle::qnum(M, q);
}

long vp_oracle(const Q& r, long p) {
  mpz_class n = r.get_num(), d = r.get_den();
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

// ---- criteria ---------------------------------------------------------------

Outcome residuals() {
  Outcome o;
  struct Fam {
    Family f;
    long param, s, c;
  };
  std::vector<Fam> fams{{Family::Xi, 0, 0, 1}, {Family::Carlitz, 0, 1, 1}};
  for (long h = -3; h <= 3; ++h)
    if (h != 0) fams.push_back({Family::Extended, h, h, 1});
  for (long a = 1; a <= 3; ++a) fams.push_back({Family::Weighted, a, 1, a});
  for (const auto& fam : fams) {
    const std::string tag = std::string(family_name(fam.f)) + "(" + str(fam.param) + ")";
    const UmbralEquation eq = umbral_equation(fam.f, fam.param);
    const long degenerate = (fam.f == Family::Extended && fam.param < 0) ? -fam.param : -1;
    const long top = degenerate >= 0 ? degenerate - 1 : 10;
    std::vector<RatFunc> vals;
    for (long n = 0; n <= top; ++n) vals.push_back(qbern_rf(fam.f, fam.param, n));
    for (long n = 0; n <= top; ++n) o.expect(umbral_residual(eq, vals, n).is_zero(), tag + " residual n=" + str(n));
    for (const Q& q : {kQ1, kQ2}) {
      Q seed = fam.f == Family::Extended ? Q(fam.param) / bracket_int(q, fam.param) : Q(1);
      Q rhs1 = fam.f == Family::Weighted ? Q(fam.param) / oracle::qnum(fam.param, q) : Q(1);
      auto ref = oracle::umbral_solve(q, fam.s, fam.c, seed, rhs1, top);
      for (long n = 0; n <= top; ++n) o.expect(vals[n].eval(Rational(q)) == ref[n], tag + " oracle n=" + str(n));
    }
    if (degenerate >= 0) {
      // the equation at n = -h has a vanishing b_n coefficient; it must hold as 0 = 0
      o.expect(code_of([&] { (void)qbern_rf(fam.f, fam.param, degenerate); }) == ErrorCode::DegenerateEquation,
               tag + " degenerate index not reported");
      std::vector<RatFunc> with_free = vals;
      with_free.push_back(RatFunc());
      o.expect(umbral_residual(eq, with_free, degenerate).is_zero(), tag + " inconsistent at n=-h");
    }
  }
  o.detail = o.ok ? "Xi, Carlitz, extended |h|<=3, weighted alpha<=3, n<=10; h<0 checked for n<-h and consistent at n=-h"
                  : o.detail;
  return o;
}

Outcome classical_limit() {
  Outcome o;
  auto B = oracle::bernoulli(8);
  for (long a = 1; a <= 3; ++a)
    for (long n = 0; n <= 8; ++n)
      o.expect(eval_at_one(weighted_beta(a, n)) == CycElem(1, Rational(B[n])),
               "alpha=" + str(a) + " n=" + str(n));
  o.expect(code_of([] { (void)eval_at_one(xi(2)); }) == ErrorCode::PoleAtOne, "xi_2 limit did not raise PoleAtOne");
  if (o.ok) o.detail = "B_n for alpha<=3, n<=8; xi_2 raises PoleAtOne";
  return o;
}

Outcome distribution() {
  Outcome o;
  for (long a = 1; a <= 3; ++a)
    for (long n = 0; n <= 5; ++n)
      for (long d = 1; d <= 4; ++d)
        for (long x = 0; x <= 3; ++x) {
          const std::string tag = "alpha=" + str(a) + " n=" + str(n) + " d=" + str(d) + " x=" + str(x);
          o.expect(distribution_check(a, n, d, x).is_zero(), tag);
          // both sides pointwise
          Q rhs = 0;
          for (long r = 0; r < d; ++r) rhs += oracle::power(kQ1, r) * wb_at_ratio(kQ1, a, n, x + r, d);
          rhs *= oracle::power(oracle::qnum(d, oracle::power(kQ1, a)), n) / oracle::qnum(d, kQ1);
          o.expect(weighted_beta_poly(a, n, x).base_value().eval(Rational(kQ1)) == rhs, tag + " pointwise");
        }
  if (o.ok) o.detail = "288 cases exact zero, pointwise oracle agrees";
  return o;
}

Outcome additivity() {
  Outcome o;
  long balls = 0;
  for (long p : {2L, 3L, 5L})
    for (long d : {1L, 2L, 4L}) {
      if (d % p == 0) continue;
      for (long N = 0; N <= 1; ++N) {
        const long M = d * ipow(p, N);
        for (long k = 0; k <= 4; ++k)
          for (long a = 1; a <= 2; ++a)
            for (long r = 0; r < M; ++r) {
              const std::string tag =
                  "p=" + str(p) + " d=" + str(d) + " N=" + str(N) + " k=" + str(k) + " alpha=" + str(a) + " a=" + str(r);
              ++balls;
              o.expect(additivity_check({k, a}, Ball(d, p, N, r)).is_zero(), tag);
              Q children = 0;
              for (long b = 0; b < p; ++b) children += mu_point(kQ1, a, k, r + b * M, M * p);
              o.expect(children == mu_point(kQ1, a, k, r, M), tag + " pointwise");
            }
      }
    }
  // the wrong seed is rejected, the right one accepted
  bool rejected = false;
  for (long p : {2L, 3L, 5L})
    for (long k = 1; k <= 4; ++k) {
      if (!theorem2_criterion({k, 1}, constant_seed(), p, 0, 0).is_zero()) rejected = true;
      o.expect(theorem2_criterion({k, 2}, weighted_beta_seed(), p, 1, 1).is_zero(), "weighted seed rejected");
    }
  o.expect(rejected, "constant seed accepted");
  if (o.ok) o.detail = str(balls) + " parent balls exact zero; constant seed rejected";
  return o;
}

Outcome total_mass_and_witt() {
  Outcome o;
  for (long p : {2L, 3L, 5L})
    for (long d : {1L, 2L, 4L}) {
      if (d % p == 0) continue;
      for (long k = 0; k <= 4; ++k)
        for (long a = 1; a <= 2; ++a) {
          TotalMass t = total_mass({k, a}, d, p, 3);
          for (const auto& l : t.levels)
            o.expect(l.exact, "mass p=" + str(p) + " d=" + str(d) + " k=" + str(k) + " alpha=" + str(a) + " N=" +
                                  str(l.N));
        }
    }
  std::string profiles;
  const long p = 3;
  const Q q = 1 + p;
  for (long a = 1; a <= 2; ++a)
    for (long k = 0; k <= 4; ++k) {
      const Q target = oracle::weighted(q, a, k)[k];
      WittProfile w = witt_convergence(a, k, 0, QPoint(p, Rational(q)), kWittLevels, kWittFloorOffset);
      const std::string tag = "Witt alpha=" + str(a) + " k=" + str(k);
      long prev = -1000000;
      for (const auto& l : w.levels) {
        Q diff = riemann_point(q, a, k, p, l.N) - target;
        const bool zero = diff == 0;
        o.expect(zero == !l.valuation.has_value(), tag + " zero mismatch");
        if (zero) {
          prev = 1000000;
          continue;
        }
        const long v = vp_oracle(diff, p);
        o.expect(l.valuation && *l.valuation == v, tag + " valuation mismatch at N=" + str(l.N));
        o.expect(v >= prev, tag + " decreasing at N=" + str(l.N));
        o.expect(v >= l.N - kWittFloorOffset, tag + " below floor at N=" + str(l.N));
        prev = v;
      }
      o.expect(w.pass(), tag + " verdict");
    }
  if (o.ok) o.detail = "levels N<=3 exact on the additivity grid; Witt p=3 q=4 k<=4 N<=5 nondecreasing, >= N-2";
  return o;
}

Outcome char_integrals() {
  Outcome o;
  const long p = 3;
  for (long d : {4L, 5L})
    for (const auto& chi : enumerate_characters(d))
      for (long k = 0; k <= 3; ++k)
        for (long a = 1; a <= 2; ++a) {
          const MeasureParams mp{k, a};
          const std::string tag = chi.label() + " k=" + str(k) + " alpha=" + str(a);
          FieldElem g = generalized_beta(chi, a, k);
          o.expect(to_gaussian(g, kQ1) == generalized_point(kQ1, d, chi.index(), a, k), tag + " pointwise");
          FieldElem x_closed = integral_char_X(chi, mp);
          o.expect(x_closed.to_string() == g.to_string(), tag + " X closed form");
          const LazyField xl(x_closed), pl = integral_char_pX_lazy(chi, mp, p);
          for (long N = 0; N <= 2; ++N) {
            o.expect(equal(integral_char_X_level(chi, mp, p, N), xl), tag + " X level " + str(N));
            o.expect(equal(integral_char_pX_level(chi, mp, p, N), pl), tag + " pX level " + str(N));
          }
        }
  if (o.ok) o.detail = "all characters mod 4 and 5, p=3, k<=3, alpha<=2, levels N<=2";
  return o;
}

Outcome composition() {
  Outcome o;
  for (const auto& chi : enumerate_characters(4))
    for (long k = 0; k <= 3; ++k)
      for (long a = 1; a <= 2; ++a)
        for (long x = 2; x <= 5; ++x)
          for (long y = 2; y <= 5; ++y) {
            const std::string tag = chi.label() + " k=" + str(k) + " alpha=" + str(a) + " x=" + str(x) + " y=" + str(y);
            o.expect(composition_check(chi, {k, a}, x, y).is_zero(), tag);
            // pointwise: chi^x(chi^y f)(q) against chi^{xy} f(q), f from its defining sum
            const Q q = kQ1;
            const Q qx = oracle::power(q, x);
            G f = generalized_point(oracle::power(q, x * y), 4, chi.index(), a, k);
            G cx = chi_value(4, chi.index(), x), cy = chi_value(4, chi.index(), y);
            Q sx = oracle::power(oracle::qnum(x, oracle::power(q, a)), k) / oracle::qnum(x, q);
            Q sy = oracle::power(oracle::qnum(y, oracle::power(qx, a)), k) / oracle::qnum(y, qx);
            Q sxy = oracle::power(oracle::qnum(x * y, oracle::power(q, a)), k) / oracle::qnum(x * y, q);
            // characters mod 4 are real
            G lhs = f * (sx * sy * cx.re * cy.re);
            G rhs = f * (sxy * chi_value(4, chi.index(), x * y).re);
            o.expect(lhs == rhs, tag + " pointwise");
          }
  if (o.ok) o.detail = "both characters mod 4, x,y in 2..5, k<=3, alpha<=2";
  return o;
}

Outcome final_identity() {
  Outcome o;
  const long p = 3, beta = 5;
  const QPoint q = QPoint::parse(p, "1+3");
  long worst = kInfinity;
  for (const auto& chi : {dirichlet_character(1, 0), dirichlet_character(4, 1)})
    for (long k = 0; k <= 3; ++k)
      for (long a = 1; a <= 2; ++a) {
        Eq22Result r = eq22_check(chi, {k, a}, beta, p, q, kFinalMinValuation, kFinalWorkingDigits);
        const std::string tag = chi.label() + " k=" + str(k) + " alpha=" + str(a);
        o.expect(r.working_precision >= kFinalWorkingDigits, tag + " working precision");
        o.expect(r.lhs.prec() >= kFinalMinValuation, tag + " measure route precision");
        o.expect(r.certified_valuation >= kFinalMinValuation, tag + " valuation " + str(r.certified_valuation));
        worst = std::min(worst, r.certified_valuation);
      }
  if (o.ok) o.detail = "trivial and mod-4 characters, beta=5, k<=3, alpha<=2; min certified valuation " + str(worst);
  return o;
}

Outcome padic_kernel() {
  Outcome o;
  // exponent laws
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 20);
  for (long p : {2L, 3L, 5L}) {
    const QPoint q = QPoint::parse(p, p == 2 ? "1+4" : "1+p");
    for (int t = 0; t < 30; ++t) {
      long sd = den(rng), td = den(rng);
      while (sd % p == 0) ++sd;
      while (td % p == 0) ++td;
      Rational s(num(rng), sd), u(num(rng), td);
      s.canonicalize();
      u.canonicalize();
      o.expect(q_power(q, s + u, 20).congruent(q_power(q, s, 20) * q_power(q, u, 20)), "exponent law p=" + str(p));
      o.expect(q_power(q, s * u, 20).congruent(base_power(q_power(q, s, 30), u, 20)), "power law p=" + str(p));
    }
  }
  // Hensel: the square root of 4 that is 1 mod 3
  long root = -1;
  for (long x = 0; x < 27; ++x)
    if ((x * x - 4) % 27 == 0 && x % 3 == 1) root = x;
  o.expect(root == 25, "oracle root");
  o.expect(q_power(QPoint(3, Rational(4)), Rational(1, 2), 3).congruent(PAdic(3, Rational(25), 3)), "4^(1/2) mod 27");
  // every lift of the operands lands in the claimed result class
  long cases = 0;
  for (long p : {2L, 3L}) {
    for (long pa = 1; pa <= kKernelMaxPrec; ++pa)
      for (long pb = 1; pb <= kKernelMaxPrec; ++pb) {
        const long ma = ipow(p, pa), mb = ipow(p, pb);
        for (long ra = 0; ra < ma; ++ra)
          for (long rb = 0; rb < mb; ++rb) {
            const PAdic a(p, Rational(ra), pa), b(p, Rational(rb), pb);
            ++cases;
            const PAdic sum = a + b, diff = a - b, prod = a * b;
            std::optional<PAdic> quo;
            if (!b.is_zero()) quo = a / b;
            for (long i = 0; i < p; ++i)
              for (long j = 0; j < p; ++j) {
                const Q la = ra + i * ma, lb = rb + j * mb;
                o.expect(PAdic::exact(p, Rational(la + lb)).congruent(sum), "sum");
                o.expect(PAdic::exact(p, Rational(la - lb)).congruent(diff), "difference");
                o.expect(PAdic::exact(p, Rational(la * lb)).congruent(prod), "product");
                if (quo && lb != 0) o.expect(PAdic::exact(p, Rational(la / lb)).congruent(*quo), "quotient");
              }
          }
      }
  }
  if (o.ok) o.detail = "exponent laws, 4^(1/2) = 25 mod 27, " + str(cases) + " operand classes enumerated";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "recurrence residuals", 5, residuals},
      {2, "classical limit", 2, classical_limit},
      {3, "distribution relation", 30, distribution},
      {4, "measure additivity", 60, additivity},
      {5, "total mass and Witt profile", 60, total_mass_and_witt},
      {6, "character integrals over X and pX", 60, char_integrals},
      {7, "operator composition", 20, composition},
      {8, "regularized integral identity", 60, final_identity},
      {9, "p-adic kernel soundness", 10, padic_kernel},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs < c.budget;
    const bool pass = o.ok && in_budget;
    if (!pass) ++failed;
    std::printf("criterion %d %s  %-34s %.2fs/%gs  %ld checks  %s%s\n", c.id, pass ? "PASS" : "FAIL", c.title, secs,
                c.budget, o.checks, o.detail.c_str(), in_budget ? "" : "  (over budget)");
  }
  std::printf("%s: %d of 9 criteria failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
  return failed == 0 ? 0 : 1;
}
