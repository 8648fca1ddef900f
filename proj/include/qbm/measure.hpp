#pragma once

// The weighted q-Bernoulli distribution on balls a + d p^N Z_p, its
// additivity, total mass, character integrals over X, pX and X*, the
// operator chi^y, and the final two-route identity.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbm/characters.hpp"
#include "qbm/field.hpp"
#include "qbm/padic.hpp"

namespace qbm {

/// Representative of a in [0, modulus).
long residue_reduce(long a, long modulus);

/// a + d p^N Z_p with gcd(d, p) = 1 and 0 <= a < d p^N.
struct Ball {
  long d;
  long p;
  long N;
  long a;

  Ball(long d, long p, long N, long a);
  long modulus() const;
  /// The p balls of the next level inside this one.
  std::vector<Ball> children() const;
};

struct MeasureParams {
  long k;
  long alpha;
};

/// mu(a + M Z_p) = ([M]^k_{q^alpha}/[M]_q) q^a wb_{k,q^M}(a/M), M = d p^N.
FieldElem mu_ball(const MeasureParams& mp, const Ball& ball);
LazyField mu_ball_lazy(const MeasureParams& mp, const Ball& ball);
PAdic mu_ball_padic(const MeasureParams& mp, const Ball& ball, const QPoint& q, long prec);

/// mu(parent) - sum of mu over its p children.
FieldElem additivity_check(const MeasureParams& mp, const Ball& parent);
PAdic additivity_check_padic(const MeasureParams& mp, const Ball& parent, const QPoint& q, long prec);

/// A family f_{k,q^M}(A/M), given as a value over Z[q] for integer A >= 0, M >= 1.
struct SeedFunction {
  std::string name;
  std::function<Frac(long k, long alpha, long A, long M)> value;
};

/// f = wb, rewritten exactly at the rational argument.
SeedFunction weighted_beta_seed();
/// f = 1; not a distribution seed for k >= 1.
SeedFunction constant_seed();

/// ([p]^k_{Q^alpha}/[p]_Q) sum_b Q^b f_{k,Q^p}((a/p^n + b)/p) - f_{k,Q}(a/p^n), Q = q^{p^n}.
FieldElem theorem2_criterion(const MeasureParams& mp, const SeedFunction& seed, long p, long n, long a);

struct MassLevel {
  long N;
  bool exact;                      // level sum equals wb_k identically
  std::string witness;             // nonzero difference, empty when exact
  std::optional<long> valuation;   // v_p of the p-adic level sum minus wb_k(q); nullopt = zero at precision
  long precision = 0;              // precision of that p-adic difference
};

struct TotalMass {
  FieldElem target;
  std::vector<MassLevel> levels;
};

/// Sums mu over all balls of X_d at each level N <= n_max. With q set, also
/// reports the p-adic shadow of each level sum.
TotalMass total_mass(const MeasureParams& mp, long d, long p, long n_max, const std::optional<QPoint>& q = std::nullopt,
                     long prec = 20);

/// Closed forms of the integrals of chi over X and pX.
FieldElem integral_char_X(const DirichletChar& chi, const MeasureParams& mp);
FieldElem integral_char_pX(const DirichletChar& chi, const MeasureParams& mp, long p);
LazyField integral_char_pX_lazy(const DirichletChar& chi, const MeasureParams& mp, long p);

/// Finite-level sums: sum_{x < dp^N} chi(x) mu(x + dp^N Z_p), and over pX
/// sum_{y < dp^N} chi(py) mu(py + dp^{N+1} Z_p).
LazyField integral_char_X_level(const DirichletChar& chi, const MeasureParams& mp, long p, long N);
LazyField integral_char_pX_level(const DirichletChar& chi, const MeasureParams& mp, long p, long N);

enum class Region { X, pX };

/// Integral of chi against mu_{k,q^{1/beta}}(beta x) over X or pX, closed form at a p-adic base.
CycPAdic integral_char_scaled(const DirichletChar& chi, const MeasureParams& mp, long beta, Region region, long p,
                              const QPoint& q, long prec);

/// Integral over X* of chi against the regularized measure mu_{k,beta,q}(beta x).
CycPAdic regularized_integral_Xstar(const DirichletChar& chi, const MeasureParams& mp, long beta, long p,
                                    const QPoint& q, long prec);

/// chi^y f(q) = ([y]^k_{q^alpha}/[y]_q) chi(y) f(q^y) for integer y >= 1.
LazyField chi_operator(const DirichletChar& chi, long y, const MeasureParams& mp, const LazyField& f);

/// A value given as a function of the base.
using BaseFunction = std::function<CycPAdic(const PAdic& base)>;

/// chi^y at a rational y (a unit of Z_p); brackets and f(q^y) via q_power.
BaseFunction chi_operator_padic(const DirichletChar& chi, const Rational& y, const MeasureParams& mp, BaseFunction f,
                                long prec);

/// chi^x(chi^y f) - chi^{xy} f with f = the generalized number of chi.
FieldElem composition_check(const DirichletChar& chi, const MeasureParams& mp, long x, long y);

struct Eq22Result {
  CycPAdic lhs;
  CycPAdic rhs;
  CycPAdic difference;
  long certified_valuation;
  long working_precision;
};

/// Regularized integral over X* (measure route) minus (1 - chi^p)(1 - (1/beta) chi^{1/beta}) f
/// (operator route), retried with doubled working precision until the difference
/// is certified to target_prec or the cap is reached.
Eq22Result eq22_check(const DirichletChar& chi, const MeasureParams& mp, long beta, long p, const QPoint& q,
                      long target_prec, long working_prec = 0);

}  // namespace qbm
