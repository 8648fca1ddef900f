#pragma once

// q-Bernoulli number families, weighted polynomials and the distribution
// relation. All four families come from one umbral solver:
//   q^s * sum_j C(n,j) q^{c j} b_j - b_n = rhs_n   (n >= 1),  b_0 = seed.

#include <string>
#include <vector>

#include "qbm/field.hpp"
#include "qbm/padic.hpp"

namespace qbm {

enum class Family { Xi, Carlitz, Extended, Weighted };

const char* family_name(Family f);
/// Parses "xi", "carlitz", "extended", "weighted".
Family parse_family(const std::string& name);

struct UmbralEquation {
  long prefactor_exp;  // s
  long inner_exp;      // c
  RatFunc seed;
  RatFunc rhs_at_one;  // rhs_n is zero for n != 1
};

/// The defining equation of a family; `param` is h (Extended) or alpha (Weighted)
/// and ignored otherwise.
UmbralEquation umbral_equation(Family f, long param);

/// Memoized table entry. Throws DegenerateEquation when the coefficient of
/// b_n vanishes (only possible for Extended with h < 0, at n = -h).
const RatFunc& qbern_rf(Family f, long param, long n);
FieldElem qbern(Family f, long param, long n);

/// Left side minus right side of equation n evaluated on `values` (which must
/// hold entries 0..n). Zero iff the values satisfy it.
RatFunc umbral_residual(const UmbralEquation& eq, const std::vector<RatFunc>& values, long n);

FieldElem xi(long k);
FieldElem carlitz_beta(long k);
FieldElem extended_beta(long h, long k);
FieldElem weighted_beta(long alpha, long n);

/// [x]_{q^c} for any integer x (negative x gives a Laurent ratio).
RatFunc qnumber_int(long x, long c = 1);

/// sum_l C(n,l) [x]^{n-l}_{q^alpha} q^{alpha l x} wb_l for integer x >= 0.
FieldElem weighted_beta_poly(long alpha, long n, long x);

/// Same sum at a p-adic integer argument x, with brackets and powers of q
/// taken through the binomial series.
PAdic weighted_beta_poly_padic(long alpha, long n, const Rational& x, const QPoint& q, long prec);

struct WeightedPoint {
  long A;
  CycElem w;
};

/// sum over points of  w * ([M]^n_{q^alpha} / [M]_q) * q^A * wb_{n, q^M}(A / M).
///
/// The polynomial at the rational argument A/M is rewritten exactly with
/// [A/M]_{q^{M alpha}} = [A]_{q^alpha} / [M]_{q^alpha} and
/// q^{M alpha l (A/M)} = q^{alpha l A}, so the result lies in Q(zeta_m)(q).
/// Returned unreduced with one shared denominator. Requires A >= 0, M >= 1.
LazyField rescaled_sum(long alpha, long n, long M, const std::vector<WeightedPoint>& points);

/// wb_l for l <= n over a shared denominator: wb_l = numerators[l] / denominator.
struct SharedDenominator {
  ZPoly denominator;
  std::vector<ZPoly> numerators;
};
const SharedDenominator& weighted_beta_shared(long alpha, long n);

/// wb_n(x) - ([d]^n_{q^alpha}/[d]_q) sum_{a<d} q^a wb_{n,q^d}((x+a)/d).
FieldElem distribution_check(long alpha, long n, long d, long x);

Integer binomial(long n, long k);

}  // namespace qbm
