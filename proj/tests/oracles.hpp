#pragma once

// Independent reference computations used by the tests. Everything here works
// pointwise over exact rationals (q replaced by a rational number) and never
// touches the symbolic machinery it is checking.

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Q = mpq_class;

inline Q power(const Q& x, long e) {
  Q r = 1;
  Q b = e < 0 ? Q(1 / x) : x;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

inline mpz_class choose(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// [x]_Q by the geometric sum 1 + Q + ... + Q^{x-1}.
inline Q qnum(long x, const Q& base) {
  Q s = 0, t = 1;
  for (long i = 0; i < x; ++i) {
    s += t;
    t *= base;
  }
  return s;
}

/// Solves q^s sum_j C(n,j) q^{cj} b_j - b_n = rhs_n at a numeric q, one
/// unknown at a time, by plain Gaussian back substitution.
inline std::vector<Q> umbral_solve(const Q& q, long s, long c, const Q& seed, const Q& rhs1, long nmax) {
  std::vector<Q> b{seed};
  for (long n = 1; n <= nmax; ++n) {
    Q known = 0;
    for (long j = 0; j < n; ++j) known += Q(choose(n, j)) * power(q, c * j) * b[j];
    Q rhs = (n == 1) ? rhs1 : Q(0);
    // q^s (known + q^{cn} b_n) - b_n = rhs
    Q coef = power(q, s + c * n) - 1;
    b.push_back((rhs - power(q, s) * known) / coef);
  }
  return b;
}

/// Weighted family at a numeric q.
inline std::vector<Q> weighted(const Q& q, long alpha, long nmax) {
  return umbral_solve(q, 1, alpha, 1, Q(alpha) / qnum(alpha, q), nmax);
}

/// Classical Bernoulli numbers from sum_{j<=n} C(n+1,j) B_j = 0, B_0 = 1.
inline std::vector<Q> bernoulli(long nmax) {
  std::vector<Q> B{1};
  for (long n = 1; n <= nmax; ++n) {
    Q s = 0;
    for (long j = 0; j < n; ++j) s += Q(choose(n + 1, j)) * B[j];
    B.push_back(-s / (n + 1));
  }
  return B;
}

}  // namespace oracle
