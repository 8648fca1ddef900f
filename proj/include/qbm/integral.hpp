#pragma once

// The p-adic q-integral as truncated Riemann sums, and Witt-formula
// convergence profiles.

#include <optional>
#include <string>
#include <vector>

#include "qbm/characters.hpp"
#include "qbm/field.hpp"
#include "qbm/padic.hpp"

namespace qbm {

/// (1/[p^N]_q) sum_{x < p^N} chi(x) [x + shift]^n_{q^alpha} q^x.
struct RiemannSumSpec {
  long p;
  long N;
  long n;
  long alpha = 1;
  long shift = 0;
  std::optional<DirichletChar> chi;
};

FieldElem riemann_sum(const RiemannSumSpec& spec);
/// The same sum at a rational q, computed exactly.
CycElem riemann_sum_at(const RiemannSumSpec& spec, const Rational& q);

struct WittLevel {
  long N;
  Rational sum;                    // S_N at q
  std::optional<long> valuation;   // v_p(S_N - target); nullopt when exactly zero
};

struct WittProfile {
  long p;
  long alpha;
  long n;
  long shift;
  Rational target;                 // wb_n(shift) at q
  std::vector<WittLevel> levels;   // N = 1 .. n_max
  bool nondecreasing = true;
  bool above_floor = true;         // v_N >= N - floor_offset at every level
  bool pass() const { return nondecreasing && above_floor; }
};

/// Profile of v_p(S_N - wb_n(shift)) for N = 1..n_max at the exact rational q.
WittProfile witt_convergence(long alpha, long n, long shift, const QPoint& q, long n_max, long floor_offset = 2);

}  // namespace qbm
