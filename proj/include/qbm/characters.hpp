#pragma once

// Dirichlet characters with exact cyclotomic values, and the generalized
// weighted q-Bernoulli numbers attached to them.

#include <string>
#include <vector>

#include "qbm/field.hpp"
#include "qbm/padic.hpp"

namespace qbm {

/// One cyclic factor of (Z/dZ)^*: a generator (as a residue mod d, lifted by
/// CRT to be 1 on the other prime-power factors) and its order.
struct UnitGenerator {
  long residue;
  long order;
};

/// Canonical generators: primes ascending; odd p^e uses the least primitive
/// root; 4 uses -1; 2^e (e >= 3) uses -1 then 5.
std::vector<UnitGenerator> unit_group_generators(long d);

class DirichletChar {
 public:
  /// Character with chi(g_i) = zeta_{ord_i}^{c_i} on the canonical generators.
  DirichletChar(long d, std::vector<long> generator_exponents);

  long modulus() const { return d_; }
  unsigned order() const { return m_; }
  long conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == d_; }
  bool is_trivial() const { return m_ == 1; }
  /// Position in enumerate_characters(d).
  long index() const;
  const std::vector<long>& generator_exponents() const { return gen_exps_; }
  /// e(a) with chi(a) = zeta_m^{e(a)}; -1 when gcd(a, d) > 1.
  long exponent(long a) const;
  /// The primitive character mod conductor() inducing this one.
  DirichletChar primitive() const;

  std::string label() const { return std::to_string(d_) + ":" + std::to_string(index()); }

 private:
  long d_;
  unsigned m_ = 1;
  long conductor_ = 1;
  std::vector<long> gen_exps_;
  std::vector<long> exps_;  // per residue, -1 off units
};

/// All phi(d) characters, lexicographic in the generator exponents.
std::vector<DirichletChar> enumerate_characters(long d);
/// The j-th character of enumerate_characters(d).
DirichletChar dirichlet_character(long d, long index);

CycElem char_eval(const DirichletChar& chi, long x);
/// chi(y) * chi(beta)^{-1}, the value at y / beta; NotInvertible unless gcd(beta, d) = 1.
CycElem char_eval_ratio(const DirichletChar& chi, long y, long beta);

/// ([d]^n_{q^alpha}/[d]_q) sum_{a<d} q^a chi(a) wb_{n,q^d}(a/d), d the modulus.
FieldElem generalized_beta(const DirichletChar& chi, long alpha, long n);
LazyField generalized_beta_lazy(const DirichletChar& chi, long alpha, long n);

/// The same sum evaluated at a p-adic base Q (any Q with v_p(Q - 1) >= 1).
CycPAdic generalized_beta_padic(const DirichletChar& chi, long alpha, long n, const PAdic& base, long prec);

}  // namespace qbm
