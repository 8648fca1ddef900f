#pragma once

#include <string>
#include <vector>

#include "qbm/zpoly.hpp"

namespace qbm {

/// Euler totient.
unsigned totient(unsigned m);

/// The m-th cyclotomic polynomial, cached.
const ZPoly& cyclotomic_poly(unsigned m);

/// Integer coordinates of zeta_m^e in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
const std::vector<Integer>& zeta_power_coords(unsigned m, long e);

/// Element of Q(zeta_m) in the power basis modulo the m-th cyclotomic
/// polynomial. m = 1 is plain Q.
class CycElem {
 public:
  CycElem() : CycElem(1) {}
  explicit CycElem(unsigned m);
  CycElem(unsigned m, const Rational& r);
  CycElem(unsigned m, std::vector<Rational> coords);

  static CycElem zeta_power(unsigned m, long e);

  unsigned order() const { return m_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;

  /// Same value viewed in Q(zeta_n); requires order() | n.
  CycElem embed(unsigned n) const;

  CycElem inverse() const;

  friend CycElem operator+(const CycElem& a, const CycElem& b);
  friend CycElem operator-(const CycElem& a, const CycElem& b);
  friend CycElem operator-(const CycElem& a);
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  friend CycElem operator/(const CycElem& a, const CycElem& b);
  friend bool operator==(const CycElem& a, const CycElem& b);

  /// "1/2 - 3*z^2" style; "0" for zero.
  std::string to_string() const;

 private:
  unsigned m_;
  std::vector<Rational> coords_;
};

/// Reduces a coefficient vector of any length modulo Phi_m in place,
/// leaving exactly phi(m) entries. T must support += and * by Integer.
template <class T, class Mul>
void reduce_cyclotomic(std::vector<T>& v, unsigned m, const T& zero, Mul mul) {
  const ZPoly& phi = cyclotomic_poly(m);
  const std::size_t n = static_cast<std::size_t>(phi.degree());
  for (std::size_t e = v.size(); e-- > n;) {
    // zeta^e = -sum_{i<n} phi_i zeta^{e-n+i}
    for (std::size_t i = 0; i < n; ++i) {
      if (phi[i] == 0) continue;
      v[e - n + i] = v[e - n + i] + mul(v[e], Integer(-phi[i]));
    }
  }
  v.resize(n, zero);
}

}  // namespace qbm
