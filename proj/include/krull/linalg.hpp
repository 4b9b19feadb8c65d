#ifndef KRULL_LINALG_HPP
#define KRULL_LINALG_HPP

/* Small exact linear algebra over a RingContext: determinants by Laplace
   expansion and univariate polynomials (dense, low degree) for
   characteristic polynomials. */

#include <vector>

#include "krull/rings.hpp"

namespace krull {

using RMat = std::vector<std::vector<RingElement>>;

/* Dense univariate polynomial over an arbitrary supported ring; coefficient
   index = degree. Trailing zeros are trimmed. */
struct UniPoly {
  RingPtr base;
  std::vector<RingElement> c;

  static UniPoly zero(const RingPtr& r) { return UniPoly{r, {}}; }
  static UniPoly constant(const RingElement& a);
  static UniPoly variable(const RingPtr& r);  // the polynomial T

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const;
  const RingElement& leading() const { return c.back(); }
  RingElement coeff(size_t i) const { return i < c.size() ? c[i] : base->zero(); }
  void trim();

  std::string str(const std::string& var = "T") const;
};

UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const UniPoly& a, const RingElement& s);
bool uni_eq(const UniPoly& a, const UniPoly& b);
RingElement uni_eval(const UniPoly& a, const RingElement& x);
/* A(s*X): coefficient i multiplied by s^i. */
UniPoly uni_compose_scale(const UniPoly& a, const RingElement& s);
/* s^deg(a) * A(X/s): coefficient i multiplied by s^(deg-i). */
UniPoly uni_homogenize_scale(const UniPoly& a, const RingElement& s);

RingElement det(const RMat& m);
/* Characteristic polynomial det(T*I - M), monic of degree n. */
UniPoly char_poly(const RMat& m);

}  // namespace krull

#endif
