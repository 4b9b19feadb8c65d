#ifndef KRULL_GOINGDOWN_HPP
#define KRULL_GOINGDOWN_HPP

/* Going Down: the monic-gcd device over the fraction field of an integrally
   closed base (Z or K[t]), the one-step descent loop, and the flat/free
   variant through coordinate decomposition. */

#include "krull/extensions.hpp"

namespace krull {

/* Monic gcd over Frac(R) of P and M, where M is monic with non-leading
   coefficients in the radical ideal I and both annihilate x. The result
   divides both in R[X], annihilates x, and keeps its non-leading
   coefficients in I (checked; CoefficientEscapesIdeal on violation). */
UniPoly gd_monic_gcd(const ExtensionContext& ext, const Ideal& I, const SElement& x,
                     const UniPoly& M, const UniPoly& P, const Caps& caps = {});

struct GDStepResult {
  unsigned gcd_rounds = 0;
  std::vector<unsigned> degree_trace;    // deg(B) per round, strictly decreasing
  UniPoly final_A;                       // annihilator of j0, coefficients in I0
  UniPoly final_B;                       // annihilator of v1; u0^d B(X) = A(u0 X)
  std::vector<RingElement> b_coeffs;     // non-leading coefficients of final_B
  std::vector<bool> b_in_saturation;     // verified through in_saturated_ideal(P0)
  SElement v1_power;                     // v1^deg(B), equal to -sum b_i v1^i
};

/* propGD1 executed: P0 = (I0, U0) saturated prime over the base, Q1 over S,
   and the collapse datum u0*v1 = j0 with j0 given as sum i_k * b_k,
   i_k in I0. candidate_B is any monic annihilator of v1 over the base (the
   characteristic polynomial when absent); coarser candidates drive the
   second-case gcd rounds, with strictly decreasing degrees. Emits the
   verified membership of a power of v1 in (saturated I0) * S. */
GDStepResult going_down_step(const ExtensionContext& ext, const IdealisticPrime& p0,
                             const RingElement& u0, const SElement& v1,
                             const std::vector<RingElement>& j0_ideal_parts,
                             const std::vector<SElement>& j0_s_parts,
                             const std::optional<UniPoly>& candidate_B = std::nullopt,
                             const Caps& caps = {});

struct FlatGDResult {
  std::vector<std::vector<RingElement>> m;  // (r+1) x s over the base; (u0,i..)M = 0
  std::vector<RingElement> m0;              // first row = the v1 coordinates
  std::vector<bool> m0_in_saturation;
  size_t basis_size = 0;
};

/* thGDplat over the monogenic free basis. */
FlatGDResult going_down_flat(const ExtensionContext& ext, const IdealisticPrime& p0,
                             const RingElement& u0, const SElement& v1,
                             const std::vector<RingElement>& i_parts,
                             const std::vector<SElement>& b_parts, const Caps& caps = {});

/* thGDplat over a free polynomial extension R[X..]: elements live in a
   polynomial ring whose coefficient ring is the base. */
FlatGDResult going_down_flat_poly(const RingPtr& base, const RingPtr& poly,
                                  const IdealisticPrime& p0, const RingElement& u0,
                                  const RingElement& v1, const std::vector<RingElement>& i_parts,
                                  const std::vector<RingElement>& b_parts, const Caps& caps = {});

}  // namespace krull

#endif
