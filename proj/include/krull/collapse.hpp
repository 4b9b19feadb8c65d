#ifndef KRULL_COLLAPSE_HPP
#define KRULL_COLLAPSE_HPP

/* Collapse decision and certification: the iterated saturation
   K := (K : (prod U_k)^inf) + <J_{k+1}> with a final radical-membership
   test, and certificates obtained by back-substituting cofactor-tracked
   memberships level by level. */

#include <optional>
#include <utility>
#include <vector>

#include "krull/caps.hpp"
#include "krull/chains.hpp"
#include "krull/groebner.hpp"

namespace krull {

/* The collapse iteration runs over any algebra exposing these ideal oracles;
   plain rings use RingAlgebra, monogenic extensions provide their own. */
class CollapseAlgebra {
 public:
  virtual ~CollapseAlgebra() = default;
  virtual RingPtr elem_ring() const = 0;
  virtual RingElement add(const RingElement& a, const RingElement& b) const = 0;
  virtual RingElement mul(const RingElement& a, const RingElement& b) const = 0;
  virtual RingElement neg(const RingElement& a) const = 0;
  virtual RingElement one() const = 0;
  virtual RingElement zero() const = 0;
  virtual bool is_zero(const RingElement& a) const = 0;
  RingElement pow(const RingElement& a, unsigned long e) const;
  RingElement product(const std::vector<RingElement>& xs) const;

  virtual std::vector<RingElement> saturation(const std::vector<RingElement>& gens,
                                              const RingElement& p) const = 0;
  virtual bool radical_contains(const std::vector<RingElement>& gens,
                                const RingElement& f) const = 0;
  virtual std::optional<std::pair<unsigned, std::vector<RingElement>>> radical_power(
      const std::vector<RingElement>& gens, const RingElement& f) const = 0;
  virtual std::optional<std::vector<RingElement>> member_cofactors(
      const std::vector<RingElement>& gens, const RingElement& f) const = 0;
};

class RingAlgebra final : public CollapseAlgebra {
 public:
  RingAlgebra(RingPtr ring, const Caps& caps);
  RingPtr elem_ring() const override { return ring_; }
  RingElement add(const RingElement& a, const RingElement& b) const override;
  RingElement mul(const RingElement& a, const RingElement& b) const override;
  RingElement neg(const RingElement& a) const override;
  RingElement one() const override;
  RingElement zero() const override;
  bool is_zero(const RingElement& a) const override;
  std::vector<RingElement> saturation(const std::vector<RingElement>& gens,
                                      const RingElement& p) const override;
  bool radical_contains(const std::vector<RingElement>& gens, const RingElement& f) const override;
  std::optional<std::pair<unsigned, std::vector<RingElement>>> radical_power(
      const std::vector<RingElement>& gens, const RingElement& f) const override;
  std::optional<std::vector<RingElement>> member_cofactors(const std::vector<RingElement>& gens,
                                                           const RingElement& f) const override;

 private:
  RingPtr ring_;
  Caps caps_;
};

// engine entry points, reused by the Zariski and extension modules
bool run_chain_collapses(const CollapseAlgebra& alg, const IdealisticChain& chain);
/* The final level of the iterated construction: generators of T_l and the
   last monoid product p_l (the chain collapses iff p_l is in rad T_l). */
std::pair<std::vector<RingElement>, RingElement> collapse_final_level(const CollapseAlgebra& alg,
                                                                      const IdealisticChain& chain);
std::optional<CollapseCertificate> run_certify_collapse(const CollapseAlgebra& alg,
                                                        const IdealisticChain& chain,
                                                        const Caps& caps);
RingElement eval_nested_alg(const CollapseAlgebra& alg, const IdealisticChain& chain,
                            const CollapseCertificate& cert);

// ---------------------------------------------------------- public surface

bool chain_collapses(const IdealisticChain& chain, const Caps& caps = {});
std::optional<CollapseCertificate> certify_collapse(const IdealisticChain& chain,
                                                    const Caps& caps = {});

bool in_saturated_ideal(const RingPtr& ring, const IdealisticPrime& p, const RingElement& x,
                        const Caps& caps = {});
bool in_saturated_monoid(const RingPtr& ring, const IdealisticPrime& p, const RingElement& x,
                         const Caps& caps = {});

std::optional<PseudoSingularCertificate> pseudo_singular(const RingPtr& ring,
                                                         const std::vector<RingElement>& seq,
                                                         const Caps& caps = {});
bool pseudo_regular(const RingPtr& ring, const std::vector<RingElement>& seq,
                    const Caps& caps = {});

/* Bounded certificate search (independent of the saturation route): for each
   exponent vector within the schedule the cofactors are solved linearly by
   ideal membership. Used as a fallback and as the test oracle. */
std::optional<PseudoSingularCertificate> psc_bounded_search(const RingPtr& ring,
                                                            const std::vector<RingElement>& seq,
                                                            const Caps& caps = {});

/* Rabinovitch merge. certIn encodes u1 + j1 + a*x = 0 with j1 = sum
   (cofactor * J-generator); certOut encodes u2*x^m + j2 = 0. The output
   satisfies u3 + j3 = 0 with u3 = u2*u1^m. */
struct RabinovitchIn {
  RingElement u1;
  std::vector<RingElement> j1_cofactors;  // over J
  RingElement a;
};
struct RabinovitchOut {
  RingElement u2;
  unsigned m = 0;
  std::vector<RingElement> j2_cofactors;  // over J
};
struct RabinovitchMerged {
  RingElement u3;
  RingElement j3;
  std::vector<RingElement> j3_cofactors;  // over J ++ {j2 support} (same J list)
};
RabinovitchMerged rabinovitch_merge(const std::vector<RingElement>& J, const RingElement& x,
                                    const RabinovitchIn& in, const RabinovitchOut& out);

}  // namespace krull

#endif
