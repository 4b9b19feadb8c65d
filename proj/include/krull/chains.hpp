#ifndef KRULL_CHAINS_HPP
#define KRULL_CHAINS_HPP

/* Idealistic primes and chains: partial specifications of prime-ideal
   chains, and the algebraic certificates that collapse them. */

#include <optional>
#include <vector>

#include "krull/rings.hpp"

namespace krull {

/* A pair (J, U): ideal part and monoid part; a partial specification of a
   prime ideal containing J and missing U. */
struct IdealisticPrime {
  std::vector<RingElement> J;
  std::vector<RingElement> U;
};

struct IdealisticChain {
  RingPtr ring;
  std::vector<IdealisticPrime> primes;  // length = primes.size() - 1

  IdealisticChain() = default;
  IdealisticChain(RingPtr r, std::vector<IdealisticPrime> p);
  size_t length() const { return primes.size() - 1; }
};

/* One level of a collapse certificate: exponent per U-generator and cofactor
   per J-generator of that level. */
struct CertLevel {
  std::vector<unsigned> exponents;
  std::vector<RingElement> cofactors;
};

/* The defining property is machine-checkable: eval_nested(chain, cert) == 0,
   where level k contributes u_k = prod g^e over U_k and j_k = sum c*g over
   J_k in u_0(u_1(...(u_l + j_l)...) + j_1) + j_0. */
struct CollapseCertificate {
  std::vector<CertLevel> levels;
};

RingElement eval_nested(const IdealisticChain& chain, const CollapseCertificate& cert);

/* x_1^{m_1}(x_2^{m_2}...(x_l^{m_l}(1 + a_l x_l) + ... + a_2 x_2) + a_1 x_1) = 0 */
struct PseudoSingularCertificate {
  std::vector<unsigned> m;
  std::vector<RingElement> a;
};

/* ((0, x_1), (x_1, x_2), ..., (x_l, 1)); the empty sequence gives the single
   length-0 elementary chain ((0), (1)). */
IdealisticChain elementary_chain(const RingPtr& ring, const std::vector<RingElement>& seq);

CollapseCertificate psc_to_certificate(const IdealisticChain& elementary,
                                       const PseudoSingularCertificate& psc);
std::optional<PseudoSingularCertificate> certificate_to_psc(const IdealisticChain& elementary,
                                                            const CollapseCertificate& cert);
bool psc_verifies(const RingPtr& ring, const std::vector<RingElement>& seq,
                  const PseudoSingularCertificate& psc);

/* Completion data: I_k generated by J_0 u ... u J_k, and the V-levels in the
   closed form V_k = U'_k ... U'_l + U'_k ... U'_{l-1} I_l + ... + I_k,
   recorded symbolically (never enumerated). */
struct CompletedChain {
  std::vector<std::vector<RingElement>> ideal_levels;
  struct VTerm {
    size_t monoid_from = 0, monoid_to = 0;  // product of U'_t for t in [from, to)
    std::optional<size_t> ideal_index;      // trailing I_i factor; none for the pure monoid term
  };
  std::vector<std::vector<VTerm>> monoid_levels;
};

CompletedChain complete_chain(const IdealisticChain& chain);

// chain & {x in C^(i)} / chain & {x not in C^(i)}
IdealisticChain with_in_ideal(const IdealisticChain& c, size_t level, const RingElement& x);
IdealisticChain with_in_monoid(const IdealisticChain& c, size_t level, const RingElement& x);

}  // namespace krull

#endif
