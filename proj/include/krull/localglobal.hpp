#ifndef KRULL_LOCALGLOBAL_HPP
#define KRULL_LOCALGLOBAL_HPP

/* Comaximal monoids, covering witnesses and the local-global gluing of
   collapse certificates. */

#include <optional>

#include "krull/collapse.hpp"

namespace krull {

struct ComaximalWitness {
  std::vector<RingElement> coefficients;  // sum a_i s_i = 1 (or the recorded cover target)
  RingElement combination;
};

/* Witness for one pick tuple (s_1..s_n), one element per monoid; None iff
   1 is not in <s_1..s_n>. */
std::optional<ComaximalWitness> comaximal_check(const RingPtr& ring,
                                                const std::vector<MonoidSpec>& monoids,
                                                const std::vector<RingElement>& picks,
                                                const Caps& caps = {});

/* x in S(I; a,U) presented as u1*a^k + j1, y in S(I,a; U) presented as
   (u2 + j2) - a*z. cover_witness returns (x1, y1) with
   x1*x + y1*y in S(I; U) = M(U) + <I>, together with the verified
   membership decomposition u4 + j4. */
struct CoverX {
  RingElement u1;                         // in M(U)
  unsigned k = 0;                         // power of a
  std::vector<RingElement> j1_cofactors;  // j1 = sum cof*I-gens
};
struct CoverY {
  RingElement u2;                         // in M(U)
  std::vector<RingElement> j2_cofactors;  // j2 = sum cof*I-gens
  RingElement z;
};
struct CoverResult {
  RingElement x1, y1;
  RingElement x, y;                      // the reconstructed inputs
  RingElement combination;               // x1*x + y1*y
  RingElement u_part;                    // u1 * u2^k
  std::vector<RingElement> j_cofactors;  // combination - u_part = sum cof*I-gens
};
CoverResult cover_witness(const std::vector<RingElement>& I, const std::vector<RingElement>& U,
                          const RingElement& a, const CoverX& x, const CoverY& y);

/* Local collapse data: the numerator-cleared equality
   s_i * eval_nested(chain, cert) = 0 over R, with s_i in the monoid. */
struct LocalCollapse {
  MonoidSpec monoid;
  RingElement denominator;  // s_i
  CollapseCertificate cert;
};

CollapseCertificate glue_collapse(const IdealisticChain& chain,
                                  const std::vector<LocalCollapse>& locals,
                                  const std::vector<RingElement>& comax_coefficients);

/* Certificates over a localization R_S: cofactors carried as fractions. */
struct FractionElem {
  RingElement num;
  RingElement den;
};
struct LocalizedCertificate {
  std::vector<std::vector<unsigned>> exponents;       // per level, aligned with U
  std::vector<std::vector<FractionElem>> cofactors;   // per level, aligned with J
};
struct DenominatorClearing {
  RingElement m;                 // product of all denominators encountered
  unsigned power = 0;            // m^power * numerator identity = 0 over R
  LocalizedCertificate over_inverted;  // same certificate, denominators = powers of m
};
DenominatorClearing collapse_denominator(const IdealisticChain& chain,
                                         const LocalizedCertificate& local,
                                         const Caps& caps = {});

}  // namespace krull

#endif
