#ifndef KRULL_ZARISKI_HPP
#define KRULL_ZARISKI_HPP

/* The Zariski lattice of a computable ring, symbolically: elements are
   radicals of finitely generated ideals kept as raw generator lists, with
   entailment U |- J  <=>  prod(U) in rad<J>, and the ring <-> lattice
   collapse bridge. */

#include <optional>

#include "krull/collapse.hpp"
#include "krull/lattice.hpp"

namespace krull {

struct ZarElement {
  std::vector<RingElement> gens;  // [] denotes rad<0>, [1] denotes 1
};

bool zar_leq(const RingPtr& ring, const ZarElement& x, const ZarElement& y,
             const Caps& caps = {});
bool zar_eq(const RingPtr& ring, const ZarElement& x, const ZarElement& y, const Caps& caps = {});
ZarElement zar_meet(const RingPtr& ring, const ZarElement& x, const ZarElement& y);
ZarElement zar_join(const ZarElement& x, const ZarElement& y);
/* Optional normalization pass: drops generators redundant modulo the radical
   of the others. */
ZarElement zar_reduce(const RingPtr& ring, const ZarElement& x, const Caps& caps = {});

bool zar_entails(const RingPtr& ring, const std::vector<RingElement>& U,
                 const std::vector<RingElement>& J, const Caps& caps = {});

struct BridgeResult {
  bool ring_verdict = false;
  bool lattice_verdict = false;
  // principal witnesses x_i = rad<v_i> from the certificate back-substitution
  std::optional<std::vector<ZarElement>> witnesses;
  std::optional<CollapseCertificate> certificate;
};
/* Runs the ring-side collapse decision and the lattice-side ideal iteration;
   the two verdicts agreeing is the executable content of the bridge theorem
   (disagreement is a bug, reported as InternalMismatch, never a value). */
BridgeResult bridge_collapse(const IdealisticChain& chain, const Caps& caps = {});

struct ZarLadderLine {
  std::vector<RingElement> lhs;  // a_i, x_i
  std::vector<RingElement> rhs;
  bool holds = false;
};
struct ZarSequenceReport {
  std::vector<RingElement> seq;
  bool collapses = false;
  std::vector<RingElement> ladder;  // the a_i (principal elements)
  std::vector<ZarLadderLine> lines;
  bool ring_agrees = false;
};
struct ZarDimReport {
  unsigned bound = 0;
  bool consistent = false;
  std::vector<ZarSequenceReport> entries;
};
/* defDiTr's ladder evaluated inside Zar(R) with principal a_i, cross-checked
   against the ring-side dim_at_most on the same sequences. */
ZarDimReport zar_dim_at_most(const RingPtr& ring, unsigned ell,
                             const std::vector<std::vector<RingElement>>& testset,
                             const Caps& caps = {});

/* Finite sub-presentation of Zar(R) induced by the generator set G: axioms
   are the minimal entailments among subsets of G. Exact on the sublattice
   generated by the images of G. */
lattice::Presentation zar_finite_presentation(const RingPtr& ring,
                                              const std::vector<RingElement>& G,
                                              const Caps& caps = {});

}  // namespace krull

#endif
