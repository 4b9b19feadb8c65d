#ifndef KRULL_DIMENSION_HPP
#define KRULL_DIMENSION_HPP

/* Krull-dimension queries: testset-relative collapse reports, and for
   polynomial rings over a field the theorem-backed route through algebraic
   dependence and the lexicographic decomposition. */

#include <optional>

#include "krull/collapse.hpp"

namespace krull {

struct DependenceResult {
  RingPtr formal_ring;  // K[t1..tL], one variable per sequence entry
  RingElement q;        // Q with Q(seq) = 0, lex-least coefficient 1
  unsigned monomial_bound = 0;
};

/* Kernel search over the evaluation map t^alpha -> prod seq^alpha. Needs at
   least var_count + 1 entries; m grows until the proof's counting bound.
   With m_override > 0 only that bound is tried (None when too low). */
std::optional<DependenceResult> find_algebraic_dependence(const RingPtr& ring,
                                                          const std::vector<RingElement>& seq,
                                                          unsigned m_override = 0,
                                                          const Caps& caps = {});

/* Reads the exponents m_i off the lex-least monomial of Q and the a_i off
   the grouped decomposition, evaluated at the sequence. */
PseudoSingularCertificate dependence_to_certificate(const RingPtr& ring,
                                                    const std::vector<RingElement>& seq,
                                                    const DependenceResult& dep);

struct SequenceReport {
  std::vector<RingElement> seq;
  bool collapses = false;
  std::optional<PseudoSingularCertificate> cert;
  bool cert_capped = false;  // collapses but the certificate search hit a cap
};

struct DimReport {
  unsigned bound = 0;   // the ell of "dim <= ell"
  bool theorem_route = false;  // field polynomial ring with ell >= #vars
  bool consistent = false;     // all testset sequences collapse
  std::vector<SequenceReport> entries;
};

/* Sequences must have length ell + 1. The report is testset-relative except
   on the theorem route, where every certificate comes from an algebraic
   dependence. */
DimReport dim_at_most(const RingPtr& ring, unsigned ell,
                      const std::vector<std::vector<RingElement>>& testset,
                      const Caps& caps = {});

}  // namespace krull

#endif
