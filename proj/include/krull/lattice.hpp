#ifndef KRULL_LATTICE_HPP
#define KRULL_LATTICE_HPP

/* Finitely presented distributive lattices via entailment relations:
   closure of a sequent presentation under reflexivity, monotonicity and
   cut, canonical DNF elements, quotients, spectra, Boolean envelope,
   idealistic chains and Joyal's Kr_l construction. */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krull/caps.hpp"
#include "krull/errors.hpp"

namespace krull::lattice {

using GenSet = uint32_t;  // subset of generators as a bitmask

struct Sequent {
  GenSet lhs = 0;
  GenSet rhs = 0;
  bool operator==(const Sequent& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct Presentation {
  std::vector<std::string> gens;
  std::vector<Sequent> axioms;

  size_t arity() const { return gens.size(); }
  GenSet full_mask() const { return gens.size() >= 32 ? ~GenSet(0) : ((GenSet(1) << gens.size()) - 1); }
  size_t gen_index(const std::string& name) const;
};

/* The saturated sequent table, stored as the subset-minimal derivable
   sequents; derivability = tautology (lhs meets rhs) or subsumption. */
class ClosureTable {
 public:
  ClosureTable() = default;
  ClosureTable(size_t n, std::vector<Sequent> minimal)
      : gen_count_(n), minimal_(std::move(minimal)) {}

  size_t gen_count() const { return gen_count_; }
  const std::vector<Sequent>& minimal() const { return minimal_; }

  bool entails(GenSet a, GenSet b) const {
    if (a & b) return true;
    for (const auto& s : minimal_)
      if ((s.lhs & ~a) == 0 && (s.rhs & ~b) == 0) return true;
    return false;
  }

 private:
  size_t gen_count_ = 0;
  std::vector<Sequent> minimal_;
};

ClosureTable close_entailment(const Presentation& p, const Caps& caps = {});

/* Independent oracle: A |- B holds iff every generator assignment satisfying
   the axioms maps some of B to 1 whenever all of A go to 1. Used by tests to
   cross-check the proof-theoretic closure. */
bool semantic_entails(const Presentation& p, GenSet a, GenSet b);
std::vector<GenSet> valid_assignments(const Presentation& p, const Caps& caps = {});

/* Canonical DNF antichain; {} is 0 and {emptyset} is 1. */
struct LatticeElement {
  std::vector<GenSet> blocks;
  bool operator==(const LatticeElement& o) const { return blocks == o.blocks; }
};

LatticeElement bottom();
LatticeElement top();
LatticeElement gen_element(size_t i);

bool leq(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t);
bool same_element(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t);
LatticeElement canonicalize(LatticeElement x, const ClosureTable& t);
LatticeElement meet(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t);
LatticeElement join(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t);

/* Quotient by J = 0, U = 1: the extended presentation; the projection is the
   identity on generator names. */
Presentation quotient(const Presentation& p, const std::vector<LatticeElement>& J,
                      const std::vector<LatticeElement>& U);

bool prime_collapse(const Presentation& p, const std::vector<LatticeElement>& J,
                    const std::vector<LatticeElement>& U, const Caps& caps = {});
// (in saturated ideal, in saturated filter) for a probe element
std::pair<bool, bool> saturate_prime(const Presentation& p, const std::vector<LatticeElement>& J,
                                     const std::vector<LatticeElement>& U,
                                     const LatticeElement& probe, const Caps& caps = {});

struct LatPrime {
  std::vector<LatticeElement> J;
  std::vector<LatticeElement> U;
};
struct LatChain {
  std::vector<LatPrime> primes;
};

/* Some(x_1..x_l) satisfying the collapse ladder, found by the greedy ideal
   iteration over all elements of the finite lattice; None when the chain
   does not collapse. */
std::optional<std::vector<LatticeElement>> lattice_chain_collapses(const Presentation& p,
                                                                   const LatChain& chain,
                                                                   const Caps& caps = {});

/* All elements of the presented (finite) lattice, one canonical DNF per
   semantic identity. */
std::vector<LatticeElement> enumerate_elements(const Presentation& p, const Caps& caps = {});

struct SpecPoint {
  GenSet ones;   // generators sent to 1
  GenSet ideal;  // generators sent to 0
};
/* Hom(T, 2), ordered by reverse inclusion of the prime ideals. */
std::vector<SpecPoint> spec_enumerate(const Presentation& p, const Caps& caps = {});

/* Joyal's Kr_l(T): generators are (level, generator) copies; the entailment
   between generator subsets is decided pointwise through the collapse ladder
   in T. Derived axioms materialize lazily. */
class KrPresentation {
 public:
  KrPresentation(Presentation base, unsigned ell, const Caps& caps);

  const Presentation& base() const { return base_; }
  unsigned ell() const { return ell_; }
  const std::vector<std::string>& gens() const { return gens_; }
  size_t gen_index(unsigned level, size_t base_gen) const;

  /* Query hook: entailment between subsets of the Kr generators. */
  bool entails(const std::vector<std::pair<unsigned, size_t>>& lhs,
               const std::vector<std::pair<unsigned, size_t>>& rhs) const;

  /* Explicit presentation carrying every subset-minimal derived axiom
     (CapExceeded when (ell+1)*|S| passes the generator cap). */
  Presentation materialize() const;
  /* Presentation carrying only the sequents queried so far. */
  Presentation queried_presentation() const;

 private:
  Presentation base_;
  ClosureTable base_table_;
  std::vector<LatticeElement> base_elems_;
  unsigned ell_;
  Caps caps_;
  std::vector<std::string> gens_;
  mutable std::vector<Sequent> queried_true_;
};

KrPresentation kr_lattice(const Presentation& t, unsigned ell, const Caps& caps = {});

struct DimensionWitness {
  std::vector<size_t> seq;          // generator indices x_1..x_{l+1}
  std::vector<LatticeElement> a;    // ladder elements
};
struct DimensionResult {
  bool holds = false;
  std::vector<DimensionWitness> witnesses;  // one per generator sequence when holds
  std::optional<std::vector<size_t>> refuting_seq;
};
/* dim(T) <= ell (ell >= -1), via the generator reduction. */
DimensionResult lattice_dim_at_most(const Presentation& p, int ell, const Caps& caps = {});

/* Free Boolean algebra over T: generators S and their complements, axioms
   instantiated from the minimal sequent table. */
Presentation boolean_envelope(const Presentation& p, const Caps& caps = {});

}  // namespace krull::lattice

#endif
