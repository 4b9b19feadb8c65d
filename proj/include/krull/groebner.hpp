#ifndef KRULL_GROEBNER_HPP
#define KRULL_GROEBNER_HPP

/* Decidable ideal-theoretic oracles: membership, radical membership and
   saturation. Polynomial rings over Q/F_p go through Buchberger with full
   cofactor tracking; Z and Z/n go through extended gcd and factorization.
   Every positive answer is certified. */

#include <optional>
#include <utility>
#include <vector>

#include "krull/caps.hpp"
#include "krull/rings.hpp"

namespace krull {

struct MembershipWitness {
  // f = sum cofactors[i] * gens[i]; aligned with the queried ideal
  std::vector<RingElement> cofactors;
};

struct RadicalWitness {
  unsigned n = 1;  // minimal exponent found with f^n in the ideal
  MembershipWitness w;
};

struct GroebnerBasis {
  RingPtr ring;
  MonOrder order = MonOrder::Grevlex;
  std::vector<RingElement> basis;
  // basis[i] = sum reps[i][j] * input[j]
  std::vector<std::vector<RingElement>> reps;
  std::vector<RingElement> input;
};

/* Buchberger, sugar selection, full auto-reduction, cofactor tracking.
   Throws ResourceExhausted past caps.groebner_degree. */
GroebnerBasis groebner(const std::vector<RingElement>& gens, MonOrder order, const Caps& caps);

/* One ideal, prepared once, queried many times. Works over Z, Z/n and
   field-coefficient polynomial rings; otherwise throws UnsupportedRing. */
class PreparedIdeal {
 public:
  PreparedIdeal(RingPtr ring, std::vector<RingElement> gens, const Caps& caps);

  const RingPtr& ring() const { return ring_; }
  const std::vector<RingElement>& gens() const { return gens_; }

  // cofactors over gens() when f is a member
  std::optional<std::vector<RingElement>> member(const RingElement& f) const;
  bool radical_contains(const RingElement& f) const;
  // minimal exponent by doubling-then-bisection, with cofactors for f^n
  std::optional<std::pair<unsigned, std::vector<RingElement>>> radical_power(
      const RingElement& f) const;
  // generators of (I : g^inf); g must be nonzero
  std::vector<RingElement> saturation(const RingElement& g) const;

 private:
  RingPtr ring_;
  std::vector<RingElement> gens_;
  Caps caps_;
  // Z / Z-mod-n data (ideal as gcd with a Bezout combination)
  mpz_class zgcd_;
  std::vector<mpz_class> zbezout_;
  // polynomial data
  std::shared_ptr<const GroebnerBasis> gb_;
};

// one-shot wrappers over PreparedIdeal
std::optional<MembershipWitness> ideal_member(const RingElement& f, const Ideal& I,
                                              const Caps& caps = {});
std::optional<RadicalWitness> radical_member(const RingElement& f, const Ideal& I,
                                             const Caps& caps = {});
Ideal saturate(const Ideal& I, const RingElement& g, const Caps& caps = {});

// same generated ideal, decided by mutual membership
bool same_ideal(const Ideal& a, const Ideal& b, const Caps& caps = {});

// ------------------------------------------------------------ Z arithmetic

// prime factorization by trial division then Pollard rho; input may be negative
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n);
mpz_class radical_of_integer(const mpz_class& n);
// g = gcd(gens) >= 0 together with g = sum c_i * gens_i
std::pair<mpz_class, std::vector<mpz_class>> gcd_combination(const std::vector<mpz_class>& gens);

}  // namespace krull

#endif
