#ifndef KRULL_TESTS_HELPERS_HPP
#define KRULL_TESTS_HELPERS_HPP

#include <random>

#include "krull/rings.hpp"

namespace krull::testing {

inline RingPtr zz() { return Ring::make(RingDescriptor::integers()); }
inline RingPtr zmod(long n) { return Ring::make(RingDescriptor::modular(n)); }
inline RingPtr qpoly(std::vector<std::string> vars) {
  return Ring::make(RingDescriptor::poly_q(std::move(vars)));
}
inline RingPtr fppoly(long p, std::vector<std::string> vars) {
  return Ring::make(RingDescriptor::poly_fp(p, std::move(vars)));
}

/* Seeded sampler of small ring elements: integers in [-span, span], residues,
   polynomials with few terms of low degree. */
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }

  RingElement element(const RingPtr& ring, unsigned degree = 2, long span = 5,
                      unsigned max_terms = 3) {
    switch (ring->descriptor().kind) {
      case RingKind::Integers:
        return ring->from_int(integer(-span, span));
      case RingKind::Modular: {
        long n = ring->descriptor().modulus.get_si();
        return ring->from_int(integer(0, n - 1));
      }
      case RingKind::Polynomial: {
        PolyTerms terms;
        unsigned count = unsigned(integer(1, long(max_terms)));
        for (unsigned t = 0; t < count; ++t) {
          Monomial m(ring->var_count(), 0);
          unsigned deg = unsigned(integer(0, long(degree)));
          for (unsigned d = 0; d < deg; ++d) m[size_t(integer(0, long(ring->var_count()) - 1))]++;
          long c = integer(-span, span);
          if (c == 0) c = 1;
          terms.emplace_back(std::move(m), mpq_class(c));
        }
        return ring->make_poly(std::move(terms));
      }
    }
    return ring->zero();
  }

  RingElement nonzero_element(const RingPtr& ring, unsigned degree = 2, long span = 5,
                              unsigned max_terms = 3) {
    for (;;) {
      RingElement e = element(ring, degree, span, max_terms);
      if (!ring->is_zero(e)) return e;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace krull::testing

#endif
