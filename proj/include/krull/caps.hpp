#ifndef KRULL_CAPS_HPP
#define KRULL_CAPS_HPP

#include <cstdint>

namespace krull {

/* Resource caps, per call. All searches the specification leaves unbounded
   are bounded by these and report ResourceExhausted when hit. */
struct Caps {
  unsigned groebner_degree = 40;        // abort Buchberger past this total degree
  unsigned radical_exponent = 4096;     // largest exponent probed by radical membership
  unsigned membership_doubling = 4096;  // largest saturation exponent probed level-wise
  unsigned saturation_rounds = 64;      // colon-ideal stabilization rounds
  unsigned search_exponent = 6;         // starting exponent bound of the certificate search
  uint64_t search_budget = 1000000;     // candidate evaluations in bounded searches
  unsigned lattice_generators = 14;     // presentation size cap
  unsigned above_list = 16;             // |alist| cap (2^k complementary pairs)
  unsigned fraction_power = 64;         // power of m probed when clearing denominators
};

}  // namespace krull

#endif
