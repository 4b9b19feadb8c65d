#ifndef KRULL_INTLATTICE_HPP
#define KRULL_INTLATTICE_HPP

/* Row-HNF integer lattices: the module arithmetic behind ideal oracles in
   monogenic extensions of Z (ideals are full sublattices of Z^d spanned by
   generator shifts). */

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace krull {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

class ZLattice {
 public:
  explicit ZLattice(size_t dim) : dim_(dim) {}
  static ZLattice from_generators(size_t dim, const ZMat& gens);

  size_t dim() const { return dim_; }
  const ZMat& basis() const { return rows_; }
  size_t rank() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }

  bool contains(const ZVec& v) const;
  /* Solve v = sum c_i * gens_i against the generators this lattice was built
     from (coordinates over the original generators, not the HNF basis). */
  std::optional<ZVec> coordinates(const ZVec& v) const;

  bool operator==(const ZLattice& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }

  /* Index [Z^dim : L] when full-rank (product of pivots); 0 otherwise. */
  mpz_class index() const;

  /* Reduce v modulo the lattice (canonical representative: each pivot
     coordinate reduced into [0, pivot)). */
  ZVec reduce(const ZVec& v) const;

 private:
  size_t dim_;
  size_t tag_width_ = 0;  // number of original generators
  ZMat rows_;             // HNF basis rows
  ZMat tags_;             // row i of HNF = tags_[i] . original generators
};

/* Basis of { x : M x = 0 } over Z (columns of M indexed like x). */
ZMat z_kernel(const ZMat& m, size_t cols);

}  // namespace krull

#endif
