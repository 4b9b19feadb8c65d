#include "krull/intlattice.hpp"

#include <algorithm>

#include "krull/linalg.hpp"

namespace krull {

namespace {

void row_axpy(ZVec& target, const mpz_class& q, const ZVec& src) {
  for (size_t i = 0; i < target.size(); ++i) target[i] -= q * src[i];
}

/* In-place row echelon over Z (Euclidean elimination), then full HNF
   normalization: positive pivots, entries above a pivot reduced into
   [0, pivot). Zero rows are dropped. */
void hnf_rows(ZMat& rows, size_t width) {
  size_t r = 0;
  for (size_t col = 0; col < width && r < rows.size(); ++col) {
    for (;;) {
      size_t best = rows.size();
      for (size_t i = r; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() ||
            cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)
          best = i;
      }
      if (best == rows.size()) break;  // column clear
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        row_axpy(rows[i], q, rows[r]);
        if (rows[i][col] != 0) others = true;
      }
      if (!others) {
        if (rows[r][col] < 0)
          for (auto& x : rows[r]) x = -x;
        for (size_t i = 0; i < r; ++i) {
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
          row_axpy(rows[i], q, rows[r]);
        }
        ++r;
        break;
      }
    }
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [&](const ZVec& v) {
                              return std::all_of(v.begin(), v.end(),
                                                 [](const mpz_class& x) { return x == 0; });
                            }),
             rows.end());
}

}  // namespace

ZLattice ZLattice::from_generators(size_t dim, const ZMat& gens) {
  ZLattice L(dim);
  L.tag_width_ = gens.size();
  // augment with identity tags so memberships can be traced to generators
  ZMat work;
  work.reserve(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    ZVec row(dim + gens.size(), 0);
    for (size_t j = 0; j < dim; ++j) row[j] = gens[i][j];
    row[dim + i] = 1;
    work.push_back(std::move(row));
  }
  hnf_rows(work, dim);
  for (auto& row : work) {
    ZVec head(row.begin(), row.begin() + dim);
    ZVec tag(row.begin() + dim, row.end());
    bool zero_head = std::all_of(head.begin(), head.end(), [](const mpz_class& x) { return x == 0; });
    if (!zero_head) {
      L.rows_.push_back(std::move(head));
      L.tags_.push_back(std::move(tag));
    }
  }
  return L;
}

namespace {

// returns leftover after eliminating v with the basis; coeffs collects the
// multiple of each basis row used
ZVec eliminate(const ZMat& rows, size_t dim, const ZVec& v, ZVec* coeffs) {
  ZVec rem = v;
  if (coeffs) coeffs->assign(rows.size(), 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    size_t pivot = 0;
    while (pivot < dim && rows[i][pivot] == 0) ++pivot;
    if (pivot == dim) continue;
    if (rem[pivot] % rows[i][pivot] == 0) {
      mpz_class q = rem[pivot] / rows[i][pivot];
      if (q != 0) {
        row_axpy(rem, q, rows[i]);
        if (coeffs) (*coeffs)[i] = q;
      }
    }
  }
  return rem;
}

}  // namespace

bool ZLattice::contains(const ZVec& v) const {
  ZVec rem = eliminate(rows_, dim_, v, nullptr);
  return std::all_of(rem.begin(), rem.end(), [](const mpz_class& x) { return x == 0; });
}

std::optional<ZVec> ZLattice::coordinates(const ZVec& v) const {
  ZVec coeffs;
  ZVec rem = eliminate(rows_, dim_, v, &coeffs);
  if (!std::all_of(rem.begin(), rem.end(), [](const mpz_class& x) { return x == 0; }))
    return std::nullopt;
  ZVec out(tag_width_, 0);
  for (size_t i = 0; i < rows_.size(); ++i)
    for (size_t j = 0; j < tag_width_; ++j) out[j] += coeffs[i] * tags_[i][j];
  return out;
}

mpz_class ZLattice::index() const {
  if (rows_.size() != dim_) return 0;
  mpz_class prod = 1;
  for (size_t i = 0; i < dim_; ++i) {
    size_t pivot = 0;
    while (pivot < dim_ && rows_[i][pivot] == 0) ++pivot;
    if (pivot == dim_) return 0;
    prod *= rows_[i][pivot];
  }
  return prod;
}

ZVec ZLattice::reduce(const ZVec& v) const {
  ZVec rem = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    size_t pivot = 0;
    while (pivot < dim_ && rows_[i][pivot] == 0) ++pivot;
    if (pivot == dim_) continue;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), rem[pivot].get_mpz_t(), rows_[i][pivot].get_mpz_t());
    if (q != 0) row_axpy(rem, q, rows_[i]);
  }
  return rem;
}

ZMat z_kernel(const ZMat& m, size_t cols) {
  size_t nrows = m.size();
  // one work row per unknown: (column of m, unit tag)
  ZMat work(cols, ZVec(nrows + cols, 0));
  for (size_t j = 0; j < cols; ++j) {
    for (size_t i = 0; i < nrows; ++i) work[j][i] = m[i][j];
    work[j][nrows + j] = 1;
  }
  hnf_rows(work, nrows);
  ZMat kernel;
  for (const auto& row : work) {
    bool head_zero = true;
    for (size_t i = 0; i < nrows; ++i)
      if (row[i] != 0) {
        head_zero = false;
        break;
      }
    if (head_zero) kernel.emplace_back(row.begin() + nrows, row.end());
  }
  return kernel;
}

// ------------------------------------------------------------------- linalg

UniPoly UniPoly::constant(const RingElement& a) {
  UniPoly p{a.ring(), {}};
  if (!a.ring()->is_zero(a)) p.c.push_back(a);
  return p;
}

UniPoly UniPoly::variable(const RingPtr& r) { return UniPoly{r, {r->zero(), r->one()}}; }

bool UniPoly::is_monic() const { return !c.empty() && base->is_one(c.back()); }

void UniPoly::trim() {
  while (!c.empty() && base->is_zero(c.back())) c.pop_back();
}

std::string UniPoly::str(const std::string& var) const {
  if (c.empty()) return "0";
  std::string out;
  for (size_t i = c.size(); i-- > 0;) {
    if (base->is_zero(c[i])) continue;
    if (!out.empty()) out += " + ";
    out += "(" + base->to_string(c[i]) + ")";
    if (i >= 1) out += "*" + var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
  UniPoly r{a.base, {}};
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) r.c.push_back(a.base->add(a.coeff(i), b.coeff(i)));
  r.trim();
  return r;
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r{a.base, {}};
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) r.c.push_back(a.base->sub(a.coeff(i), b.coeff(i)));
  r.trim();
  return r;
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly::zero(a.base);
  UniPoly r{a.base, std::vector<RingElement>(a.c.size() + b.c.size() - 1, a.base->zero())};
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = a.base->add(r.c[i + j], a.base->mul(a.c[i], b.c[j]));
  r.trim();
  return r;
}

UniPoly uni_scale(const UniPoly& a, const RingElement& s) {
  UniPoly r{a.base, {}};
  r.c.reserve(a.c.size());
  for (const auto& x : a.c) r.c.push_back(a.base->mul(x, s));
  r.trim();
  return r;
}

bool uni_eq(const UniPoly& a, const UniPoly& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!a.base->eq(a.c[i], b.c[i])) return false;
  return true;
}

RingElement uni_eval(const UniPoly& a, const RingElement& x) {
  RingElement acc = a.base->zero();
  for (size_t i = a.c.size(); i-- > 0;) acc = a.base->add(a.base->mul(acc, x), a.c[i]);
  return acc;
}

UniPoly uni_compose_scale(const UniPoly& a, const RingElement& s) {
  UniPoly r{a.base, {}};
  RingElement power = a.base->one();
  for (size_t i = 0; i < a.c.size(); ++i) {
    r.c.push_back(a.base->mul(a.c[i], power));
    power = a.base->mul(power, s);
  }
  r.trim();
  return r;
}

UniPoly uni_homogenize_scale(const UniPoly& a, const RingElement& s) {
  UniPoly r{a.base, std::vector<RingElement>(a.c.size(), a.base->zero())};
  if (a.c.empty()) return r;
  size_t d = a.c.size() - 1;
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.base->mul(a.c[i], a.base->pow(s, d - i));
  r.trim();
  return r;
}

namespace {

RingElement det_rec(const RMat& m, std::vector<size_t>& cols, size_t row, const RingPtr& ring) {
  if (cols.empty()) return ring->one();
  RingElement acc = ring->zero();
  for (size_t k = 0; k < cols.size(); ++k) {
    size_t col = cols[k];
    if (ring->is_zero(m[row][col])) continue;
    std::vector<size_t> rest;
    rest.reserve(cols.size() - 1);
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != k) rest.push_back(cols[t]);
    RingElement sub = det_rec(m, rest, row + 1, ring);
    RingElement term = ring->mul(m[row][col], sub);
    acc = (k % 2 == 0) ? ring->add(acc, term) : ring->sub(acc, term);
  }
  return acc;
}

}  // namespace

RingElement det(const RMat& m) {
  if (m.empty()) fail(Err::InputError, "det of empty matrix");
  const RingPtr& ring = m[0][0].ring();
  std::vector<size_t> cols(m.size());
  for (size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return det_rec(m, cols, 0, ring);
}

UniPoly char_poly(const RMat& m) {
  if (m.empty()) fail(Err::InputError, "char_poly of empty matrix");
  const RingPtr& ring = m[0][0].ring();
  size_t n = m.size();
  // build T*I - M over UniPoly and expand recursively
  std::vector<std::vector<UniPoly>> mm(n, std::vector<UniPoly>(n, UniPoly::zero(ring)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      mm[i][j] = UniPoly::constant(ring->neg(m[i][j]));
      if (i == j) mm[i][j] = uni_add(mm[i][j], UniPoly::variable(ring));
    }
  // Laplace expansion specialized to UniPoly entries
  struct Rec {
    const std::vector<std::vector<UniPoly>>& a;
    const RingPtr& ring;
    UniPoly run(std::vector<size_t>& cols, size_t row) {
      if (cols.empty()) return UniPoly::constant(ring->one());
      UniPoly acc = UniPoly::zero(ring);
      for (size_t k = 0; k < cols.size(); ++k) {
        size_t col = cols[k];
        if (a[row][col].is_zero()) continue;
        std::vector<size_t> rest;
        rest.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
          if (t != k) rest.push_back(cols[t]);
        UniPoly sub = run(rest, row + 1);
        UniPoly term = uni_mul(a[row][col], sub);
        acc = (k % 2 == 0) ? uni_add(acc, term) : uni_sub(acc, term);
      }
      return acc;
    }
  } rec{mm, ring};
  std::vector<size_t> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = i;
  return rec.run(cols, 0);
}

}  // namespace krull
