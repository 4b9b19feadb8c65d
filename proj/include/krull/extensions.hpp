#ifndef KRULL_EXTENSIONS_HPP
#define KRULL_EXTENSIONS_HPP

/* Monogenic monic extensions S = R[Y]/(f): traces, Lying Over, Going Up,
   Going Down (integrally closed and flat/free), relative collapse above R,
   and the supporting linear-algebra lemmas. */

#include <memory>
#include <optional>

#include "krull/collapse.hpp"
#include "krull/linalg.hpp"

namespace krull {

class ExtensionContext;
using ExtensionPtr = std::shared_ptr<const ExtensionContext>;

/* Elements of S as coordinate vectors over the power basis 1, Y, ..,
   Y^{d-1}; coordinates are base-ring elements. */
struct SElement {
  std::vector<RingElement> coords;
};

class ExtensionContext : public std::enable_shared_from_this<ExtensionContext> {
 public:
  /* base in {Z, K[t..]}; f monic of degree >= 1 over the base. The adjoined
     variable is named `var` (it must not collide with base variables). */
  static ExtensionPtr make(const RingDescriptor& base, const std::vector<RingElement>& monic_f,
                           const std::string& var = "Y", const Caps& caps = {});

  const RingPtr& base() const { return base_; }
  const RingPtr& model() const { return model_; }  // polynomial model of S
  size_t degree() const { return degree_; }
  const UniPoly& f() const { return f_; }
  const std::string& var() const { return var_; }
  bool integrally_closed_mode() const { return integrally_closed_; }

  // element plumbing
  SElement from_base(const RingElement& x) const;
  SElement y() const;
  SElement to_s(const RingElement& model_elem) const;   // reduce mod f, read coords
  RingElement to_model(const SElement& x) const;
  SElement add(const SElement& a, const SElement& b) const;
  SElement sub(const SElement& a, const SElement& b) const;
  SElement mul(const SElement& a, const SElement& b) const;
  SElement neg(const SElement& a) const;
  SElement pow(const SElement& a, unsigned long e) const;
  bool is_zero(const SElement& a) const;
  bool eq(const SElement& a, const SElement& b) const;
  std::string to_string(const SElement& a) const;

  /* Multiplication matrix of x on the power basis; entry (i,j) is the
     coefficient of Y^i in x * Y^j. */
  RMat mult_matrix(const SElement& x) const;
  /* Monic annihilator via the characteristic polynomial. */
  UniPoly annihilator(const SElement& x) const;

  /* Collapse oracle over S for the shared engine; chains are carried with
     model-ring elements (reduced mod f). */
  std::unique_ptr<CollapseAlgebra> algebra(const Caps& caps = {}) const;
  RingElement reduce_model(const RingElement& model_elem) const;
  RingElement lift_to_model(const RingElement& base_elem) const;
  RingElement project_to_base(const RingElement& model_elem) const;
  const RingElement& f_model() const { return f_model_; }

 private:
  RingPtr base_;
  RingPtr model_;
  size_t degree_ = 0;
  UniPoly f_;            // over the base ring
  RingElement f_model_;  // the same, in the model ring
  std::string var_;
  bool integrally_closed_ = false;
  Caps caps_;
};

/* The monic polynomial det(T*I - M): ring-core surface for the
   characteristic-polynomial device. The caller supplies the multiplication
   matrix; monic of degree = size by construction. */
UniPoly char_poly_of_multiplication(const RMat& mult_matrix);

/* Multiplication matrix of x on a caller-supplied generating span (base Z
   extensions): column j expresses x * span[j] over the span. Throws
   NotExpressible when the span is not multiplication-closed enough. */
RMat multiplication_matrix_on_span(const ExtensionContext& ext, const std::vector<SElement>& span,
                                   const SElement& x);

// ------------------------------------------------------------------- traces

struct SPrime {  // idealistic prime over S
  std::vector<SElement> J;
  std::vector<SElement> U;
};
struct SChain {
  std::vector<SPrime> primes;
};

/* (J cap R, V cap R): ideal part by exact elimination, monoid part by the
   syntactic under-approximation (coordinates 2..d zero). */
IdealisticPrime trace_prime(const ExtensionContext& ext, const SPrime& p, const Caps& caps = {});

// ---------------------------------------------------------------- lying over

struct LyingOverWitness {  // x^n = sum j_i * b_i with j_i in I
  unsigned n = 1;
  std::vector<RingElement> j;  // members of I (over the base)
  std::vector<SElement> b;
};
struct LyingOverResult {
  unsigned n = 1, m = 1;                 // x^{n*m} lands in <I> over the base
  std::vector<RingElement> cofactors;    // over the generators of I
  UniPoly char_polynomial;               // the device used (monic, coeffs in I)
};
LyingOverResult lying_over(const ExtensionContext& ext, const Ideal& I, const RingElement& x,
                           const LyingOverWitness& witness, const Caps& caps = {});

// ----------------------------------------------------------------- going up

bool s_chain_collapses(const ExtensionContext& ext, const SChain& chain, const Caps& caps = {});

struct GoingUpResult {
  bool collapse_in_R = false;
  bool collapse_in_S = false;
  std::optional<LyingOverResult> lying_over_cert;  // emitted when C1 is empty and C collapses
};
/* Decides C1|_R . C2 over R and C1 . C2 over S and asserts the transfer law
   (InternalMismatch = theorem violation). C1 may be empty. */
GoingUpResult going_up_transfer(const ExtensionContext& ext, const SChain& c1,
                                const IdealisticChain& c2, const Caps& caps = {});

// ------------------------------------------------------------ relative dim 0

struct AboveCase {               // one case of the r-case ladder
  std::optional<size_t> h;      // least alist index in G' (none: G' empty)
  unsigned m = 0;
  SElement g_prime;              // in M(G') (a_h, or 1)
  SElement b;
  std::vector<SElement> g_cofactors;  // g = sum cof * alist-entries, support in G
};
struct AlistResult {
  std::vector<RingElement> alist;  // over the base
  size_t unit_index = 0;           // k with coefficient 1 in the annihilator
  UniPoly annihilator;
  std::vector<AboveCase> cases;    // r+1 cases, each verified by evaluation
};
/* x^k = sum_{i != k} a_i x^i from an annihilator with a unit coefficient;
   emits the r-case certificates x^m (g' + b x) = g. */
AlistResult integral_alist(const ExtensionContext& ext, const SElement& x,
                           const std::optional<UniPoly>& user_annihilator = std::nullopt,
                           const Caps& caps = {});

struct AbovePair {
  std::vector<size_t> H;  // indices adjoined to J_0
  bool collapses = false;
};
struct AboveResult {
  bool collapses_above = false;
  std::vector<AbovePair> pairs;  // every complementary pair (H, H')
};
AboveResult collapse_above(const ExtensionContext& ext, const SChain& chain,
                           const std::vector<RingElement>& alist, const Caps& caps = {});

// ------------------------------------------------------------------- minors

struct MinorStep {
  size_t k = 0;                        // position in the ranked minor list
  std::vector<RingElement> ideal;      // I_k = <mu_i : i < k>
  RingElement minor;                   // mu_k
  size_t order = 0;                    // j: V_{n+1-j} is rewritten
  size_t target_column = 0;
  std::vector<RingElement> combination;  // mu_k * V_target = sum comb * later columns (mod I_k)
  std::vector<RingElement> residue_cofactors;  // per row: the I_k member closing the identity
};
/* All 2^n - 1 suffix-column minors ranked by decreasing order, mu_{l+1} = 1,
   with Cramer data valid in (R/I_k)_{S_k}, verified exactly over R. */
std::vector<MinorStep> minors_decompose(const RMat& v, const Caps& caps = {});

// ------------------------------------------------- coefficient restriction

/* Certificate for (a_1..a_r, X_1..X_n) in R[X_1..X_n] with the variables as
   the trailing entries; extracts the coefficient of X^p and returns the
   certificate for (a_1..a_r) over the coefficient ring. */
PseudoSingularCertificate restrict_certificate(const RingPtr& poly_ring,
                                               const std::vector<RingElement>& seq,
                                               const PseudoSingularCertificate& cert,
                                               size_t n_vars, RingPtr* out_ring = nullptr);

}  // namespace krull

#endif
