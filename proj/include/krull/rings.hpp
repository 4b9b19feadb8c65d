#ifndef KRULL_RINGS_HPP
#define KRULL_RINGS_HPP

/* Exact arithmetic and the ring/ideal/monoid data model for the supported
   ring families: Z, Z/n, and multivariate polynomials (rational, prime-field,
   integer or residue coefficients; the latter two carry arithmetic only, no
   ideal oracles). */

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krull/errors.hpp"

namespace krull {

enum class RingKind { Integers, Modular, Polynomial };
enum class CoeffKind { Rationals, PrimeField, IntegerCoeff, ModularCoeff };

struct RingDescriptor {
  RingKind kind = RingKind::Integers;
  mpz_class modulus;   // Modular kind, or ModularCoeff coefficients
  CoeffKind coeff = CoeffKind::Rationals;
  std::vector<std::string> vars;

  static RingDescriptor integers();
  static RingDescriptor modular(const mpz_class& n);
  static RingDescriptor poly_q(std::vector<std::string> vars);
  static RingDescriptor poly_fp(const mpz_class& p, std::vector<std::string> vars);
  static RingDescriptor poly_z(std::vector<std::string> vars);
  static RingDescriptor poly_zmod(const mpz_class& n, std::vector<std::string> vars);

  bool operator==(const RingDescriptor& o) const;
};

/* Exponent vector; length always equals the ring's variable count. */
using Monomial = std::vector<uint32_t>;

unsigned total_degree(const Monomial& m);
bool mono_divides(const Monomial& a, const Monomial& b);        // a | b
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b);        // a / b, assumes divisibility
Monomial mono_lcm(const Monomial& a, const Monomial& b);

enum class MonOrder { Grevlex, Lex };
// returns <0, 0, >0 comparing a against b in the given order
int mono_cmp(const Monomial& a, const Monomial& b, MonOrder order);

/* Term list sorted descending in grevlex; no zero coefficients. */
using PolyTerms = std::vector<std::pair<Monomial, mpq_class>>;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class RingElement {
 public:
  RingElement() = default;
  bool valid() const { return ring_ != nullptr; }
  const RingPtr& ring() const { return ring_; }

  const mpz_class& zval() const { return z_; }
  const PolyTerms& terms() const;
  bool is_poly() const { return poly_ != nullptr; }

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  // total order on canonical forms within one ring (tie-break in searches)
  static int cmp(const RingElement& a, const RingElement& b);

 private:
  friend class Ring;
  RingPtr ring_;
  mpz_class z_;
  std::shared_ptr<const PolyTerms> poly_;
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  /* Validates the descriptor: modulus >= 2, p prime by trial division,
     variable names distinct, nonempty and well-formed. */
  static RingPtr make(const RingDescriptor& d);

  const RingDescriptor& descriptor() const { return desc_; }
  bool same(const Ring& o) const { return this == &o || desc_ == o.desc_; }
  bool is_polynomial() const { return desc_.kind == RingKind::Polynomial; }
  bool is_field_poly() const {
    return is_polynomial() && (desc_.coeff == CoeffKind::Rationals || desc_.coeff == CoeffKind::PrimeField);
  }
  // Z or Z/n (the gcd-backed oracle family)
  bool is_integer_like() const { return desc_.kind != RingKind::Polynomial; }
  size_t var_count() const { return desc_.vars.size(); }
  const std::vector<std::string>& vars() const { return desc_.vars; }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long v) const;
  RingElement from_mpz(const mpz_class& v) const;
  RingElement from_mpq(const mpq_class& v) const;  // ZeroDenominator when not representable
  RingElement variable(size_t i) const;
  RingElement monomial(const Monomial& m, const mpq_class& coeff) const;
  RingElement make_poly(PolyTerms terms) const;  // canonicalizes

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement pow(const RingElement& a, unsigned long e) const;
  bool is_zero(const RingElement& a) const;
  bool is_one(const RingElement& a) const;
  bool eq(const RingElement& a, const RingElement& b) const;

  /* Exact division attempt; nullopt when b does not divide a (supported in
     every family; for field-coefficient polynomials this is exact
     multivariate division). */
  std::optional<RingElement> divide(const RingElement& a, const RingElement& b) const;

  // coefficient-field scalar ops (polynomial rings)
  mpq_class cnormalize(const mpq_class& c) const;
  mpq_class cadd(const mpq_class& a, const mpq_class& b) const;
  mpq_class cmul(const mpq_class& a, const mpq_class& b) const;
  mpq_class cneg(const mpq_class& a) const;
  std::optional<mpq_class> cinv(const mpq_class& a) const;

  // substitute ring variables by values (usable cross-ring: coefficients are
  // mapped through target->from_mpq)
  RingElement evaluate(const RingElement& poly, const std::vector<RingElement>& values,
                       const RingPtr& target) const;
  // coefficient of the exact monomial m, as an element of the coefficient
  // structure embedded back into this ring (constant polynomial)
  mpq_class coefficient(const RingElement& a, const Monomial& m) const;

  RingElement parse(const std::string& text) const;
  std::string to_string(const RingElement& a) const;

  RingPtr shared() const { return shared_from_this(); }

 private:
  explicit Ring(RingDescriptor d) : desc_(std::move(d)) {}
  RingElement wrap_z(mpz_class v) const;
  RingElement wrap_poly(PolyTerms t) const;
  RingDescriptor desc_;
};

// operator sugar; both operands must live in the same ring
RingElement operator+(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a, const RingElement& b);
RingElement operator*(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a);

/* Finitely generated ideal: nonempty generator list over one ring (zero is
   allowed as an explicit generator). */
struct Ideal {
  std::vector<RingElement> gens;

  Ideal() = default;
  explicit Ideal(std::vector<RingElement> g);
  const RingPtr& ring() const { return gens.at(0).ring(); }
};

/* Finitely generated multiplicative monoid; the empty list denotes {1}. */
struct MonoidSpec {
  std::vector<RingElement> gens;

  MonoidSpec() = default;
  explicit MonoidSpec(std::vector<RingElement> g) : gens(std::move(g)) {}
};

// product of all generators (empty product = 1)
RingElement monoid_product(const Ring& ring, const std::vector<RingElement>& gens);

}  // namespace krull

#endif
