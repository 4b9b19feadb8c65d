#include "krull/goingdown.hpp"

namespace krull {

namespace {

/* gcd in the base ring: Z by mpz, K[t] by the Euclidean algorithm. */
RingElement base_gcd(const RingPtr& base, const RingElement& a, const RingElement& b) {
  if (base->descriptor().kind == RingKind::Integers) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.zval().get_mpz_t(), b.zval().get_mpz_t());
    return base->from_mpz(g);
  }
  // univariate polynomial over a field
  auto deg = [&](const RingElement& x) -> int {
    int d = -1;
    for (const auto& t : x.terms()) d = std::max(d, int(t.first[0]));
    return d;
  };
  auto lead = [&](const RingElement& x) {
    mpq_class c = 0;
    unsigned best = 0;
    for (const auto& t : x.terms())
      if (t.first[0] >= best) {
        best = t.first[0];
        c = t.second;
      }
    return c;
  };
  RingElement r0 = a, r1 = b;
  while (!base->is_zero(r1)) {
    // r0 mod r1
    RingElement rem = r0;
    while (!base->is_zero(rem) && deg(rem) >= deg(r1)) {
      mpq_class c = rem.terms().empty() ? mpq_class(0) : lead(rem);
      auto inv = base->cinv(lead(r1));
      Monomial shift(1, uint32_t(deg(rem) - deg(r1)));
      RingElement q = base->monomial(shift, base->cmul(c, *inv));
      rem = base->sub(rem, base->mul(q, r1));
    }
    r0 = r1;
    r1 = rem;
  }
  if (base->is_zero(r0)) return r0;
  auto inv = base->cinv(lead(r0));
  return base->mul(r0, base->from_mpq(*inv));  // monic normalization
}

struct Frac {
  RingElement num, den;
};

struct FracOps {
  RingPtr base;

  Frac make(const RingElement& n, const RingElement& d) const {
    if (base->is_zero(d)) fail(Err::ZeroDenominator, "zero denominator in the fraction field");
    Frac f{n, d};
    normalize(f);
    return f;
  }
  Frac from(const RingElement& n) const { return Frac{n, base->one()}; }
  Frac zero() const { return from(base->zero()); }
  Frac one() const { return from(base->one()); }
  bool is_zero(const Frac& f) const { return base->is_zero(f.num); }

  void normalize(Frac& f) const {
    if (base->is_zero(f.num)) {
      f.den = base->one();
      return;
    }
    RingElement g = base_gcd(base, f.num, f.den);
    if (!base->is_zero(g) && !base->is_one(g)) {
      f.num = *base->divide(f.num, g);
      f.den = *base->divide(f.den, g);
    }
    if (base->descriptor().kind == RingKind::Integers) {
      if (f.den.zval() < 0) {
        f.num = base->neg(f.num);
        f.den = base->neg(f.den);
      }
    } else {
      // monic denominator
      mpq_class lc = 0;
      unsigned best = 0;
      for (const auto& t : f.den.terms())
        if (t.first[0] >= best) {
          best = t.first[0];
          lc = t.second;
        }
      auto inv = base->cinv(lc);
      RingElement scale = base->from_mpq(*inv);
      f.num = base->mul(f.num, scale);
      f.den = base->mul(f.den, scale);
    }
  }
  Frac add(const Frac& a, const Frac& b) const {
    return make(base->add(base->mul(a.num, b.den), base->mul(b.num, a.den)),
                base->mul(a.den, b.den));
  }
  Frac sub(const Frac& a, const Frac& b) const {
    return make(base->sub(base->mul(a.num, b.den), base->mul(b.num, a.den)),
                base->mul(a.den, b.den));
  }
  Frac mul(const Frac& a, const Frac& b) const {
    return make(base->mul(a.num, b.num), base->mul(a.den, b.den));
  }
  Frac div(const Frac& a, const Frac& b) const {
    if (is_zero(b)) fail(Err::ZeroDenominator, "division by zero fraction");
    return make(base->mul(a.num, b.den), base->mul(a.den, b.num));
  }
};

using FPoly = std::vector<Frac>;  // coefficient i = degree i

struct FPolyOps {
  FracOps f;

  void trim(FPoly& p) const {
    while (!p.empty() && f.is_zero(p.back())) p.pop_back();
  }
  FPoly from_uni(const UniPoly& u) const {
    FPoly p;
    for (const auto& c : u.c) p.push_back(f.from(c));
    trim(p);
    return p;
  }
  int deg(const FPoly& p) const { return int(p.size()) - 1; }
  FPoly sub_scaled(const FPoly& a, const Frac& c, size_t shift, const FPoly& b) const {
    FPoly out = a;
    if (out.size() < b.size() + shift) out.resize(b.size() + shift, f.zero());
    for (size_t i = 0; i < b.size(); ++i)
      out[i + shift] = f.sub(out[i + shift], f.mul(c, b[i]));
    trim(out);
    return out;
  }
  // monic gcd over the fraction field
  FPoly gcd(FPoly a, FPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      // a mod b
      while (int(a.size()) >= int(b.size()) && !a.empty()) {
        Frac c = f.div(a.back(), b.back());
        a = sub_scaled(a, c, a.size() - b.size(), b);
      }
      std::swap(a, b);
    }
    if (a.empty()) return a;
    Frac lead = a.back();
    for (auto& c : a) c = f.div(c, lead);
    return a;
  }
};

UniPoly fpoly_to_uni(const RingPtr& base, const FPoly& p) {
  UniPoly u{base, {}};
  for (const auto& c : p) {
    if (!base->is_one(c.den))
      fail(Err::PreconditionBreach,
           "fraction-field gcd left the base ring: " + base->to_string(c.num) + " / " +
               base->to_string(c.den));
    u.c.push_back(c.num);
  }
  u.trim();
  return u;
}

SElement eval_at(const ExtensionContext& ext, const UniPoly& p, const SElement& x) {
  SElement acc = ext.from_base(ext.base()->zero());
  for (int i = p.degree(); i >= 0; --i)
    acc = ext.add(ext.mul(acc, x), ext.from_base(p.coeff(size_t(i))));
  return acc;
}

// exact division in R[X]; nullopt when not divisible over R
std::optional<UniPoly> uni_divide_exact(const UniPoly& a, const UniPoly& b) {
  const RingPtr& base = a.base;
  UniPoly rem = a;
  UniPoly q{base, {}};
  if (b.is_zero()) return std::nullopt;
  int db = b.degree();
  q.c.assign(std::max(0, a.degree() - db + 1), base->zero());
  while (!rem.is_zero() && rem.degree() >= db) {
    auto c = base->divide(rem.leading(), b.leading());
    if (!c) return std::nullopt;
    size_t shift = size_t(rem.degree() - db);
    q.c[shift] = *c;
    UniPoly sub{base, std::vector<RingElement>(shift, base->zero())};
    for (const auto& bc : b.c) sub.c.push_back(base->mul(bc, *c));
    sub.trim();
    rem = uni_sub(rem, sub);
  }
  if (!rem.is_zero()) return std::nullopt;
  q.trim();
  return q;
}

}  // namespace

UniPoly gd_monic_gcd(const ExtensionContext& ext, const Ideal& I, const SElement& x,
                     const UniPoly& M, const UniPoly& P, const Caps& caps) {
  const RingPtr& base = ext.base();
  if (!ext.integrally_closed_mode())
    fail(Err::PreconditionBreach, "monic gcd needs an integrally closed base (Z or K[t])");
  if (!M.is_monic()) fail(Err::NotAnnihilator, "M must be monic");
  if (!ext.is_zero(eval_at(ext, M, x))) fail(Err::NotAnnihilator, "M(x) != 0");
  if (!ext.is_zero(eval_at(ext, P, x))) fail(Err::NotAnnihilator, "P(x) != 0");
  PreparedIdeal PI(base, I.gens, caps);
  for (int i = 0; i < M.degree(); ++i)
    if (!PI.member(M.coeff(size_t(i))))
      fail(Err::CoefficientEscapesIdeal,
           "M coefficient " + base->to_string(M.coeff(size_t(i))) + " is not in the ideal");

  FracOps fr{base};
  FPolyOps ops{fr};
  FPoly q = ops.gcd(ops.from_uni(M), ops.from_uni(P));
  UniPoly Q = fpoly_to_uni(base, q);

  if (!ext.is_zero(eval_at(ext, Q, x)))
    fail(Err::NotAnnihilator, "the monic gcd does not annihilate x");
  if (!uni_divide_exact(M, Q) || !uni_divide_exact(P, Q))
    fail(Err::PreconditionBreach, "gcd does not divide the inputs inside R[X]");
  for (int i = 0; i < Q.degree(); ++i)
    if (!PI.member(Q.coeff(size_t(i))))
      fail(Err::CoefficientEscapesIdeal,
           "gcd coefficient " + base->to_string(Q.coeff(size_t(i))) + " escaped the ideal");
  return Q;
}

GDStepResult going_down_step(const ExtensionContext& ext, const IdealisticPrime& p0,
                             const RingElement& u0, const SElement& v1,
                             const std::vector<RingElement>& j0_ideal_parts,
                             const std::vector<SElement>& j0_s_parts,
                             const std::optional<UniPoly>& candidate_B, const Caps& caps) {
  const RingPtr& base = ext.base();
  if (!ext.integrally_closed_mode())
    fail(Err::PreconditionBreach, "going down needs an integrally closed base (Z or K[t])");
  if (j0_ideal_parts.size() != j0_s_parts.size())
    fail(Err::ShapeMismatch, "j0 decomposition lists must align");

  // i_k must sit in I_0
  PreparedIdeal PI(base, p0.J.empty() ? std::vector<RingElement>{base->zero()} : p0.J, caps);
  for (const auto& ik : j0_ideal_parts)
    if (!PI.member(ik))
      fail(Err::PreconditionBreach, "j0 coefficient " + base->to_string(ik) + " is not in I_0");

  SElement j0 = ext.from_base(base->zero());
  for (size_t k = 0; k < j0_ideal_parts.size(); ++k)
    j0 = ext.add(j0, ext.mul(ext.from_base(j0_ideal_parts[k]), j0_s_parts[k]));
  // the collapse datum u0 v1 = j0
  if (!ext.eq(ext.mul(ext.from_base(u0), v1), j0))
    fail(Err::NotACollapse, "u0 * v1 != j0 in S");

  GDStepResult res;
  Ideal I0(p0.J.empty() ? std::vector<RingElement>{base->zero()} : p0.J);

  UniPoly B = candidate_B ? *candidate_B : ext.annihilator(v1);
  if (!B.is_monic()) fail(Err::NotAnnihilator, "candidate B must be monic");
  if (!ext.is_zero(eval_at(ext, B, v1)))
    fail(Err::NotAnnihilator, "candidate B does not annihilate v1");
  res.degree_trace.push_back(unsigned(B.degree()));
  if (!base->is_zero(u0)) {
    // annihilator of j0 with non-leading coefficients in I_0 (entries of the
    // multiplication matrix of j0 already sit in I_0)
    UniPoly A = ext.annihilator(j0);
    for (int i = 0; i < A.degree(); ++i)
      if (!PI.member(A.coeff(size_t(i))))
        fail(Err::InternalMismatch, "characteristic coefficient of j0 escaped I_0");
    unsigned max_rounds = unsigned(B.degree()) + 1;
    for (;;) {
      // first case: u0^d B(X) = A(u0 X)
      UniPoly lhs = uni_scale(B, base->pow(u0, size_t(std::max(0, B.degree()))));
      UniPoly rhs = uni_compose_scale(A, u0);
      if (uni_eq(lhs, rhs)) break;
      if (res.gcd_rounds >= max_rounds)
        fail(Err::InternalMismatch, "descent loop exceeded the degree bound");
      ++res.gcd_rounds;
      // B1 = monic gcd of A(u0 X) and B, annihilating v1 (lemma with I = <1>)
      UniPoly B1 = gd_monic_gcd(ext, Ideal({base->one()}), v1, B, rhs, caps);
      // A1 = u0^{d1} B1(X/u0), the matching gcd on the j0 side with I = I_0
      UniPoly A1 = uni_homogenize_scale(B1, u0);
      UniPoly atilde = uni_homogenize_scale(B, u0);
      UniPoly Q = gd_monic_gcd(ext, I0, j0, A, atilde, caps);
      if (!uni_eq(A1, Q))
        fail(Err::InternalMismatch, "the two gcd routes disagree");
      if (B1.degree() >= B.degree())
        fail(Err::InternalMismatch, "descent degree failed to decrease");
      A = A1;
      B = B1;
      res.degree_trace.push_back(unsigned(B.degree()));
    }
    res.final_A = A;
  } else {
    res.final_A = UniPoly::variable(base);  // X annihilates j0 = 0
  }
  res.final_B = B;

  // non-leading coefficients of B land in the saturation of P_0
  for (int i = 0; i < B.degree(); ++i) {
    RingElement bi = B.coeff(size_t(i));
    res.b_coeffs.push_back(bi);
    bool inside = in_saturated_ideal(base, p0, bi, caps);
    res.b_in_saturation.push_back(inside);
    if (!inside)
      fail(Err::PreconditionBreach,
           "coefficient " + base->to_string(bi) + " is outside the saturated ideal");
  }
  // v1^d = -sum b_i v1^i: the membership of a power of v1 in I_0^sat * S
  res.v1_power = ext.pow(v1, unsigned(std::max(0, B.degree())));
  SElement rhs = ext.from_base(base->zero());
  for (int i = 0; i < B.degree(); ++i)
    rhs = ext.add(rhs, ext.mul(ext.from_base(B.coeff(size_t(i))), ext.pow(v1, unsigned(i))));
  if (!ext.eq(res.v1_power, ext.neg(rhs)))
    fail(Err::InternalMismatch, "final membership identity failed to evaluate");
  return res;
}

FlatGDResult going_down_flat(const ExtensionContext& ext, const IdealisticPrime& p0,
                             const RingElement& u0, const SElement& v1,
                             const std::vector<RingElement>& i_parts,
                             const std::vector<SElement>& b_parts, const Caps& caps) {
  const RingPtr& base = ext.base();
  if (i_parts.size() != b_parts.size()) fail(Err::ShapeMismatch, "relation lists must align");
  // u0 v1 + sum i_k b_k = 0
  SElement total = ext.mul(ext.from_base(u0), v1);
  for (size_t k = 0; k < i_parts.size(); ++k)
    total = ext.add(total, ext.mul(ext.from_base(i_parts[k]), b_parts[k]));
  if (!ext.is_zero(total)) fail(Err::NotARelation, "the relation does not evaluate to zero");

  FlatGDResult res;
  size_t d = ext.degree();
  res.basis_size = d;
  res.m.assign(i_parts.size() + 1, std::vector<RingElement>(d, base->zero()));
  for (size_t t = 0; t < d; ++t) {
    res.m[0][t] = v1.coords[t];
    for (size_t k = 0; k < i_parts.size(); ++k) res.m[k + 1][t] = b_parts[k].coords[t];
    // column relation u0 m_{0,t} + sum i_k m_{k,t} = 0
    RingElement col = base->mul(u0, res.m[0][t]);
    for (size_t k = 0; k < i_parts.size(); ++k)
      col = base->add(col, base->mul(i_parts[k], res.m[k + 1][t]));
    if (!base->is_zero(col)) fail(Err::InternalMismatch, "coordinate relation failed");
  }
  res.m0 = res.m[0];
  for (const auto& m0 : res.m0) {
    bool inside = in_saturated_ideal(base, p0, m0, caps);
    res.m0_in_saturation.push_back(inside);
    if (!inside)
      fail(Err::SaturationRefutes,
           "coordinate " + base->to_string(m0) + " is outside the saturated ideal");
  }
  return res;
}

FlatGDResult going_down_flat_poly(const RingPtr& base, const RingPtr& poly,
                                  const IdealisticPrime& p0, const RingElement& u0,
                                  const RingElement& v1, const std::vector<RingElement>& i_parts,
                                  const std::vector<RingElement>& b_parts, const Caps& caps) {
  if (i_parts.size() != b_parts.size()) fail(Err::ShapeMismatch, "relation lists must align");
  auto lift = [&](const RingElement& x) -> RingElement {
    if (base->descriptor().kind == RingKind::Integers) return poly->from_mpz(x.zval());
    fail(Err::UnsupportedRing, "free polynomial flat descent is supported over base Z");
  };
  RingElement total = poly->mul(lift(u0), v1);
  for (size_t k = 0; k < i_parts.size(); ++k)
    total = poly->add(total, poly->mul(lift(i_parts[k]), b_parts[k]));
  if (!poly->is_zero(total)) fail(Err::NotARelation, "the relation does not evaluate to zero");

  // basis monomials: union of the supports
  std::vector<Monomial> basis;
  auto collect = [&](const RingElement& x) {
    for (const auto& t : x.terms())
      if (std::find(basis.begin(), basis.end(), t.first) == basis.end())
        basis.push_back(t.first);
  };
  collect(v1);
  for (const auto& b : b_parts) collect(b);
  std::sort(basis.begin(), basis.end());

  FlatGDResult res;
  res.basis_size = basis.size();
  res.m.assign(i_parts.size() + 1, std::vector<RingElement>(basis.size(), base->zero()));
  for (size_t t = 0; t < basis.size(); ++t) {
    res.m[0][t] = base->from_mpq(poly->coefficient(v1, basis[t]));
    for (size_t k = 0; k < i_parts.size(); ++k)
      res.m[k + 1][t] = base->from_mpq(poly->coefficient(b_parts[k], basis[t]));
    RingElement col = base->mul(u0, res.m[0][t]);
    for (size_t k = 0; k < i_parts.size(); ++k)
      col = base->add(col, base->mul(i_parts[k], res.m[k + 1][t]));
    if (!base->is_zero(col)) fail(Err::InternalMismatch, "coordinate relation failed");
  }
  res.m0 = res.m[0];
  for (const auto& m0 : res.m0) {
    bool inside = in_saturated_ideal(base, p0, m0, caps);
    res.m0_in_saturation.push_back(inside);
    if (!inside)
      fail(Err::SaturationRefutes,
           "coordinate " + base->to_string(m0) + " is outside the saturated ideal");
  }
  return res;
}

}  // namespace krull
