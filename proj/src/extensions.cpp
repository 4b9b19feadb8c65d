#include "krull/extensions.hpp"

#include <algorithm>
#include <set>

#include "krull/intlattice.hpp"

namespace krull {

// ----------------------------------------------------------------- context

ExtensionPtr ExtensionContext::make(const RingDescriptor& base,
                                    const std::vector<RingElement>& monic_f,
                                    const std::string& var, const Caps& caps) {
  auto ctx = std::make_shared<ExtensionContext>();
  ctx->base_ = Ring::make(base);
  ctx->caps_ = caps;
  ctx->var_ = var;
  switch (base.kind) {
    case RingKind::Integers: {
      ctx->model_ = Ring::make(RingDescriptor::poly_z({var}));
      ctx->integrally_closed_ = true;
      break;
    }
    case RingKind::Polynomial: {
      if (!ctx->base_->is_field_poly())
        fail(Err::UnsupportedRing, "extension base must be Z or a field polynomial ring");
      for (const auto& v : base.vars)
        if (v == var) fail(Err::InvalidDescriptor, "adjoined variable collides with base variable");
      RingDescriptor md = base;
      md.vars.clear();
      md.vars.push_back(var);
      md.vars.insert(md.vars.end(), base.vars.begin(), base.vars.end());
      ctx->model_ = Ring::make(md);
      ctx->integrally_closed_ = base.vars.size() == 1;  // K[t] is integrally closed
      break;
    }
    default:
      fail(Err::UnsupportedRing, "extension base must be Z or a field polynomial ring");
  }
  if (monic_f.size() < 2) fail(Err::InvalidDescriptor, "monic polynomial must have degree >= 1");
  for (const auto& c : monic_f)
    if (!c.ring()->same(*ctx->base_))
      fail(Err::ShapeMismatch, "defining coefficients must live in the base ring");
  ctx->degree_ = monic_f.size() - 1;
  ctx->f_ = UniPoly{ctx->base_, monic_f};
  ctx->f_.trim();
  if (ctx->f_.degree() != int(monic_f.size()) - 1 || !ctx->f_.is_monic())
    fail(Err::InvalidDescriptor, "defining polynomial must be monic");
  // f in the model ring
  RingElement fm = ctx->model_->zero();
  for (size_t i = 0; i < monic_f.size(); ++i) {
    RingElement yi = ctx->model_->pow(ctx->model_->variable(0), i);
    fm = ctx->model_->add(fm, ctx->model_->mul(ctx->lift_to_model(monic_f[i]), yi));
  }
  ctx->f_model_ = fm;
  return ctx;
}

RingElement ExtensionContext::lift_to_model(const RingElement& x) const {
  if (base_->descriptor().kind == RingKind::Integers) return model_->from_mpz(x.zval());
  PolyTerms t;
  for (const auto& term : x.terms()) {
    Monomial m;
    m.reserve(term.first.size() + 1);
    m.push_back(0);
    m.insert(m.end(), term.first.begin(), term.first.end());
    t.emplace_back(std::move(m), term.second);
  }
  return model_->make_poly(std::move(t));
}

RingElement ExtensionContext::project_to_base(const RingElement& model_elem) const {
  if (base_->descriptor().kind == RingKind::Integers) {
    mpq_class c = model_->coefficient(model_elem, Monomial(1, 0));
    // degree-in-Y must be zero
    for (const auto& t : model_elem.terms())
      if (t.first[0] != 0) fail(Err::InternalMismatch, "projection of a non-base element");
    return base_->from_mpq(c);
  }
  PolyTerms t;
  for (const auto& term : model_elem.terms()) {
    if (term.first[0] != 0) fail(Err::InternalMismatch, "projection of a non-base element");
    t.emplace_back(Monomial(term.first.begin() + 1, term.first.end()), term.second);
  }
  return base_->make_poly(std::move(t));
}

RingElement ExtensionContext::reduce_model(const RingElement& model_elem) const {
  RingElement e = model_elem;
  for (;;) {
    unsigned top = 0;
    for (const auto& t : e.terms()) top = std::max(top, t.first[0]);
    if (top < degree_) return e;
    // subtract (top slice) * Y^{top-d} * f
    PolyTerms slice;
    for (const auto& t : e.terms())
      if (t.first[0] == top) {
        Monomial m = t.first;
        m[0] = uint32_t(top - degree_);
        slice.emplace_back(std::move(m), t.second);
      }
    RingElement q = model_->make_poly(std::move(slice));
    e = model_->sub(e, model_->mul(q, f_model_));
  }
}

SElement ExtensionContext::from_base(const RingElement& x) const {
  SElement s;
  s.coords.assign(degree_, base_->zero());
  s.coords[0] = x;
  return s;
}

SElement ExtensionContext::y() const {
  SElement s;
  s.coords.assign(degree_, base_->zero());
  if (degree_ == 1) {
    // Y = -f_0 in a degree-1 extension
    s.coords[0] = base_->neg(f_.coeff(0));
  } else {
    s.coords[1] = base_->one();
  }
  return s;
}

SElement ExtensionContext::to_s(const RingElement& model_elem) const {
  RingElement e = reduce_model(model_elem);
  SElement s;
  s.coords.assign(degree_, base_->zero());
  if (base_->descriptor().kind == RingKind::Integers) {
    for (const auto& t : e.terms()) {
      RingElement c = base_->from_mpq(t.second);
      s.coords[t.first[0]] = base_->add(s.coords[t.first[0]], c);
    }
  } else {
    for (const auto& t : e.terms()) {
      Monomial m(t.first.begin() + 1, t.first.end());
      s.coords[t.first[0]] =
          base_->add(s.coords[t.first[0]], base_->monomial(m, t.second));
    }
  }
  return s;
}

RingElement ExtensionContext::to_model(const SElement& x) const {
  if (x.coords.size() != degree_) fail(Err::ShapeMismatch, "coordinate vector length != degree");
  RingElement acc = model_->zero();
  for (size_t i = 0; i < degree_; ++i) {
    RingElement yi = model_->pow(model_->variable(0), i);
    acc = model_->add(acc, model_->mul(lift_to_model(x.coords[i]), yi));
  }
  return acc;
}

SElement ExtensionContext::add(const SElement& a, const SElement& b) const {
  SElement r;
  r.coords.reserve(degree_);
  for (size_t i = 0; i < degree_; ++i) r.coords.push_back(base_->add(a.coords[i], b.coords[i]));
  return r;
}

SElement ExtensionContext::sub(const SElement& a, const SElement& b) const {
  SElement r;
  r.coords.reserve(degree_);
  for (size_t i = 0; i < degree_; ++i) r.coords.push_back(base_->sub(a.coords[i], b.coords[i]));
  return r;
}

SElement ExtensionContext::mul(const SElement& a, const SElement& b) const {
  return to_s(model_->mul(to_model(a), to_model(b)));
}

SElement ExtensionContext::neg(const SElement& a) const {
  SElement r;
  r.coords.reserve(degree_);
  for (size_t i = 0; i < degree_; ++i) r.coords.push_back(base_->neg(a.coords[i]));
  return r;
}

SElement ExtensionContext::pow(const SElement& a, unsigned long e) const {
  SElement r = from_base(base_->one());
  SElement x = a;
  while (e) {
    if (e & 1) r = mul(r, x);
    e >>= 1;
    if (e) x = mul(x, x);
  }
  return r;
}

bool ExtensionContext::is_zero(const SElement& a) const {
  for (const auto& c : a.coords)
    if (!base_->is_zero(c)) return false;
  return true;
}

bool ExtensionContext::eq(const SElement& a, const SElement& b) const {
  for (size_t i = 0; i < degree_; ++i)
    if (!base_->eq(a.coords[i], b.coords[i])) return false;
  return true;
}

std::string ExtensionContext::to_string(const SElement& a) const {
  return model_->to_string(to_model(a));
}

RMat ExtensionContext::mult_matrix(const SElement& x) const {
  RMat m(degree_, std::vector<RingElement>(degree_, base_->zero()));
  RingElement xm = to_model(x);
  for (size_t j = 0; j < degree_; ++j) {
    RingElement col = reduce_model(model_->mul(xm, model_->pow(model_->variable(0), j)));
    SElement s = to_s(col);
    for (size_t i = 0; i < degree_; ++i) m[i][j] = s.coords[i];
  }
  return m;
}

UniPoly ExtensionContext::annihilator(const SElement& x) const {
  return char_poly(mult_matrix(x));
}

UniPoly char_poly_of_multiplication(const RMat& mult_matrix) {
  UniPoly p = char_poly(mult_matrix);
  if (!p.is_monic()) fail(Err::InternalMismatch, "characteristic polynomial not monic");
  return p;
}

RMat multiplication_matrix_on_span(const ExtensionContext& ext, const std::vector<SElement>& span,
                                   const SElement& x) {
  if (ext.base()->descriptor().kind != RingKind::Integers)
    fail(Err::UnsupportedRing, "span matrices are supported over base Z");
  if (span.empty()) fail(Err::InputError, "empty span");
  size_t d = ext.degree();
  ZMat rows;
  for (const auto& g : span) {
    ZVec v;
    for (const auto& c : g.coords) v.push_back(c.zval());
    rows.push_back(std::move(v));
  }
  ZLattice L = ZLattice::from_generators(d, rows);
  RMat m(span.size(), std::vector<RingElement>(span.size(), ext.base()->zero()));
  for (size_t j = 0; j < span.size(); ++j) {
    SElement prod = ext.mul(x, span[j]);
    ZVec v;
    for (const auto& c : prod.coords) v.push_back(c.zval());
    auto coords = L.coordinates(v);
    if (!coords)
      fail(Err::NotExpressible,
           "x * " + ext.to_string(span[j]) + " does not lie in the span");
    for (size_t i = 0; i < span.size(); ++i) m[i][j] = ext.base()->from_mpz((*coords)[i]);
  }
  return m;
}

// --------------------------------------------------------------- S algebras

namespace {

/* Base Z: ideals are integer lattices spanned by generator shifts. */
class ExtAlgebraZ final : public CollapseAlgebra {
 public:
  ExtAlgebraZ(ExtensionPtr ext, const Caps& caps) : ext_(std::move(ext)), caps_(caps) {}

  RingPtr elem_ring() const override { return ext_->model(); }
  RingElement add(const RingElement& a, const RingElement& b) const override {
    return ext_->model()->add(a, b);
  }
  RingElement mul(const RingElement& a, const RingElement& b) const override {
    return ext_->reduce_model(ext_->model()->mul(a, b));
  }
  RingElement neg(const RingElement& a) const override { return ext_->model()->neg(a); }
  RingElement one() const override { return ext_->model()->one(); }
  RingElement zero() const override { return ext_->model()->zero(); }
  bool is_zero(const RingElement& a) const override {
    return ext_->model()->is_zero(ext_->reduce_model(a));
  }

  ZVec coords(const RingElement& e) const {
    SElement s = ext_->to_s(e);
    ZVec v;
    v.reserve(s.coords.size());
    for (const auto& c : s.coords) v.push_back(c.zval());
    return v;
  }
  RingElement from_coords(const ZVec& v) const {
    SElement s;
    for (const auto& z : v) s.coords.push_back(ext_->base()->from_mpz(z));
    return ext_->to_model(s);
  }

  ZLattice ideal_lattice(const std::vector<RingElement>& gens) const {
    size_t d = ext_->degree();
    ZMat rows;
    for (const auto& g : gens) {
      RingElement gr = ext_->reduce_model(g);
      for (size_t t = 0; t < d; ++t) {
        RingElement sh =
            ext_->reduce_model(ext_->model()->mul(gr, ext_->model()->pow(ext_->model()->variable(0), t)));
        rows.push_back(coords(sh));
      }
    }
    return ZLattice::from_generators(d, rows);
  }

  std::vector<RingElement> saturation(const std::vector<RingElement>& gens,
                                      const RingElement& p) const override {
    size_t d = ext_->degree();
    ZLattice L = ideal_lattice(gens);
    // multiplication matrix of p over Z
    SElement ps = ext_->to_s(p);
    RMat pm = ext_->mult_matrix(ps);
    for (unsigned round = 0; round < caps_.saturation_rounds; ++round) {
      // {x : p*x in L} via the integer kernel of [M_p | -basis^T]
      const ZMat& basis = L.basis();
      ZMat sys(d, ZVec(d + basis.size(), 0));
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) sys[i][j] = pm[i][j].zval();
      for (size_t r = 0; r < basis.size(); ++r)
        for (size_t i = 0; i < d; ++i) sys[i][d + r] = -basis[r][i];
      ZMat kernel = z_kernel(sys, d + basis.size());
      ZMat gens2 = basis;  // the colon contains L
      for (const auto& k : kernel) gens2.push_back(ZVec(k.begin(), k.begin() + d));
      ZLattice L2 = ZLattice::from_generators(d, gens2);
      if (L2 == L) {
        std::vector<RingElement> out;
        for (const auto& row : L.basis()) out.push_back(from_coords(row));
        if (out.empty()) out.push_back(zero());
        return out;
      }
      L = std::move(L2);
    }
    fail(Err::ResourceExhausted, "saturation did not stabilize within the round cap");
  }

  std::optional<std::vector<RingElement>> member_cofactors(const std::vector<RingElement>& gens,
                                                           const RingElement& x) const override {
    size_t d = ext_->degree();
    ZLattice L = ideal_lattice(gens);
    auto c = L.coordinates(coords(x));
    if (!c) return std::nullopt;
    if (c->size() != gens.size() * d)
      fail(Err::InternalMismatch, "coordinate tag count " + std::to_string(c->size()) +
                                     " != " + std::to_string(gens.size() * d));
    // tag r = index gen*d + shift
    std::vector<RingElement> cof(gens.size(), zero());
    for (size_t g = 0; g < gens.size(); ++g) {
      SElement acc;
      acc.coords.assign(d, ext_->base()->zero());
      for (size_t t = 0; t < d; ++t)
        acc.coords[t] = ext_->base()->from_mpz(c->at(g * d + t));
      cof[g] = ext_->to_model(acc);
    }
    // verify
    RingElement sum = zero();
    for (size_t g = 0; g < gens.size(); ++g) sum = add(sum, mul(cof[g], gens[g]));
    if (!is_zero(ext_->model()->sub(ext_->reduce_model(sum), ext_->reduce_model(x))))
      fail(Err::InternalMismatch, "lattice membership witness failed to re-evaluate");
    return cof;
  }

  bool radical_contains(const std::vector<RingElement>& gens, const RingElement& x) const override {
    return power_in(gens, x).has_value();
  }

  std::optional<std::pair<unsigned, std::vector<RingElement>>> radical_power(
      const std::vector<RingElement>& gens, const RingElement& x) const override {
    auto n = power_in(gens, x);
    if (!n) return std::nullopt;
    auto cof = member_cofactors(gens, pow_reduced(x, *n));
    if (!cof) fail(Err::InternalMismatch, "radical power lost its membership");
    return std::make_pair(*n, std::move(*cof));
  }

 private:
  RingElement pow_reduced(const RingElement& x, unsigned n) const {
    RingElement r = one();
    for (unsigned i = 0; i < n; ++i) r = mul(r, x);
    return r;
  }

  std::optional<unsigned> power_in(const std::vector<RingElement>& gens,
                                   const RingElement& x) const {
    ZLattice L = ideal_lattice(gens);
    if (L.is_zero()) {
      // nilpotency: x^d = 0 iff x is nilpotent in a free rank-d algebra
      RingElement p = pow_reduced(x, unsigned(ext_->degree()));
      if (!is_zero(p)) return std::nullopt;
      for (unsigned n = 1; n <= ext_->degree(); ++n)
        if (is_zero(pow_reduced(x, n))) return n;
      return std::nullopt;
    }
    // iterate on canonical residues: L is an ideal, so
    // reduce(x * reduce(y)) = reduce(x * y) and the orbit is deterministic
    std::set<ZVec> seen;
    ZVec residue = L.reduce(coords(one()));
    for (unsigned n = 1; n <= caps_.radical_exponent; ++n) {
      residue = L.reduce(coords(mul(from_coords(residue), x)));
      bool zero_res = std::all_of(residue.begin(), residue.end(),
                                  [](const mpz_class& z) { return z == 0; });
      if (zero_res) return n;
      if (L.rank() == ext_->degree()) {
        if (!seen.insert(residue).second) return std::nullopt;  // cycle without zero
      }
    }
    fail(Err::ResourceExhausted, "radical membership exceeded the exponent cap");
  }

  ExtensionPtr ext_;
  Caps caps_;
};

/* Base K[t..]: work in the polynomial model with f adjoined to every ideal. */
class ExtAlgebraPoly final : public CollapseAlgebra {
 public:
  ExtAlgebraPoly(ExtensionPtr ext, const Caps& caps) : ext_(std::move(ext)), caps_(caps) {}

  RingPtr elem_ring() const override { return ext_->model(); }
  RingElement add(const RingElement& a, const RingElement& b) const override {
    return ext_->model()->add(a, b);
  }
  RingElement mul(const RingElement& a, const RingElement& b) const override {
    return ext_->reduce_model(ext_->model()->mul(a, b));
  }
  RingElement neg(const RingElement& a) const override { return ext_->model()->neg(a); }
  RingElement one() const override { return ext_->model()->one(); }
  RingElement zero() const override { return ext_->model()->zero(); }
  bool is_zero(const RingElement& a) const override {
    return ext_->model()->is_zero(ext_->reduce_model(a));
  }

  std::vector<RingElement> with_f(const std::vector<RingElement>& gens) const {
    std::vector<RingElement> out = gens;
    out.push_back(ext_->f_model());
    return out;
  }

  std::vector<RingElement> saturation(const std::vector<RingElement>& gens,
                                      const RingElement& p) const override {
    PreparedIdeal I(ext_->model(), with_f(gens), caps_);
    auto sat = I.saturation(p);
    for (auto& g : sat) g = ext_->reduce_model(g);
    // keep nonzero generators; zero list means the zero ideal of S
    std::vector<RingElement> out;
    for (auto& g : sat)
      if (!ext_->model()->is_zero(g)) out.push_back(g);
    if (out.empty()) out.push_back(zero());
    return out;
  }

  std::optional<std::vector<RingElement>> member_cofactors(const std::vector<RingElement>& gens,
                                                           const RingElement& x) const override {
    PreparedIdeal I(ext_->model(), with_f(gens), caps_);
    auto cof = I.member(ext_->reduce_model(x));
    if (!cof) return std::nullopt;
    std::vector<RingElement> out(cof->begin(), cof->end() - 1);
    for (auto& c : out) c = ext_->reduce_model(c);
    RingElement sum = zero();
    for (size_t g = 0; g < gens.size(); ++g) sum = add(sum, mul(out[g], gens[g]));
    if (!is_zero(ext_->model()->sub(ext_->reduce_model(sum), ext_->reduce_model(x))))
      fail(Err::InternalMismatch, "model membership witness failed modulo f");
    return out;
  }

  bool radical_contains(const std::vector<RingElement>& gens, const RingElement& x) const override {
    PreparedIdeal I(ext_->model(), with_f(gens), caps_);
    return I.radical_contains(ext_->reduce_model(x));
  }

  std::optional<std::pair<unsigned, std::vector<RingElement>>> radical_power(
      const std::vector<RingElement>& gens, const RingElement& x) const override {
    PreparedIdeal I(ext_->model(), with_f(gens), caps_);
    auto r = I.radical_power(ext_->reduce_model(x));
    if (!r) return std::nullopt;
    std::vector<RingElement> out(r->second.begin(), r->second.end() - 1);
    for (auto& c : out) c = ext_->reduce_model(c);
    // re-verify modulo f against the reduced power
    RingElement want = one();
    RingElement xr = ext_->reduce_model(x);
    for (unsigned i = 0; i < r->first; ++i) want = mul(want, xr);
    RingElement sum = zero();
    for (size_t g = 0; g < gens.size(); ++g) sum = add(sum, mul(out[g], gens[g]));
    if (!is_zero(ext_->model()->sub(ext_->reduce_model(sum), want)))
      fail(Err::InternalMismatch, "radical witness failed modulo f");
    return std::make_pair(r->first, std::move(out));
  }

 private:
  ExtensionPtr ext_;
  Caps caps_;
};

}  // namespace

std::unique_ptr<CollapseAlgebra> ExtensionContext::algebra(const Caps& caps) const {
  auto self = shared_from_this();
  if (base_->descriptor().kind == RingKind::Integers)
    return std::make_unique<ExtAlgebraZ>(self, caps);
  return std::make_unique<ExtAlgebraPoly>(self, caps);
}

// -------------------------------------------------------------------- traces

IdealisticPrime trace_prime(const ExtensionContext& ext, const SPrime& p, const Caps& caps) {
  IdealisticPrime out;
  const RingPtr& base = ext.base();
  size_t d = ext.degree();
  if (ext.base()->descriptor().kind == RingKind::Integers) {
    // HNF with coordinate 0 moved last: the trailing-pivot row spans <J>_S cap Z
    ZMat rows;
    for (const auto& g : p.J) {
      RingElement gm = ext.to_model(g);
      for (size_t t = 0; t < d; ++t) {
        RingElement sh = ext.reduce_model(
            ext.model()->mul(gm, ext.model()->pow(ext.model()->variable(0), t)));
        SElement s = ext.to_s(sh);
        ZVec v;
        for (size_t i = 1; i < d; ++i) v.push_back(s.coords[i].zval());
        v.push_back(s.coords[0].zval());
        rows.push_back(std::move(v));
      }
    }
    ZLattice L = ZLattice::from_generators(d, rows);
    RingElement gen = base->zero();
    for (const auto& row : L.basis()) {
      bool head_zero = true;
      for (size_t i = 0; i + 1 < d; ++i)
        if (row[i] != 0) {
          head_zero = false;
          break;
        }
      if (head_zero && row[d - 1] != 0) gen = base->from_mpz(row[d - 1]);
    }
    out.J.push_back(gen);
  } else {
    // lex Groebner in the model (Y first) and keep the Y-free elements
    std::vector<RingElement> gens;
    for (const auto& g : p.J) gens.push_back(ext.to_model(g));
    gens.push_back(ext.f_model());
    GroebnerBasis gb = groebner(gens, MonOrder::Lex, caps);
    bool any = false;
    for (const auto& b : gb.basis) {
      bool has_y = false;
      for (const auto& t : b.terms())
        if (t.first[0] > 0) {
          has_y = true;
          break;
        }
      if (!has_y) {
        out.J.push_back(ext.project_to_base(b));
        any = true;
      }
    }
    if (!any) out.J.push_back(base->zero());
  }
  // monoid part: the syntactic under-approximation (coordinates 2..d zero)
  for (const auto& u : p.U) {
    bool in_base = true;
    for (size_t i = 1; i < d; ++i)
      if (!base->is_zero(u.coords[i])) {
        in_base = false;
        break;
      }
    if (in_base) out.U.push_back(u.coords[0]);
  }
  return out;
}

// ---------------------------------------------------------------- lying over

LyingOverResult lying_over(const ExtensionContext& ext, const Ideal& I, const RingElement& x,
                           const LyingOverWitness& witness, const Caps& caps) {
  const RingPtr& base = ext.base();
  if (witness.j.size() != witness.b.size())
    fail(Err::MalformedWitness, "witness lists must align");
  PreparedIdeal PI(base, I.gens, caps);
  std::vector<std::vector<RingElement>> jcof;  // j_i over the generators of I
  for (const auto& j : witness.j) {
    auto c = PI.member(j);
    if (!c) fail(Err::MalformedWitness, "witness coefficient not in the ideal");
    jcof.push_back(std::move(*c));
  }
  // x^n = sum j_i b_i in S
  SElement lhs = ext.pow(ext.from_base(x), witness.n);
  SElement rhs = ext.from_base(base->zero());
  for (size_t i = 0; i < witness.j.size(); ++i)
    rhs = ext.add(rhs, ext.mul(ext.from_base(witness.j[i]), witness.b[i]));
  if (!ext.eq(lhs, rhs)) fail(Err::MalformedWitness, "x^n != sum j_i b_i in S");

  // multiplication by x^n on the power basis; entries land in <I>
  UniPoly chi = char_poly_of_multiplication(ext.mult_matrix(lhs));
  size_t d = ext.degree();
  // non-leading coefficients have to be in I (with cofactors)
  std::vector<std::vector<RingElement>> ccof;
  for (size_t t = 0; t < d; ++t) {
    auto c = PI.member(chi.coeff(t));
    if (!c)
      fail(Err::InternalMismatch, "characteristic coefficient escaped the ideal");
    ccof.push_back(std::move(*c));
  }
  // x^{n d} = sum_t (-chi_t) x^{n t} over the base
  RingElement xn = base->pow(x, witness.n);
  RingElement check = base->pow(xn, d);
  for (size_t t = 0; t < d; ++t)
    check = base->add(check, base->mul(chi.coeff(t), base->pow(xn, t)));
  if (!base->is_zero(check))
    fail(Err::InternalMismatch, "Cayley-Hamilton identity failed over the base");

  LyingOverResult res;
  res.n = witness.n;
  res.m = unsigned(d);
  res.char_polynomial = chi;
  res.cofactors.assign(I.gens.size(), base->zero());
  for (size_t t = 0; t < d; ++t) {
    RingElement factor = base->neg(base->pow(xn, t));
    for (size_t g = 0; g < I.gens.size(); ++g)
      res.cofactors[g] = base->add(res.cofactors[g], base->mul(factor, ccof[t][g]));
  }
  RingElement total = base->zero();
  for (size_t g = 0; g < I.gens.size(); ++g)
    total = base->add(total, base->mul(res.cofactors[g], I.gens[g]));
  if (!base->eq(total, base->pow(x, size_t(witness.n) * d)))
    fail(Err::InternalMismatch, "lying-over cofactors failed to re-evaluate");
  return res;
}

// ------------------------------------------------------------------ going up

namespace {

IdealisticChain embed_chain(const ExtensionContext& ext, const IdealisticChain& base_chain) {
  std::vector<IdealisticPrime> primes;
  for (const auto& p : base_chain.primes) {
    IdealisticPrime q;
    for (const auto& x : p.J) q.J.push_back(ext.reduce_model(ext.lift_to_model(x)));
    for (const auto& x : p.U) q.U.push_back(ext.reduce_model(ext.lift_to_model(x)));
    primes.push_back(std::move(q));
  }
  return IdealisticChain(ext.model(), std::move(primes));
}

IdealisticChain s_chain_to_model(const ExtensionContext& ext, const SChain& chain) {
  std::vector<IdealisticPrime> primes;
  for (const auto& p : chain.primes) {
    IdealisticPrime q;
    for (const auto& x : p.J) q.J.push_back(ext.to_model(x));
    for (const auto& x : p.U) q.U.push_back(ext.to_model(x));
    primes.push_back(std::move(q));
  }
  return IdealisticChain(ext.model(), std::move(primes));
}

}  // namespace

bool s_chain_collapses(const ExtensionContext& ext, const SChain& chain, const Caps& caps) {
  auto alg = ext.algebra(caps);
  return run_chain_collapses(*alg, s_chain_to_model(ext, chain));
}

GoingUpResult going_up_transfer(const ExtensionContext& ext, const SChain& c1,
                                const IdealisticChain& c2, const Caps& caps) {
  GoingUpResult res;
  const RingPtr& base = ext.base();

  // the R-side chain: trace of C1 followed by C2
  std::vector<IdealisticPrime> r_primes;
  for (const auto& p : c1.primes) r_primes.push_back(trace_prime(ext, p, caps));
  for (const auto& p : c2.primes) r_primes.push_back(p);
  IdealisticChain r_chain(base, r_primes);
  res.collapse_in_R = chain_collapses(r_chain, caps);

  // the S-side chain: C1 followed by the embedded C2
  std::vector<IdealisticPrime> s_primes;
  if (!c1.primes.empty()) s_primes = s_chain_to_model(ext, c1).primes;
  IdealisticChain embedded = embed_chain(ext, c2);
  for (const auto& p : embedded.primes) s_primes.push_back(p);
  IdealisticChain full_s(ext.model(), s_primes);
  auto alg = ext.algebra(caps);
  res.collapse_in_S = run_chain_collapses(*alg, full_s);

  if (res.collapse_in_R && !res.collapse_in_S)
    fail(Err::InternalMismatch, "collapse over the base failed to transfer into S");
  if (res.collapse_in_S != res.collapse_in_R) {
    // with an empty prefix the equivalence is unconditional; otherwise a
    // finite prefix far from its saturation can genuinely lose it
    if (c1.primes.empty())
      fail(Err::InternalMismatch, "Going Up equivalence violated");
    fail(Err::PreconditionBreach,
         "the S-side prefix is not saturated enough for the transfer law");
  }

  if (c1.primes.empty() && res.collapse_in_S) {
    // certify through the characteristic-polynomial device: run the base-side
    // iteration, take the final ideal K and the final monoid product p, and
    // read the S-side membership p^n in K*S as a lying-over witness
    RingAlgebra base_alg(base, caps);
    auto [kgens, p] = collapse_final_level(base_alg, r_chain);
    std::vector<RingElement> kgens_s;
    for (const auto& g : kgens) kgens_s.push_back(ext.reduce_model(ext.lift_to_model(g)));
    if (kgens_s.empty()) kgens_s.push_back(ext.model()->zero());
    auto rad = alg->radical_power(kgens_s, ext.reduce_model(ext.lift_to_model(p)));
    if (rad) {
      LyingOverWitness w;
      w.n = rad->first;
      std::vector<RingElement> kg = kgens.empty() ? std::vector<RingElement>{base->zero()} : kgens;
      for (size_t i = 0; i < kg.size(); ++i) {
        w.j.push_back(kg[i]);
        w.b.push_back(ext.to_s(rad->second[i]));
      }
      res.lying_over_cert = lying_over(ext, Ideal(kg), p, w, caps);
    }
  }
  return res;
}

// ------------------------------------------------------------- relative dim 0

AlistResult integral_alist(const ExtensionContext& ext, const SElement& x,
                           const std::optional<UniPoly>& user_annihilator, const Caps& caps) {
  (void)caps;
  const RingPtr& base = ext.base();
  AlistResult res;
  UniPoly chi = user_annihilator ? *user_annihilator : ext.annihilator(x);
  // verify the annihilator in S
  SElement acc = ext.from_base(base->zero());
  for (int i = chi.degree(); i >= 0; --i)
    acc = ext.add(ext.mul(acc, x), ext.from_base(chi.coeff(size_t(i))));
  if (!ext.is_zero(acc)) fail(Err::NotAnnihilator, "polynomial does not annihilate x");
  // locate a coefficient equal to 1 (prefer the leading one)
  size_t r = size_t(chi.degree());
  std::optional<size_t> unit;
  if (chi.is_monic()) unit = r;
  if (!unit) {
    for (size_t i = chi.c.size(); i-- > 0;)
      if (base->is_one(chi.coeff(i))) {
        unit = i;
        break;
      }
  }
  if (!unit) fail(Err::NoUnitCoefficient, "no coefficient equal to 1 in the annihilator");
  size_t k = *unit;
  res.unit_index = k;
  res.annihilator = chi;

  // x^k = sum_{i != k} a_i x^i
  std::vector<std::optional<RingElement>> a(r + 1);
  for (size_t i = 0; i <= r; ++i)
    if (i != k) a[i] = base->neg(chi.coeff(i));
  for (size_t i = 0; i <= r; ++i)
    if (a[i]) res.alist.push_back(*a[i]);

  auto case_check = [&](AboveCase& c) {
    // x^m (g' + b x) - g must vanish in S
    SElement lhs = ext.mul(ext.pow(x, c.m), ext.add(c.g_prime, ext.mul(c.b, x)));
    SElement g = ext.from_base(base->zero());
    size_t idx = 0;
    for (size_t i = 0; i <= r; ++i) {
      if (!a[i]) continue;
      g = ext.add(g, ext.mul(c.g_cofactors[idx], ext.from_base(*a[i])));
      ++idx;
    }
    if (!ext.eq(lhs, g)) fail(Err::InternalMismatch, "case certificate failed to evaluate");
  };
  auto zero_s = ext.from_base(base->zero());
  auto xpow = [&](long e) { return e < 0 ? zero_s : ext.pow(x, unsigned(e)); };

  // case G' empty: x^k * 1 = sum a_i x^i
  {
    AboveCase c;
    c.m = unsigned(k);
    c.g_prime = ext.from_base(base->one());
    c.b = zero_s;
    for (size_t i = 0; i <= r; ++i)
      if (a[i]) c.g_cofactors.push_back(ext.pow(x, unsigned(i)));
    case_check(c);
    res.cases.push_back(std::move(c));
  }
  // case h = least index in G'
  size_t alist_pos = 0;
  for (size_t h = 0; h <= r; ++h) {
    if (!a[h]) continue;
    AboveCase c;
    c.h = alist_pos;
    if (h < k) {
      c.m = unsigned(h);
      c.g_prime = ext.from_base(*a[h]);
      // b = sum_{i > h, i != k} a_i x^{i-h-1} - x^{k-h-1}
      SElement b = zero_s;
      for (size_t i = h + 1; i <= r; ++i)
        if (i != k && a[i]) b = ext.add(b, ext.mul(ext.from_base(*a[i]), xpow(long(i - h - 1))));
      b = ext.sub(b, xpow(long(k - h - 1)));
      c.b = b;
      // g = -sum_{i < h} a_i x^i
      size_t idx = 0;
      for (size_t i = 0; i <= r; ++i) {
        if (!a[i]) continue;
        if (i < h)
          c.g_cofactors.push_back(ext.neg(ext.pow(x, unsigned(i))));
        else if (i == h)
          c.g_cofactors.push_back(zero_s);
        else
          c.g_cofactors.push_back(zero_s);
        ++idx;
      }
    } else {  // h > k
      c.m = unsigned(k);
      c.g_prime = ext.from_base(base->one());
      SElement b = zero_s;
      for (size_t i = h; i <= r; ++i)
        if (a[i]) b = ext.add(b, ext.mul(ext.from_base(*a[i]), xpow(long(i - k - 1))));
      c.b = ext.neg(b);
      size_t idx = 0;
      for (size_t i = 0; i <= r; ++i) {
        if (!a[i]) continue;
        if (i < h)
          c.g_cofactors.push_back(ext.pow(x, unsigned(i)));
        else
          c.g_cofactors.push_back(zero_s);
        ++idx;
      }
    }
    case_check(c);
    res.cases.push_back(std::move(c));
    ++alist_pos;
  }
  return res;
}

AboveResult collapse_above(const ExtensionContext& ext, const SChain& chain,
                           const std::vector<RingElement>& alist, const Caps& caps) {
  if (alist.size() > caps.above_list)
    fail(Err::CapExceeded, "alist of " + std::to_string(alist.size()) + " exceeds the cap");
  AboveResult res;
  res.collapses_above = true;
  IdealisticChain model_chain = s_chain_to_model(ext, chain);
  auto alg = ext.algebra(caps);
  size_t n = alist.size();
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    IdealisticChain c = model_chain;
    AbovePair pair;
    for (size_t i = 0; i < n; ++i) {
      RingElement ai = ext.reduce_model(ext.lift_to_model(alist[i]));
      if (mask & (uint64_t(1) << i)) {
        c.primes.front().J.push_back(ai);
        pair.H.push_back(i);
      } else {
        c.primes.back().U.push_back(ai);
      }
    }
    pair.collapses = run_chain_collapses(*alg, c);
    if (!pair.collapses) res.collapses_above = false;
    res.pairs.push_back(std::move(pair));
  }
  return res;
}

// --------------------------------------------------------------------- minors

namespace {

RingElement submatrix_det(const RMat& v, const std::vector<size_t>& rows,
                          const std::vector<size_t>& cols) {
  if (rows.empty()) return v[0][0].ring()->one();
  RMat sub(rows.size(), std::vector<RingElement>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) sub[i][j] = v[rows[i]][cols[j]];
  return det(sub);
}

void subsets_of_size(size_t n, size_t k, std::vector<size_t>& cur, size_t start,
                     const std::function<void(const std::vector<size_t>&)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  for (size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, k, cur, i + 1, fn);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MinorStep> minors_decompose(const RMat& v, const Caps& caps) {
  (void)caps;
  if (v.empty() || v[0].size() != v.size() + 1)
    fail(Err::ShapeMismatch, "expected an n x (n+1) matrix");
  size_t n = v.size();
  const RingPtr& R = v[0][0].ring();

  struct Entry {
    std::vector<size_t> rows;
    size_t order;
    RingElement value;
  };
  std::vector<Entry> minors;
  for (size_t j = n; j >= 1; --j) {
    std::vector<size_t> cols;
    for (size_t c = n + 1 - j; c <= n; ++c) cols.push_back(c);
    std::vector<size_t> cur;
    subsets_of_size(n, j, cur, 0, [&](const std::vector<size_t>& rows) {
      minors.push_back({rows, j, submatrix_det(v, rows, cols)});
    });
  }
  minors.push_back({{}, 0, R->one()});  // mu_{l+1} = 1 for the empty matrix

  std::vector<MinorStep> out;
  std::vector<RingElement> running_ideal;
  for (size_t k = 0; k < minors.size(); ++k) {
    const Entry& e = minors[k];
    MinorStep step;
    step.k = k + 1;
    step.ideal = running_ideal;
    step.minor = e.value;
    step.order = e.order;
    size_t j = e.order;
    step.target_column = n - j;  // V_{n+1-j}, 0-based
    std::vector<size_t> cols;
    for (size_t c = n + 1 - j; c <= n; ++c) cols.push_back(c);

    // Cramer coefficients: adj(B) . x with B the (rows, cols) block and x the
    // target column restricted to the block rows
    std::vector<RingElement> comb(j, R->zero());
    for (size_t t = 0; t < j; ++t) {
      // adj(B)[t][i] = (-1)^{t+i} det(B minus row i, col t)
      RingElement acc = R->zero();
      for (size_t i = 0; i < j; ++i) {
        std::vector<size_t> rr, cc;
        for (size_t a = 0; a < j; ++a)
          if (a != i) rr.push_back(e.rows[a]);
        for (size_t a = 0; a < j; ++a)
          if (a != t) cc.push_back(cols[a]);
        RingElement m = submatrix_det(v, rr, cc);
        RingElement term = R->mul(m, v[e.rows[i]][step.target_column]);
        acc = ((i + t) % 2 == 0) ? R->add(acc, term) : R->sub(acc, term);
      }
      comb[t] = acc;
    }
    step.combination = comb;

    // per-row residuals: zero on the block rows, an earlier minor elsewhere
    step.residue_cofactors.assign(n, R->zero());
    for (size_t row = 0; row < n; ++row) {
      RingElement lhs = R->mul(e.value, v[row][step.target_column]);
      for (size_t t = 0; t < j; ++t) lhs = R->sub(lhs, R->mul(comb[t], v[row][cols[t]]));
      bool in_block = std::find(e.rows.begin(), e.rows.end(), row) != e.rows.end();
      if (in_block) {
        if (!R->is_zero(lhs))
          fail(Err::InternalMismatch, "Cramer identity failed on a block row");
        continue;
      }
      // lhs = +- det on rows (e.rows u {row}) and the last j+1 columns
      std::vector<size_t> rr = e.rows;
      rr.push_back(row);
      std::sort(rr.begin(), rr.end());
      std::vector<size_t> cc;
      for (size_t c = n - j; c <= n; ++c) cc.push_back(c);
      RingElement bigger = submatrix_det(v, rr, cc);
      if (!R->eq(lhs, bigger) && !R->eq(lhs, R->neg(bigger)))
        fail(Err::InternalMismatch, "residual is not the expected larger minor");
      step.residue_cofactors[row] = lhs;
    }
    out.push_back(std::move(step));
    running_ideal.push_back(e.value);
  }
  return out;
}

// --------------------------------------------------- coefficient restriction

PseudoSingularCertificate restrict_certificate(const RingPtr& poly_ring,
                                               const std::vector<RingElement>& seq,
                                               const PseudoSingularCertificate& cert,
                                               size_t n_vars, RingPtr* out_ring) {
  if (!poly_ring->is_polynomial()) fail(Err::UnsupportedRing, "needs a polynomial ring");
  if (n_vars != poly_ring->var_count())
    fail(Err::NotVariableTail, "the variable tail must cover every ring variable");
  if (seq.size() < n_vars) fail(Err::NotVariableTail, "sequence shorter than the variable tail");
  size_t r = seq.size() - n_vars;
  for (size_t i = 0; i < n_vars; ++i)
    if (!poly_ring->eq(seq[r + i], poly_ring->variable(i)))
      fail(Err::NotVariableTail, "trailing entries must be the ring variables, in order");
  for (size_t i = 0; i < r; ++i)
    for (const auto& t : seq[i].terms())
      if (total_degree(t.first) > 0)
        fail(Err::NotVariableTail, "leading entries must be coefficient-ring constants");
  if (!psc_verifies(poly_ring, seq, cert))
    fail(Err::NotACollapse, "input certificate does not evaluate to zero");

  // target ring from the coefficient structure
  RingDescriptor td;
  switch (poly_ring->descriptor().coeff) {
    case CoeffKind::IntegerCoeff:
      td = RingDescriptor::integers();
      break;
    case CoeffKind::PrimeField:
    case CoeffKind::ModularCoeff:
      td = RingDescriptor::modular(poly_ring->descriptor().modulus);
      break;
    case CoeffKind::Rationals:
      fail(Err::UnsupportedRing, "rational coefficient ring has no standalone carrier");
  }
  RingPtr target = Ring::make(td);
  if (out_ring) *out_ring = target;

  Monomial p(n_vars, 0);
  for (size_t i = 0; i < n_vars; ++i) p[i] = cert.m[r + i];

  PseudoSingularCertificate out;
  out.m.assign(cert.m.begin(), cert.m.begin() + r);
  std::vector<RingElement> tseq;
  for (size_t i = 0; i < r; ++i) {
    mpq_class c = poly_ring->coefficient(seq[i], Monomial(n_vars, 0));
    tseq.push_back(target->from_mpq(c));
  }
  for (size_t i = 0; i < r; ++i) {
    mpq_class c = poly_ring->coefficient(cert.a[i], p);
    out.a.push_back(target->from_mpq(c));
  }
  if (!psc_verifies(target, tseq, out))
    fail(Err::InternalMismatch, "restricted certificate failed to verify");
  return out;
}

}  // namespace krull
