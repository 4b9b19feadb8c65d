#include "krull/rings.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace krull {

const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidDescriptor: return "InvalidDescriptor";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::UnsupportedRing: return "UnsupportedRing";
    case Err::ResourceExhausted: return "ResourceExhausted";
    case Err::ZeroDenominator: return "ZeroDenominator";
    case Err::NotACollapse: return "NotACollapse";
    case Err::CapExceeded: return "CapExceeded";
    case Err::NotADependence: return "NotADependence";
    case Err::LeadingNotMonic: return "LeadingNotMonic";
    case Err::BoundTooLow: return "BoundTooLow";
    case Err::MalformedDecomposition: return "MalformedDecomposition";
    case Err::NotLocalCollapse: return "NotLocalCollapse";
    case Err::NotComaximal: return "NotComaximal";
    case Err::MalformedFraction: return "MalformedFraction";
    case Err::MalformedWitness: return "MalformedWitness";
    case Err::NotExpressible: return "NotExpressible";
    case Err::NotAnnihilator: return "NotAnnihilator";
    case Err::CoefficientEscapesIdeal: return "CoefficientEscapesIdeal";
    case Err::PreconditionBreach: return "PreconditionBreach";
    case Err::NotARelation: return "NotARelation";
    case Err::SaturationRefutes: return "SaturationRefutes";
    case Err::NoUnitCoefficient: return "NoUnitCoefficient";
    case Err::NotVariableTail: return "NotVariableTail";
    case Err::InternalMismatch: return "InternalMismatch";
    case Err::InputError: return "InputError";
  }
  return "UnknownError";
}

// ---------------------------------------------------------------- descriptor

RingDescriptor RingDescriptor::integers() { return RingDescriptor{}; }

RingDescriptor RingDescriptor::modular(const mpz_class& n) {
  RingDescriptor d;
  d.kind = RingKind::Modular;
  d.modulus = n;
  return d;
}

RingDescriptor RingDescriptor::poly_q(std::vector<std::string> vars) {
  RingDescriptor d;
  d.kind = RingKind::Polynomial;
  d.coeff = CoeffKind::Rationals;
  d.vars = std::move(vars);
  return d;
}

RingDescriptor RingDescriptor::poly_fp(const mpz_class& p, std::vector<std::string> vars) {
  RingDescriptor d;
  d.kind = RingKind::Polynomial;
  d.coeff = CoeffKind::PrimeField;
  d.modulus = p;
  d.vars = std::move(vars);
  return d;
}

RingDescriptor RingDescriptor::poly_z(std::vector<std::string> vars) {
  RingDescriptor d;
  d.kind = RingKind::Polynomial;
  d.coeff = CoeffKind::IntegerCoeff;
  d.vars = std::move(vars);
  return d;
}

RingDescriptor RingDescriptor::poly_zmod(const mpz_class& n, std::vector<std::string> vars) {
  RingDescriptor d;
  d.kind = RingKind::Polynomial;
  d.coeff = CoeffKind::ModularCoeff;
  d.modulus = n;
  d.vars = std::move(vars);
  return d;
}

bool RingDescriptor::operator==(const RingDescriptor& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case RingKind::Integers: return true;
    case RingKind::Modular: return modulus == o.modulus;
    case RingKind::Polynomial:
      if (coeff != o.coeff || vars != o.vars) return false;
      if (coeff == CoeffKind::PrimeField || coeff == CoeffKind::ModularCoeff)
        return modulus == o.modulus;
      return true;
  }
  return false;
}

namespace {

bool prime_by_trial_division(const mpz_class& p) {
  if (p < 2) return false;
  if (p == 2) return true;
  if (mpz_even_p(p.get_mpz_t())) return false;
  mpz_class d = 3;
  while (d * d <= p) {
    if (p % d == 0) return false;
    d += 2;
    // big inputs: hand over to the library test once trial division has
    // cleared all small factors
    if (d > 1000000) return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
  }
  return true;
}

bool identifier_ok(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

// ----------------------------------------------------------------- monomials

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

int mono_cmp(const Monomial& a, const Monomial& b, MonOrder order) {
  if (order == MonOrder::Lex) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;  // smaller exponent at the back wins
  }
  return 0;
}

// ------------------------------------------------------------------- element

static const PolyTerms kEmptyTerms;

const PolyTerms& RingElement::terms() const { return poly_ ? *poly_ : kEmptyTerms; }

bool RingElement::operator==(const RingElement& o) const {
  if (!ring_ || !o.ring_) return ring_ == o.ring_;
  if (!ring_->same(*o.ring_)) return false;
  return ring_->eq(*this, o);
}

int RingElement::cmp(const RingElement& a, const RingElement& b) {
  if (a.is_poly() || b.is_poly()) {
    const PolyTerms& ta = a.terms();
    const PolyTerms& tb = b.terms();
    size_t n = std::min(ta.size(), tb.size());
    for (size_t i = 0; i < n; ++i) {
      int c = mono_cmp(ta[i].first, tb[i].first, MonOrder::Grevlex);
      if (c != 0) return c;
      if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
  }
  return ::cmp(a.z_, b.z_);
}

// ---------------------------------------------------------------------- ring

RingPtr Ring::make(const RingDescriptor& d) {
  switch (d.kind) {
    case RingKind::Integers: break;
    case RingKind::Modular:
      if (d.modulus < 2) fail(Err::InvalidDescriptor, "modulus must be >= 2");
      break;
    case RingKind::Polynomial: {
      if (d.vars.empty()) fail(Err::InvalidDescriptor, "polynomial ring needs at least one variable");
      for (const auto& v : d.vars)
        if (!identifier_ok(v)) fail(Err::InvalidDescriptor, "bad variable name '" + v + "'");
      auto sorted = d.vars;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(Err::InvalidDescriptor, "duplicate variable names");
      if (d.coeff == CoeffKind::PrimeField && !prime_by_trial_division(d.modulus))
        fail(Err::InvalidDescriptor, d.modulus.get_str() + " is not prime");
      if (d.coeff == CoeffKind::ModularCoeff && d.modulus < 2)
        fail(Err::InvalidDescriptor, "modulus must be >= 2");
      break;
    }
  }
  return RingPtr(new Ring(d));
}

RingElement Ring::wrap_z(mpz_class v) const {
  RingElement e;
  e.ring_ = shared_from_this();
  if (desc_.kind == RingKind::Modular) {
    mpz_class r = v % desc_.modulus;
    if (r < 0) r += desc_.modulus;
    e.z_ = r;
  } else {
    e.z_ = std::move(v);
  }
  return e;
}

RingElement Ring::wrap_poly(PolyTerms t) const {
  RingElement e;
  e.ring_ = shared_from_this();
  e.poly_ = std::make_shared<const PolyTerms>(std::move(t));
  return e;
}

RingElement Ring::zero() const {
  if (desc_.kind == RingKind::Polynomial) return wrap_poly({});
  return wrap_z(0);
}

RingElement Ring::one() const { return from_int(1); }

RingElement Ring::from_int(long v) const { return from_mpz(mpz_class(v)); }

RingElement Ring::from_mpz(const mpz_class& v) const {
  if (desc_.kind == RingKind::Polynomial) {
    mpq_class c = cnormalize(mpq_class(v));
    if (c == 0) return wrap_poly({});
    return wrap_poly({{Monomial(desc_.vars.size(), 0), c}});
  }
  return wrap_z(v);
}

RingElement Ring::from_mpq(const mpq_class& v) const {
  if (v.get_den() == 1) return from_mpz(v.get_num());
  switch (desc_.kind) {
    case RingKind::Integers:
      fail(Err::ZeroDenominator, "non-integer rational in Z");
    case RingKind::Modular: {
      mpz_class inv;
      if (!mpz_invert(inv.get_mpz_t(), v.get_den().get_mpz_t(), desc_.modulus.get_mpz_t()))
        fail(Err::ZeroDenominator, "denominator not invertible mod " + desc_.modulus.get_str());
      return wrap_z(v.get_num() * inv);
    }
    case RingKind::Polynomial: {
      mpq_class c = cnormalize(v);
      if (c == 0) return wrap_poly({});
      return wrap_poly({{Monomial(desc_.vars.size(), 0), c}});
    }
  }
  fail(Err::InvalidDescriptor, "unreachable");
}

RingElement Ring::variable(size_t i) const {
  if (desc_.kind != RingKind::Polynomial) fail(Err::UnsupportedRing, "no variables in this ring");
  if (i >= desc_.vars.size()) fail(Err::InputError, "variable index out of range");
  Monomial m(desc_.vars.size(), 0);
  m[i] = 1;
  return wrap_poly({{m, cnormalize(mpq_class(1))}});
}

RingElement Ring::monomial(const Monomial& m, const mpq_class& coeff) const {
  if (desc_.kind != RingKind::Polynomial) fail(Err::UnsupportedRing, "monomial in non-polynomial ring");
  if (m.size() != desc_.vars.size()) fail(Err::ShapeMismatch, "monomial length != variable count");
  mpq_class c = cnormalize(coeff);
  if (c == 0) return wrap_poly({});
  return wrap_poly({{m, c}});
}

RingElement Ring::make_poly(PolyTerms terms) const {
  if (desc_.kind != RingKind::Polynomial) fail(Err::UnsupportedRing, "make_poly in non-polynomial ring");
  // canonicalize: sort descending grevlex, merge, drop zeros
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return mono_cmp(a.first, b.first, MonOrder::Grevlex) > 0;
  });
  PolyTerms out;
  for (auto& t : terms) {
    if (t.first.size() != desc_.vars.size()) fail(Err::ShapeMismatch, "bad exponent vector length");
    if (!out.empty() && out.back().first == t.first) {
      out.back().second = cadd(out.back().second, t.second);
      if (out.back().second == 0) out.pop_back();
    } else {
      mpq_class c = cnormalize(t.second);
      if (c != 0) out.emplace_back(std::move(t.first), std::move(c));
    }
  }
  return wrap_poly(std::move(out));
}

// --------------------------------------------------------- coefficient field

mpq_class Ring::cnormalize(const mpq_class& c) const {
  switch (desc_.coeff) {
    case CoeffKind::Rationals:
      return c;
    case CoeffKind::IntegerCoeff:
      if (c.get_den() != 1) fail(Err::ZeroDenominator, "fractional coefficient over Z");
      return c;
    case CoeffKind::PrimeField:
    case CoeffKind::ModularCoeff: {
      mpz_class num = c.get_num() % desc_.modulus;
      if (num < 0) num += desc_.modulus;
      if (c.get_den() != 1) {
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), desc_.modulus.get_mpz_t()))
          fail(Err::ZeroDenominator, "denominator not invertible in coefficient ring");
        num = (num * inv) % desc_.modulus;
        if (num < 0) num += desc_.modulus;
      }
      return mpq_class(num);
    }
  }
  return c;
}

mpq_class Ring::cadd(const mpq_class& a, const mpq_class& b) const { return cnormalize(a + b); }
mpq_class Ring::cmul(const mpq_class& a, const mpq_class& b) const { return cnormalize(a * b); }
mpq_class Ring::cneg(const mpq_class& a) const { return cnormalize(-a); }

std::optional<mpq_class> Ring::cinv(const mpq_class& a) const {
  if (a == 0) return std::nullopt;
  switch (desc_.coeff) {
    case CoeffKind::Rationals:
      return mpq_class(1) / a;
    case CoeffKind::IntegerCoeff:
      if (a == 1 || a == -1) return a;
      return std::nullopt;
    case CoeffKind::PrimeField:
    case CoeffKind::ModularCoeff: {
      mpz_class inv;
      if (!mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), desc_.modulus.get_mpz_t()))
        return std::nullopt;
      return mpq_class(inv);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- arithmetic

RingElement Ring::add(const RingElement& a, const RingElement& b) const {
  if (!a.ring()->same(*this) || !b.ring()->same(*this)) fail(Err::ShapeMismatch, "cross-ring add");
  if (desc_.kind != RingKind::Polynomial) return wrap_z(a.zval() + b.zval());
  const PolyTerms& ta = a.terms();
  const PolyTerms& tb = b.terms();
  PolyTerms out;
  out.reserve(ta.size() + tb.size());
  size_t i = 0, j = 0;
  while (i < ta.size() && j < tb.size()) {
    int c = mono_cmp(ta[i].first, tb[j].first, MonOrder::Grevlex);
    if (c > 0) {
      out.push_back(ta[i++]);
    } else if (c < 0) {
      out.push_back(tb[j++]);
    } else {
      mpq_class s = cadd(ta[i].second, tb[j].second);
      if (s != 0) out.emplace_back(ta[i].first, std::move(s));
      ++i, ++j;
    }
  }
  while (i < ta.size()) out.push_back(ta[i++]);
  while (j < tb.size()) out.push_back(tb[j++]);
  return wrap_poly(std::move(out));
}

RingElement Ring::neg(const RingElement& a) const {
  if (!a.ring()->same(*this)) fail(Err::ShapeMismatch, "cross-ring neg");
  if (desc_.kind != RingKind::Polynomial) return wrap_z(-a.zval());
  PolyTerms out = a.terms();
  for (auto& t : out) t.second = cneg(t.second);
  return wrap_poly(std::move(out));
}

RingElement Ring::sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
  if (!a.ring()->same(*this) || !b.ring()->same(*this)) fail(Err::ShapeMismatch, "cross-ring mul");
  if (desc_.kind != RingKind::Polynomial) return wrap_z(a.zval() * b.zval());
  const PolyTerms& ta = a.terms();
  const PolyTerms& tb = b.terms();
  if (ta.empty() || tb.empty()) return wrap_poly({});
  PolyTerms acc;
  for (const auto& x : ta) {
    PolyTerms row;
    row.reserve(tb.size());
    for (const auto& y : tb) {
      mpq_class c = cmul(x.second, y.second);
      if (c != 0) row.emplace_back(mono_mul(x.first, y.first), std::move(c));
    }
    // merge row into acc (both grevlex-descending)
    PolyTerms merged;
    merged.reserve(acc.size() + row.size());
    size_t i = 0, j = 0;
    while (i < acc.size() && j < row.size()) {
      int c = mono_cmp(acc[i].first, row[j].first, MonOrder::Grevlex);
      if (c > 0) {
        merged.push_back(std::move(acc[i++]));
      } else if (c < 0) {
        merged.push_back(std::move(row[j++]));
      } else {
        mpq_class s = cadd(acc[i].second, row[j].second);
        if (s != 0) merged.emplace_back(acc[i].first, std::move(s));
        ++i, ++j;
      }
    }
    while (i < acc.size()) merged.push_back(std::move(acc[i++]));
    while (j < row.size()) merged.push_back(std::move(row[j++]));
    acc = std::move(merged);
  }
  return wrap_poly(std::move(acc));
}

RingElement Ring::pow(const RingElement& a, unsigned long e) const {
  RingElement r = one();
  RingElement base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

bool Ring::is_zero(const RingElement& a) const {
  if (desc_.kind != RingKind::Polynomial) return a.zval() == 0;
  return a.terms().empty();
}

bool Ring::is_one(const RingElement& a) const { return eq(a, one()); }

bool Ring::eq(const RingElement& a, const RingElement& b) const {
  if (desc_.kind != RingKind::Polynomial) return a.zval() == b.zval();
  return a.terms() == b.terms();
}

std::optional<RingElement> Ring::divide(const RingElement& a, const RingElement& b) const {
  if (is_zero(b)) {
    if (is_zero(a)) return one();
    return std::nullopt;
  }
  switch (desc_.kind) {
    case RingKind::Integers: {
      if (a.zval() % b.zval() == 0) return wrap_z(a.zval() / b.zval());
      return std::nullopt;
    }
    case RingKind::Modular: {
      // solve b*x = a (mod n)
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b.zval().get_mpz_t(),
                 desc_.modulus.get_mpz_t());
      if (a.zval() % g != 0) return std::nullopt;
      mpz_class x = (a.zval() / g) * s;
      return wrap_z(x);
    }
    case RingKind::Polynomial: {
      // leading-term division in grevlex; remainder must vanish
      RingElement rem = a;
      PolyTerms q;
      const PolyTerms& tb = b.terms();
      while (!rem.terms().empty()) {
        const auto& lr = rem.terms().front();
        const auto& lb = tb.front();
        if (!mono_divides(lb.first, lr.first)) return std::nullopt;
        auto inv = cinv(lb.second);
        mpq_class c;
        if (inv) {
          c = cmul(lr.second, *inv);
        } else {
          // integer-like coefficients: need exact coefficient division
          mpq_class ratio = lr.second / lb.second;
          if (ratio.get_den() != 1) return std::nullopt;
          c = cnormalize(ratio);
        }
        Monomial m = mono_div(lr.first, lb.first);
        q.emplace_back(m, c);
        rem = sub(rem, mul(monomial(m, c), b));
      }
      return make_poly(std::move(q));
    }
  }
  return std::nullopt;
}

RingElement Ring::evaluate(const RingElement& poly, const std::vector<RingElement>& values,
                           const RingPtr& target) const {
  if (desc_.kind != RingKind::Polynomial) fail(Err::UnsupportedRing, "evaluate on non-polynomial");
  if (values.size() != desc_.vars.size()) fail(Err::ShapeMismatch, "evaluate: wrong value count");
  RingElement acc = target->zero();
  for (const auto& t : poly.terms()) {
    RingElement term = target->from_mpq(t.second);
    for (size_t i = 0; i < values.size(); ++i)
      if (t.first[i]) term = target->mul(term, target->pow(values[i], t.first[i]));
    acc = target->add(acc, term);
  }
  return acc;
}

mpq_class Ring::coefficient(const RingElement& a, const Monomial& m) const {
  for (const auto& t : a.terms())
    if (t.first == m) return t.second;
  return mpq_class(0);
}

// ------------------------------------------------------------------ printing

std::string Ring::to_string(const RingElement& a) const {
  if (desc_.kind != RingKind::Polynomial) return a.zval().get_str();
  const PolyTerms& ts = a.terms();
  if (ts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : ts) {
    mpq_class c = t.second;
    bool negative = c < 0;
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    mpq_class mag = negative ? mpq_class(-c) : c;
    bool any_var = total_degree(t.first) > 0;
    if (mag != 1 || !any_var) {
      os << mag.get_num().get_str();
      if (mag.get_den() != 1) os << "/" << mag.get_den().get_str();
      if (any_var) os << "*";
    }
    bool started = false;
    for (size_t i = 0; i < t.first.size(); ++i) {
      if (!t.first[i]) continue;
      if (started) os << "*";
      os << desc_.vars[i];
      if (t.first[i] > 1) os << "^" << t.first[i];
      started = true;
    }
  }
  return os.str();
}

// ------------------------------------------------------------------ operators

RingElement operator+(const RingElement& a, const RingElement& b) { return a.ring()->add(a, b); }
RingElement operator-(const RingElement& a, const RingElement& b) { return a.ring()->sub(a, b); }
RingElement operator*(const RingElement& a, const RingElement& b) { return a.ring()->mul(a, b); }
RingElement operator-(const RingElement& a) { return a.ring()->neg(a); }

// ------------------------------------------------------------- ideal, monoid

Ideal::Ideal(std::vector<RingElement> g) : gens(std::move(g)) {
  if (gens.empty()) fail(Err::InputError, "ideal needs at least one generator");
  for (const auto& x : gens)
    if (!x.ring()->same(*gens[0].ring())) fail(Err::ShapeMismatch, "ideal generators from different rings");
}

RingElement monoid_product(const Ring& ring, const std::vector<RingElement>& gens) {
  RingElement p = ring.one();
  for (const auto& g : gens) p = ring.mul(p, g);
  return p;
}

}  // namespace krull
