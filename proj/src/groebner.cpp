#include "krull/groebner.hpp"

#include <algorithm>
#include <tuple>

namespace krull {

namespace {

// ---------------------------------------------------------------- the engine
//
// Polynomials are kept as term vectors sorted descending in the active
// order. Every tracked polynomial carries its representation over the input
// generators so positive answers come out certified.

struct TP {
  PolyTerms p;
  std::vector<PolyTerms> rep;
  unsigned sugar = 0;
};

class Engine {
 public:
  Engine(RingPtr ring, MonOrder order, const Caps& caps)
      : ring_(std::move(ring)), order_(order), caps_(caps) {}

  const RingPtr& ring() const { return ring_; }

  PolyTerms to_op(const RingElement& e) const {
    PolyTerms t = e.terms();
    sort_terms(t);
    return t;
  }

  RingElement to_elem(const PolyTerms& t) const { return ring_->make_poly(t); }

  void sort_terms(PolyTerms& t) const {
    std::sort(t.begin(), t.end(),
              [&](const auto& a, const auto& b) { return mono_cmp(a.first, b.first, order_) > 0; });
  }

  void check_degree(const PolyTerms& t) const {
    for (const auto& term : t)
      if (total_degree(term.first) > caps_.groebner_degree)
        fail(Err::ResourceExhausted,
             "intermediate degree exceeded cap " + std::to_string(caps_.groebner_degree));
  }

  // dst (+/-)= c * x^m * src
  PolyTerms addmul(const PolyTerms& dst, const mpq_class& c, const Monomial& m,
                   const PolyTerms& src, bool subtract) const {
    PolyTerms shifted;
    shifted.reserve(src.size());
    for (const auto& t : src) {
      mpq_class nc = ring_->cmul(c, t.second);
      if (subtract) nc = ring_->cneg(nc);
      if (nc != 0) shifted.emplace_back(mono_mul(m, t.first), std::move(nc));
    }
    PolyTerms out;
    out.reserve(dst.size() + shifted.size());
    size_t i = 0, j = 0;
    while (i < dst.size() && j < shifted.size()) {
      int cc = mono_cmp(dst[i].first, shifted[j].first, order_);
      if (cc > 0) {
        out.push_back(dst[i++]);
      } else if (cc < 0) {
        out.push_back(shifted[j++]);
      } else {
        mpq_class s = ring_->cadd(dst[i].second, shifted[j].second);
        if (s != 0) out.emplace_back(dst[i].first, std::move(s));
        ++i, ++j;
      }
    }
    while (i < dst.size()) out.push_back(dst[i++]);
    while (j < shifted.size()) out.push_back(shifted[j++]);
    return out;
  }

  /* Full normal form of f against basis. In combination mode the invariant
     is p = sum rep.input (GB construction); otherwise the invariant is
     f_original = p + sum rep.input (membership). */
  void reduce(TP& f, const std::vector<TP>& basis, bool combination_mode) const {
    size_t pos = 0;
    while (pos < f.p.size()) {
      bool reduced = false;
      for (const auto& g : basis) {
        if (g.p.empty()) continue;
        if (!mono_divides(g.p[0].first, f.p[pos].first)) continue;
        // leading coefficients in the basis are 1
        mpq_class c = f.p[pos].second;
        Monomial m = mono_div(f.p[pos].first, g.p[0].first);
        f.p = addmul(f.p, c, m, g.p, /*subtract=*/true);
        for (size_t j = 0; j < f.rep.size(); ++j)
          f.rep[j] = addmul(f.rep[j], c, m, g.rep[j], /*subtract=*/combination_mode);
        f.sugar = std::max(f.sugar, g.sugar + total_degree(m));
        // the degree cap bounds basis construction, not membership queries
        if (combination_mode) check_degree(f.p);
        reduced = true;
        break;
      }
      if (!reduced) ++pos;
    }
  }

  void normalize(TP& f) const {
    if (f.p.empty()) return;
    auto inv = ring_->cinv(f.p[0].second);
    if (!inv) fail(Err::UnsupportedRing, "leading coefficient not invertible");
    if (*inv == 1) return;
    for (auto& t : f.p) t.second = ring_->cmul(t.second, *inv);
    for (auto& r : f.rep)
      for (auto& t : r) t.second = ring_->cmul(t.second, *inv);
  }

  std::vector<TP> buchberger(const std::vector<RingElement>& input) const {
    size_t n = input.size();
    std::vector<TP> basis;
    for (size_t i = 0; i < n; ++i) {
      TP t;
      t.p = to_op(input[i]);
      if (t.p.empty()) continue;
      t.rep.assign(n, {});
      t.rep[i] = {{Monomial(ring_->var_count(), 0), mpq_class(1)}};
      t.sugar = total_degree(t.p[0].first);
      for (const auto& term : t.p) t.sugar = std::max(t.sugar, total_degree(term.first));
      normalize(t);
      basis.push_back(std::move(t));
    }

    struct Pair {
      unsigned sugar;
      unsigned lcm_deg;
      size_t i, j;
      bool operator<(const Pair& o) const {
        return std::tie(sugar, lcm_deg, i, j) < std::tie(o.sugar, o.lcm_deg, o.i, o.j);
      }
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](size_t jnew) {
      for (size_t i = 0; i < jnew; ++i) {
        const Monomial& a = basis[i].p[0].first;
        const Monomial& b = basis[jnew].p[0].first;
        Monomial l = mono_lcm(a, b);
        // product criterion
        if (l == mono_mul(a, b)) continue;
        unsigned sugar = std::max(basis[i].sugar + total_degree(mono_div(l, a)),
                                  basis[jnew].sugar + total_degree(mono_div(l, b)));
        pairs.push_back({sugar, total_degree(l), i, jnew});
      }
    };
    for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    while (!pairs.empty()) {
      auto it = std::min_element(pairs.begin(), pairs.end());
      Pair pr = *it;
      pairs.erase(it);
      const TP& gi = basis[pr.i];
      const TP& gj = basis[pr.j];
      Monomial l = mono_lcm(gi.p[0].first, gj.p[0].first);
      TP s;
      s.rep.assign(basis[0].rep.size(), {});
      s.p = addmul({}, mpq_class(1), mono_div(l, gi.p[0].first), gi.p, false);
      s.p = addmul(s.p, mpq_class(1), mono_div(l, gj.p[0].first), gj.p, true);
      for (size_t k = 0; k < s.rep.size(); ++k) {
        s.rep[k] = addmul({}, mpq_class(1), mono_div(l, gi.p[0].first), gi.rep[k], false);
        s.rep[k] = addmul(s.rep[k], mpq_class(1), mono_div(l, gj.p[0].first), gj.rep[k], true);
      }
      s.sugar = pr.sugar;
      check_degree(s.p);
      reduce(s, basis, /*combination_mode=*/true);
      if (s.p.empty()) continue;
      normalize(s);
      basis.push_back(std::move(s));
      push_pairs(basis.size() - 1);
    }

    // auto-reduction: every element fully reduced against the others
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < basis.size(); ++i) {
        TP f = std::move(basis[i]);
        std::vector<TP> others;
        others.reserve(basis.size() - 1);
        for (size_t k = 0; k < basis.size(); ++k)
          if (k != i) others.push_back(basis[k]);
        PolyTerms before = f.p;
        reduce(f, others, /*combination_mode=*/true);
        if (f.p.empty()) {
          basis.erase(basis.begin() + i);
          changed = true;
          break;
        }
        normalize(f);
        if (f.p != before) changed = true;
        basis[i] = std::move(f);
      }
    }
    std::sort(basis.begin(), basis.end(), [&](const TP& a, const TP& b) {
      return mono_cmp(a.p[0].first, b.p[0].first, order_) < 0;
    });
    return basis;
  }

 private:
  RingPtr ring_;
  MonOrder order_;
  Caps caps_;
};

}  // namespace

GroebnerBasis groebner(const std::vector<RingElement>& gens, MonOrder order, const Caps& caps) {
  if (gens.empty()) fail(Err::InputError, "groebner: empty generator list");
  RingPtr ring = gens[0].ring();
  if (!ring->is_field_poly())
    fail(Err::UnsupportedRing, "groebner requires field coefficients (Q or F_p)");
  Engine e(ring, order, caps);
  auto basis = e.buchberger(gens);
  GroebnerBasis out;
  out.ring = ring;
  out.order = order;
  out.input = gens;
  for (const auto& b : basis) {
    out.basis.push_back(e.to_elem(b.p));
    std::vector<RingElement> rep;
    rep.reserve(b.rep.size());
    for (const auto& r : b.rep) rep.push_back(e.to_elem(r));
    out.reps.push_back(std::move(rep));
  }
  return out;
}

// ------------------------------------------------------------- PreparedIdeal

PreparedIdeal::PreparedIdeal(RingPtr ring, std::vector<RingElement> gens, const Caps& caps)
    : ring_(std::move(ring)), gens_(std::move(gens)), caps_(caps) {
  for (const auto& g : gens_)
    if (!g.ring()->same(*ring_)) fail(Err::ShapeMismatch, "generator from a different ring");
  switch (ring_->descriptor().kind) {
    case RingKind::Integers: {
      std::vector<mpz_class> zs;
      for (const auto& g : gens_) zs.push_back(g.zval());
      std::tie(zgcd_, zbezout_) = gcd_combination(zs);
      break;
    }
    case RingKind::Modular: {
      std::vector<mpz_class> zs;
      for (const auto& g : gens_) zs.push_back(g.zval());
      zs.push_back(ring_->descriptor().modulus);
      std::tie(zgcd_, zbezout_) = gcd_combination(zs);
      break;
    }
    case RingKind::Polynomial: {
      if (!ring_->is_field_poly())
        fail(Err::UnsupportedRing, "ideal oracles need Q or F_p coefficients");
      auto gb = std::make_shared<GroebnerBasis>(groebner(gens_, MonOrder::Grevlex, caps_));
      gb_ = gb;
      break;
    }
  }
}

std::optional<std::vector<RingElement>> PreparedIdeal::member(const RingElement& f) const {
  std::optional<std::vector<RingElement>> out;
  switch (ring_->descriptor().kind) {
    case RingKind::Integers: {
      if (zgcd_ == 0) {
        if (f.zval() != 0) return std::nullopt;
        out = std::vector<RingElement>(gens_.size(), ring_->zero());
        break;
      }
      if (f.zval() % zgcd_ != 0) return std::nullopt;
      mpz_class q = f.zval() / zgcd_;
      std::vector<RingElement> cof;
      for (size_t i = 0; i < gens_.size(); ++i) cof.push_back(ring_->from_mpz(zbezout_[i] * q));
      out = std::move(cof);
      break;
    }
    case RingKind::Modular: {
      if (zgcd_ == 0) {
        // all generators and the modulus were zero: impossible (modulus >= 2)
        return std::nullopt;
      }
      if (f.zval() % zgcd_ != 0) return std::nullopt;
      mpz_class q = f.zval() / zgcd_;
      std::vector<RingElement> cof;
      for (size_t i = 0; i < gens_.size(); ++i) cof.push_back(ring_->from_mpz(zbezout_[i] * q));
      out = std::move(cof);
      break;
    }
    case RingKind::Polynomial: {
      Engine e(ring_, gb_->order, caps_);
      // rebuild tracked basis from the stored representations
      std::vector<TP> basis;
      for (size_t i = 0; i < gb_->basis.size(); ++i) {
        TP t;
        t.p = e.to_op(gb_->basis[i]);
        for (const auto& r : gb_->reps[i]) t.rep.push_back(e.to_op(r));
        t.sugar = 0;
        basis.push_back(std::move(t));
      }
      TP q;
      q.p = e.to_op(f);
      q.rep.assign(gens_.size(), {});
      e.reduce(q, basis, /*combination_mode=*/false);
      if (!q.p.empty()) return std::nullopt;
      std::vector<RingElement> cof;
      for (const auto& r : q.rep) cof.push_back(e.to_elem(r));
      out = std::move(cof);
      break;
    }
  }
  // every positive answer is certified: re-evaluate before returning
  RingElement acc = ring_->zero();
  for (size_t i = 0; i < gens_.size(); ++i) acc = ring_->add(acc, ring_->mul((*out)[i], gens_[i]));
  if (!ring_->eq(acc, f)) fail(Err::InternalMismatch, "membership witness failed to re-evaluate");
  return out;
}

bool PreparedIdeal::radical_contains(const RingElement& f) const {
  switch (ring_->descriptor().kind) {
    case RingKind::Integers:
    case RingKind::Modular: {
      if (zgcd_ == 0) return f.zval() == 0;
      if (zgcd_ == 1) return true;
      mpz_class rad = radical_of_integer(zgcd_);
      return f.zval() % rad == 0;
    }
    case RingKind::Polynomial: {
      if (ring_->is_zero(f)) return true;
      // Rabinowitsch device: 1 in <I, 1 - t*f> in one more variable
      auto vars = ring_->descriptor().vars;
      std::string fresh = "t";
      for (int k = 0; std::find(vars.begin(), vars.end(), fresh) != vars.end(); ++k)
        fresh = "t" + std::to_string(k);
      std::vector<std::string> evars;
      evars.push_back(fresh);
      evars.insert(evars.end(), vars.begin(), vars.end());
      RingDescriptor ed = ring_->descriptor();
      ed.vars = evars;
      RingPtr ext = Ring::make(ed);
      auto lift = [&](const RingElement& x) {
        PolyTerms t;
        for (const auto& term : x.terms()) {
          Monomial m;
          m.reserve(evars.size());
          m.push_back(0);
          m.insert(m.end(), term.first.begin(), term.first.end());
          t.emplace_back(std::move(m), term.second);
        }
        return ext->make_poly(std::move(t));
      };
      std::vector<RingElement> egens;
      for (const auto& g : gens_) egens.push_back(lift(g));
      egens.push_back(ext->sub(ext->one(), ext->mul(ext->variable(0), lift(f))));
      GroebnerBasis gb = groebner(egens, MonOrder::Grevlex, caps_);
      for (const auto& b : gb.basis)
        if (!b.terms().empty() && total_degree(b.terms()[0].first) == 0) return true;
      return false;
    }
  }
  return false;
}

std::optional<std::pair<unsigned, std::vector<RingElement>>> PreparedIdeal::radical_power(
    const RingElement& f) const {
  if (!radical_contains(f)) return std::nullopt;
  // doubling then bisection for the minimal exponent
  unsigned hi = 1;
  std::optional<std::vector<RingElement>> hit;
  for (;;) {
    hit = member(ring_->pow(f, hi));
    if (hit) break;
    if (hi > caps_.radical_exponent)
      fail(Err::ResourceExhausted,
           "radical exponent exceeded cap " + std::to_string(caps_.radical_exponent));
    hi *= 2;
  }
  unsigned lo = hi / 2;  // member(f^lo) failed (or lo == 0)
  while (hi - lo > 1) {
    unsigned mid = lo + (hi - lo) / 2;
    if (auto w = member(ring_->pow(f, mid))) {
      hi = mid;
      hit = std::move(w);
    } else {
      lo = mid;
    }
  }
  return std::make_pair(hi, std::move(*hit));
}

std::vector<RingElement> PreparedIdeal::saturation(const RingElement& g) const {
  if (ring_->is_zero(g)) fail(Err::ZeroDenominator, "saturation by zero");
  switch (ring_->descriptor().kind) {
    case RingKind::Integers: {
      if (zgcd_ == 0) return {ring_->zero()};
      mpz_class d = zgcd_;
      for (;;) {
        mpz_class c;
        mpz_gcd(c.get_mpz_t(), d.get_mpz_t(), g.zval().get_mpz_t());
        if (c <= 1) break;
        d /= c;
      }
      return {ring_->from_mpz(d)};
    }
    case RingKind::Modular: {
      mpz_class d = zgcd_;  // includes the modulus
      // strip every factor shared with any power of g (lift)
      mpz_class gl = g.zval();
      for (;;) {
        mpz_class c;
        mpz_gcd(c.get_mpz_t(), d.get_mpz_t(), gl.get_mpz_t());
        if (c <= 1) break;
        d /= c;
      }
      return {ring_->from_mpz(d)};
    }
    case RingKind::Polynomial: {
      auto vars = ring_->descriptor().vars;
      std::string fresh = "t";
      for (int k = 0; std::find(vars.begin(), vars.end(), fresh) != vars.end(); ++k)
        fresh = "t" + std::to_string(k);
      std::vector<std::string> evars;
      evars.push_back(fresh);
      evars.insert(evars.end(), vars.begin(), vars.end());
      RingDescriptor ed = ring_->descriptor();
      ed.vars = evars;
      RingPtr ext = Ring::make(ed);
      auto lift = [&](const RingElement& x) {
        PolyTerms t;
        for (const auto& term : x.terms()) {
          Monomial m;
          m.reserve(evars.size());
          m.push_back(0);
          m.insert(m.end(), term.first.begin(), term.first.end());
          t.emplace_back(std::move(m), term.second);
        }
        return ext->make_poly(std::move(t));
      };
      std::vector<RingElement> egens;
      bool all_zero = true;
      for (const auto& gen : gens_) {
        if (!ring_->is_zero(gen)) all_zero = false;
        egens.push_back(lift(gen));
      }
      if (all_zero) return {ring_->zero()};  // domain: (0 : g^inf) = 0
      egens.push_back(ext->sub(ext->one(), ext->mul(ext->variable(0), lift(g))));
      GroebnerBasis gb = groebner(egens, MonOrder::Lex, caps_);
      std::vector<RingElement> out;
      for (const auto& b : gb.basis) {
        bool has_t = false;
        for (const auto& term : b.terms())
          if (term.first[0] > 0) {
            has_t = true;
            break;
          }
        if (has_t) continue;
        PolyTerms back;
        for (const auto& term : b.terms())
          back.emplace_back(Monomial(term.first.begin() + 1, term.first.end()), term.second);
        out.push_back(ring_->make_poly(std::move(back)));
      }
      if (out.empty()) out.push_back(ring_->zero());
      return out;
    }
  }
  return {};
}

// ------------------------------------------------------------ public wrappers

std::optional<MembershipWitness> ideal_member(const RingElement& f, const Ideal& I,
                                              const Caps& caps) {
  PreparedIdeal P(I.ring(), I.gens, caps);
  auto c = P.member(f);
  if (!c) return std::nullopt;
  return MembershipWitness{std::move(*c)};
}

std::optional<RadicalWitness> radical_member(const RingElement& f, const Ideal& I,
                                             const Caps& caps) {
  PreparedIdeal P(I.ring(), I.gens, caps);
  auto r = P.radical_power(f);
  if (!r) return std::nullopt;
  return RadicalWitness{r->first, MembershipWitness{std::move(r->second)}};
}

Ideal saturate(const Ideal& I, const RingElement& g, const Caps& caps) {
  PreparedIdeal P(I.ring(), I.gens, caps);
  return Ideal(P.saturation(g));
}

bool same_ideal(const Ideal& a, const Ideal& b, const Caps& caps) {
  PreparedIdeal Pa(a.ring(), a.gens, caps);
  PreparedIdeal Pb(b.ring(), b.gens, caps);
  for (const auto& g : a.gens)
    if (!Pb.member(g)) return false;
  for (const auto& g : b.gens)
    if (!Pa.member(g)) return false;
  return true;
}

}  // namespace krull
