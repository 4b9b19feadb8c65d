#include "krull/collapse.hpp"

#include <algorithm>
#include <functional>

namespace krull {

RingElement CollapseAlgebra::pow(const RingElement& a, unsigned long e) const {
  RingElement r = one();
  RingElement base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

RingElement CollapseAlgebra::product(const std::vector<RingElement>& xs) const {
  RingElement p = one();
  for (const auto& x : xs) p = mul(p, x);
  return p;
}

// ----------------------------------------------------------------- RingAlgebra

RingAlgebra::RingAlgebra(RingPtr ring, const Caps& caps) : ring_(std::move(ring)), caps_(caps) {
  if (ring_->is_polynomial() && !ring_->is_field_poly())
    fail(Err::UnsupportedRing, "collapse oracles need Z, Z/n or field-coefficient polynomials");
}

RingElement RingAlgebra::add(const RingElement& a, const RingElement& b) const {
  return ring_->add(a, b);
}
RingElement RingAlgebra::mul(const RingElement& a, const RingElement& b) const {
  return ring_->mul(a, b);
}
RingElement RingAlgebra::neg(const RingElement& a) const { return ring_->neg(a); }
RingElement RingAlgebra::one() const { return ring_->one(); }
RingElement RingAlgebra::zero() const { return ring_->zero(); }
bool RingAlgebra::is_zero(const RingElement& a) const { return ring_->is_zero(a); }

std::vector<RingElement> RingAlgebra::saturation(const std::vector<RingElement>& gens,
                                                 const RingElement& p) const {
  auto g = gens.empty() ? std::vector<RingElement>{ring_->zero()} : gens;
  return PreparedIdeal(ring_, g, caps_).saturation(p);
}

bool RingAlgebra::radical_contains(const std::vector<RingElement>& gens,
                                   const RingElement& f) const {
  auto g = gens.empty() ? std::vector<RingElement>{ring_->zero()} : gens;
  return PreparedIdeal(ring_, g, caps_).radical_contains(f);
}

std::optional<std::pair<unsigned, std::vector<RingElement>>> RingAlgebra::radical_power(
    const std::vector<RingElement>& gens, const RingElement& f) const {
  auto g = gens.empty() ? std::vector<RingElement>{ring_->zero()} : gens;
  auto r = PreparedIdeal(ring_, g, caps_).radical_power(f);
  if (r && gens.empty()) r->second.clear();
  return r;
}

std::optional<std::vector<RingElement>> RingAlgebra::member_cofactors(
    const std::vector<RingElement>& gens, const RingElement& f) const {
  auto g = gens.empty() ? std::vector<RingElement>{ring_->zero()} : gens;
  auto r = PreparedIdeal(ring_, g, caps_).member(f);
  if (r && gens.empty()) r->clear();
  return r;
}

// ------------------------------------------------------------------ iteration

namespace {

struct LevelRun {
  std::vector<RingElement> tgens;  // S_{k-1} generators ++ J_k generators
  size_t j_offset = 0;             // where the J_k block starts
  RingElement p;                   // product of the U_k generators
};

/* The iterated construction: T_0 = <J_0>, S_k = (T_k : p_k^inf),
   T_{k+1} = S_k + <J_{k+1}>; the chain collapses iff p_l lies in the radical
   of T_l. Radicals are realized lazily: only the final test quotes one. */
std::vector<LevelRun> run_levels(const CollapseAlgebra& alg, const IdealisticChain& chain) {
  std::vector<LevelRun> runs;
  size_t l = chain.length();
  std::vector<RingElement> sat;  // generators of S_{k-1}
  for (size_t k = 0; k <= l; ++k) {
    LevelRun r;
    r.tgens = sat;
    r.j_offset = sat.size();
    for (const auto& g : chain.primes[k].J) r.tgens.push_back(g);
    r.p = alg.product(chain.primes[k].U);
    runs.push_back(r);
    if (k < l) {
      if (alg.is_zero(runs[k].p)) {
        sat = {alg.one()};  // 0 is in M(U_k): the saturation is the whole ring
      } else {
        sat = alg.saturation(runs[k].tgens, runs[k].p);
      }
    }
  }
  return runs;
}

}  // namespace

bool run_chain_collapses(const CollapseAlgebra& alg, const IdealisticChain& chain) {
  auto runs = run_levels(alg, chain);
  const LevelRun& last = runs.back();
  if (alg.is_zero(last.p)) return true;
  return alg.radical_contains(last.tgens, last.p);
}

std::pair<std::vector<RingElement>, RingElement> collapse_final_level(
    const CollapseAlgebra& alg, const IdealisticChain& chain) {
  auto runs = run_levels(alg, chain);
  return {runs.back().tgens, runs.back().p};
}

std::optional<CollapseCertificate> run_certify_collapse(const CollapseAlgebra& alg,
                                                        const IdealisticChain& chain,
                                                        const Caps& caps) {
  size_t l = chain.length();

  auto blank = [&](CollapseCertificate& cert) {
    cert.levels.resize(l + 1);
    for (size_t k = 0; k <= l; ++k) {
      cert.levels[k].exponents.assign(chain.primes[k].U.size(), 0);
      cert.levels[k].cofactors.assign(chain.primes[k].J.size(), alg.zero());
    }
  };

  // a vanishing monoid product collapses the chain on its own
  for (size_t k = 0; k <= l; ++k) {
    if (!chain.primes[k].U.empty() && alg.is_zero(alg.product(chain.primes[k].U))) {
      CollapseCertificate cert;
      blank(cert);
      cert.levels[k].exponents.assign(chain.primes[k].U.size(), 1);
      if (!alg.is_zero(eval_nested_alg(alg, chain, cert)))
        fail(Err::InternalMismatch, "degenerate certificate failed to evaluate to zero");
      return cert;
    }
  }

  auto runs = run_levels(alg, chain);
  auto rad = alg.radical_power(runs[l].tgens, runs[l].p);
  if (!rad) return std::nullopt;  // does not collapse

  CollapseCertificate cert;
  blank(cert);

  // level l: p_l^n = y + j-part with y in S_{l-1}
  cert.levels[l].exponents.assign(chain.primes[l].U.size(), rad->first);
  RingElement y = alg.zero();
  for (size_t i = 0; i < runs[l].tgens.size(); ++i) {
    const RingElement& c = rad->second[i];
    if (i < runs[l].j_offset)
      y = alg.add(y, alg.mul(c, runs[l].tgens[i]));
    else
      cert.levels[l].cofactors[i - runs[l].j_offset] = alg.neg(c);
  }

  // levels l-1 .. 0: find the least M with y * p_k^M in T_k, then split
  for (size_t k = l; k-- > 0;) {
    std::optional<std::vector<RingElement>> cof;
    unsigned m = 0;
    unsigned probe = 0;  // tries 0, 1, 2, 4, 8, ...
    for (;;) {
      cof = alg.member_cofactors(runs[k].tgens, alg.mul(y, alg.pow(runs[k].p, probe)));
      if (cof) {
        m = probe;
        break;
      }
      if (probe == 0)
        probe = 1;
      else if (probe * 2 > caps.membership_doubling)
        return std::nullopt;  // verdict stands; certificate exceeded the cap
      else
        probe *= 2;
    }
    if (m > 1) {  // bisect to the least exponent (reproducible output)
      unsigned lo = m / 2, hi = m;
      auto best = cof;
      while (hi - lo > 1) {
        unsigned mid = lo + (hi - lo) / 2;
        auto w = alg.member_cofactors(runs[k].tgens, alg.mul(y, alg.pow(runs[k].p, mid)));
        if (w) {
          hi = mid;
          best = std::move(w);
        } else {
          lo = mid;
        }
      }
      m = hi;
      cof = std::move(best);
    }
    cert.levels[k].exponents.assign(chain.primes[k].U.size(), m);
    RingElement next = alg.zero();
    for (size_t i = 0; i < runs[k].tgens.size(); ++i) {
      const RingElement& c = (*cof)[i];
      if (i < runs[k].j_offset)
        next = alg.add(next, alg.mul(c, runs[k].tgens[i]));
      else
        cert.levels[k].cofactors[i - runs[k].j_offset] = alg.neg(c);
    }
    y = next;
  }

  if (!alg.is_zero(eval_nested_alg(alg, chain, cert)))
    fail(Err::InternalMismatch, "back-substituted certificate failed to evaluate to zero");
  return cert;
}

RingElement eval_nested_alg(const CollapseAlgebra& alg, const IdealisticChain& chain,
                            const CollapseCertificate& cert) {
  if (cert.levels.size() != chain.primes.size())
    fail(Err::ShapeMismatch, "certificate level count != chain length + 1");
  RingElement acc;
  for (size_t k = chain.primes.size(); k-- > 0;) {
    const auto& prime = chain.primes[k];
    const auto& lvl = cert.levels[k];
    if (lvl.exponents.size() != prime.U.size() || lvl.cofactors.size() != prime.J.size())
      fail(Err::ShapeMismatch, "certificate shape does not match chain at level " + std::to_string(k));
    RingElement u = alg.one();
    for (size_t i = 0; i < prime.U.size(); ++i)
      if (lvl.exponents[i]) u = alg.mul(u, alg.pow(prime.U[i], lvl.exponents[i]));
    RingElement j = alg.zero();
    for (size_t i = 0; i < prime.J.size(); ++i)
      j = alg.add(j, alg.mul(lvl.cofactors[i], prime.J[i]));
    if (k + 1 == chain.primes.size())
      acc = alg.add(u, j);
    else
      acc = alg.add(alg.mul(u, acc), j);
  }
  return acc;
}

// -------------------------------------------------------------- public surface

bool chain_collapses(const IdealisticChain& chain, const Caps& caps) {
  RingAlgebra alg(chain.ring, caps);
  return run_chain_collapses(alg, chain);
}

std::optional<CollapseCertificate> certify_collapse(const IdealisticChain& chain,
                                                    const Caps& caps) {
  RingAlgebra alg(chain.ring, caps);
  return run_certify_collapse(alg, chain, caps);
}

bool in_saturated_ideal(const RingPtr& ring, const IdealisticPrime& p, const RingElement& x,
                        const Caps& caps) {
  IdealisticPrime q = p;
  q.U.push_back(x);
  return chain_collapses(IdealisticChain(ring, {q}), caps);
}

bool in_saturated_monoid(const RingPtr& ring, const IdealisticPrime& p, const RingElement& x,
                         const Caps& caps) {
  IdealisticPrime q = p;
  q.J.push_back(x);
  return chain_collapses(IdealisticChain(ring, {q}), caps);
}

// ---------------------------------------------------- pseudo-regular sequences

std::optional<PseudoSingularCertificate> psc_bounded_search(const RingPtr& ring,
                                                            const std::vector<RingElement>& seq,
                                                            const Caps& caps) {
  size_t l = seq.size();
  if (l == 0) {
    if (ring->is_zero(ring->one())) return PseudoSingularCertificate{};
    return std::nullopt;
  }
  uint64_t budget = caps.search_budget;
  unsigned bound = caps.search_exponent;

  // try one exponent vector: the expansion is linear in the cofactors,
  // prod x^m + sum_i (prod_{t<=i} x_t^{m_t}) x_i a_i, so the a_i come from a
  // single ideal-membership solve
  auto attempt = [&](const std::vector<unsigned>& m) -> std::optional<PseudoSingularCertificate> {
    std::vector<RingElement> coeffs(l);
    RingElement prefix = ring->one();
    for (size_t i = 0; i < l; ++i) {
      prefix = ring->mul(prefix, ring->pow(seq[i], m[i]));
      coeffs[i] = ring->mul(prefix, seq[i]);
    }
    if (auto w = ideal_member(ring->neg(prefix), Ideal(coeffs), caps)) {
      PseudoSingularCertificate psc{m, w->cofactors};
      if (psc_verifies(ring, seq, psc)) return psc;
    }
    return std::nullopt;
  };

  // smallest total exponent sum first, then lexicographic within one sum;
  // the exponent bound doubles when a round comes up empty (compositions
  // already covered by the previous bound are skipped)
  unsigned prev_bound = 0;
  for (unsigned round_bound = bound;; prev_bound = round_bound, round_bound *= 2) {
    for (unsigned s = 0; s <= round_bound * l; ++s) {
      std::vector<unsigned> m(l, 0);
      std::function<std::optional<PseudoSingularCertificate>(size_t, unsigned, bool)> rec =
          [&](size_t pos, unsigned rest, bool fresh) -> std::optional<PseudoSingularCertificate> {
        if (pos + 1 == l) {
          if (rest > round_bound) return std::nullopt;
          m[pos] = rest;
          if (!fresh && rest <= prev_bound) return std::nullopt;  // tried last round
          if (budget == 0) fail(Err::ResourceExhausted, "certificate search budget exhausted");
          --budget;
          try {
            return attempt(m);
          } catch (const KrullError& e) {
            if (e.code() == Err::UnsupportedRing) return std::nullopt;
            throw;
          }
        }
        for (unsigned v = 0; v <= std::min(round_bound, rest); ++v) {
          m[pos] = v;
          if (auto r = rec(pos + 1, rest - v, fresh || v > prev_bound)) return r;
        }
        return std::nullopt;
      };
      if (auto r = rec(0, s, round_bound == bound)) return r;
    }
    if (uint64_t(round_bound) * 2 * l > 64) return std::nullopt;  // past any desk scale
  }
}

std::optional<PseudoSingularCertificate> pseudo_singular(const RingPtr& ring,
                                                         const std::vector<RingElement>& seq,
                                                         const Caps& caps) {
  IdealisticChain chain = elementary_chain(ring, seq);
  if (!chain_collapses(chain, caps)) return std::nullopt;
  if (auto cert = certify_collapse(chain, caps)) {
    if (auto psc = certificate_to_psc(chain, *cert)) {
      if (psc_verifies(ring, seq, *psc)) return psc;
    }
  }
  if (auto psc = psc_bounded_search(ring, seq, caps)) return psc;
  fail(Err::ResourceExhausted, "sequence is pseudo singular but no certificate fit the caps");
}

bool pseudo_regular(const RingPtr& ring, const std::vector<RingElement>& seq, const Caps& caps) {
  return !chain_collapses(elementary_chain(ring, seq), caps);
}

// --------------------------------------------------------------- Rabinovitch

RabinovitchMerged rabinovitch_merge(const std::vector<RingElement>& J, const RingElement& x,
                                    const RabinovitchIn& in, const RabinovitchOut& out) {
  const RingPtr& R = x.ring();
  if (in.j1_cofactors.size() != J.size() || out.j2_cofactors.size() != J.size())
    fail(Err::ShapeMismatch, "cofactor lists must align with J");
  auto combine = [&](const std::vector<RingElement>& cof) {
    RingElement s = R->zero();
    for (size_t i = 0; i < J.size(); ++i) s = R->add(s, R->mul(cof[i], J[i]));
    return s;
  };
  RingElement j1 = combine(in.j1_cofactors);
  RingElement j2 = combine(out.j2_cofactors);
  // guards: u1 + j1 + a*x = 0 and u2*x^m + j2 = 0
  if (!R->is_zero(R->add(R->add(in.u1, j1), R->mul(in.a, x))))
    fail(Err::NotACollapse, "first input identity does not evaluate to zero");
  if (!R->is_zero(R->add(R->mul(out.u2, R->pow(x, out.m)), j2)))
    fail(Err::NotACollapse, "second input identity does not evaluate to zero");

  unsigned m = out.m;
  RabinovitchMerged merged;
  merged.u3 = R->mul(out.u2, R->pow(in.u1, m));
  // j3 = u2*((u1+j1)^m - u1^m) + (-a)^m j2; the first part factors through j1
  // as j1 * sum_{i>=1} C(m,i) u1^{m-i} j1^{i-1}
  RingElement series = R->zero();
  for (unsigned i = 1; i <= m; ++i) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), m, i);
    RingElement term = R->mul(R->from_mpz(c), R->pow(in.u1, m - i));
    term = R->mul(term, R->pow(j1, i - 1));
    series = R->add(series, term);
  }
  RingElement front = R->mul(out.u2, series);
  RingElement am = R->pow(R->neg(in.a), m);
  merged.j3_cofactors.resize(J.size());
  for (size_t i = 0; i < J.size(); ++i)
    merged.j3_cofactors[i] =
        R->add(R->mul(front, in.j1_cofactors[i]), R->mul(am, out.j2_cofactors[i]));
  merged.j3 = combine(merged.j3_cofactors);
  if (!R->is_zero(R->add(merged.u3, merged.j3)))
    fail(Err::InternalMismatch, "merged identity failed to evaluate to zero");
  return merged;
}

}  // namespace krull
