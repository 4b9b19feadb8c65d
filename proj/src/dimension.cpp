#include "krull/dimension.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace krull {

namespace {

// binomial(n, k) exactly
mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// exponent vectors of length len with total degree exactly d, lexicographic
void compositions(unsigned len, unsigned d, std::vector<uint32_t>& cur, size_t pos,
                  const std::function<void(const std::vector<uint32_t>&)>& fn) {
  if (pos + 1 == len) {
    cur[pos] = d;
    fn(cur);
    return;
  }
  for (unsigned v = 0; v <= d; ++v) {
    cur[pos] = v;
    compositions(len, d - v, cur, pos + 1, fn);
  }
}

}  // namespace

std::optional<DependenceResult> find_algebraic_dependence(const RingPtr& ring,
                                                          const std::vector<RingElement>& seq,
                                                          unsigned m_override, const Caps& caps) {
  if (!ring->is_field_poly())
    fail(Err::UnsupportedRing, "algebraic dependence needs field coefficients");
  size_t n = ring->var_count();
  size_t L = seq.size();
  if (L < n + 1) fail(Err::InputError, "need at least #vars + 1 sequence entries");

  unsigned d = 1;
  for (const auto& s : seq)
    for (const auto& t : s.terms()) d = std::max(d, total_degree(t.first));

  // the counting bound: smallest m with C(m+L, L) > C(dm+n, n)
  unsigned proof_bound = 1;
  while (binom(proof_bound + L, L) <= binom(size_t(d) * proof_bound + n, n)) ++proof_bound;

  unsigned hi = m_override ? m_override : proof_bound;

  // formal ring K[t1..tL]
  std::vector<std::string> tvars;
  for (size_t i = 0; i < L; ++i) tvars.push_back("t" + std::to_string(i + 1));
  RingDescriptor fd = ring->descriptor();
  fd.vars = tvars;
  RingPtr formal = Ring::make(fd);

  // incremental Gaussian elimination over the evaluations, tracking each
  // pivot row as a combination of the columns seen so far
  struct Pivot {
    Monomial lead;                       // grevlex-maximal monomial of the reduced value
    std::map<Monomial, mpq_class> val;   // reduced evaluation
    std::map<size_t, mpq_class> comb;    // combination over column indices
  };
  std::vector<Pivot> pivots;
  std::vector<Monomial> columns;  // alpha per column index

  auto reduce_against = [&](std::map<Monomial, mpq_class>& val,
                            std::map<size_t, mpq_class>& comb) {
    for (const auto& pv : pivots) {
      auto it = val.find(pv.lead);
      if (it == val.end() || it->second == 0) continue;
      mpq_class c = it->second;  // pivot value is normalized to lead 1
      for (const auto& [mono, coef] : pv.val) {
        mpq_class& slot = val[mono];
        slot = ring->cadd(slot, ring->cneg(ring->cmul(c, coef)));
        if (slot == 0) val.erase(mono);
      }
      for (const auto& [idx, coef] : pv.comb) {
        mpq_class& slot = comb[idx];
        slot = ring->cadd(slot, ring->cneg(ring->cmul(c, coef)));
        if (slot == 0) comb.erase(idx);
      }
    }
  };

  std::optional<DependenceResult> result;
  for (unsigned deg = 0; deg <= hi && !result; ++deg) {
    std::vector<uint32_t> cur(L, 0);
    std::vector<std::vector<uint32_t>> alphas;
    compositions(L, deg, cur, 0, [&](const std::vector<uint32_t>& a) { alphas.push_back(a); });
    std::sort(alphas.begin(), alphas.end());
    for (const auto& alpha : alphas) {
      // evaluate prod seq_i^{alpha_i}
      RingElement value = ring->one();
      for (size_t i = 0; i < L; ++i)
        if (alpha[i]) value = ring->mul(value, ring->pow(seq[i], alpha[i]));
      std::map<Monomial, mpq_class> val;
      for (const auto& t : value.terms()) val[t.first] = t.second;
      size_t col = columns.size();
      columns.push_back(Monomial(alpha.begin(), alpha.end()));
      std::map<size_t, mpq_class> comb;
      comb[col] = mpq_class(1);
      reduce_against(val, comb);
      if (val.empty()) {
        // kernel vector found: Q = sum comb[idx] * t^columns[idx]
        PolyTerms terms;
        for (const auto& [idx, coef] : comb) terms.emplace_back(columns[idx], coef);
        RingElement q = formal->make_poly(std::move(terms));
        // normalize: lex-least monomial gets coefficient 1
        const PolyTerms& ts = q.terms();
        size_t least = 0;
        for (size_t i = 1; i < ts.size(); ++i)
          if (mono_cmp(ts[i].first, ts[least].first, MonOrder::Lex) < 0) least = i;
        auto inv = formal->cinv(ts[least].second);
        q = formal->mul(q, formal->from_mpq(*inv));
        result = DependenceResult{formal, q, deg};
        break;
      }
      // new pivot: normalize lead coefficient to 1
      Pivot pv;
      pv.lead = val.rbegin()->first;  // std::map ordered ascending; rbegin is grevlex-free...
      // pick the grevlex-largest monomial explicitly
      for (const auto& [mono, coef] : val)
        if (mono_cmp(mono, pv.lead, MonOrder::Grevlex) > 0) pv.lead = mono;
      mpq_class leadc = val.at(pv.lead);
      auto linv = ring->cinv(leadc);
      for (auto& [mono, coef] : val) coef = ring->cmul(coef, *linv);
      for (auto& [idx, coef] : comb) coef = ring->cmul(coef, *linv);
      pv.val = std::move(val);
      pv.comb = std::move(comb);
      pivots.push_back(std::move(pv));
      if (pivots.size() > caps.search_budget)
        fail(Err::ResourceExhausted, "dependence search budget exhausted");
    }
  }
  if (!result && m_override) return std::nullopt;  // the override was too low
  if (!result) fail(Err::BoundTooLow, "no dependence found below the counting bound");
  return result;
}

PseudoSingularCertificate dependence_to_certificate(const RingPtr& ring,
                                                    const std::vector<RingElement>& seq,
                                                    const DependenceResult& dep) {
  const RingPtr& F = dep.formal_ring;
  const RingElement& q = dep.q;
  if (F->is_zero(q)) fail(Err::NotADependence, "zero polynomial");
  if (!ring->is_zero(F->evaluate(q, seq, ring)))
    fail(Err::NotADependence, "Q(seq) does not evaluate to zero");
  size_t L = seq.size();
  const PolyTerms& ts = q.terms();
  size_t least = 0;
  for (size_t i = 1; i < ts.size(); ++i)
    if (mono_cmp(ts[i].first, ts[least].first, MonOrder::Lex) < 0) least = i;
  const Monomial& alpha = ts[least].first;
  if (ts[least].second != 1) fail(Err::LeadingNotMonic, "lex-least coefficient is not 1");

  // group every other monomial by the first index where it exceeds alpha
  std::vector<PolyTerms> groups(L);
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i == least) continue;
    const Monomial& beta = ts[i].first;
    size_t g = L;
    for (size_t k = 0; k < L; ++k) {
      if (beta[k] == alpha[k]) continue;
      if (beta[k] > alpha[k]) g = k;
      break;
    }
    if (g == L) fail(Err::NotADependence, "monomial below the lex-least head");
    // divide by t_1^{a_1} .. t_{g-1}^{a_{g-1}} t_g^{a_g + 1}
    Monomial rest(L, 0);
    rest[g] = beta[g] - alpha[g] - 1;
    for (size_t k = g + 1; k < L; ++k) rest[k] = beta[k];
    groups[g].emplace_back(std::move(rest), ts[i].second);
  }

  PseudoSingularCertificate psc;
  psc.m.assign(alpha.begin(), alpha.end());
  psc.a.reserve(L);
  for (size_t g = 0; g < L; ++g) {
    RingElement rg = F->make_poly(PolyTerms(groups[g]));
    psc.a.push_back(F->evaluate(rg, seq, ring));
  }
  if (!psc_verifies(ring, seq, psc))
    fail(Err::InternalMismatch, "dependence decomposition failed to verify");
  return psc;
}

DimReport dim_at_most(const RingPtr& ring, unsigned ell,
                      const std::vector<std::vector<RingElement>>& testset, const Caps& caps) {
  DimReport rep;
  rep.bound = ell;
  rep.theorem_route = ring->is_field_poly() && size_t(ell) >= ring->var_count();
  rep.consistent = true;
  for (const auto& seq : testset) {
    if (seq.size() != size_t(ell) + 1)
      fail(Err::InputError, "testset sequences must have length ell + 1");
    SequenceReport entry;
    entry.seq = seq;
    if (rep.theorem_route) {
      auto dep = find_algebraic_dependence(ring, seq, 0, caps);
      entry.cert = dependence_to_certificate(ring, seq, *dep);
      entry.collapses = true;
    } else {
      entry.collapses = chain_collapses(elementary_chain(ring, seq), caps);
      if (entry.collapses) {
        try {
          entry.cert = pseudo_singular(ring, seq, caps);
        } catch (const KrullError& e) {
          if (e.code() != Err::ResourceExhausted) throw;
          entry.cert_capped = true;
        }
      }
    }
    if (!entry.collapses) rep.consistent = false;
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace krull
