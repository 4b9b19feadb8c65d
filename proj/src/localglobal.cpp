#include "krull/localglobal.hpp"

namespace krull {

std::optional<ComaximalWitness> comaximal_check(const RingPtr& ring,
                                                const std::vector<MonoidSpec>& monoids,
                                                const std::vector<RingElement>& picks,
                                                const Caps& caps) {
  if (picks.size() != monoids.size()) fail(Err::ShapeMismatch, "one pick per monoid required");
  if (picks.empty()) fail(Err::InputError, "no monoids");
  auto w = ideal_member(ring->one(), Ideal(picks), caps);
  if (!w) return std::nullopt;
  RingElement combo = ring->zero();
  for (size_t i = 0; i < picks.size(); ++i)
    combo = ring->add(combo, ring->mul(w->cofactors[i], picks[i]));
  return ComaximalWitness{std::move(w->cofactors), combo};
}

CoverResult cover_witness(const std::vector<RingElement>& I, const std::vector<RingElement>& U,
                          const RingElement& a, const CoverX& xin, const CoverY& yin) {
  const RingPtr& R = a.ring();
  (void)U;
  if (xin.j1_cofactors.size() != I.size() || yin.j2_cofactors.size() != I.size())
    fail(Err::MalformedDecomposition, "cofactor lists must align with I");
  auto combine = [&](const std::vector<RingElement>& cof) {
    RingElement s = R->zero();
    for (size_t i = 0; i < I.size(); ++i) s = R->add(s, R->mul(cof[i], I[i]));
    return s;
  };
  RingElement j1 = combine(xin.j1_cofactors);
  RingElement j2 = combine(yin.j2_cofactors);
  CoverResult res;
  res.x = R->add(R->mul(xin.u1, R->pow(a, xin.k)), j1);
  res.y = R->sub(R->add(yin.u2, j2), R->mul(a, yin.z));

  if (xin.k == 0) {
    // x = u1 + j1 is already in S(I; U)
    res.x1 = R->one();
    res.y1 = R->zero();
    res.combination = res.x;
    res.u_part = xin.u1;
    res.j_cofactors = xin.j1_cofactors;
  } else {
    unsigned k = xin.k;
    // c^k - d^k = (c - d) * sum c^t d^{k-1-t} with c = u2 + j2, d = a*z
    RingElement c = R->add(yin.u2, j2);
    RingElement d = R->mul(a, yin.z);
    RingElement y2 = R->zero();
    for (unsigned t = 0; t < k; ++t)
      y2 = R->add(y2, R->mul(R->pow(c, t), R->pow(d, k - 1 - t)));
    res.x1 = R->pow(yin.z, k);
    res.y1 = R->mul(xin.u1, y2);
    res.combination = R->add(R->mul(res.x1, res.x), R->mul(res.y1, res.y));
    res.u_part = R->mul(xin.u1, R->pow(yin.u2, k));
    // (u2+j2)^k - u2^k = j2 * sum_{i>=1} C(k,i) u2^{k-i} j2^{i-1}
    RingElement series = R->zero();
    for (unsigned i = 1; i <= k; ++i) {
      mpz_class bin;
      mpz_bin_uiui(bin.get_mpz_t(), k, i);
      series = R->add(series, R->mul(R->from_mpz(bin),
                                     R->mul(R->pow(yin.u2, k - i), R->pow(j2, i - 1))));
    }
    RingElement zf = res.x1;  // z^k multiplies j1
    RingElement jf = R->mul(xin.u1, series);
    res.j_cofactors.resize(I.size());
    for (size_t i = 0; i < I.size(); ++i)
      res.j_cofactors[i] =
          R->add(R->mul(jf, yin.j2_cofactors[i]), R->mul(zf, xin.j1_cofactors[i]));
  }
  RingElement jpart = combine(res.j_cofactors);
  if (!R->eq(res.combination, R->add(res.u_part, jpart)))
    fail(Err::MalformedDecomposition, "combination does not decompose as monoid + ideal part");
  return res;
}

CollapseCertificate glue_collapse(const IdealisticChain& chain,
                                  const std::vector<LocalCollapse>& locals,
                                  const std::vector<RingElement>& comax_coefficients) {
  const RingPtr& R = chain.ring;
  if (locals.empty()) fail(Err::InputError, "no local data");
  if (comax_coefficients.size() != locals.size())
    fail(Err::ShapeMismatch, "one comaximal coefficient per local datum");

  RingElement combo = R->zero();
  for (size_t i = 0; i < locals.size(); ++i)
    combo = R->add(combo, R->mul(comax_coefficients[i], locals[i].denominator));
  if (!R->is_one(combo))
    fail(Err::NotComaximal, "sum a_i s_i = " + R->to_string(combo) + " != 1");

  size_t nlevels = chain.primes.size();
  // verify the numerator-cleared local equalities s_i * eval = 0
  for (const auto& loc : locals) {
    RingElement v = R->mul(loc.denominator, eval_nested(chain, loc.cert));
    if (!R->is_zero(v)) fail(Err::NotLocalCollapse, "s_i * eval_nested != 0");
  }

  // evaluated monoid parts u_{t,i}
  std::vector<std::vector<RingElement>> upart(locals.size(),
                                              std::vector<RingElement>(nlevels, R->one()));
  for (size_t i = 0; i < locals.size(); ++i)
    for (size_t t = 0; t < nlevels; ++t) {
      const auto& lvl = locals[i].cert.levels[t];
      for (size_t g = 0; g < chain.primes[t].U.size(); ++g)
        if (lvl.exponents[g])
          upart[i][t] = R->mul(upart[i][t], R->pow(chain.primes[t].U[g], lvl.exponents[g]));
    }

  CollapseCertificate out;
  out.levels.resize(nlevels);
  for (size_t t = 0; t < nlevels; ++t) {
    out.levels[t].exponents.assign(chain.primes[t].U.size(), 0);
    for (const auto& loc : locals)
      for (size_t g = 0; g < chain.primes[t].U.size(); ++g)
        out.levels[t].exponents[g] += loc.cert.levels[t].exponents[g];
    out.levels[t].cofactors.assign(chain.primes[t].J.size(), R->zero());
    for (size_t i = 0; i < locals.size(); ++i) {
      // beta = a_i * s_i * prod_{i' != i} prod_{t' >= t} u_{t',i'}
      RingElement beta = R->mul(comax_coefficients[i], locals[i].denominator);
      for (size_t i2 = 0; i2 < locals.size(); ++i2) {
        if (i2 == i) continue;
        for (size_t t2 = t; t2 < nlevels; ++t2) beta = R->mul(beta, upart[i2][t2]);
      }
      for (size_t g = 0; g < chain.primes[t].J.size(); ++g)
        out.levels[t].cofactors[g] =
            R->add(out.levels[t].cofactors[g], R->mul(beta, locals[i].cert.levels[t].cofactors[g]));
    }
  }
  if (!R->is_zero(eval_nested(chain, out)))
    fail(Err::InternalMismatch, "glued certificate failed to evaluate to zero");
  return out;
}

DenominatorClearing collapse_denominator(const IdealisticChain& chain,
                                         const LocalizedCertificate& local, const Caps& caps) {
  const RingPtr& R = chain.ring;
  if (local.exponents.size() != chain.primes.size() ||
      local.cofactors.size() != chain.primes.size())
    fail(Err::ShapeMismatch, "certificate level count != chain length + 1");

  // m = product of all denominators encountered
  RingElement m = R->one();
  for (const auto& lvl : local.cofactors)
    for (const auto& f : lvl) {
      if (R->is_zero(f.den)) fail(Err::MalformedFraction, "zero denominator");
      if (!R->is_one(f.den)) m = R->mul(m, f.den);
    }

  DenominatorClearing out;
  out.m = m;
  out.over_inverted.exponents = local.exponents;
  out.over_inverted.cofactors.resize(local.cofactors.size());

  // fractions as pairs value / m^power
  struct F {
    RingElement v;
    unsigned p;
  };
  auto fadd = [&](const F& a, const F& b) {
    unsigned c = std::max(a.p, b.p);
    return F{R->add(R->mul(a.v, R->pow(m, c - a.p)), R->mul(b.v, R->pow(m, c - b.p))), c};
  };
  auto fmul = [&](const F& a, const F& b) { return F{R->mul(a.v, b.v), a.p + b.p}; };

  std::vector<std::vector<F>> cof(local.cofactors.size());
  for (size_t t = 0; t < local.cofactors.size(); ++t) {
    if (local.cofactors[t].size() != chain.primes[t].J.size() ||
        local.exponents[t].size() != chain.primes[t].U.size())
      fail(Err::ShapeMismatch, "certificate shape does not match chain");
    for (const auto& fr : local.cofactors[t]) {
      if (R->is_one(fr.den)) {
        cof[t].push_back({fr.num, 0});
        out.over_inverted.cofactors[t].push_back({fr.num, R->one()});
      } else {
        auto rest = R->divide(m, fr.den);
        if (!rest) fail(Err::MalformedFraction, "denominator does not divide the product m");
        RingElement num = R->mul(fr.num, *rest);
        cof[t].push_back({num, 1});
        out.over_inverted.cofactors[t].push_back({num, m});
      }
    }
  }

  // nested evaluation with tracked powers of m
  F acc{R->zero(), 0};
  for (size_t k = chain.primes.size(); k-- > 0;) {
    F u{R->one(), 0};
    for (size_t g = 0; g < chain.primes[k].U.size(); ++g)
      if (local.exponents[k][g])
        u = fmul(u, F{R->pow(chain.primes[k].U[g], local.exponents[k][g]), 0});
    F j{R->zero(), 0};
    for (size_t g = 0; g < chain.primes[k].J.size(); ++g)
      j = fadd(j, fmul(cof[k][g], F{chain.primes[k].J[g], 0}));
    if (k + 1 == chain.primes.size())
      acc = fadd(u, j);
    else
      acc = fadd(fmul(u, acc), j);
  }

  // zero in R[1/m]: some power of m kills the numerator
  RingElement scaled = acc.v;
  unsigned t = 0;
  while (!R->is_zero(scaled)) {
    if (t >= caps.fraction_power)
      fail(Err::NotACollapse, "identity does not vanish in the localization");
    scaled = R->mul(scaled, m);
    ++t;
  }
  out.power = t;
  return out;
}

}  // namespace krull
