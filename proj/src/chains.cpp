#include "krull/chains.hpp"

namespace krull {

IdealisticChain::IdealisticChain(RingPtr r, std::vector<IdealisticPrime> p)
    : ring(std::move(r)), primes(std::move(p)) {
  if (primes.empty()) fail(Err::InputError, "idealistic chain needs at least one idealistic prime");
  for (const auto& pr : primes) {
    for (const auto& x : pr.J)
      if (!x.ring()->same(*ring)) fail(Err::ShapeMismatch, "chain element from a different ring");
    for (const auto& x : pr.U)
      if (!x.ring()->same(*ring)) fail(Err::ShapeMismatch, "chain element from a different ring");
  }
}

RingElement eval_nested(const IdealisticChain& chain, const CollapseCertificate& cert) {
  const RingPtr& R = chain.ring;
  if (cert.levels.size() != chain.primes.size())
    fail(Err::ShapeMismatch, "certificate level count != chain length + 1");
  RingElement acc;  // set at the innermost level
  for (size_t k = chain.primes.size(); k-- > 0;) {
    const auto& prime = chain.primes[k];
    const auto& lvl = cert.levels[k];
    if (lvl.exponents.size() != prime.U.size())
      fail(Err::ShapeMismatch, "exponent count != U generator count at level " + std::to_string(k));
    if (lvl.cofactors.size() != prime.J.size())
      fail(Err::ShapeMismatch, "cofactor count != J generator count at level " + std::to_string(k));
    RingElement u = R->one();
    for (size_t i = 0; i < prime.U.size(); ++i)
      if (lvl.exponents[i]) u = R->mul(u, R->pow(prime.U[i], lvl.exponents[i]));
    RingElement j = R->zero();
    for (size_t i = 0; i < prime.J.size(); ++i)
      j = R->add(j, R->mul(lvl.cofactors[i], prime.J[i]));
    if (k + 1 == chain.primes.size())
      acc = R->add(u, j);
    else
      acc = R->add(R->mul(u, acc), j);
  }
  return acc;
}

IdealisticChain elementary_chain(const RingPtr& ring, const std::vector<RingElement>& seq) {
  std::vector<IdealisticPrime> primes;
  if (seq.empty()) {
    primes.push_back({{ring->zero()}, {ring->one()}});
    return IdealisticChain(ring, std::move(primes));
  }
  primes.push_back({{ring->zero()}, {seq[0]}});
  for (size_t i = 1; i < seq.size(); ++i) primes.push_back({{seq[i - 1]}, {seq[i]}});
  primes.push_back({{seq.back()}, {ring->one()}});
  return IdealisticChain(ring, std::move(primes));
}

CollapseCertificate psc_to_certificate(const IdealisticChain& elementary,
                                       const PseudoSingularCertificate& psc) {
  const RingPtr& R = elementary.ring;
  size_t l = elementary.length();
  if (psc.m.size() != l || psc.a.size() != l)
    fail(Err::ShapeMismatch, "pseudo-singular data length != sequence length");
  CollapseCertificate cert;
  cert.levels.resize(l + 1);
  for (size_t k = 0; k <= l; ++k) {
    cert.levels[k].exponents.assign(elementary.primes[k].U.size(), 0);
    cert.levels[k].cofactors.assign(elementary.primes[k].J.size(), R->zero());
  }
  for (size_t i = 1; i <= l; ++i) {
    cert.levels[i - 1].exponents[0] = psc.m[i - 1];  // power of x_i at level i-1
    cert.levels[i].cofactors[0] = psc.a[i - 1];      // a_i x_i at level i
  }
  return cert;
}

std::optional<PseudoSingularCertificate> certificate_to_psc(const IdealisticChain& elementary,
                                                            const CollapseCertificate& cert) {
  size_t l = elementary.length();
  if (cert.levels.size() != l + 1) return std::nullopt;
  PseudoSingularCertificate psc;
  psc.m.resize(l);
  psc.a.resize(l);
  for (size_t i = 1; i <= l; ++i) {
    if (cert.levels[i - 1].exponents.size() != 1 || cert.levels[i].cofactors.size() != 1)
      return std::nullopt;
    psc.m[i - 1] = cert.levels[i - 1].exponents[0];
    psc.a[i - 1] = cert.levels[i].cofactors[0];
  }
  return psc;
}

bool psc_verifies(const RingPtr& ring, const std::vector<RingElement>& seq,
                  const PseudoSingularCertificate& psc) {
  if (psc.m.size() != seq.size() || psc.a.size() != seq.size()) return false;
  RingElement acc = ring->one();
  for (size_t i = seq.size(); i-- > 0;) {
    // x_i^{m_i} * acc + a_i x_i, innermost acc = 1 + a_l x_l
    if (i + 1 == seq.size())
      acc = ring->add(ring->one(), ring->mul(psc.a[i], seq[i]));
    else
      acc = ring->add(ring->mul(ring->pow(seq[i + 1], psc.m[i + 1]), acc),
                      ring->mul(psc.a[i], seq[i]));
  }
  if (!seq.empty()) acc = ring->mul(ring->pow(seq[0], psc.m[0]), acc);
  return ring->is_zero(acc);
}

CompletedChain complete_chain(const IdealisticChain& chain) {
  CompletedChain out;
  std::vector<RingElement> acc;
  size_t l = chain.length();
  for (const auto& p : chain.primes) {
    acc.insert(acc.end(), p.J.begin(), p.J.end());
    out.ideal_levels.push_back(acc);
  }
  out.monoid_levels.resize(l + 1);
  for (size_t k = 0; k <= l; ++k) {
    // V_k = U'_k ... U'_l + sum_{i=k..l} (U'_k ... U'_{i-1}) I_i
    CompletedChain::VTerm head;
    head.monoid_from = k;
    head.monoid_to = l + 1;
    out.monoid_levels[k].push_back(head);
    for (size_t i = k; i <= l; ++i) {
      CompletedChain::VTerm t;
      t.monoid_from = k;
      t.monoid_to = i;
      t.ideal_index = i;
      out.monoid_levels[k].push_back(t);
    }
  }
  return out;
}

IdealisticChain with_in_ideal(const IdealisticChain& c, size_t level, const RingElement& x) {
  IdealisticChain out = c;
  if (level >= out.primes.size()) fail(Err::InputError, "level out of range");
  out.primes[level].J.push_back(x);
  return out;
}

IdealisticChain with_in_monoid(const IdealisticChain& c, size_t level, const RingElement& x) {
  IdealisticChain out = c;
  if (level >= out.primes.size()) fail(Err::InputError, "level out of range");
  out.primes[level].U.push_back(x);
  return out;
}

}  // namespace krull
