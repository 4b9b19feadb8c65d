#include "krull/lattice.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>

namespace krull::lattice {

size_t Presentation::gen_index(const std::string& name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == name) return i;
  fail(Err::InputError, "unknown lattice generator '" + name + "'");
}

namespace {

int popcount(GenSet s) { return std::popcount(s); }

bool subsumes(const Sequent& a, const Sequent& b) {  // a subsumes b
  return (a.lhs & ~b.lhs) == 0 && (a.rhs & ~b.rhs) == 0;
}

bool tautological(const Sequent& s) { return (s.lhs & s.rhs) != 0; }

void check_cap(const Presentation& p, const Caps& caps) {
  if (p.gens.size() > caps.lattice_generators || p.gens.size() > 31)
    fail(Err::CapExceeded, "presentation has " + std::to_string(p.gens.size()) +
                               " generators, cap is " + std::to_string(caps.lattice_generators));
}

}  // namespace

/* Saturation under the cut combination with subsumption: from (C1 |- D1, x)
   and (C2, x |- D2) derive (C1 u C2 |- D1 u D2) with x removed from the cut
   positions. Tautologies are never stored; queries treat them as derivable. */
ClosureTable close_entailment(const Presentation& p, const Caps& caps) {
  check_cap(p, caps);
  std::vector<Sequent> kept;
  std::deque<Sequent> queue;

  auto add = [&](Sequent s) {
    if (tautological(s)) return;
    for (const auto& k : kept)
      if (subsumes(k, s)) return;
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [&](const Sequent& k) { return subsumes(s, k); }),
               kept.end());
    kept.push_back(s);
    queue.push_back(s);
    if (kept.size() > 200000) fail(Err::CapExceeded, "sequent table blow-up");
  };

  for (const auto& ax : p.axioms) add(ax);

  while (!queue.empty()) {
    Sequent q = queue.front();
    queue.pop_front();
    // q may have been subsumed away meanwhile; resolving anyway is sound
    std::vector<Sequent> snapshot = kept;
    for (const auto& k : snapshot) {
      GenSet cut1 = q.rhs & k.lhs;  // resolve q (right) against k (left)
      for (GenSet bits = cut1; bits;) {
        GenSet x = bits & (~bits + 1);
        bits ^= x;
        add(Sequent{(q.lhs | k.lhs) & ~x, (q.rhs | k.rhs) & ~x});
      }
      GenSet cut2 = k.rhs & q.lhs;  // resolve k (right) against q (left)
      for (GenSet bits = cut2; bits;) {
        GenSet x = bits & (~bits + 1);
        bits ^= x;
        add(Sequent{(k.lhs | q.lhs) & ~x, (k.rhs | q.rhs) & ~x});
      }
    }
  }
  // canonical order for byte-stable serialization
  std::sort(kept.begin(), kept.end(), [](const Sequent& a, const Sequent& b) {
    return std::tie(a.lhs, a.rhs) < std::tie(b.lhs, b.rhs);
  });
  return ClosureTable(p.gens.size(), std::move(kept));
}

std::vector<GenSet> valid_assignments(const Presentation& p, const Caps& caps) {
  check_cap(p, caps);
  std::vector<GenSet> out;
  GenSet full = p.full_mask();
  for (GenSet v = 0;; ++v) {
    bool ok = true;
    for (const auto& ax : p.axioms) {
      if ((v & ax.lhs) == ax.lhs && (v & ax.rhs) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(v);
    if (v == full) break;
  }
  return out;
}

bool semantic_entails(const Presentation& p, GenSet a, GenSet b) {
  for (GenSet v : valid_assignments(p))
    if ((v & a) == a && (v & b) == 0) return false;
  return true;
}

// ------------------------------------------------------------------ elements

LatticeElement bottom() { return {}; }
LatticeElement top() { return {{GenSet(0)}}; }
LatticeElement gen_element(size_t i) { return {{GenSet(1) << i}}; }

namespace {

// every pick-union of the blocks; false from fn aborts
bool for_each_transversal(const std::vector<GenSet>& blocks, size_t idx, GenSet acc,
                          const std::function<bool(GenSet)>& fn) {
  if (idx == blocks.size()) return fn(acc);
  GenSet b = blocks[idx];
  if (b == 0) return true;  // an empty block: the join is 1, no transversals
  for (GenSet bits = b; bits;) {
    GenSet x = bits & (~bits + 1);
    bits ^= x;
    if (!for_each_transversal(blocks, idx + 1, acc | x, fn)) return false;
  }
  return true;
}

bool block_below(GenSet a, const std::vector<GenSet>& blocks, const ClosureTable& t) {
  return for_each_transversal(blocks, 0, 0, [&](GenSet tr) { return t.entails(a, tr); });
}

}  // namespace

bool leq(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t) {
  for (GenSet a : x.blocks)
    if (!block_below(a, y.blocks, t)) return false;
  return true;
}

bool same_element(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t) {
  return leq(x, y, t) && leq(y, x, t);
}

LatticeElement canonicalize(LatticeElement x, const ClosureTable& t) {
  // antichain: drop duplicated blocks and strict supersets
  std::sort(x.blocks.begin(), x.blocks.end(), [](GenSet a, GenSet b) {
    return std::make_pair(popcount(a), a) < std::make_pair(popcount(b), b);
  });
  x.blocks.erase(std::unique(x.blocks.begin(), x.blocks.end()), x.blocks.end());
  std::vector<GenSet> anti;
  for (GenSet a : x.blocks) {
    bool redundant = false;
    for (GenSet b : anti)
      if ((b & ~a) == 0) {  // b subset of a: meet over a is below meet over b
        redundant = true;
        break;
      }
    if (!redundant) anti.push_back(a);
  }
  // drop blocks already below the join of the others
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < anti.size(); ++i) {
      std::vector<GenSet> rest;
      rest.reserve(anti.size() - 1);
      for (size_t k = 0; k < anti.size(); ++k)
        if (k != i) rest.push_back(anti[k]);
      if (block_below(anti[i], rest, t)) {
        anti.erase(anti.begin() + i);
        changed = true;
        break;
      }
    }
  }
  std::sort(anti.begin(), anti.end(), [](GenSet a, GenSet b) {
    return std::make_pair(popcount(a), a) < std::make_pair(popcount(b), b);
  });
  return {anti};
}

LatticeElement meet(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t) {
  LatticeElement out;
  for (GenSet a : x.blocks)
    for (GenSet b : y.blocks) out.blocks.push_back(a | b);
  return canonicalize(std::move(out), t);
}

LatticeElement join(const LatticeElement& x, const LatticeElement& y, const ClosureTable& t) {
  LatticeElement out = x;
  out.blocks.insert(out.blocks.end(), y.blocks.begin(), y.blocks.end());
  return canonicalize(std::move(out), t);
}

// ----------------------------------------------------------------- quotients

Presentation quotient(const Presentation& p, const std::vector<LatticeElement>& J,
                      const std::vector<LatticeElement>& U) {
  Presentation q = p;
  for (const auto& e : J)
    for (GenSet a : e.blocks) q.axioms.push_back({a, 0});
  for (const auto& e : U)
    for_each_transversal(e.blocks, 0, 0, [&](GenSet tr) {
      q.axioms.push_back({0, tr});
      return true;
    });
  return q;
}

bool prime_collapse(const Presentation& p, const std::vector<LatticeElement>& J,
                    const std::vector<LatticeElement>& U, const Caps& caps) {
  Presentation q = quotient(p, J, U);
  return close_entailment(q, caps).entails(0, 0);
}

std::pair<bool, bool> saturate_prime(const Presentation& p, const std::vector<LatticeElement>& J,
                                     const std::vector<LatticeElement>& U,
                                     const LatticeElement& probe, const Caps& caps) {
  auto U2 = U;
  U2.push_back(probe);
  bool in_ideal = prime_collapse(p, J, U2, caps);
  auto J2 = J;
  J2.push_back(probe);
  bool in_filter = prime_collapse(p, J2, U, caps);
  return {in_ideal, in_filter};
}

// -------------------------------------------------------------------- chains

std::vector<LatticeElement> enumerate_elements(const Presentation& p, const Caps& caps) {
  check_cap(p, caps);
  std::vector<GenSet> valid = valid_assignments(p, caps);
  auto identity = [&](const LatticeElement& x) {
    std::vector<bool> bits(valid.size());
    for (size_t i = 0; i < valid.size(); ++i) {
      bool one = false;
      for (GenSet a : x.blocks)
        if ((valid[i] & a) == a) {
          one = true;
          break;
        }
      bits[i] = one;
    }
    return bits;
  };
  ClosureTable t = close_entailment(p, caps);
  std::map<std::vector<bool>, LatticeElement> seen;
  std::deque<LatticeElement> queue;
  auto push = [&](const LatticeElement& raw) {
    LatticeElement c = canonicalize(raw, t);
    auto id = identity(c);
    if (seen.count(id)) return;
    seen.emplace(std::move(id), c);
    queue.push_back(c);
    if (seen.size() > 20000) fail(Err::CapExceeded, "element enumeration blow-up");
  };
  push(bottom());
  push(top());
  for (size_t i = 0; i < p.gens.size(); ++i) push(gen_element(i));
  while (!queue.empty()) {
    LatticeElement x = queue.front();
    queue.pop_front();
    std::vector<LatticeElement> current;
    current.reserve(seen.size());
    for (const auto& [id, e] : seen) current.push_back(e);
    for (const auto& y : current) {
      push(meet(x, y, t));
      push(join(x, y, t));
    }
  }
  std::vector<LatticeElement> out;
  for (const auto& [id, e] : seen) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const LatticeElement& a, const LatticeElement& b) {
    return a.blocks < b.blocks;
  });
  return out;
}

namespace {

std::optional<std::vector<LatticeElement>> chain_collapse_impl(
    const ClosureTable& t, const std::vector<LatticeElement>& elems, const LatChain& chain) {
  auto meet_list = [&](const std::vector<LatticeElement>& xs) {
    LatticeElement acc = top();
    for (const auto& x : xs) acc = meet(acc, x, t);
    return acc;
  };
  auto join_list = [&](const std::vector<LatticeElement>& xs) {
    LatticeElement acc = bottom();
    for (const auto& x : xs) acc = join(acc, x, t);
    return acc;
  };

  size_t l = chain.primes.size() - 1;
  std::vector<LatticeElement> gs;  // greedy maxima of the ideals I_0..I_{l-1}
  LatticeElement prev = bottom();
  for (size_t k = 0; k < l; ++k) {
    LatticeElement uk = meet_list(chain.primes[k].U);
    LatticeElement target = join_list(chain.primes[k].J);
    if (k > 0) target = join(target, prev, t);
    LatticeElement g = bottom();
    for (const auto& x : elems)
      if (leq(meet(x, uk, t), target, t)) g = join(g, x, t);
    gs.push_back(g);
    prev = g;
  }
  LatticeElement ul = meet_list(chain.primes[l].U);
  LatticeElement target = join_list(chain.primes[l].J);
  if (l > 0) target = join(target, prev, t);
  if (!leq(ul, target, t)) return std::nullopt;
  return gs;
}

}  // namespace

std::optional<std::vector<LatticeElement>> lattice_chain_collapses(const Presentation& p,
                                                                   const LatChain& chain,
                                                                   const Caps& caps) {
  if (chain.primes.empty()) fail(Err::InputError, "empty chain");
  ClosureTable t = close_entailment(p, caps);
  std::vector<LatticeElement> elems = enumerate_elements(p, caps);
  return chain_collapse_impl(t, elems, chain);
}

std::vector<SpecPoint> spec_enumerate(const Presentation& p, const Caps& caps) {
  std::vector<GenSet> valid = valid_assignments(p, caps);
  GenSet full = p.full_mask();
  std::vector<SpecPoint> out;
  out.reserve(valid.size());
  for (GenSet v : valid) out.push_back({v, full & ~v});
  std::sort(out.begin(), out.end(), [](const SpecPoint& a, const SpecPoint& b) {
    return std::make_pair(-popcount(a.ideal), a.ideal) < std::make_pair(-popcount(b.ideal), b.ideal);
  });
  return out;
}

// ----------------------------------------------------------------------- Kr

KrPresentation::KrPresentation(Presentation base, unsigned ell, const Caps& caps)
    : base_(std::move(base)), ell_(ell), caps_(caps) {
  check_cap(base_, caps_);
  base_table_ = close_entailment(base_, caps_);
  base_elems_ = enumerate_elements(base_, caps_);
  for (unsigned i = 0; i <= ell_; ++i)
    for (const auto& g : base_.gens) gens_.push_back(std::to_string(i) + ":" + g);

  // phi_i must embed T and the chain phi_0 >= ... >= phi_l must decrease
  for (unsigned i = 0; i <= ell_; ++i)
    for (size_t a = 0; a < base_.gens.size(); ++a)
      for (size_t b = 0; b < base_.gens.size(); ++b) {
        bool in_t = base_table_.entails(GenSet(1) << a, GenSet(1) << b);
        bool in_kr = entails({{i, a}}, {{i, b}});
        if (in_t != in_kr)
          fail(Err::InternalMismatch, "phi_" + std::to_string(i) + " is not an embedding");
      }
  for (unsigned i = 0; i + 1 <= ell_; ++i)
    for (size_t a = 0; a < base_.gens.size(); ++a)
      if (!entails({{i + 1, a}}, {{i, a}}))
        fail(Err::InternalMismatch, "phi levels fail to decrease");
}

size_t KrPresentation::gen_index(unsigned level, size_t base_gen) const {
  return size_t(level) * base_.gens.size() + base_gen;
}

bool KrPresentation::entails(const std::vector<std::pair<unsigned, size_t>>& lhs,
                             const std::vector<std::pair<unsigned, size_t>>& rhs) const {
  LatChain chain;
  chain.primes.resize(ell_ + 1);
  for (const auto& [level, g] : lhs) {
    if (level > ell_ || g >= base_.gens.size()) fail(Err::InputError, "Kr generator out of range");
    chain.primes[level].U.push_back(gen_element(g));
  }
  for (const auto& [level, g] : rhs) {
    if (level > ell_ || g >= base_.gens.size()) fail(Err::InputError, "Kr generator out of range");
    chain.primes[level].J.push_back(gen_element(g));
  }
  bool ok = chain_collapse_impl(base_table_, base_elems_, chain).has_value();
  if (ok) {
    Sequent s{0, 0};
    for (const auto& [level, g] : lhs) s.lhs |= GenSet(1) << gen_index(level, g);
    for (const auto& [level, g] : rhs) s.rhs |= GenSet(1) << gen_index(level, g);
    if (std::find(queried_true_.begin(), queried_true_.end(), s) == queried_true_.end())
      queried_true_.push_back(s);
  }
  return ok;
}

Presentation KrPresentation::materialize() const {
  size_t n = gens_.size();
  if (n > caps_.lattice_generators)
    fail(Err::CapExceeded, "materialized Kr presentation would have " + std::to_string(n) +
                               " generators");
  if (n > 10) fail(Err::CapExceeded, "materialization over 4^" + std::to_string(n) + " sequents");
  auto unpack = [&](GenSet s) {
    std::vector<std::pair<unsigned, size_t>> out;
    for (size_t i = 0; i < n; ++i)
      if (s & (GenSet(1) << i))
        out.push_back({unsigned(i / base_.gens.size()), i % base_.gens.size()});
    return out;
  };
  std::vector<Sequent> axioms;
  GenSet full = n >= 32 ? ~GenSet(0) : (GenSet(1) << n) - 1;
  for (GenSet a = 0;; ++a) {
    for (GenSet b = 0;; ++b) {
      Sequent s{a, b};
      if (!tautological(s) && entails(unpack(a), unpack(b))) {
        bool redundant = false;
        for (const auto& k : axioms)
          if (subsumes(k, s)) {
            redundant = true;
            break;
          }
        if (!redundant) {
          axioms.erase(std::remove_if(axioms.begin(), axioms.end(),
                                      [&](const Sequent& k) { return subsumes(s, k); }),
                       axioms.end());
          axioms.push_back(s);
        }
      }
      if (b == full) break;
    }
    if (a == full) break;
  }
  std::sort(axioms.begin(), axioms.end(), [](const Sequent& x, const Sequent& y) {
    return std::tie(x.lhs, x.rhs) < std::tie(y.lhs, y.rhs);
  });
  return Presentation{gens_, axioms};
}

Presentation KrPresentation::queried_presentation() const {
  return Presentation{gens_, queried_true_};
}

KrPresentation kr_lattice(const Presentation& t, unsigned ell, const Caps& caps) {
  return KrPresentation(t, ell, caps);
}

// ----------------------------------------------------------------- dimension

DimensionResult lattice_dim_at_most(const Presentation& p, int ell, const Caps& caps) {
  DimensionResult res;
  ClosureTable t = close_entailment(p, caps);
  if (ell < 0) {
    res.holds = t.entails(0, 0);
    return res;
  }
  res.holds = true;
  if (p.gens.empty()) return res;  // no generator sequences to refute
  std::vector<LatticeElement> elems = enumerate_elements(p, caps);
  size_t len = size_t(ell) + 1;
  std::vector<size_t> seq(len, 0);
  // every sequence of generators (the generator reduction suffices)
  for (;;) {
    DimensionWitness w;
    w.seq = seq;
    LatticeElement prev_bound;  // a_{i-1} v x_{i-1}
    bool ok = true;
    for (size_t i = 0; i < len; ++i) {
      LatticeElement xi = gen_element(seq[i]);
      LatticeElement target = (i == 0) ? bottom() : prev_bound;
      LatticeElement ai = bottom();
      for (const auto& e : elems)
        if (leq(meet(e, xi, t), target, t)) ai = join(ai, e, t);
      w.a.push_back(ai);
      prev_bound = join(ai, xi, t);
    }
    if (!leq(top(), prev_bound, t)) ok = false;
    if (ok) {
      res.witnesses.push_back(std::move(w));
    } else {
      res.holds = false;
      res.refuting_seq = seq;
      return res;
    }
    // next sequence
    size_t pos = 0;
    while (pos < len) {
      if (++seq[pos] < p.gens.size()) break;
      seq[pos] = 0;
      ++pos;
    }
    if (pos == len) break;
    if (p.gens.empty()) break;
  }
  return res;
}

// ------------------------------------------------------------------ envelope

Presentation boolean_envelope(const Presentation& p, const Caps& caps) {
  size_t n = p.gens.size();
  if (2 * n > caps.lattice_generators)
    fail(Err::CapExceeded, "envelope needs " + std::to_string(2 * n) + " generators");
  Presentation env;
  env.gens = p.gens;
  for (const auto& g : p.gens) env.gens.push_back("~" + g);

  ClosureTable t = close_entailment(p, caps);
  std::vector<Sequent> seeds = t.minimal();
  for (size_t i = 0; i < n; ++i) seeds.push_back({GenSet(1) << i, GenSet(1) << i});

  auto bar = [&](GenSet s) { return s << n; };
  std::vector<Sequent> axioms;
  auto add = [&](Sequent s) {
    if (tautological(s)) return;
    for (const auto& k : axioms)
      if (subsumes(k, s)) return;
    axioms.erase(std::remove_if(axioms.begin(), axioms.end(),
                                [&](const Sequent& k) { return subsumes(s, k); }),
                 axioms.end());
    axioms.push_back(s);
  };
  // A, ~B |- A', ~B' exactly when A, B' |- A', B in T: split every minimal
  // sequent C |- D into C = A u B', D = A' u B
  for (const auto& s : seeds) {
    GenSet c = s.lhs, d = s.rhs;
    for (GenSet a = c;; a = (a - 1) & c) {
      GenSet bprime = c & ~a;
      for (GenSet aprime = d;; aprime = (aprime - 1) & d) {
        GenSet b = d & ~aprime;
        add(Sequent{a | bar(b), aprime | bar(bprime)});
        if (aprime == 0) break;
      }
      if (a == 0) break;
    }
  }
  std::sort(axioms.begin(), axioms.end(), [](const Sequent& x, const Sequent& y) {
    return std::tie(x.lhs, x.rhs) < std::tie(y.lhs, y.rhs);
  });
  env.axioms = std::move(axioms);
  return env;
}

}  // namespace krull::lattice
