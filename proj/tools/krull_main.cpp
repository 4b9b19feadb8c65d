/* Command-line front end: parse problem files, dispatch to the library, emit
   verdicts and certificates as JSON with deterministic exit codes.
     0 verdict true / certificate valid      2 input error
     1 verdict false / certificate invalid   3 resource exhausted */

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "krull/dimension.hpp"
#include "krull/goingdown.hpp"
#include "krull/jsonio.hpp"

using namespace krull;
using json = krull::io::json;

namespace {

struct Outcome {
  int exit_code = 0;
  json body;
};

int error_exit_code(Err code) {
  switch (code) {
    case Err::ResourceExhausted:
    case Err::CapExceeded:
      return 3;
    default:
      return 2;
  }
}

RingPtr ring_of(const json& req) {
  if (!req.contains("ring")) io::bad_input("missing \"ring\"");
  return Ring::make(io::ring_from_json(req.at("ring")));
}

Caps caps_of(const json& req) {
  Caps caps;
  if (req.contains("options") && req.at("options").contains("caps"))
    caps = io::caps_from_json(req.at("options").at("caps"), caps);
  return caps;
}

uint64_t seed_of(const json& req) {
  if (req.contains("options") && req.at("options").contains("seed"))
    return req.at("options").at("seed").get<uint64_t>();
  return 0;
}

void check_request_fields(const json& req, std::initializer_list<const char*> extra) {
  std::vector<std::string> allowed = {"v", "command", "options"};
  for (const char* e : extra) allowed.push_back(e);
  for (const auto& [key, value] : req.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      io::bad_input("unknown field \"" + key + "\"");
  }
  if (req.contains("options"))
    io::reject_unknown(req.at("options"), {"seed", "caps", "format"});
}

// --------------------------------------------------------------- extensions

SElement selement_from_json(const ExtensionContext& ext, const json& j) {
  if (!j.is_array()) io::bad_input("S elements are coordinate arrays");
  SElement s;
  for (const auto& c : j) s.coords.push_back(ext.base()->parse(c.get<std::string>()));
  if (s.coords.size() != ext.degree()) io::bad_input("coordinate count != extension degree");
  return s;
}

json selement_to_json(const ExtensionContext& ext, const SElement& s) {
  json arr = json::array();
  for (const auto& c : s.coords) arr.push_back(ext.base()->to_string(c));
  return arr;
}

SChain schain_from_json(const ExtensionContext& ext, const json& j) {
  if (!j.is_object() || !j.contains("chain")) io::bad_input("expected {\"chain\":[...]}");
  SChain out;
  for (const auto& p : j.at("chain")) {
    io::reject_unknown(p, {"J", "U"});
    SPrime prime;
    if (p.contains("J"))
      for (const auto& x : p.at("J")) prime.J.push_back(selement_from_json(ext, x));
    if (p.contains("U"))
      for (const auto& x : p.at("U")) prime.U.push_back(selement_from_json(ext, x));
    out.primes.push_back(std::move(prime));
  }
  return out;
}

UniPoly unipoly_from_json(const RingPtr& base, const json& j) {
  UniPoly p{base, {}};
  for (const auto& c : j) p.c.push_back(base->parse(c.get<std::string>()));
  p.trim();
  return p;
}

json unipoly_to_json(const UniPoly& p) {
  json arr = json::array();
  for (const auto& c : p.c) arr.push_back(p.base->to_string(c));
  return arr;
}

// ----------------------------------------------------------------- commands

Outcome cmd_collapse(const json& req) {
  check_request_fields(req, {"ring", "chain"});
  RingPtr R = ring_of(req);
  Caps caps = caps_of(req);
  IdealisticChain chain = io::chain_from_json(R, req.at("chain"));
  bool verdict = chain_collapses(chain, caps);
  Outcome out;
  out.exit_code = verdict ? 0 : 1;
  out.body["verdict"] = verdict;
  return out;
}

Outcome cmd_certify(const json& req) {
  check_request_fields(req, {"ring", "chain"});
  RingPtr R = ring_of(req);
  Caps caps = caps_of(req);
  IdealisticChain chain = io::chain_from_json(R, req.at("chain"));
  Outcome out;
  if (!chain_collapses(chain, caps)) {
    out.exit_code = 1;
    out.body["verdict"] = false;
    return out;
  }
  auto cert = certify_collapse(chain, caps);
  out.body["verdict"] = true;
  if (cert) {
    // every emitted certificate is re-verified before serialization
    if (!R->is_zero(eval_nested(chain, *cert)))
      fail(Err::InternalMismatch, "certificate failed re-verification");
    out.body["certificate"] = io::cert_to_json(chain, *cert);
  } else {
    out.body["certificate"] = nullptr;
    out.body["diagnostics"] = json{{"note", "certificate search capped; the verdict stands"}};
  }
  out.exit_code = 0;
  return out;
}

Outcome cmd_pseudo_regular(const json& req) {
  check_request_fields(req, {"ring", "seq"});
  RingPtr R = ring_of(req);
  Caps caps = caps_of(req);
  std::vector<RingElement> seq = io::elems_from_json(R, req.at("seq"));
  Outcome out;
  bool regular = pseudo_regular(R, seq, caps);
  out.body["verdict"] = regular;
  out.exit_code = regular ? 0 : 1;
  if (!regular) {
    auto psc = pseudo_singular(R, seq, caps);
    if (psc) out.body["singular_certificate"] = io::psc_to_json(R, *psc);
  }
  return out;
}

Outcome cmd_dim_le(const json& req) {
  check_request_fields(req, {"ring", "l", "testset", "random"});
  RingPtr R = ring_of(req);
  Caps caps = caps_of(req);
  unsigned ell = req.at("l").get<unsigned>();
  std::vector<std::vector<RingElement>> testset;
  if (req.contains("testset")) {
    for (const auto& s : req.at("testset")) testset.push_back(io::elems_from_json(R, s));
  } else if (req.contains("random")) {
    io::reject_unknown(req.at("random"), {"count", "degree", "span"});
    std::mt19937_64 rng(seed_of(req));
    unsigned count = req.at("random").at("count").get<unsigned>();
    long degree =
        req.at("random").contains("degree") ? req.at("random").at("degree").get<long>() : 2;
    long span = req.at("random").contains("span") ? req.at("random").at("span").get<long>() : 5;
    auto sample = [&]() -> RingElement {
      switch (R->descriptor().kind) {
        case RingKind::Integers:
          return R->from_int(long(rng() % uint64_t(2 * span + 1)) - span);
        case RingKind::Modular:
          return R->from_mpz(mpz_class(long(rng() % R->descriptor().modulus.get_ui())));
        case RingKind::Polynomial: {
          PolyTerms t;
          Monomial m(R->var_count(), 0);
          for (long d = long(rng() % uint64_t(degree + 1)); d > 0; --d)
            m[size_t(rng() % R->var_count())]++;
          long c = long(rng() % uint64_t(2 * span + 1)) - span;
          if (c == 0) c = 1;
          t.emplace_back(m, mpq_class(c));
          return R->make_poly(std::move(t));
        }
      }
      return R->zero();
    };
    for (unsigned i = 0; i < count; ++i) {
      std::vector<RingElement> seq;
      for (unsigned k = 0; k <= ell; ++k) seq.push_back(sample());
      testset.push_back(std::move(seq));
    }
  } else {
    io::bad_input("dim-le needs \"testset\" or \"random\"");
  }
  DimReport rep = dim_at_most(R, ell, testset, caps);
  Outcome out;
  out.exit_code = rep.consistent ? 0 : 1;
  out.body["verdict"] = rep.consistent;
  out.body["basis"] = rep.theorem_route ? "polynomial-ring-dimension-theorem" : "testset";
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json je;
    je["seq"] = io::elems_to_json(R, e.seq);
    je["collapses"] = e.collapses;
    if (e.cert) je["certificate"] = io::psc_to_json(R, *e.cert);
    if (e.cert_capped) je["certificate_capped"] = true;
    entries.push_back(std::move(je));
  }
  out.body["entries"] = std::move(entries);
  return out;
}

Outcome cmd_saturate_member(const json& req) {
  check_request_fields(req, {"ring", "prime", "x", "side"});
  RingPtr R = ring_of(req);
  Caps caps = caps_of(req);
  io::reject_unknown(req.at("prime"), {"J", "U"});
  IdealisticPrime p;
  if (req.at("prime").contains("J")) p.J = io::elems_from_json(R, req.at("prime").at("J"));
  if (req.at("prime").contains("U")) p.U = io::elems_from_json(R, req.at("prime").at("U"));
  RingElement x = R->parse(req.at("x").get<std::string>());
  std::string side = req.at("side").get<std::string>();
  bool verdict;
  if (side == "ideal")
    verdict = in_saturated_ideal(R, p, x, caps);
  else if (side == "monoid")
    verdict = in_saturated_monoid(R, p, x, caps);
  else
    io::bad_input("side must be \"ideal\" or \"monoid\"");
  Outcome out;
  out.exit_code = verdict ? 0 : 1;
  out.body["verdict"] = verdict;
  return out;
}

Outcome cmd_verify(const json& req) {
  check_request_fields(req, {"ring", "chain", "cert", "seq", "psc"});
  RingPtr R = ring_of(req);
  Outcome out;
  bool ok = false;
  if (req.contains("chain") && req.contains("cert")) {
    IdealisticChain chain = io::chain_from_json(R, req.at("chain"));
    CollapseCertificate cert = io::cert_from_json(chain, req.at("cert"));
    ok = R->is_zero(eval_nested(chain, cert));
  } else if (req.contains("seq") && req.contains("psc")) {
    std::vector<RingElement> seq = io::elems_from_json(R, req.at("seq"));
    PseudoSingularCertificate psc = io::psc_from_json(R, req.at("psc"));
    ok = psc_verifies(R, seq, psc);
  } else {
    io::bad_input("verify needs chain+cert or seq+psc");
  }
  out.exit_code = ok ? 0 : 1;
  out.body["verdict"] = ok;
  return out;
}

json sequents_to_json(const lattice::Presentation& p, const std::vector<lattice::Sequent>& seqs) {
  json arr = json::array();
  for (const auto& s : seqs) {
    json lhs = json::array(), rhs = json::array();
    for (size_t i = 0; i < p.gens.size(); ++i) {
      if (s.lhs & (lattice::GenSet(1) << i)) lhs.push_back(p.gens[i]);
      if (s.rhs & (lattice::GenSet(1) << i)) rhs.push_back(p.gens[i]);
    }
    arr.push_back(json{{"lhs", lhs}, {"rhs", rhs}});
  }
  return arr;
}

Outcome cmd_lattice(const std::string& sub, const json& req) {
  Caps caps = caps_of(req);
  Outcome out;
  if (sub == "close") {
    check_request_fields(req, {"pres"});
    auto p = io::pres_from_json(req.at("pres"));
    lattice::ClosureTable t = lattice::close_entailment(p, caps);
    out.body["gens"] = p.gens;
    out.body["minimal_sequents"] = sequents_to_json(p, t.minimal());
    out.body["trivial"] = t.entails(0, 0);
    out.exit_code = 0;
    return out;
  }
  if (sub == "leq") {
    check_request_fields(req, {"pres", "x", "y"});
    auto p = io::pres_from_json(req.at("pres"));
    lattice::ClosureTable t = lattice::close_entailment(p, caps);
    auto x = io::lat_elem_from_json(p, req.at("x"));
    auto y = io::lat_elem_from_json(p, req.at("y"));
    bool verdict = lattice::leq(x, y, t);
    out.body["verdict"] = verdict;
    out.exit_code = verdict ? 0 : 1;
    return out;
  }
  if (sub == "dim") {
    check_request_fields(req, {"pres", "l"});
    auto p = io::pres_from_json(req.at("pres"));
    int ell = req.at("l").get<int>();
    auto r = lattice::lattice_dim_at_most(p, ell, caps);
    out.body["verdict"] = r.holds;
    out.exit_code = r.holds ? 0 : 1;
    json ws = json::array();
    for (const auto& w : r.witnesses) {
      json jw;
      json seq = json::array();
      for (size_t g : w.seq) seq.push_back(p.gens[g]);
      jw["seq"] = std::move(seq);
      json as = json::array();
      for (const auto& a : w.a) as.push_back(io::lat_elem_to_json(p, a));
      jw["a"] = std::move(as);
      ws.push_back(std::move(jw));
    }
    out.body["witnesses"] = std::move(ws);
    if (r.refuting_seq) {
      json seq = json::array();
      for (size_t g : *r.refuting_seq) seq.push_back(p.gens[g]);
      out.body["refuting_seq"] = std::move(seq);
    }
    return out;
  }
  if (sub == "spec") {
    check_request_fields(req, {"pres"});
    auto p = io::pres_from_json(req.at("pres"));
    auto points = lattice::spec_enumerate(p, caps);
    json arr = json::array();
    for (const auto& pt : points) {
      json ideal = json::array(), filter = json::array();
      for (size_t i = 0; i < p.gens.size(); ++i) {
        if (pt.ideal & (lattice::GenSet(1) << i)) ideal.push_back(p.gens[i]);
        if (pt.ones & (lattice::GenSet(1) << i)) filter.push_back(p.gens[i]);
      }
      arr.push_back(json{{"ideal", ideal}, {"filter", filter}});
    }
    out.body["points"] = std::move(arr);
    out.body["count"] = points.size();
    out.exit_code = 0;
    return out;
  }
  if (sub == "kr") {
    check_request_fields(req, {"pres", "l", "query"});
    auto p = io::pres_from_json(req.at("pres"));
    unsigned ell = req.at("l").get<unsigned>();
    lattice::KrPresentation kr = lattice::kr_lattice(p, ell, caps);
    out.body["gens"] = kr.gens();
    if (req.contains("query")) {
      io::reject_unknown(req.at("query"), {"lhs", "rhs"});
      auto side = [&](const json& names) {
        std::vector<std::pair<unsigned, size_t>> v;
        for (const auto& n : names) {
          std::string s = n.get<std::string>();
          auto pos = s.find(':');
          if (pos == std::string::npos) io::bad_input("Kr generators look like \"0:a\"");
          v.push_back({unsigned(std::stoul(s.substr(0, pos))), p.gen_index(s.substr(pos + 1))});
        }
        return v;
      };
      bool verdict = kr.entails(side(req.at("query").at("lhs")), side(req.at("query").at("rhs")));
      out.body["verdict"] = verdict;
      // serialization materializes only the queried sequents
      out.body["queried"] = io::pres_to_json(kr.queried_presentation())["axioms"];
      out.exit_code = verdict ? 0 : 1;
    } else {
      try {
        out.body["presentation"] = io::pres_to_json(kr.materialize());
      } catch (const KrullError& e) {
        if (e.code() != Err::CapExceeded) throw;
        out.body["presentation"] = nullptr;
        out.body["diagnostics"] = json{{"note", "materialization capped; use query"}};
      }
      out.exit_code = 0;
    }
    return out;
  }
  if (sub == "bool") {
    check_request_fields(req, {"pres"});
    auto p = io::pres_from_json(req.at("pres"));
    auto env = lattice::boolean_envelope(p, caps);
    out.body["presentation"] = io::pres_to_json(env);
    out.body["elements"] = lattice::enumerate_elements(env, caps).size();
    out.exit_code = 0;
    return out;
  }
  io::bad_input("unknown lattice subcommand \"" + sub + "\"");
}

Outcome cmd_zar(const std::string& sub, const json& req) {
  Caps caps = caps_of(req);
  Outcome out;
  if (sub == "entails") {
    check_request_fields(req, {"ring", "u", "j"});
    RingPtr R = ring_of(req);
    auto U = io::elems_from_json(R, req.at("u"));
    auto J = io::elems_from_json(R, req.at("j"));
    bool verdict = zar_entails(R, U, J, caps);
    out.body["verdict"] = verdict;
    out.exit_code = verdict ? 0 : 1;
    return out;
  }
  if (sub == "bridge") {
    check_request_fields(req, {"ring", "chain"});
    RingPtr R = ring_of(req);
    IdealisticChain chain = io::chain_from_json(R, req.at("chain"));
    BridgeResult b = bridge_collapse(chain, caps);
    out.body["ring_verdict"] = b.ring_verdict;
    out.body["lattice_verdict"] = b.lattice_verdict;
    if (b.witnesses) {
      json arr = json::array();
      for (const auto& w : *b.witnesses) arr.push_back(io::zar_elem_to_json(R, w));
      out.body["witnesses"] = std::move(arr);
    }
    if (b.certificate) out.body["certificate"] = io::cert_to_json(chain, *b.certificate);
    out.exit_code = b.ring_verdict ? 0 : 1;
    return out;
  }
  if (sub == "dim-le") {
    check_request_fields(req, {"ring", "l", "testset"});
    RingPtr R = ring_of(req);
    unsigned ell = req.at("l").get<unsigned>();
    std::vector<std::vector<RingElement>> testset;
    for (const auto& s : req.at("testset")) testset.push_back(io::elems_from_json(R, s));
    ZarDimReport rep = zar_dim_at_most(R, ell, testset, caps);
    out.body["verdict"] = rep.consistent;
    out.exit_code = rep.consistent ? 0 : 1;
    json entries = json::array();
    for (const auto& e : rep.entries) {
      json je;
      je["seq"] = io::elems_to_json(R, e.seq);
      je["collapses"] = e.collapses;
      if (!e.ladder.empty()) je["ladder"] = io::elems_to_json(R, e.ladder);
      entries.push_back(std::move(je));
    }
    out.body["entries"] = std::move(entries);
    return out;
  }
  io::bad_input("unknown zar subcommand \"" + sub + "\"");
}

Outcome cmd_ext(const std::string& sub, const json& req) {
  Caps caps = caps_of(req);
  Outcome out;
  if (!req.contains("ext")) io::bad_input("missing \"ext\"");
  ExtensionPtr ext = io::ext_from_json(req.at("ext"), caps);
  if (sub == "going-up") {
    check_request_fields(req, {"ext", "chain", "c1"});
    IdealisticChain c2 = io::chain_from_json(ext->base(), req.at("chain"));
    SChain c1;
    if (req.contains("c1")) c1 = schain_from_json(*ext, req.at("c1"));
    GoingUpResult r = going_up_transfer(*ext, c1, c2, caps);
    out.body["collapse_in_R"] = r.collapse_in_R;
    out.body["collapse_in_S"] = r.collapse_in_S;
    if (r.lying_over_cert) {
      out.body["lying_over"] =
          json{{"n", r.lying_over_cert->n},
               {"m", r.lying_over_cert->m},
               {"cofactors", io::elems_to_json(ext->base(), r.lying_over_cert->cofactors)}};
    }
    out.exit_code = r.collapse_in_R ? 0 : 1;
    return out;
  }
  if (sub == "lying-over") {
    check_request_fields(req, {"ext", "ideal", "x", "witness"});
    Ideal I(io::elems_from_json(ext->base(), req.at("ideal")));
    RingElement x = ext->base()->parse(req.at("x").get<std::string>());
    io::reject_unknown(req.at("witness"), {"n", "j", "b"});
    LyingOverWitness w;
    w.n = req.at("witness").at("n").get<unsigned>();
    w.j = io::elems_from_json(ext->base(), req.at("witness").at("j"));
    for (const auto& b : req.at("witness").at("b")) w.b.push_back(selement_from_json(*ext, b));
    LyingOverResult r = lying_over(*ext, I, x, w, caps);
    out.body["n"] = r.n;
    out.body["m"] = r.m;
    out.body["cofactors"] = io::elems_to_json(ext->base(), r.cofactors);
    out.body["char_poly"] = unipoly_to_json(r.char_polynomial);
    out.exit_code = 0;
    return out;
  }
  if (sub == "above") {
    check_request_fields(req, {"ext", "chain", "alist"});
    SChain chain = schain_from_json(*ext, req.at("chain"));
    std::vector<RingElement> alist;
    if (req.contains("alist")) alist = io::elems_from_json(ext->base(), req.at("alist"));
    AboveResult r = collapse_above(*ext, chain, alist, caps);
    out.body["verdict"] = r.collapses_above;
    json pairs = json::array();
    for (const auto& pr : r.pairs) pairs.push_back(json{{"H", pr.H}, {"collapses", pr.collapses}});
    out.body["pairs"] = std::move(pairs);
    out.exit_code = r.collapses_above ? 0 : 1;
    return out;
  }
  if (sub == "going-down") {
    check_request_fields(req,
                         {"ext", "p0", "u0", "v1", "i_parts", "s_parts", "candidate_b", "flat"});
    io::reject_unknown(req.at("p0"), {"J", "U"});
    IdealisticPrime p0;
    if (req.at("p0").contains("J")) p0.J = io::elems_from_json(ext->base(), req.at("p0").at("J"));
    if (req.at("p0").contains("U")) p0.U = io::elems_from_json(ext->base(), req.at("p0").at("U"));
    RingElement u0 = ext->base()->parse(req.at("u0").get<std::string>());
    SElement v1 = selement_from_json(*ext, req.at("v1"));
    std::vector<RingElement> iparts = io::elems_from_json(ext->base(), req.at("i_parts"));
    std::vector<SElement> sparts;
    for (const auto& b : req.at("s_parts")) sparts.push_back(selement_from_json(*ext, b));
    bool flat = req.contains("flat") && req.at("flat").get<bool>();
    if (flat) {
      FlatGDResult r = going_down_flat(*ext, p0, u0, v1, iparts, sparts, caps);
      out.body["m0"] = io::elems_to_json(ext->base(), r.m0);
      out.body["m0_in_saturation"] = r.m0_in_saturation;
      out.exit_code = 0;
      return out;
    }
    std::optional<UniPoly> candidate;
    if (req.contains("candidate_b"))
      candidate = unipoly_from_json(ext->base(), req.at("candidate_b"));
    GDStepResult r = going_down_step(*ext, p0, u0, v1, iparts, sparts, candidate, caps);
    out.body["gcd_rounds"] = r.gcd_rounds;
    out.body["degree_trace"] = r.degree_trace;
    out.body["final_b"] = unipoly_to_json(r.final_B);
    out.body["b_in_saturation"] = r.b_in_saturation;
    out.body["v1_power"] = selement_to_json(*ext, r.v1_power);
    out.exit_code = 0;
    return out;
  }
  io::bad_input("unknown ext subcommand \"" + sub + "\"");
}

Outcome dispatch(const std::string& command, const std::string& sub, const json& req) {
  if (command == "collapse") return cmd_collapse(req);
  if (command == "certify") return cmd_certify(req);
  if (command == "pseudo-regular") return cmd_pseudo_regular(req);
  if (command == "dim-le") return cmd_dim_le(req);
  if (command == "saturate-member") return cmd_saturate_member(req);
  if (command == "verify") return cmd_verify(req);
  if (command == "lattice") return cmd_lattice(sub, req);
  if (command == "zar") return cmd_zar(sub, req);
  if (command == "ext") return cmd_ext(sub, req);
  io::bad_input("unknown command \"" + command + "\"");
}

void print_text(const json& body, std::ostream& os, int indent = 0) {
  // lossy pretty-printer; JSON is the contract
  for (const auto& [key, value] : body.items()) {
    os << std::string(size_t(indent), ' ') << key << ": ";
    if (value.is_object()) {
      os << "\n";
      print_text(value, os, indent + 2);
    } else {
      os << value.dump() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krull dimension certificates: collapse of idealistic chains, "
               "distributive lattices, the Zariski bridge, Going Up / Going Down"};
  app.require_subcommand(1);

  std::string file, format = "json", request_inline, caps_inline;
  std::vector<std::string> kv;
  uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--file", file, "read the JSON request from a file ('-' for stdin)");
    cmd->add_option("--request", request_inline, "inline JSON request");
    cmd->add_option("--set", kv, "request field as key=json (repeatable, dotted keys nest)");
    cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option_function<uint64_t>(
        "--seed",
        [&](const uint64_t& v) {
          seed = v;
          seed_set = true;
        },
        "seed for randomized testset generation");
    cmd->add_option("--caps", caps_inline, "search-cap overrides as JSON");
  };

  const std::vector<std::pair<std::string, std::vector<std::string>>> command_table = {
      {"collapse", {}},
      {"certify", {}},
      {"pseudo-regular", {}},
      {"dim-le", {}},
      {"saturate-member", {}},
      {"verify", {}},
      {"lattice", {"close", "leq", "dim", "spec", "kr", "bool"}},
      {"zar", {"entails", "dim-le", "bridge"}},
      {"ext", {"going-up", "going-down", "lying-over", "above"}},
  };
  for (const auto& [name, subs] : command_table) {
    CLI::App* cmd = app.add_subcommand(name);
    if (subs.empty()) {
      add_common(cmd);
    } else {
      cmd->require_subcommand(1);
      for (const auto& s : subs) add_common(cmd->add_subcommand(s));
    }
  }

  CLI11_PARSE(app, argc, argv);

  std::string command, subcommand;
  for (CLI::App* cmd : app.get_subcommands()) {
    command = cmd->get_name();
    for (CLI::App* leaf : cmd->get_subcommands()) subcommand = leaf->get_name();
  }

  json req = json::object();
  try {
    if (!file.empty()) {
      std::string text;
      if (file == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
      } else {
        std::ifstream in(file);
        if (!in) io::bad_input("cannot open \"" + file + "\"");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
      }
      try {
        req = json::parse(text);
      } catch (const json::parse_error& e) {
        io::bad_input(std::string("malformed JSON: ") + e.what());
      }
    }
    if (!request_inline.empty()) {
      try {
        req = json::parse(request_inline);
      } catch (const json::parse_error& e) {
        io::bad_input(std::string("malformed JSON: ") + e.what());
      }
    }
    for (const auto& pair : kv) {
      auto eq = pair.find('=');
      if (eq == std::string::npos) io::bad_input("--set expects key=json");
      std::string key = pair.substr(0, eq);
      json value;
      try {
        value = json::parse(pair.substr(eq + 1));
      } catch (const json::parse_error& e) {
        io::bad_input(std::string("malformed JSON in --set ") + key + ": " + e.what());
      }
      json* spot = &req;
      size_t start = 0;
      for (;;) {
        size_t dot = key.find('.', start);
        if (dot == std::string::npos) {
          (*spot)[key.substr(start)] = value;
          break;
        }
        spot = &(*spot)[key.substr(start, dot - start)];
        start = dot + 1;
      }
    }
    if (seed_set) req["options"]["seed"] = seed;
    if (!caps_inline.empty()) {
      try {
        req["options"]["caps"] = json::parse(caps_inline);
      } catch (const json::parse_error& e) {
        io::bad_input(std::string("malformed JSON in --caps: ") + e.what());
      }
    }
    if (req.contains("command")) {
      std::string rc = req.at("command").get<std::string>();
      auto space = rc.find(' ');
      std::string base = space == std::string::npos ? rc : rc.substr(0, space);
      std::string rsub = space == std::string::npos ? "" : rc.substr(space + 1);
      if (base != command || rsub != subcommand)
        io::bad_input("request command \"" + rc + "\" does not match the CLI subcommand");
    }
    if (req.contains("v") && req.at("v").get<int>() != 1) io::bad_input("unknown schema version");

    Outcome out = dispatch(command, subcommand, req);
    json envelope;
    envelope["v"] = 1;
    envelope["command"] = subcommand.empty() ? command : command + " " + subcommand;
    for (auto& [key, value] : out.body.items()) envelope[key] = value;
    if (format == "json") {
      std::cout << envelope.dump(2) << "\n";
    } else {
      print_text(envelope, std::cout);
    }
    return out.exit_code;
  } catch (const KrullError& e) {
    json envelope;
    envelope["v"] = 1;
    envelope["error"] = err_name(e.code());
    envelope["message"] = e.what();
    std::cout << envelope.dump(2) << "\n";
    return error_exit_code(e.code());
  } catch (const json::exception& e) {
    json envelope;
    envelope["v"] = 1;
    envelope["error"] = "InputError";
    envelope["message"] = e.what();
    std::cout << envelope.dump(2) << "\n";
    return 2;
  }
}
