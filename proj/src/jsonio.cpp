#include "krull/jsonio.hpp"

namespace krull::io {

void bad_input(const std::string& what) { fail(Err::InputError, what); }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad_input("expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) bad_input("unknown field \"" + key + "\"");
  }
}

static mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  bad_input("expected an integer (number or decimal string)");
}

RingDescriptor ring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ring")) bad_input("ring descriptor needs a \"ring\" field");
  std::string kind = j.at("ring").get<std::string>();
  if (kind == "Z") {
    reject_unknown(j, {"ring"});
    return RingDescriptor::integers();
  }
  if (kind == "Zmod") {
    reject_unknown(j, {"ring", "n"});
    if (!j.contains("n")) bad_input("Zmod needs \"n\"");
    return RingDescriptor::modular(mpz_from_json(j.at("n")));
  }
  if (kind == "Poly") {
    reject_unknown(j, {"ring", "coeff", "vars"});
    if (!j.contains("coeff") || !j.contains("vars")) bad_input("Poly needs \"coeff\" and \"vars\"");
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    const json& c = j.at("coeff");
    if (c.is_string()) {
      std::string s = c.get<std::string>();
      if (s == "Q") return RingDescriptor::poly_q(vars);
      if (s == "Z") return RingDescriptor::poly_z(vars);
      bad_input("unknown coefficient field \"" + s + "\"");
    }
    if (c.is_object()) {
      if (c.contains("Fp")) {
        reject_unknown(c, {"Fp"});
        return RingDescriptor::poly_fp(mpz_from_json(c.at("Fp")), vars);
      }
      if (c.contains("Zmod")) {
        reject_unknown(c, {"Zmod"});
        return RingDescriptor::poly_zmod(mpz_from_json(c.at("Zmod")), vars);
      }
    }
    bad_input("coefficient spec must be \"Q\", \"Z\", {\"Fp\":p} or {\"Zmod\":n}");
  }
  bad_input("unknown ring kind \"" + kind + "\"");
}

json ring_to_json(const RingDescriptor& d) {
  json j;
  switch (d.kind) {
    case RingKind::Integers:
      j["ring"] = "Z";
      break;
    case RingKind::Modular:
      j["ring"] = "Zmod";
      j["n"] = d.modulus.get_str();
      break;
    case RingKind::Polynomial:
      j["ring"] = "Poly";
      switch (d.coeff) {
        case CoeffKind::Rationals:
          j["coeff"] = "Q";
          break;
        case CoeffKind::IntegerCoeff:
          j["coeff"] = "Z";
          break;
        case CoeffKind::PrimeField:
          j["coeff"] = json{{"Fp", d.modulus.get_str()}};
          break;
        case CoeffKind::ModularCoeff:
          j["coeff"] = json{{"Zmod", d.modulus.get_str()}};
          break;
      }
      j["vars"] = d.vars;
      break;
  }
  return j;
}

RingElement elem_from_json(const RingPtr& ring, const json& j) {
  if (!j.is_string()) bad_input("ring elements are strings in the element syntax");
  return ring->parse(j.get<std::string>());
}

std::vector<RingElement> elems_from_json(const RingPtr& ring, const json& j) {
  if (!j.is_array()) bad_input("expected an array of elements");
  std::vector<RingElement> out;
  for (const auto& x : j) out.push_back(elem_from_json(ring, x));
  return out;
}

json elems_to_json(const RingPtr& ring, const std::vector<RingElement>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(ring->to_string(x));
  return j;
}

IdealisticChain chain_from_json(const RingPtr& ring, const json& j) {
  if (!j.is_object() || !j.contains("chain")) bad_input("expected {\"chain\":[...]}");
  reject_unknown(j, {"chain"});
  std::vector<IdealisticPrime> primes;
  for (const auto& p : j.at("chain")) {
    reject_unknown(p, {"J", "U"});
    IdealisticPrime prime;
    if (p.contains("J")) prime.J = elems_from_json(ring, p.at("J"));
    if (p.contains("U")) prime.U = elems_from_json(ring, p.at("U"));
    primes.push_back(std::move(prime));
  }
  return IdealisticChain(ring, std::move(primes));
}

json chain_to_json(const IdealisticChain& chain) {
  json arr = json::array();
  for (const auto& p : chain.primes) {
    json jp;
    jp["J"] = elems_to_json(chain.ring, p.J);
    jp["U"] = elems_to_json(chain.ring, p.U);
    arr.push_back(std::move(jp));
  }
  return json{{"chain", std::move(arr)}};
}

CollapseCertificate cert_from_json(const IdealisticChain& chain, const json& j) {
  const RingPtr& R = chain.ring;
  if (!j.is_object() || !j.contains("levels")) bad_input("expected {\"levels\":[...]}");
  reject_unknown(j, {"levels"});
  const json& levels = j.at("levels");
  if (!levels.is_array() || levels.size() != chain.primes.size())
    fail(Err::ShapeMismatch, "certificate level count != chain length + 1");
  CollapseCertificate cert;
  for (size_t k = 0; k < chain.primes.size(); ++k) {
    reject_unknown(levels[k], {"exp", "cof"});
    CertLevel lvl;
    lvl.exponents.assign(chain.primes[k].U.size(), 0);
    lvl.cofactors.assign(chain.primes[k].J.size(), R->zero());
    if (levels[k].contains("exp")) {
      for (const auto& [key, value] : levels[k].at("exp").items()) {
        RingElement g = R->parse(key);
        bool found = false;
        for (size_t i = 0; i < chain.primes[k].U.size(); ++i)
          if (R->eq(chain.primes[k].U[i], g) && lvl.exponents[i] == 0) {
            lvl.exponents[i] = value.get<unsigned>();
            found = true;
            break;
          }
        if (!found) fail(Err::ShapeMismatch, "exponent key \"" + key + "\" is not a U generator");
      }
    }
    if (levels[k].contains("cof")) {
      for (const auto& [key, value] : levels[k].at("cof").items()) {
        RingElement g = R->parse(key);
        bool found = false;
        for (size_t i = 0; i < chain.primes[k].J.size(); ++i)
          if (R->eq(chain.primes[k].J[i], g) && R->is_zero(lvl.cofactors[i])) {
            lvl.cofactors[i] = elem_from_json(R, value);
            found = true;
            break;
          }
        if (!found) fail(Err::ShapeMismatch, "cofactor key \"" + key + "\" is not a J generator");
      }
    }
    cert.levels.push_back(std::move(lvl));
  }
  return cert;
}

json cert_to_json(const IdealisticChain& chain, const CollapseCertificate& cert) {
  const RingPtr& R = chain.ring;
  json arr = json::array();
  for (size_t k = 0; k < chain.primes.size(); ++k) {
    json exp = json::object();
    for (size_t i = 0; i < chain.primes[k].U.size(); ++i) {
      std::string key = R->to_string(chain.primes[k].U[i]);
      // duplicated generators merge additively (the same element)
      exp[key] = exp.contains(key) ? exp[key].get<unsigned>() + cert.levels[k].exponents[i]
                                   : cert.levels[k].exponents[i];
    }
    json cof = json::object();
    for (size_t i = 0; i < chain.primes[k].J.size(); ++i) {
      std::string key = R->to_string(chain.primes[k].J[i]);
      RingElement v = cert.levels[k].cofactors[i];
      if (cof.contains(key)) v = R->add(v, R->parse(cof[key].get<std::string>()));
      cof[key] = R->to_string(v);
    }
    arr.push_back(json{{"exp", std::move(exp)}, {"cof", std::move(cof)}});
  }
  return json{{"levels", std::move(arr)}};
}

PseudoSingularCertificate psc_from_json(const RingPtr& ring, const json& j) {
  reject_unknown(j, {"m", "a"});
  PseudoSingularCertificate psc;
  if (!j.contains("m") || !j.contains("a")) bad_input("certificate needs \"m\" and \"a\"");
  psc.m = j.at("m").get<std::vector<unsigned>>();
  psc.a = elems_from_json(ring, j.at("a"));
  return psc;
}

json psc_to_json(const RingPtr& ring, const PseudoSingularCertificate& psc) {
  return json{{"m", psc.m}, {"a", elems_to_json(ring, psc.a)}};
}

lattice::Presentation pres_from_json(const json& j) {
  reject_unknown(j, {"gens", "axioms"});
  lattice::Presentation p;
  if (!j.contains("gens")) bad_input("presentation needs \"gens\"");
  p.gens = j.at("gens").get<std::vector<std::string>>();
  if (p.gens.size() > 31) bad_input("too many generators");
  if (j.contains("axioms")) {
    for (const auto& ax : j.at("axioms")) {
      reject_unknown(ax, {"lhs", "rhs"});
      lattice::Sequent s;
      if (ax.contains("lhs"))
        for (const auto& g : ax.at("lhs"))
          s.lhs |= lattice::GenSet(1) << p.gen_index(g.get<std::string>());
      if (ax.contains("rhs"))
        for (const auto& g : ax.at("rhs"))
          s.rhs |= lattice::GenSet(1) << p.gen_index(g.get<std::string>());
      p.axioms.push_back(s);
    }
  }
  return p;
}

json pres_to_json(const lattice::Presentation& p) {
  json axioms = json::array();
  for (const auto& s : p.axioms) {
    json lhs = json::array(), rhs = json::array();
    for (size_t i = 0; i < p.gens.size(); ++i) {
      if (s.lhs & (lattice::GenSet(1) << i)) lhs.push_back(p.gens[i]);
      if (s.rhs & (lattice::GenSet(1) << i)) rhs.push_back(p.gens[i]);
    }
    axioms.push_back(json{{"lhs", std::move(lhs)}, {"rhs", std::move(rhs)}});
  }
  return json{{"gens", p.gens}, {"axioms", std::move(axioms)}};
}

lattice::LatticeElement lat_elem_from_json(const lattice::Presentation& p, const json& j) {
  if (!j.is_array()) bad_input("lattice elements are arrays of generator arrays (DNF)");
  lattice::LatticeElement e;
  for (const auto& block : j) {
    lattice::GenSet b = 0;
    for (const auto& g : block) b |= lattice::GenSet(1) << p.gen_index(g.get<std::string>());
    e.blocks.push_back(b);
  }
  return e;
}

json lat_elem_to_json(const lattice::Presentation& p, const lattice::LatticeElement& e) {
  json arr = json::array();
  for (lattice::GenSet b : e.blocks) {
    json block = json::array();
    for (size_t i = 0; i < p.gens.size(); ++i)
      if (b & (lattice::GenSet(1) << i)) block.push_back(p.gens[i]);
    arr.push_back(std::move(block));
  }
  return arr;
}

ZarElement zar_elem_from_json(const RingPtr& ring, const json& j) {
  reject_unknown(j, {"radical_of"});
  if (!j.contains("radical_of")) bad_input("Zariski elements are {\"radical_of\":[...]}");
  return ZarElement{elems_from_json(ring, j.at("radical_of"))};
}

json zar_elem_to_json(const RingPtr& ring, const ZarElement& z) {
  return json{{"radical_of", elems_to_json(ring, z.gens)}};
}

ExtensionPtr ext_from_json(const json& j, const Caps& caps) {
  reject_unknown(j, {"base", "monic", "var"});
  if (!j.contains("base") || !j.contains("monic")) bad_input("extension needs \"base\" and \"monic\"");
  RingDescriptor base = ring_from_json(j.at("base"));
  std::string var = j.contains("var") ? j.at("var").get<std::string>() : "Y";
  // parse the monic polynomial in a scratch model ring, then read coefficients
  RingDescriptor scratch;
  if (base.kind == RingKind::Integers) {
    scratch = RingDescriptor::poly_z({var});
  } else if (base.kind == RingKind::Polynomial) {
    scratch = base;
    scratch.vars.insert(scratch.vars.begin(), var);
  } else {
    bad_input("extension base must be Z or a polynomial ring");
  }
  RingPtr model = Ring::make(scratch);
  RingPtr basering = Ring::make(base);
  RingElement f = model->parse(j.at("monic").get<std::string>());
  unsigned deg = 0;
  for (const auto& t : f.terms()) deg = std::max(deg, t.first[0]);
  if (deg == 0) bad_input("the defining polynomial must involve the adjoined variable");
  std::vector<RingElement> coeffs;
  for (unsigned i = 0; i <= deg; ++i) {
    if (base.kind == RingKind::Integers) {
      coeffs.push_back(basering->from_mpq(model->coefficient(f, Monomial{i})));
    } else {
      PolyTerms slice;
      for (const auto& t : f.terms())
        if (t.first[0] == i)
          slice.emplace_back(Monomial(t.first.begin() + 1, t.first.end()), t.second);
      coeffs.push_back(basering->make_poly(std::move(slice)));
    }
  }
  return ExtensionContext::make(base, coeffs, var, caps);
}

Caps caps_from_json(const json& j, Caps base) {
  reject_unknown(j, {"groebner_degree", "radical_exponent", "membership_doubling",
                     "saturation_rounds", "search_exponent", "search_budget",
                     "lattice_generators", "above_list", "fraction_power"});
  if (j.contains("groebner_degree")) base.groebner_degree = j.at("groebner_degree").get<unsigned>();
  if (j.contains("radical_exponent"))
    base.radical_exponent = j.at("radical_exponent").get<unsigned>();
  if (j.contains("membership_doubling"))
    base.membership_doubling = j.at("membership_doubling").get<unsigned>();
  if (j.contains("saturation_rounds"))
    base.saturation_rounds = j.at("saturation_rounds").get<unsigned>();
  if (j.contains("search_exponent")) base.search_exponent = j.at("search_exponent").get<unsigned>();
  if (j.contains("search_budget")) base.search_budget = j.at("search_budget").get<uint64_t>();
  if (j.contains("lattice_generators"))
    base.lattice_generators = j.at("lattice_generators").get<unsigned>();
  if (j.contains("above_list")) base.above_list = j.at("above_list").get<unsigned>();
  if (j.contains("fraction_power")) base.fraction_power = j.at("fraction_power").get<unsigned>();
  return base;
}

}  // namespace krull::io
