#ifndef KRULL_JSONIO_HPP
#define KRULL_JSONIO_HPP

/* The stable JSON surface: descriptors, elements (in the bit-exact element
   syntax), chains, certificates, presentations. Key order is fixed so equal
   requests produce byte-identical responses. */

#include <json.hpp>

#include "krull/chains.hpp"
#include "krull/extensions.hpp"
#include "krull/lattice.hpp"
#include "krull/localglobal.hpp"
#include "krull/zariski.hpp"

namespace krull::io {

using json = nlohmann::ordered_json;

[[noreturn]] void bad_input(const std::string& what);
void reject_unknown(const json& obj, std::initializer_list<const char*> allowed);

RingDescriptor ring_from_json(const json& j);
json ring_to_json(const RingDescriptor& d);

RingElement elem_from_json(const RingPtr& ring, const json& j);
std::vector<RingElement> elems_from_json(const RingPtr& ring, const json& j);
json elems_to_json(const RingPtr& ring, const std::vector<RingElement>& xs);

IdealisticChain chain_from_json(const RingPtr& ring, const json& j);
json chain_to_json(const IdealisticChain& chain);

CollapseCertificate cert_from_json(const IdealisticChain& chain, const json& j);
json cert_to_json(const IdealisticChain& chain, const CollapseCertificate& cert);

PseudoSingularCertificate psc_from_json(const RingPtr& ring, const json& j);
json psc_to_json(const RingPtr& ring, const PseudoSingularCertificate& psc);

lattice::Presentation pres_from_json(const json& j);
json pres_to_json(const lattice::Presentation& p);
lattice::LatticeElement lat_elem_from_json(const lattice::Presentation& p, const json& j);
json lat_elem_to_json(const lattice::Presentation& p, const lattice::LatticeElement& e);

ZarElement zar_elem_from_json(const RingPtr& ring, const json& j);
json zar_elem_to_json(const RingPtr& ring, const ZarElement& z);

ExtensionPtr ext_from_json(const json& j, const Caps& caps);

Caps caps_from_json(const json& j, Caps base);

}  // namespace krull::io

#endif
