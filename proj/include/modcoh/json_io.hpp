#pragma once

#include <json.hpp>

#include "modcoh/coherence.hpp"
#include "modcoh/identities.hpp"
#include "modcoh/residue.hpp"

// JSON surfaces. Emission uses ordered_json with fixed key order so that
// identical inputs serialize to identical bytes.

namespace modcoh {

nlohmann::ordered_json to_json(const ModularBijection& f);
ModularBijection bijection_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const DiagramReport& r);

nlohmann::ordered_json to_json(const VerifiedIdentity& i);

}  // namespace modcoh
