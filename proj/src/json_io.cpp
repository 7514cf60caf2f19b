#include "modcoh/json_io.hpp"

#include <stdexcept>

namespace modcoh {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

CongruenceClass class_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mod") || !j.contains("res"))
    throw std::runtime_error("congruence class must be {\"mod\": m, \"res\": r}");
  CongruenceClass c{j.at("mod").get<Nat>(), j.at("res").get<Nat>()};
  if (c.modulus == 0 || c.residue >= c.modulus)
    throw std::runtime_error("congruence class requires 0 <= res < mod");
  return c;
}

ordered_json class_to_json(const CongruenceClass& c) {
  return {{"mod", c.modulus}, {"res", c.residue}};
}

const char* status_name(PathStatus s) {
  switch (s) {
    case PathStatus::Coherent: return "COHERENT";
    case PathStatus::OracleEqual: return "EQUAL";
    case PathStatus::NotEqual: return "NOT_EQUAL";
  }
  return "?";
}

}  // namespace

nlohmann::ordered_json to_json(const ModularBijection& f) {
  ordered_json branches = ordered_json::array();
  for (const Branch& b : f.branches)
    branches.push_back(
        {{"in", class_to_json(b.in)}, {"out", class_to_json(b.out)}});
  return {{"branches", std::move(branches)}};
}

ModularBijection bijection_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("branches") || !j.at("branches").is_array())
    throw std::runtime_error("bijection must be {\"branches\": [...]}");
  ModularBijection f;
  for (const json& b : j.at("branches"))
    f.branches.push_back({class_from_json(b.at("in")),
                          class_from_json(b.at("out"))});
  validate(f);
  return f;
}

nlohmann::ordered_json to_json(const Diagram& d) {
  ordered_json edges = ordered_json::array();
  for (const Diagram::Edge& e : d.edges)
    edges.push_back(
        {{"from", e.from}, {"to", e.to}, {"term", to_string(e.term)}});
  return {{"nodes", d.nodes}, {"edges", std::move(edges)}};
}

Diagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    throw std::runtime_error(
        "diagram must be {\"nodes\": [...], \"edges\": [...]}");
  Diagram d;
  for (const json& n : j.at("nodes")) d.nodes.push_back(n.get<std::string>());
  for (const json& e : j.at("edges")) {
    d.edges.push_back({e.at("from").get<std::string>(),
                       e.at("to").get<std::string>(),
                       parse_term(e.at("term").get<std::string>())});
  }
  return d;
}

nlohmann::ordered_json to_json(const DiagramReport& r) {
  ordered_json pairs = ordered_json::array();
  for (const PathPairReport& p : r.pairs) {
    ordered_json jp{{"from", p.from},
                    {"to", p.to},
                    {"path_a", p.path_a},
                    {"path_b", p.path_b},
                    {"term_a", p.term_a},
                    {"term_b", p.term_b},
                    {"status", status_name(p.status)}};
    if (p.witness) jp["witness"] = *p.witness;
    if (!p.note.empty()) jp["note"] = p.note;
    pairs.push_back(std::move(jp));
  }
  return {{"commutes", r.commutes},
          {"truncated", r.truncated},
          {"pairs", std::move(pairs)}};
}

nlohmann::ordered_json to_json(const VerifiedIdentity& i) {
  return {{"rank", i.rank},
          {"lhs", to_string(i.lhs)},
          {"rhs", to_string(i.rhs)},
          {"table", to_json(i.table)},
          {"status", "coherent-and-oracle-checked"}};
}

}  // namespace modcoh
