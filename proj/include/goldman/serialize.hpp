#pragma once

// JSON round trips for every public type. Group elements are [w,x,y,z]
// (validated on parse), tangent vectors [x,y,z]. Emission uses the shortest
// representation that parses back bit-identically.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "goldman/fingerprint.hpp"
#include "goldman/orbit.hpp"
#include "goldman/repvar.hpp"
#include "goldman/su2.hpp"
#include "goldman/surface.hpp"

namespace goldman {

using json = nlohmann::json;

inline json to_json(const Su2d& g) {
  return json::array({g.coords()[0], g.coords()[1], g.coords()[2], g.coords()[3]});
}

inline Su2d su2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw InvalidElement("group element must be a 4-array [w,x,y,z]");
  return Su2d(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
              j[3].get<double>());
}

inline json to_json(const LieVecd& v) { return json::array({v[0], v[1], v[2]}); }

inline LieVecd lievec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw InvalidElement("tangent vector must be a 3-array [x,y,z]");
  return LieVecd(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline json to_json(const SurfaceSpec& s) {
  return json{{"case", case_name(s.kase)}, {"k", s.k}};
}

inline SurfaceSpec spec_from_json(const json& j) {
  auto c = case_from_name(j.at("case").get<std::string>());
  if (!c) throw InvalidElement("unknown surface case");
  return SurfaceSpec{*c, j.at("k").get<int>()};
}

inline json to_json(const RepPointd& p) {
  json a = json::array();
  for (const auto& x : p.a) a.push_back(to_json(x));
  return json{{"c", to_json(p.c)}, {"b", to_json(p.b)}, {"a", a}};
}

inline RepPointd reppoint_from_json(const json& j) {
  RepPointd p;
  p.c = su2_from_json(j.at("c"));
  p.b = su2_from_json(j.at("b"));
  for (const auto& x : j.at("a")) p.a.push_back(su2_from_json(x));
  return p;
}

inline json to_json(const DoubleRepPointd& q) {
  json a = json::array(), abar = json::array();
  for (const auto& x : q.a) a.push_back(to_json(x));
  for (const auto& x : q.abar) abar.push_back(to_json(x));
  return json{{"c", to_json(q.c)},       {"b", to_json(q.b)},
              {"a", a},                  {"cbar", to_json(q.cbar)},
              {"bbar", to_json(q.bbar)}, {"abar", abar}};
}

inline DoubleRepPointd doublereppoint_from_json(const json& j) {
  DoubleRepPointd q;
  q.c = su2_from_json(j.at("c"));
  q.b = su2_from_json(j.at("b"));
  for (const auto& x : j.at("a")) q.a.push_back(su2_from_json(x));
  q.cbar = su2_from_json(j.at("cbar"));
  q.bbar = su2_from_json(j.at("bbar"));
  for (const auto& x : j.at("abar")) q.abar.push_back(su2_from_json(x));
  return q;
}

inline json to_json(const Fingerprint& f) {
  return json{{"words", f.words}, {"traces", f.traces}};
}

//
// --- point records ----------------------------------------------------------
//

// Self-describing record: what the sample command emits (one per line) and
// what the flow / orbit commands read back.
struct PointRecord {
  SurfaceSpec spec;
  std::string variety;  // "R" | "Rtilde" | "Nx"
  std::optional<Su2d> x;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::variant<RepPointd, DoubleRepPointd> point;
};

inline bool record_is_base(const PointRecord& r) {
  return std::holds_alternative<RepPointd>(r.point);
}

inline double record_residual(const PointRecord& r) {
  if (record_is_base(r))
    return relation_residual(r.spec, std::get<RepPointd>(r.point));
  return cover_relation_residual_max(r.spec, std::get<DoubleRepPointd>(r.point));
}

inline json to_json(const PointRecord& r) {
  json j{{"spec", to_json(r.spec)},
         {"variety", r.variety},
         {"seed", r.seed},
         {"index", r.index},
         {"residual", record_residual(r)}};
  if (r.x) j["x"] = to_json(*r.x);
  if (record_is_base(r))
    j["point"] = to_json(std::get<RepPointd>(r.point));
  else
    j["point"] = to_json(std::get<DoubleRepPointd>(r.point));
  return j;
}

inline PointRecord record_from_json(const json& j) {
  PointRecord r;
  r.spec = spec_from_json(j.at("spec"));
  r.variety = j.at("variety").get<std::string>();
  if (j.contains("x")) r.x = su2_from_json(j.at("x"));
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("index")) r.index = j.at("index").get<std::uint64_t>();
  if (r.variety == "R")
    r.point = reppoint_from_json(j.at("point"));
  else if (r.variety == "Rtilde" || r.variety == "Nx")
    r.point = doublereppoint_from_json(j.at("point"));
  else
    throw InvalidElement("unknown variety '" + r.variety + "'");
  return r;
}

// First record of a file that is either one JSON object (possibly
// pretty-printed) or JSON-lines.
inline PointRecord load_point_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (!j.is_discarded()) return record_from_json(j);
    std::ifstream whole(path);
    std::stringstream ss;
    ss << whole.rdbuf();
    return record_from_json(json::parse(ss.str()));
  }
  throw Error("no point record in '" + path + "'");
}

}  // namespace goldman
