#include "definetti/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace definetti::io {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonObj& JsonObj::put(const std::string& key, double v) {
  items_.emplace_back(key, fmt17(v));
  return *this;
}

JsonObj& JsonObj::put(const std::string& key, int v) {
  items_.emplace_back(key, std::to_string(v));
  return *this;
}

JsonObj& JsonObj::put(const std::string& key, std::uint64_t v) {
  items_.emplace_back(key, std::to_string(v));
  return *this;
}

JsonObj& JsonObj::put(const std::string& key, bool v) {
  items_.emplace_back(key, v ? "true" : "false");
  return *this;
}

JsonObj& JsonObj::put_str(const std::string& key, const std::string& v) {
  items_.emplace_back(key, "\"" + json_escape(v) + "\"");
  return *this;
}

JsonObj& JsonObj::put_raw(const std::string& key, const std::string& raw) {
  items_.emplace_back(key, raw);
  return *this;
}

std::string JsonObj::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ",";
    out += "\"" + json_escape(items_[i].first) + "\":" + items_[i].second;
  }
  out += "}";
  return out;
}

std::string json_array(const std::vector<std::string>& raw_items) {
  std::string out = "[";
  for (std::size_t i = 0; i < raw_items.size(); ++i) {
    if (i) out += ",";
    out += raw_items[i];
  }
  out += "]";
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

cplx parse_pair(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw invalid_input(std::string("profile: ") + what + " must be [re, im]");
  }
  return cplx(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

ProfileFile parse_profile_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("profile: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw invalid_input("profile: top level must be an object");
  ProfileFile pf;
  if (!j.contains("components") || !j["components"].is_array() || j["components"].empty()) {
    throw invalid_input("profile: missing nonempty components array");
  }
  for (const auto& c : j["components"]) {
    if (!c.is_object()) throw invalid_input("profile: component must be an object");
    weights::ProfileComponent comp;
    comp.gamma = parse_pair(c.at("gamma"), "gamma");
    comp.weight = c.contains("weight") ? parse_pair(c["weight"], "weight") : cplx(1.0, 0.0);
    pf.profile.components.push_back(comp);
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) throw invalid_input("profile: missing integer n");
  if (!j.contains("k") || !j["k"].is_number_integer()) throw invalid_input("profile: missing integer k");
  pf.n = j["n"].get<int>();
  pf.k = j["k"].get<int>();
  if (j.contains("w_max")) {
    if (!j["w_max"].is_number_integer()) throw invalid_input("profile: w_max must be an integer");
    pf.w_max = j["w_max"].get<int>();
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) throw invalid_input("profile: grid must be an object");
    if (g.contains("step")) pf.grid_step = g["step"].get<double>();
    if (g.contains("target_tail")) pf.target_tail = g["target_tail"].get<double>();
  }
  if (pf.n < 1) throw invalid_input("profile: n must be >= 1");
  if (pf.k < 1 || pf.k >= pf.n) throw invalid_input("profile: need 1 <= k < n");
  if (pf.grid_step < 0 || pf.target_tail <= 0 || pf.target_tail >= 1) {
    throw invalid_input("profile: bad grid parameters");
  }
  weights::validate(pf.profile);
  return pf;
}

ProfileFile parse_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("profile: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_profile_json(ss.str());
}

std::string profile_to_json(const ProfileFile& pf) {
  std::vector<std::string> comps;
  for (const auto& c : pf.profile.components) {
    JsonObj o;
    o.put_raw("gamma", json_array({fmt17(c.gamma.real()), fmt17(c.gamma.imag())}));
    o.put_raw("weight", json_array({fmt17(c.weight.real()), fmt17(c.weight.imag())}));
    comps.push_back(o.str());
  }
  JsonObj grid;
  grid.put("step", pf.grid_step).put("target_tail", pf.target_tail);
  JsonObj top;
  top.put_raw("components", json_array(comps));
  top.put("n", pf.n).put("k", pf.k);
  if (pf.w_max >= 0) top.put("w_max", pf.w_max);
  top.put_raw("grid", grid.str());
  return top.str();
}

JsonObj bound_report_json(const BoundReport& rep) {
  JsonObj o;
  o.put("n", rep.n)
      .put("k", rep.k)
      .put("w_max", rep.w_max)
      .put("nodes", rep.nodes)
      .put("grid_step", rep.grid_step)
      .put("grid_radius", rep.grid_radius)
      .put("delta_full", rep.delta_full)
      .put("delta_half", rep.delta_half)
      .put("zeta", rep.zeta)
      .put("eta", rep.eta)
      .put("theta", rep.theta)
      .put("bound_paper", rep.bound_paper)
      .put("bound_conservative", rep.bound_conservative)
      .put("mass_error", rep.mass_error)
      .put("quad_error", rep.quad_error)
      .put("total_mass", rep.total_mass)
      .put("trace", rep.trace)
      .put("quad_warning", rep.quad_warning)
      .put("half_convention_ok", rep.half_convention_ok)
      .put("conservative_ok", rep.conservative_ok);
  return o;
}

std::string bound_report_csv_row(const BoundReport& rep) {
  std::string out;
  out += std::to_string(rep.n);
  out += "," + std::to_string(rep.k);
  out += "," + std::to_string(rep.w_max);
  out += "," + std::to_string(rep.nodes);
  out += "," + fmt17(rep.delta_full);
  out += "," + fmt17(rep.delta_half);
  out += "," + fmt17(rep.zeta);
  out += "," + fmt17(rep.eta);
  out += "," + fmt17(rep.theta);
  out += "," + fmt17(rep.bound_paper);
  out += "," + fmt17(rep.bound_conservative);
  out += "," + fmt17(rep.mass_error);
  out += "," + fmt17(rep.quad_error);
  return out;
}

}  // namespace definetti::io
