#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "definetti/bound.hpp"
#include "definetti/weight_basis.hpp"

namespace definetti::io {

// Doubles are serialized with 17 significant digits so identical runs emit
// byte-identical reports.
std::string fmt17(double v);

// Minimal ordered JSON emitter (nlohmann re-serializes doubles with its own
// shortest-representation rule, which does not match the 17-digit contract).
class JsonObj {
 public:
  JsonObj& put(const std::string& key, double v);
  JsonObj& put(const std::string& key, int v);
  JsonObj& put(const std::string& key, std::uint64_t v);
  JsonObj& put(const std::string& key, bool v);
  JsonObj& put_str(const std::string& key, const std::string& v);
  JsonObj& put_raw(const std::string& key, const std::string& raw);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

std::string json_array(const std::vector<std::string>& raw_items);
std::string json_escape(const std::string& s);

// Parsed profile file: component list plus run parameters.
struct ProfileFile {
  weights::SuperpositionProfile profile;
  int n = 0;
  int k = 0;
  int w_max = -1;            // optional override; -1 = chooser
  double grid_step = 0.0;    // 0 = scheme default
  double target_tail = 1e-10;
};

ProfileFile parse_profile_json(const std::string& text);
ProfileFile parse_profile_file(const std::string& path);
std::string profile_to_json(const ProfileFile& pf);

JsonObj bound_report_json(const BoundReport& rep);

inline const char* kSweepCsvHeader =
    "n,k,w_max,nodes,delta_full,delta_half,zeta,eta,theta,bound_paper,bound_conservative,"
    "mass_error,quad_error";

std::string bound_report_csv_row(const BoundReport& rep);

}  // namespace definetti::io
