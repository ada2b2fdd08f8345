#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "definetti/common.hpp"

namespace definetti::cli {

// Exit code contract: 0 success, 1 assertion/bound failure, 2 resource
// budget, 3 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitInput = 3;

struct RunConfig {
  std::string profile_path;
  int n = 3;
  int k = 1;
  int d = 12;
  int w_max_override = -1;
  double grid_step = 0.0;    // 0 = scheme default
  double target_tail = 0.0;  // 0 = default (1e-10)
  double tolerance = 1e-6;
  std::string out_path;      // empty = stdout
  std::string format = "json";
  int workers = 1;
  std::uint64_t seed = 12345;
  std::vector<int> n_list;
  std::vector<int> k_list;
  // identity-check coherent test points; empty = default set (|alpha| <= 0.8)
  std::vector<cplx> alphas;
  // gaussian-profile parameters
  cplx center1{-0.5, 0.0};
  cplx center2{0.5, 0.0};
  double sigma = 0.08;
  int samples = 1;
};

// Two-peak sampler for continuous superpositions: midpoint nodes on the line
// through the peaks, Gaussian weights of width sigma, `samples` nodes per peak.
std::vector<std::pair<cplx, cplx>> gaussian_profile_components(cplx center1, cplx center2,
                                                               double sigma, int samples);

int cmd_identity_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gaussian_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Least-squares slope of log(delta) against log(n); NaN when fewer than two
// points.
double loglog_slope(const std::vector<std::pair<int, double>>& points);

}  // namespace definetti::cli
