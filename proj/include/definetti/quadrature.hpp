#pragma once

#include <functional>
#include <string>
#include <vector>

#include "definetti/common.hpp"
#include "definetti/weight_basis.hpp"

namespace definetti::quad {

// Midpoint-rule discretization of the phase-space integral d^2 alpha: nodes
// on a square lattice of pitch `step` (each node the midpoint of its cell,
// weight step^2), restricted to one disk or to a union of disks.
struct PhaseSpaceGrid {
  std::vector<cplx> nodes;
  std::vector<double> weights;
  std::string scheme;        // "cartesian" or "adapted"
  double step = 0.0;
  double radius = 0.0;       // per-disk radius
  std::vector<cplx> centers;

  double covered_area() const;
  std::size_t size() const { return nodes.size(); }
};

// Disk of radius `radius` around `center`; lattice anchored at the center so
// the center itself is a node.
PhaseSpaceGrid cartesian_grid(cplx center, double radius, double step);

// Union of equal-radius disks around the given centers. All disks share one
// lattice (anchored at the first center), so overlap dedup is exact: a node
// is kept by the first disk that covers it.
PhaseSpaceGrid union_grid(const std::vector<cplx>& centers, double radius, double step);

// Disks around the profile's component amplitudes, sized for the integrands of
// the k-of-n reduction: radius sqrt(ln(1/target_tail)/(n-k)) + 2h, step
// defaulting to radius/20 (step <= 0 requests the default).
PhaseSpaceGrid profile_adapted_grid(const weights::SuperpositionProfile& profile, int n, int k,
                                    double target_tail, double step = 0.0);

// Same covered disks, lattice pitch divided by `factor`.
PhaseSpaceGrid refine(const PhaseSpaceGrid& grid, int factor = 2);

struct RichardsonReport {
  double value = 0.0;           // functional at step h/2
  double error_estimate = 0.0;  // |I_{h/2} - I_h| / 3
};

// Second-order extrapolation residual for a grid functional under one step
// halving.
RichardsonReport richardson_report(const std::function<double(const PhaseSpaceGrid&)>& f,
                                   const PhaseSpaceGrid& grid);

}  // namespace definetti::quad
