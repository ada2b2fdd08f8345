#include "definetti/quadrature.hpp"

#include <cmath>
#include <unordered_set>

namespace definetti::quad {

double PhaseSpaceGrid::covered_area() const {
  double area = 0.0;
  for (double w : weights) area += w;
  return area;
}

namespace {

void check_params(double radius, double step) {
  // step > radius is allowed: the grid degenerates to the single node at the
  // disk center.
  if (!(radius > 0) || !std::isfinite(radius)) throw invalid_input("grid: radius must be > 0");
  if (!(step > 0) || !std::isfinite(step)) throw invalid_input("grid: step must be > 0");
}

struct LatticeKey {
  long long i, j;
  bool operator==(const LatticeKey& o) const { return i == o.i && j == o.j; }
};

struct LatticeKeyHash {
  std::size_t operator()(const LatticeKey& k) const {
    return std::hash<long long>()(k.i * 0x9e3779b97f4a7c15LL ^ k.j);
  }
};

PhaseSpaceGrid build_union(const std::vector<cplx>& centers, double radius, double step,
                           const char* scheme) {
  check_params(radius, step);
  if (centers.empty()) throw invalid_input("grid: no centers");
  for (cplx c : centers) {
    if (!finite(c)) throw invalid_input("grid: non-finite center");
  }
  PhaseSpaceGrid g;
  g.scheme = scheme;
  g.step = step;
  g.radius = radius;
  g.centers = centers;
  const cplx anchor = centers.front();
  std::unordered_set<LatticeKey, LatticeKeyHash> seen;
  for (cplx c : centers) {
    const long long i0 = static_cast<long long>(std::floor((c.real() - radius - anchor.real()) / step)) - 1;
    const long long i1 = static_cast<long long>(std::ceil((c.real() + radius - anchor.real()) / step)) + 1;
    const long long j0 = static_cast<long long>(std::floor((c.imag() - radius - anchor.imag()) / step)) - 1;
    const long long j1 = static_cast<long long>(std::ceil((c.imag() + radius - anchor.imag()) / step)) + 1;
    for (long long i = i0; i <= i1; ++i) {
      for (long long j = j0; j <= j1; ++j) {
        const cplx z = anchor + cplx(static_cast<double>(i) * step, static_cast<double>(j) * step);
        if (std::abs(z - c) > radius) continue;
        if (!seen.insert(LatticeKey{i, j}).second) continue;
        g.nodes.push_back(z);
        g.weights.push_back(step * step);
      }
    }
  }
  return g;
}

}  // namespace

PhaseSpaceGrid cartesian_grid(cplx center, double radius, double step) {
  return build_union({center}, radius, step, "cartesian");
}

PhaseSpaceGrid union_grid(const std::vector<cplx>& centers, double radius, double step) {
  return build_union(centers, radius, step, "adapted");
}

PhaseSpaceGrid profile_adapted_grid(const weights::SuperpositionProfile& profile, int n, int k,
                                    double target_tail, double step) {
  if (k < 1 || k >= n) throw invalid_input("profile_adapted_grid: need 1 <= k < n");
  if (!(target_tail > 0) || target_tail >= 1) {
    throw invalid_input("profile_adapted_grid: target_tail must be in (0, 1)");
  }
  const weights::SuperpositionProfile p = weights::merged(profile);
  const double r0 = std::sqrt(std::log(1.0 / target_tail) / (n - k));
  double h = step > 0 ? step : r0 / 20.0;
  h = std::min(h, r0 / 20.0);
  std::vector<cplx> centers;
  centers.reserve(p.components.size());
  for (const auto& comp : p.components) centers.push_back(comp.gamma);
  return build_union(centers, r0 + 2 * h, h, "adapted");
}

PhaseSpaceGrid refine(const PhaseSpaceGrid& grid, int factor) {
  if (factor < 2) throw invalid_input("refine: factor must be >= 2");
  return build_union(grid.centers, grid.radius, grid.step / factor, grid.scheme.c_str());
}

RichardsonReport richardson_report(const std::function<double(const PhaseSpaceGrid&)>& f,
                                   const PhaseSpaceGrid& grid) {
  const double coarse = f(grid);
  const double fine = f(refine(grid));
  return RichardsonReport{fine, std::abs(fine - coarse) / 3.0};
}

}  // namespace definetti::quad
