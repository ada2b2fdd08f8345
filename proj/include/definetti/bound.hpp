#pragma once

#include "definetti/common.hpp"
#include "definetti/quadrature.hpp"
#include "definetti/weight_basis.hpp"

namespace definetti {

// Density values nu(alpha_i) = tr(P^alpha rho_k^alpha) on a grid; total_mass
// is the grid integral. For a pure product state |beta>^{(x)n} the closed form
// is nu(alpha) = ((n-k)/pi) e^{-n|alpha-beta|^2} with mass (n-k)/n; general
// states stay sub-normalized and are not re-normalized here.
struct DeFinettiMeasure {
  quad::PhaseSpaceGrid grid;
  rvec nu;
  double total_mass = 0.0;
};

// One verification run. delta_full is the plain eigenvalue-sum trace norm of
// the difference; delta_half = delta_full / 2 is the other trace-distance
// convention. Both bounds are reported: bound_paper = 1.5 k/n pairs with the
// half convention, bound_conservative = 3 k/n with the full one.
struct BoundReport {
  int n = 0;
  int k = 0;
  double delta_full = 0.0;
  double delta_half = 0.0;
  double zeta = 0.0;
  double eta = 0.0;
  double theta = 0.0;
  double bound_paper = 0.0;
  double bound_conservative = 0.0;
  double mass_error = 0.0;  // |trace(mixture) - total_mass| (weight-truncation fold)
  double quad_error = 0.0;  // Richardson estimate on total_mass
  double total_mass = 0.0;
  double trace = 0.0;  // trace of the reduced state
  int w_max = 0;
  std::uint64_t nodes = 0;
  double grid_step = 0.0;
  double grid_radius = 0.0;
  bool quad_warning = false;        // quad_error > 10% of bound_paper
  bool half_convention_ok = false;  // delta_half <= 1.5 k/n
  bool conservative_ok = false;     // delta_full <= 3 k/n + quad_error + 1e-9
};

// Unnormalized |Psi_k^alpha> = sqrt((n-k)/pi) (I_k (x) <alpha|^{(x)(n-k)}) |Psi>
// in the k-mode weight basis; its outer product is rho_k^alpha.
cvec conditional_state(const weights::CoherentPowerState& psi, int k, cplx alpha);

// Variant reusing a precomputed split_table(n, k, w_max) across grid nodes.
cvec conditional_state(const weights::CoherentPowerState& psi, int k, cplx alpha,
                       const rmat& split);

DeFinettiMeasure measure_nu(const weights::CoherentPowerState& psi, int k,
                            const quad::PhaseSpaceGrid& grid);

// integral of (|alpha><alpha|)^{(x)k} nu(alpha) over the measure's grid, in
// the k-mode weight basis.
weights::WeightDensityOperator mixture_state(const DeFinettiMeasure& measure, int k, int w_max);

// Sum of |eigenvalues| of a Hermitian matrix (gate: max |M - M^dag| <= 1e-10).
double trace_norm(const cmat& m);

// Sum of singular values; the trace norm for matrices that are only
// Hermitian up to quadrature error (the zeta/eta integrands).
double singular_trace_norm(const cmat& m);

// integral of rho_k^alpha d^2alpha over the grid; converges to the reduced
// state (the completeness relation behind the construction).
cmat completeness_sum(const weights::CoherentPowerState& psi, int k,
                      const quad::PhaseSpaceGrid& grid);

// Full verification at the given grid: evaluates everything on the halved
// grid and uses the coarse pass for the Richardson mass estimate.
BoundReport verify_bound(const weights::CoherentPowerState& psi, int k,
                         const quad::PhaseSpaceGrid& grid);

}  // namespace definetti
