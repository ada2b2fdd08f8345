#pragma once

#include <iosfwd>

#include "definetti/common.hpp"
#include "definetti/fock.hpp"
#include "definetti/quadrature.hpp"
#include "definetti/weight_basis.hpp"

namespace definetti::oracle {

// Dense n-mode state, per-mode truncation d. Word x_1...x_n is encoded
// base-d big-endian: index = sum_i x_i d^{n-i} (x_1 most significant).
struct DenseState {
  int n = 0;
  int d = 0;
  cvec amps;
};

// Dense operator over n modes (d^n square) or over k modes after reduction.
struct DenseOperator {
  int n = 0;
  int d = 0;
  cmat mat;
  bool hermitian = false;
};

DenseState tensor_power(const fock::FockVector& v, int n);

// sum_w c_w |w>_n as a dense vector (requires d > w_max).
DenseState state_from_weights(const weights::CoherentPowerState& psi, int d);

DenseOperator outer(const DenseState& s);

// Partial trace over the last n-k modes; trace preserved.
DenseOperator partial_trace(const DenseOperator& rho, int k);

// The (n-k)-mode block M = ((n-k)/pi) sum_i w_i (|a_i><a_i|)^{(x)(n-k)} of
// Lambda_{n,k} = I_{d^k} (x) M, with truncated coherent vectors.
cmat lambda_block(int n, int k, int d, const quad::PhaseSpaceGrid& grid);

// Full d^n x d^n assembly; gated to n <= 3, d <= 16.
DenseOperator lambda_dense(int n, int k, int d, const quad::PhaseSpaceGrid& grid);

// Lambda applied to a state through the block form (no d^{2n} storage).
DenseState lambda_apply(int n, int k, int d, const quad::PhaseSpaceGrid& grid,
                        const DenseState& psi);

// Apply the same single-mode operator to every mode (the action of
// op^{(x) n} without materializing it).
DenseState apply_modewise(const cmat& op, const DenseState& psi);

// max-abs component of (Lambda D^{(x)n} - D^{(x)n} Lambda)|0...0>. This is the
// commutation actually used by the identity proof, and its residual decays to
// a truncation floor under grid refinement.
double commutator_check(int n, int k, cplx alpha, int d, const quad::PhaseSpaceGrid& grid);

// max-abs entry of the full matrix Lambda D^{(x)n} - D^{(x)n} Lambda.
// Diagnostic only: at fixed d this has an O(1e-2)-scale truncation floor set
// by displacement leakage across the Fock cutoff (exactly 0 at alpha = 0).
double commutator_matrix_residual(int n, int k, cplx alpha, int d,
                                  const quad::PhaseSpaceGrid& grid);

// Embed a weight-basis k-mode operator densely via weight_state_dense.
cmat embed_weight_operator(const weights::WeightDensityOperator& rho, int d);

// Debug dumps: header (magic "DFTD", version, kind, n, d, rows, cols), then
// row-major little-endian (float64 re, float64 im) pairs.
void dump(const DenseState& s, std::ostream& os);
void dump(const DenseOperator& op, std::ostream& os);
DenseState load_state(std::istream& is);
DenseOperator load_operator(std::istream& is);

}  // namespace definetti::oracle
