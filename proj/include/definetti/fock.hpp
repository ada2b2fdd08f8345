#pragma once

#include "definetti/common.hpp"

namespace definetti::fock {

// Amplitudes of a single truncated mode; amps[i] multiplies |i>.
struct FockVector {
  int dim = 0;
  cvec amps;
};

// Dense single-mode operator (annihilation, displacement, ...).
struct ModeOperator {
  int dim = 0;
  cmat entries;
};

// amps[i] = e^{-|alpha|^2/2} alpha^i / sqrt(i!), assembled in
// log-magnitude/phase form so large i stays stable.
FockVector coherent_amplitudes(cplx alpha, int d);

// <i|a|j> = sqrt(j) delta_{i,j-1}; requires d >= 2.
ModeOperator annihilation(int d);

// Top-left d x d block of exp(alpha a^dag - conj(alpha) a), evaluated at the
// padded dimension `dpad` (skew-Hermitian generator, so the padded matrix is
// exactly unitary) and cropped.
cmat displacement_block(cplx alpha, int d, int dpad);

// Default padding rule: d + ceil(10 |alpha|^2) + 20.
int displacement_padding(cplx alpha, int d);

ModeOperator displacement_matrix(cplx alpha, int d);

// sum_{i >= d} e^{-|alpha|^2} |alpha|^{2i} / i!  (regularized lower
// incomplete gamma P(d, |alpha|^2)); in [0, 1].
double tail(cplx alpha, int d);

// Smallest d with tail(alpha_max, d) <= tol, capped.
int choose_dim(double alpha_max, double tol = 1e-14, int cap = 512);

}  // namespace definetti::fock
