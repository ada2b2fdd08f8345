#pragma once

#include <vector>

#include "definetti/common.hpp"

namespace definetti::weights {

// One coherent component of |Psi> ~ sum_j weight_j |gamma_j>^{(x) n}.
struct ProfileComponent {
  cplx gamma;
  cplx weight;
};

// Finite stand-in for a continuous superposition integral d(gamma) c_gamma;
// samplers (see the CLI) discretize continuous profiles into this.
struct SuperpositionProfile {
  std::vector<ProfileComponent> components;
};

void validate(const SuperpositionProfile& profile);

// Components with coincident gamma merged (weights summed); keeps the Gram
// matrix well conditioned.
SuperpositionProfile merged(const SuperpositionProfile& profile);

// Norm of the unnormalized superposition from the analytic Gram matrix
// <gamma_i|gamma_j>^n; exact regardless of any weight truncation.
double profile_norm(const SuperpositionProfile& profile, int n);

// |Psi> in the weight basis: c[w] multiplies |w>.
struct CoherentPowerState {
  int n = 0;
  int w_max = 0;
  cvec c;
  double tail_mass = 0.0;  // declared truncation deficit 1 - sum |c_w|^2
};

// Reduced k-mode operator in the |j>_k weight basis.
struct WeightDensityOperator {
  int k = 0;
  int w_max = 0;
  cmat mat;
};

// Smallest W whose discarded weight mass, bounded by
// (sum_j |weight_j| sqrt(tail(sqrt(n) gamma_j, W+1)))^2, is <= tol relative
// to the squared profile norm. Capped.
int choose_w_max(const SuperpositionProfile& profile, int n, double tol = 1e-10, int cap = 4096);

// w_max < 0 delegates to choose_w_max. Throws truncation_error (carrying the
// smallest adequate w_max) if the declared tail exceeds 1e-9.
CoherentPowerState from_profile(const SuperpositionProfile& profile, int n, int w_max = -1);

// Dense tensor representation of |w>_n at per-mode truncation d (> w):
// amplitude n^{-w/2} sqrt(w!/(y_1!...y_n!)) on each word with sum y_i = w.
// Index encoding is base-d big-endian (x_1 most significant).
rvec weight_state_dense(int n, int w, int d);

// Coefficient of |j>_k (x) |w-j>_{n-k} in |w>_n:
// sqrt(C(w,j) (k/n)^j ((n-k)/n)^{w-j}).
double split_amplitude(int n, int k, int w, int j);

// s(w, j) = split_amplitude(n, k, w, j) for all 0 <= j <= w <= w_max.
rmat split_table(int n, int k, int w_max);

// tr_{n-k} |Psi><Psi| in the weight basis of the first k modes.
WeightDensityOperator reduced_state(const CoherentPowerState& psi, int k);

// Row vector <alpha|^{(x) m} |w>_m = e^{-m|alpha|^2/2} (sqrt(m) conj(alpha))^w / sqrt(w!).
cvec coherent_row(cplx alpha, int m, int w_max);

}  // namespace definetti::weights
