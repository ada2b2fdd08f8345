#include "definetti/fock.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include <unsupported/Eigen/MatrixFunctions>

namespace definetti::fock {

FockVector coherent_amplitudes(cplx alpha, int d) {
  if (d < 1) throw invalid_input("coherent_amplitudes: d must be >= 1");
  if (!finite(alpha)) throw invalid_input("coherent_amplitudes: alpha must be finite");
  FockVector v{d, cvec::Zero(d)};
  const double r = std::abs(alpha);
  if (r == 0.0) {
    v.amps[0] = 1.0;
    return v;
  }
  const double logr = std::log(r);
  const double ph = std::arg(alpha);
  for (int i = 0; i < d; ++i) {
    const double logmag = -0.5 * r * r + i * logr - 0.5 * std::lgamma(i + 1.0);
    v.amps[i] = std::polar(std::exp(logmag), i * ph);
  }
  return v;
}

ModeOperator annihilation(int d) {
  if (d < 2) throw invalid_input("annihilation: d must be >= 2");
  ModeOperator op{d, cmat::Zero(d, d)};
  for (int j = 1; j < d; ++j) op.entries(j - 1, j) = std::sqrt(static_cast<double>(j));
  return op;
}

int displacement_padding(cplx alpha, int d) {
  return d + static_cast<int>(std::ceil(10.0 * std::norm(alpha))) + 20;
}

cmat displacement_block(cplx alpha, int d, int dpad) {
  if (d < 1) throw invalid_input("displacement_block: d must be >= 1");
  if (!finite(alpha)) throw invalid_input("displacement_block: alpha must be finite");
  if (dpad < d) throw invalid_input("displacement_block: dpad must be >= d");
  if (dpad < 2) return cmat::Identity(d, d);
  const cmat a = annihilation(dpad).entries;
  const cmat gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const cmat e = gen.exp();
  return e.topLeftCorner(d, d);
}

ModeOperator displacement_matrix(cplx alpha, int d) {
  return ModeOperator{d, displacement_block(alpha, d, displacement_padding(alpha, d))};
}

double tail(cplx alpha, int d) {
  if (d < 1) throw invalid_input("tail: d must be >= 1");
  if (!finite(alpha)) throw invalid_input("tail: alpha must be finite");
  const double lambda = std::norm(alpha);
  if (lambda == 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(d), lambda);
}

int choose_dim(double alpha_max, double tol, int cap) {
  if (!(alpha_max >= 0) || !(tol > 0)) throw invalid_input("choose_dim: bad arguments");
  for (int d = 1; d < cap; ++d) {
    if (tail(alpha_max, d) <= tol) return d;
  }
  return cap;
}

}  // namespace definetti::fock
