#include "definetti/bound.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace definetti {

namespace {

void require_cut(const weights::CoherentPowerState& psi, int k) {
  if (k < 1 || k >= psi.n) throw invalid_input("need 1 <= k < n");
  if (psi.c.size() != psi.w_max + 1) throw invalid_input("inconsistent CoherentPowerState");
}

double eigen_cut(const cmat& m) { return 1e-13 * m.cwiseAbs().maxCoeff(); }

cplx contract(const cvec& row, const cvec& v) { return (row.array() * v.array()).sum(); }

}  // namespace

cvec conditional_state(const weights::CoherentPowerState& psi, int k, cplx alpha,
                       const rmat& split) {
  require_cut(psi, k);
  const int w_max = psi.w_max;
  const int m = psi.n - k;
  const cvec row = weights::coherent_row(alpha, m, w_max);
  cvec v(w_max + 1);
  for (int j = 0; j <= w_max; ++j) {
    cplx acc = 0.0;
    for (int t = 0; t + j <= w_max; ++t) acc += psi.c[j + t] * split(j + t, j) * row[t];
    v[j] = acc;
  }
  return std::sqrt(m / std::numbers::pi) * v;
}

cvec conditional_state(const weights::CoherentPowerState& psi, int k, cplx alpha) {
  require_cut(psi, k);
  return conditional_state(psi, k, alpha, weights::split_table(psi.n, k, psi.w_max));
}

DeFinettiMeasure measure_nu(const weights::CoherentPowerState& psi, int k,
                            const quad::PhaseSpaceGrid& grid) {
  require_cut(psi, k);
  const rmat split = weights::split_table(psi.n, k, psi.w_max);
  DeFinettiMeasure out;
  out.grid = grid;
  out.nu = rvec(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cvec v = conditional_state(psi, k, grid.nodes[i], split);
    const cvec row = weights::coherent_row(grid.nodes[i], k, psi.w_max);
    out.nu[static_cast<Eigen::Index>(i)] = std::max(0.0, std::norm(contract(row, v)));
  }
  out.total_mass = blocked_accumulate<double>(
      grid.size(), 0.0,
      [&](double& acc, std::size_t i) {
        acc += grid.weights[i] * out.nu[static_cast<Eigen::Index>(i)];
      },
      [](double& acc, double x) { acc += x; });
  return out;
}

weights::WeightDensityOperator mixture_state(const DeFinettiMeasure& measure, int k, int w_max) {
  if (k < 1) throw invalid_input("mixture_state: k must be >= 1");
  if (w_max < 0) throw invalid_input("mixture_state: w_max must be >= 0");
  weights::WeightDensityOperator rho;
  rho.k = k;
  rho.w_max = w_max;
  rho.mat = blocked_accumulate<cmat>(
      measure.grid.size(), cmat::Zero(w_max + 1, w_max + 1),
      [&](cmat& acc, std::size_t i) {
        const double mass = measure.grid.weights[i] * measure.nu[static_cast<Eigen::Index>(i)];
        if (mass == 0.0) return;
        const cvec ket = weights::coherent_row(measure.grid.nodes[i], k, w_max).conjugate();
        acc.noalias() += mass * (ket * ket.adjoint());
      },
      [](cmat& acc, const cmat& x) { acc += x; });
  return rho;
}

double trace_norm(const cmat& m) {
  if (m.rows() != m.cols()) throw invalid_input("trace_norm: matrix must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw invalid_input("trace_norm: matrix is not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<cmat> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double cut = eigen_cut(m);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()[i];
    if (std::abs(ev) >= cut) sum += std::abs(ev);
  }
  return sum;
}

double singular_trace_norm(const cmat& m) {
  Eigen::BDCSVD<cmat> svd(m);
  const double cut = eigen_cut(m);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()[i];
    if (sv >= cut) sum += sv;
  }
  return sum;
}

cmat completeness_sum(const weights::CoherentPowerState& psi, int k,
                      const quad::PhaseSpaceGrid& grid) {
  require_cut(psi, k);
  const rmat split = weights::split_table(psi.n, k, psi.w_max);
  return blocked_accumulate<cmat>(
      grid.size(), cmat::Zero(psi.w_max + 1, psi.w_max + 1),
      [&](cmat& acc, std::size_t i) {
        const cvec v = conditional_state(psi, k, grid.nodes[i], split);
        acc.noalias() += grid.weights[i] * (v * v.adjoint());
      },
      [](cmat& acc, const cmat& x) { acc += x; });
}

namespace {

struct PassAccum {
  cmat sigma;   // integral of P^a rho^a P^a  (the approximating mixture)
  cmat projed;  // integral of P^a rho^a      (zeta integrand)
  double mass = 0.0;
  double theta = 0.0;
};

PassAccum grid_pass(const weights::CoherentPowerState& psi, int k, const rmat& split,
                    const quad::PhaseSpaceGrid& grid) {
  const int w1 = psi.w_max + 1;
  PassAccum zero{cmat::Zero(w1, w1), cmat::Zero(w1, w1), 0.0, 0.0};
  return blocked_accumulate<PassAccum>(
      grid.size(), zero,
      [&](PassAccum& acc, std::size_t i) {
        const double w = grid.weights[i];
        const cvec v = conditional_state(psi, k, grid.nodes[i], split);
        const cvec row = weights::coherent_row(grid.nodes[i], k, psi.w_max);
        const cplx ip = (row.array() * v.array()).sum();  // <alpha|^k |Psi_k^alpha>
        const double nu = std::max(0.0, std::norm(ip));
        const cvec ket = row.conjugate();
        acc.sigma.noalias() += (w * nu) * (ket * ket.adjoint());
        acc.projed.noalias() += (w * ip) * (ket * v.adjoint());
        acc.mass += w * nu;
        acc.theta += w * std::max(0.0, v.squaredNorm() - nu);
      },
      [](PassAccum& acc, const PassAccum& x) {
        acc.sigma += x.sigma;
        acc.projed += x.projed;
        acc.mass += x.mass;
        acc.theta += x.theta;
      });
}

}  // namespace

BoundReport verify_bound(const weights::CoherentPowerState& psi, int k,
                         const quad::PhaseSpaceGrid& grid) {
  require_cut(psi, k);
  const rmat split = weights::split_table(psi.n, k, psi.w_max);
  const weights::WeightDensityOperator rho = weights::reduced_state(psi, k);

  const PassAccum coarse = grid_pass(psi, k, split, grid);
  const quad::PhaseSpaceGrid fine_grid = quad::refine(grid);
  const PassAccum fine = grid_pass(psi, k, split, fine_grid);

  BoundReport rep;
  rep.n = psi.n;
  rep.k = k;
  rep.w_max = psi.w_max;
  rep.nodes = fine_grid.size();
  rep.grid_step = fine_grid.step;
  rep.grid_radius = fine_grid.radius;
  rep.trace = rho.mat.trace().real();
  rep.total_mass = fine.mass;
  rep.quad_error = std::abs(fine.mass - coarse.mass) / 3.0;
  rep.mass_error = std::abs(fine.sigma.trace().real() - fine.mass);
  rep.theta = fine.theta;
  rep.delta_full = trace_norm(rho.mat - fine.sigma);
  rep.delta_half = rep.delta_full / 2.0;
  rep.zeta = singular_trace_norm(rho.mat - fine.projed);
  rep.eta = singular_trace_norm(rho.mat - fine.projed.adjoint());
  rep.bound_paper = 1.5 * k / psi.n;
  rep.bound_conservative = 3.0 * k / psi.n;
  rep.quad_warning = rep.quad_error > 0.1 * rep.bound_paper;
  rep.half_convention_ok = rep.delta_half <= rep.bound_paper + 1e-12;
  rep.conservative_ok = rep.delta_full <= rep.bound_conservative + rep.quad_error + 1e-9;
  return rep;
}

}  // namespace definetti
