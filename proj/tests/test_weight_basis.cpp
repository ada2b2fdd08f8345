#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "definetti/fock.hpp"
#include "definetti/oracle.hpp"
#include "definetti/weight_basis.hpp"

using namespace definetti;
using weights::CoherentPowerState;
using weights::from_profile;
using weights::SuperpositionProfile;
using weights::weight_state_dense;

namespace {

SuperpositionProfile single(cplx gamma) { return {{{gamma, 1.0}}}; }

SuperpositionProfile even_cat(cplx gamma) { return {{{gamma, 1.0}, {-gamma, 1.0}}}; }

// Exact integer multinomial sum_{sum y = w} w!/(y_1!...y_n!) = n^w.
std::uint64_t multinomial_sum(int n, int w) {
  if (n == 1) return 1;
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(w, j)
  for (int j = 0; j <= w; ++j) {
    total += binom * multinomial_sum(n - 1, w - j);
    binom = binom * (w - j) / (j + 1);
  }
  return total;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("weight_state_dense: small cases") {
  const rvec w1 = weight_state_dense(2, 1, 2);  // (|01> + |10>)/sqrt(2)
  CHECK(w1.size() == 4);
  CHECK(std::abs(w1[1] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(w1[2] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(w1[0] == 0.0);
  CHECK(w1[3] == 0.0);

  // (1/2)|02> + (1/sqrt(2))|11> + (1/2)|20>
  const rvec w2 = weight_state_dense(2, 2, 3);
  CHECK(std::abs(w2[0 * 3 + 2] - 0.5) < 1e-15);
  CHECK(std::abs(w2[1 * 3 + 1] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(w2[2 * 3 + 0] - 0.5) < 1e-15);
  CHECK(std::abs(w2.squaredNorm() - 1.0) < 1e-14);

  CHECK_THROWS_AS(weight_state_dense(2, 3, 3), invalid_input);
}

TEST_CASE("weight_state_dense: unit norm via the multinomial identity") {
  for (int n = 1; n <= 4; ++n) {
    for (int w = 0; w <= 6; ++w) {
      CHECK(multinomial_sum(n, w) == ipow(n, w));
      const rvec v = weight_state_dense(n, w, w + 1);
      CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("from_profile: vacuum, closed form, dense projection oracle") {
  const CoherentPowerState vac = from_profile(single(0.0), 5);
  CHECK(std::abs(vac.c[0] - 1.0) < 1e-15);
  CHECK(vac.c.tail(vac.w_max).cwiseAbs().maxCoeff() == 0.0);

  const cplx gamma(0.55, -0.35);
  const int n = 3;
  const CoherentPowerState psi = from_profile(single(gamma), n);
  // Closed form: the weight coefficients of |gamma>^{(x)n} form the coherent
  // state of amplitude sqrt(n) gamma.
  const cvec expect = fock::coherent_amplitudes(std::sqrt(3.0) * gamma, psi.w_max + 1).amps;
  CHECK((psi.c - expect).cwiseAbs().maxCoeff() < 1e-14);

  // Dense oracle: project the tensor power onto the dense weight vectors.
  const int d = 16;
  const cvec dense = oracle::tensor_power(fock::coherent_amplitudes(gamma, d), n).amps;
  for (int w = 0; w < d && w <= psi.w_max; ++w) {
    const cplx proj = weight_state_dense(n, w, d).cast<cplx>().dot(dense);
    CHECK(std::abs(proj - psi.c[w]) < 1e-12);
  }
}

TEST_CASE("from_profile: even cat kills odd weights") {
  const CoherentPowerState psi = from_profile(even_cat(cplx(0.8, 0.3)), 4);
  for (int w = 1; w <= psi.w_max; w += 2) CHECK(std::abs(psi.c[w]) < 1e-14);
  CHECK(std::abs(psi.c.squaredNorm() + psi.tail_mass - 1.0) < 1e-12);
}

TEST_CASE("from_profile: truncation error carries the smallest adequate w_max") {
  try {
    from_profile(single(1.0), 8, 4);  // mean weight 8, so w_max=4 is hopeless
    FAIL("expected truncation_error");
  } catch (const truncation_error& e) {
    CHECK(e.w_max_needed > 4);
    const CoherentPowerState ok = from_profile(single(1.0), 8, e.w_max_needed);
    CHECK(ok.tail_mass <= 1e-9);
  }
}

TEST_CASE("from_profile: coincident components are merged") {
  const SuperpositionProfile dup{{{cplx(0.5, 0.0), 0.75}, {cplx(0.5, 0.0), 0.25}}};
  const CoherentPowerState a = from_profile(dup, 3);
  const CoherentPowerState b = from_profile(single(0.5), 3);
  CHECK((a.c - b.c).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("split_amplitude: values, normalization, reshape oracle") {
  CHECK(std::abs(weights::split_amplitude(2, 1, 1, 0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(weights::split_amplitude(2, 2, 1, 0), invalid_input);
  CHECK_THROWS_AS(weights::split_amplitude(3, 1, 2, 3), invalid_input);

  for (int w = 0; w <= 50; ++w) {
    double sum = 0.0;
    for (int j = 0; j <= w; ++j) {
      const double s = weights::split_amplitude(7, 3, w, j);
      sum += s * s;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }

  // |w>_3 reshaped across the 1|2 cut matches the split coefficients.
  const int d = 4, w = 2;
  const rvec whole = weight_state_dense(3, w, d);
  rvec rebuilt = rvec::Zero(whole.size());
  for (int j = 0; j <= w; ++j) {
    const rvec left = weight_state_dense(1, j, d);
    const rvec right = weight_state_dense(2, w - j, d);
    const double s = weights::split_amplitude(3, 1, w, j);
    for (int a = 0; a < d; ++a) {
      for (int e = 0; e < d * d; ++e) rebuilt[a * d * d + e] += s * left[a] * right[e];
    }
  }
  CHECK((whole - rebuilt).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("split rows act as an isometry on the weight basis") {
  const int n = 9, k = 4, w_hi = 40;
  const rmat s = weights::split_table(n, k, w_hi);
  for (int w = 0; w <= w_hi; ++w) {
    for (int wp = w; wp <= w_hi; ++wp) {
      // <w|w'> through the split: sum_j s(w,j) s(w',j') with matching
      // right-hand weights w-j = w'-j' forces j' = j + (w'-w).
      double ip = 0.0;
      for (int j = 0; j <= w; ++j) {
        const int jp = j + (wp - w);
        if (jp <= wp) ip += s(w, j) * s(wp, jp);
      }
      CHECK(std::abs(ip - (w == wp ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("reduced_state: vacuum and product reductions") {
  const CoherentPowerState vac = from_profile(single(0.0), 4);
  const weights::WeightDensityOperator rv = weights::reduced_state(vac, 2);
  CHECK(std::abs(rv.mat(0, 0) - 1.0) < 1e-14);
  CHECK(rv.mat.cwiseAbs().sum() - std::abs(rv.mat(0, 0)) < 1e-14);

  // Product state: reduction is |gamma><gamma|^{(x)k}, i.e. the coherent
  // weight encoding at sqrt(k) gamma.
  const cplx gamma(0.4, 0.25);
  const int n = 5, k = 2;
  const CoherentPowerState psi = from_profile(single(gamma), n);
  const weights::WeightDensityOperator red = weights::reduced_state(psi, k);
  const cvec ck = fock::coherent_amplitudes(std::sqrt(double(k)) * gamma, red.w_max + 1).amps;
  // Agreement is limited by the w_max truncation of psi (chooser target 1e-10).
  CHECK((red.mat - ck * ck.adjoint()).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(weights::reduced_state(psi, n), invalid_input);
}

TEST_CASE("reduced_state: trace, hermiticity, positivity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(-0.9, 0.9);
  for (int trial = 0; trial < 6; ++trial) {
    SuperpositionProfile p;
    const int ncomp = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ncomp; ++i) {
      p.components.push_back({cplx(uni(rng), uni(rng)), cplx(uni(rng) + 1.2, uni(rng))});
    }
    const int n = 3 + static_cast<int>(rng() % 5);
    const CoherentPowerState psi = from_profile(p, n);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    const weights::WeightDensityOperator red = weights::reduced_state(psi, k);
    CHECK(std::abs(red.mat.trace().real() - psi.c.squaredNorm()) < 1e-12);
    CHECK((red.mat - red.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<cmat> es(red.mat, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("reduced_state matches the dense partial trace (even cat)") {
  const int n = 3, k = 1, d = 12;
  CoherentPowerState psi = from_profile(even_cat(0.5), n);
  // Crop to what the dense side can represent; both routes then carry the
  // same (sub-normalized) state.
  if (psi.w_max > d - 1) {
    psi.c.conservativeResize(d);
    psi.w_max = d - 1;
  }
  const oracle::DenseState dense = oracle::state_from_weights(psi, d);
  const oracle::DenseOperator rho_dense = oracle::partial_trace(oracle::outer(dense), k);
  const cmat embedded = oracle::embed_weight_operator(weights::reduced_state(psi, k), d);
  CHECK((rho_dense.mat - embedded).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("coherent_row: vacuum, dense contraction oracle, norm vs tail") {
  const cvec row0 = weights::coherent_row(0.0, 3, 6);
  CHECK(std::abs(row0[0] - 1.0) < 1e-15);
  CHECK(row0.tail(6).cwiseAbs().maxCoeff() == 0.0);

  const cplx alpha(0.6, -0.2);
  const int m = 3, d = 12;
  const cvec bra = oracle::tensor_power(fock::coherent_amplitudes(alpha, d), m).amps;
  for (int w = 0; w <= 8; ++w) {
    const cplx got = bra.dot(weight_state_dense(m, w, d).cast<cplx>());
    const cvec row = weights::coherent_row(alpha, m, w);
    CHECK(std::abs(got - row[w]) < 1e-13);
  }

  const int w_max = 10;
  const cvec row = weights::coherent_row(alpha, m, w_max);
  const double expect = 1.0 - fock::tail(std::sqrt(double(m)) * alpha, w_max + 1);
  CHECK(std::abs(row.squaredNorm() - expect) < 1e-12);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(weights::validate(SuperpositionProfile{}), invalid_input);
  SuperpositionProfile zero{{{cplx(1, 0), 0.0}}};
  CHECK_THROWS_AS(weights::validate(zero), invalid_input);
  SuperpositionProfile bad{{{cplx(std::nan(""), 0), 1.0}}};
  CHECK_THROWS_AS(weights::validate(bad), invalid_input);
}
