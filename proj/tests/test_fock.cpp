#include <cmath>
#include <random>

#include <doctest.h>

#include "definetti/fock.hpp"

using namespace definetti;
using fock::coherent_amplitudes;
using fock::tail;

namespace {

// Direct series oracle for <alpha|beta> at large truncation.
cplx overlap_series(cplx alpha, cplx beta, int d) {
  const cvec a = coherent_amplitudes(alpha, d).amps;
  const cvec b = coherent_amplitudes(beta, d).amps;
  return a.dot(b);  // sum conj(a_i) b_i
}

}  // namespace

TEST_CASE("coherent amplitudes: vacuum and direct substitution") {
  const cvec v0 = coherent_amplitudes(0.0, 5).amps;
  CHECK(v0[0] == cplx(1.0, 0.0));
  for (int i = 1; i < 5; ++i) CHECK(std::abs(v0[i]) == 0.0);

  const cvec v1 = coherent_amplitudes(1.0, 2).amps;
  CHECK(std::abs(v1[0] - std::exp(-0.5)) < 1e-15);
  CHECK(std::abs(v1[1] - std::exp(-0.5)) < 1e-15);
}

TEST_CASE("coherent amplitudes: overlap matches e^{conj(a)b - |a|^2/2 - |b|^2/2}") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx a(uni(rng), uni(rng));
    const cplx b(uni(rng), uni(rng));
    const cplx expect = std::exp(std::conj(a) * b - 0.5 * std::norm(a) - 0.5 * std::norm(b));
    const cplx got = overlap_series(a, b, 128);
    CHECK(std::abs(got - expect) < 1e-12);
  }
}

TEST_CASE("coherent amplitudes: invalid input") {
  CHECK_THROWS_AS(coherent_amplitudes(cplx(std::nan(""), 0.0), 4), invalid_input);
  CHECK_THROWS_AS(coherent_amplitudes(1.0, 0), invalid_input);
}

TEST_CASE("annihilation: matrix elements") {
  const cmat a2 = fock::annihilation(2).entries;
  CHECK(a2(0, 1) == cplx(1.0, 0.0));
  CHECK(a2(0, 0) == cplx(0.0, 0.0));
  CHECK(a2(1, 0) == cplx(0.0, 0.0));
  CHECK(a2(1, 1) == cplx(0.0, 0.0));

  const cmat a3 = fock::annihilation(3).entries;
  cvec two = cvec::Zero(3);
  two[2] = 1.0;
  const cvec lowered = a3 * two;
  CHECK(std::abs(lowered[1] - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(lowered[0]) == 0.0);
  CHECK(std::abs(lowered[2]) == 0.0);

  CHECK_THROWS_AS(fock::annihilation(1), invalid_input);
}

TEST_CASE("annihilation: coherent states are approximate eigenstates") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const cplx alpha(uni(rng), uni(rng));
    const int d = 24;
    const cvec v = coherent_amplitudes(alpha, d).amps;
    const cvec resid = fock::annihilation(d).entries * v - alpha * v;
    // Only the top component survives: |alpha| * |A_{d-1}|, within the tail.
    CHECK(resid.squaredNorm() <= std::norm(alpha) * tail(alpha, d - 1) * (1 + 1e-12));
  }
}

TEST_CASE("displacement: identity at alpha = 0 and column 0") {
  const cmat d0 = fock::displacement_matrix(0.0, 4).entries;
  CHECK((d0 - cmat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  const cplx alpha(0.7, -0.4);
  const cmat dm = fock::displacement_matrix(alpha, 10).entries;
  const cvec col0 = coherent_amplitudes(alpha, 10).amps;
  CHECK((dm.col(0) - col0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("displacement: composition law D(x)D(y) = e^{(x conj(y) - conj(x) y)/2} D(x+y)") {
  const cplx x(0.6, 0.3), y(-0.4, 0.5);
  const int d = 8;
  // Shared padding keeps the cropped product faithful to the operator product.
  const int dpad = std::max(fock::displacement_padding(x, d) + fock::displacement_padding(y, d),
                            fock::displacement_padding(x + y, d));
  const cmat ex = fock::displacement_block(x, dpad, dpad);
  const cmat ey = fock::displacement_block(y, dpad, dpad);
  const cmat exy = fock::displacement_block(x + y, d, dpad);
  const cplx phase = std::exp(0.5 * (x * std::conj(y) - std::conj(x) * y));
  const cmat lhs = (ex * ey).topLeftCorner(d, d);
  CHECK((lhs - phase * exy).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("displacement: padded exponential is unitary, block converges with padding") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int trial = 0; trial < 6; ++trial) {
    cplx alpha(uni(rng), uni(rng));
    if (std::abs(alpha) > 3.0) alpha *= 3.0 / std::abs(alpha);
    const int d = 10;
    const int dpad = fock::displacement_padding(alpha, d);
    const cmat e = fock::displacement_block(alpha, dpad, dpad);
    CHECK((e.adjoint() * e - cmat::Identity(dpad, dpad)).cwiseAbs().maxCoeff() < 1e-12);

    const cmat blk = fock::displacement_block(alpha, d, dpad);
    const cmat blk_wider = fock::displacement_block(alpha, d, dpad + 16);
    const double drift = (blk - blk_wider).cwiseAbs().maxCoeff();
    CHECK(drift <= std::max(10.0 * tail(alpha, dpad - d), 1e-12));
  }
}

TEST_CASE("tail: partial-sum oracle, endpoints, monotonicity") {
  CHECK(tail(0.0, 1) == 0.0);

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uni(0.05, 3.0);
  for (int trial = 0; trial < 12; ++trial) {
    const cplx alpha(uni(rng), uni(rng) - 1.5);
    const double lambda = std::norm(alpha);
    for (int d : {1, 2, 5, 11}) {
      double partial = 0.0, term = std::exp(-lambda);
      for (int i = 0; i < d; ++i) {
        partial += term;
        term *= lambda / (i + 1);
      }
      CHECK(std::abs(tail(alpha, d) - (1.0 - partial)) < 1e-12);
    }
    double prev = tail(alpha, 1);
    for (int d = 2; d <= 24; ++d) {
      const double t = tail(alpha, d);
      CHECK(t <= prev + 1e-15);
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
      prev = t;
    }
  }
}

TEST_CASE("norm + tail = 1") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    cplx alpha(uni(rng), uni(rng));
    if (std::abs(alpha) > 3.0) alpha *= 3.0 / std::abs(alpha);
    std::uniform_int_distribution<int> dd(1, 64);
    const int d = dd(rng);
    const double norm2 = coherent_amplitudes(alpha, d).amps.squaredNorm();
    CHECK(std::abs(norm2 + tail(alpha, d) - 1.0) < 1e-12);
  }
}

TEST_CASE("choose_dim: smallest adequate truncation") {
  const int d = fock::choose_dim(1.0);
  CHECK(tail(1.0, d) <= 1e-14);
  CHECK((d == 1 || tail(1.0, d - 1) > 1e-14));
  CHECK(fock::choose_dim(100.0) == 512);  // cap
}
