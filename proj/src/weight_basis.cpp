#include "definetti/weight_basis.hpp"

#include <cmath>

#include "definetti/fock.hpp"

namespace definetti::weights {

void validate(const SuperpositionProfile& profile) {
  if (profile.components.empty()) throw invalid_input("profile: no components");
  bool nonzero = false;
  for (const auto& comp : profile.components) {
    if (!finite(comp.gamma) || !finite(comp.weight)) throw invalid_input("profile: non-finite entry");
    if (std::abs(comp.weight) > 0) nonzero = true;
  }
  if (!nonzero) throw invalid_input("profile: all weights zero");
}

SuperpositionProfile merged(const SuperpositionProfile& profile) {
  validate(profile);
  double scale = 0.0;
  for (const auto& comp : profile.components) scale = std::max(scale, std::abs(comp.gamma));
  const double eps = 1e-12 * (1.0 + scale);
  SuperpositionProfile out;
  for (const auto& comp : profile.components) {
    bool found = false;
    for (auto& kept : out.components) {
      if (std::abs(kept.gamma - comp.gamma) <= eps) {
        kept.weight += comp.weight;
        found = true;
        break;
      }
    }
    if (!found) out.components.push_back(comp);
  }
  return out;
}

double profile_norm(const SuperpositionProfile& profile, int n) {
  cplx n2 = 0.0;
  for (const auto& a : profile.components) {
    for (const auto& b : profile.components) {
      const cplx log_overlap =
          std::conj(a.gamma) * b.gamma - 0.5 * std::norm(a.gamma) - 0.5 * std::norm(b.gamma);
      n2 += std::conj(a.weight) * b.weight * std::exp(static_cast<double>(n) * log_overlap);
    }
  }
  return std::sqrt(std::max(0.0, n2.real()));
}

int choose_w_max(const SuperpositionProfile& profile, int n, double tol, int cap) {
  if (n < 1) throw invalid_input("choose_w_max: n must be >= 1");
  const SuperpositionProfile p = merged(profile);
  const double norm = profile_norm(p, n);
  if (!(norm > 0)) throw invalid_input("choose_w_max: profile has zero norm");
  const double sqrtn = std::sqrt(static_cast<double>(n));
  for (int w = 1; w < cap; ++w) {
    double bound = 0.0;
    for (const auto& comp : p.components) {
      bound += std::abs(comp.weight) * std::sqrt(fock::tail(sqrtn * comp.gamma, w + 1));
    }
    if (bound * bound <= tol * norm * norm) return w;
  }
  return cap;
}

CoherentPowerState from_profile(const SuperpositionProfile& profile, int n, int w_max) {
  if (n < 1) throw invalid_input("from_profile: n must be >= 1");
  const SuperpositionProfile p = merged(profile);
  if (w_max < 0) w_max = choose_w_max(p, n);

  const double norm = profile_norm(p, n);
  if (!(norm > 0)) throw invalid_input("from_profile: profile has zero norm");
  const double sqrtn = std::sqrt(static_cast<double>(n));

  CoherentPowerState psi;
  psi.n = n;
  psi.w_max = w_max;
  psi.c = cvec::Zero(w_max + 1);
  for (const auto& comp : p.components) {
    // |gamma>^{(x) n} is the single-mode coherent state of amplitude sqrt(n) gamma
    // in the weight basis.
    psi.c += comp.weight * fock::coherent_amplitudes(sqrtn * comp.gamma, w_max + 1).amps;
  }
  psi.c /= norm;
  psi.tail_mass = std::max(0.0, 1.0 - psi.c.squaredNorm());
  if (psi.tail_mass > 1e-9) {
    const int adequate = choose_w_max(p, n);
    throw truncation_error("from_profile: weight tail " + std::to_string(psi.tail_mass) +
                               " above 1e-9; smallest adequate w_max is " + std::to_string(adequate),
                           adequate);
  }
  return psi;
}

rvec weight_state_dense(int n, int w, int d) {
  if (n < 1 || w < 0) throw invalid_input("weight_state_dense: bad n or w");
  if (d <= w) throw invalid_input("weight_state_dense: need d > w (weight truncated away)");
  const std::uint64_t size = dense_size(d, n);
  if (size > amplitude_budget()) throw resource_error("weight_state_dense: d^n exceeds budget");

  rvec v = rvec::Zero(static_cast<Eigen::Index>(size));
  const double lw = std::lgamma(w + 1.0);
  const double logn = std::log(static_cast<double>(n));
  // Walk all compositions of w into n parts, tracking the word index and the
  // running sum of lgamma(y_i + 1).
  std::vector<int> word(n, 0);
  word[n - 1] = w;
  auto emit = [&] {
    double lg = 0.0;
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      lg += std::lgamma(word[i] + 1.0);
      idx = idx * d + static_cast<std::uint64_t>(word[i]);
    }
    v[static_cast<Eigen::Index>(idx)] = std::exp(0.5 * (lw - lg) - 0.5 * w * logn);
  };
  emit();
  // Next composition in colex-style order.
  while (true) {
    int i = n - 1;
    while (i > 0 && word[i] == 0) --i;
    if (i == 0) break;
    const int rest = word[i] - 1;
    ++word[i - 1];
    word[i] = 0;
    word[n - 1] = rest;
    emit();
  }
  return v;
}

double split_amplitude(int n, int k, int w, int j) {
  if (k < 1 || k >= n) throw invalid_input("split_amplitude: need 1 <= k < n");
  if (w < 0 || j < 0 || j > w) throw invalid_input("split_amplitude: need 0 <= j <= w");
  const double log_binom = std::lgamma(w + 1.0) - std::lgamma(j + 1.0) - std::lgamma(w - j + 1.0);
  const double log_p = std::log(static_cast<double>(k) / n);
  const double log_q = std::log(static_cast<double>(n - k) / n);
  return std::exp(0.5 * (log_binom + j * log_p + (w - j) * log_q));
}

rmat split_table(int n, int k, int w_max) {
  if (k < 1 || k >= n) throw invalid_input("split_table: need 1 <= k < n");
  if (w_max < 0) throw invalid_input("split_table: w_max must be >= 0");
  rmat s = rmat::Zero(w_max + 1, w_max + 1);
  std::vector<double> lg(w_max + 2);
  for (int i = 0; i <= w_max + 1; ++i) lg[i] = std::lgamma(i + 1.0);
  const double log_p = std::log(static_cast<double>(k) / n);
  const double log_q = std::log(static_cast<double>(n - k) / n);
  for (int w = 0; w <= w_max; ++w) {
    for (int j = 0; j <= w; ++j) {
      s(w, j) = std::exp(0.5 * (lg[w] - lg[j] - lg[w - j] + j * log_p + (w - j) * log_q));
    }
  }
  return s;
}

WeightDensityOperator reduced_state(const CoherentPowerState& psi, int k) {
  if (k < 1 || k >= psi.n) throw invalid_input("reduced_state: need 1 <= k < n");
  const int w_max = psi.w_max;
  const rmat s = split_table(psi.n, k, w_max);
  WeightDensityOperator rho;
  rho.k = k;
  rho.w_max = w_max;
  rho.mat = cmat::Zero(w_max + 1, w_max + 1);
  for (int j = 0; j <= w_max; ++j) {
    for (int jp = 0; jp <= j; ++jp) {
      cplx acc = 0.0;
      const int m_hi = w_max - j;
      for (int m = 0; m <= m_hi; ++m) {
        acc += psi.c[j + m] * std::conj(psi.c[jp + m]) * s(j + m, j) * s(jp + m, jp);
      }
      rho.mat(j, jp) = acc;
      rho.mat(jp, j) = std::conj(acc);
    }
  }
  return rho;
}

cvec coherent_row(cplx alpha, int m, int w_max) {
  if (m < 1) throw invalid_input("coherent_row: m must be >= 1");
  if (w_max < 0) throw invalid_input("coherent_row: w_max must be >= 0");
  if (!finite(alpha)) throw invalid_input("coherent_row: alpha must be finite");
  return fock::coherent_amplitudes(std::sqrt(static_cast<double>(m)) * alpha, w_max + 1)
      .amps.conjugate();
}

}  // namespace definetti::weights
