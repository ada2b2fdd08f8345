#include "definetti/cli.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "definetti/bound.hpp"
#include "definetti/fock.hpp"
#include "definetti/oracle.hpp"
#include "definetti/quadrature.hpp"
#include "definetti/report.hpp"

namespace definetti::cli {

namespace {

// Writes to the configured path, or stdout when none is given.
int emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) {
    err << "cannot open output file " << cfg.out_path << "\n";
    return kExitInput;
  }
  f << text;
  return kExitOk;
}

std::vector<cplx> default_identity_alphas() {
  return {cplx(0.25, 0.0), cplx(0.5, 0.0), cplx(0.3, 0.4), cplx(-0.45, 0.45), cplx(0.8, 0.0)};
}

int exit_for(const std::exception& e, std::ostream& err) {
  err << e.what() << "\n";
  if (dynamic_cast<const resource_error*>(&e)) return kExitBudget;
  return kExitInput;
}

}  // namespace

double loglog_slope(const std::vector<std::pair<int, double>>& points) {
  if (points.size() < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, delta] : points) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(delta);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = static_cast<double>(points.size());
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::vector<std::pair<cplx, cplx>> gaussian_profile_components(cplx center1, cplx center2,
                                                               double sigma, int samples) {
  if (samples < 1) throw invalid_input("gaussian profile: samples must be >= 1");
  if (!(sigma > 0)) throw invalid_input("gaussian profile: sigma must be > 0");
  if (!finite(center1) || !finite(center2)) throw invalid_input("gaussian profile: non-finite center");
  const cplx diff = center2 - center1;
  const cplx dir = std::abs(diff) > 0 ? diff / std::abs(diff) : cplx(1.0, 0.0);
  const double dt = 6.0 * sigma / samples;
  std::vector<std::pair<cplx, cplx>> comps;
  for (cplx peak : {center1, center2}) {
    for (int i = 0; i < samples; ++i) {
      const double t = -3.0 * sigma + (i + 0.5) * dt;
      comps.emplace_back(peak + dir * t, cplx(std::exp(-t * t / (2 * sigma * sigma)) * dt, 0.0));
    }
  }
  return comps;
}

int cmd_identity_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.n < 1 || cfg.k < 0 || cfg.k >= cfg.n) {
      err << "identity-check: need n >= 1 and 0 <= k < n\n";
      return kExitInput;
    }
    if (cfg.d < 2) {
      err << "identity-check: need d >= 2\n";
      return kExitInput;
    }
    if (dense_size(cfg.d, cfg.n) > amplitude_budget()) {
      err << "identity-check: d^n exceeds amplitude budget\n";
      return kExitBudget;
    }
    const int m = cfg.n - cfg.k;
    const double target_tail = cfg.target_tail > 0 ? cfg.target_tail : 1e-10;
    const std::vector<cplx> alphas = cfg.alphas.empty() ? default_identity_alphas() : cfg.alphas;
    double alpha_max = 0.0;
    for (cplx a : alphas) alpha_max = std::max(alpha_max, std::abs(a));
    const double h = cfg.grid_step > 0 ? cfg.grid_step : 0.3 / std::sqrt(static_cast<double>(m));
    const double radius = alpha_max + std::sqrt(std::log(1.0 / target_tail) / m) + 2 * h;
    const quad::PhaseSpaceGrid grid = quad::cartesian_grid(0.0, radius, h);

    std::vector<std::string> checks;
    double max_residual = 0.0;
    auto record = [&](const std::string& name, cplx alpha, double residual) {
      io::JsonObj o;
      o.put_str("check", name);
      o.put_raw("alpha", io::json_array({io::fmt17(alpha.real()), io::fmt17(alpha.imag())}));
      o.put("residual", residual);
      checks.push_back(o.str());
      max_residual = std::max(max_residual, residual);
    };

    oracle::DenseState vac;
    vac.n = cfg.n;
    vac.d = cfg.d;
    vac.amps = cvec::Zero(static_cast<Eigen::Index>(dense_size(cfg.d, cfg.n)));
    vac.amps[0] = 1.0;
    const oracle::DenseState lvac = oracle::lambda_apply(cfg.n, cfg.k, cfg.d, grid, vac);
    record("vacuum_identity", 0.0, (lvac.amps - vac.amps).norm());

    for (cplx a : alphas) {
      const oracle::DenseState st =
          oracle::tensor_power(fock::coherent_amplitudes(a, cfg.d), cfg.n);
      const oracle::DenseState lst = oracle::lambda_apply(cfg.n, cfg.k, cfg.d, grid, st);
      record("coherent_identity", a, (lst.amps - st.amps).norm());
    }

    const cplx comm_alpha(0.5, 0.0);
    record("commutator_vacuum", comm_alpha,
           oracle::commutator_check(cfg.n, cfg.k, comm_alpha, cfg.d, grid));

    const bool pass = max_residual <= cfg.tolerance;
    io::JsonObj top;
    top.put("n", cfg.n)
        .put("k", cfg.k)
        .put("d", cfg.d)
        .put("grid_step", grid.step)
        .put("grid_radius", grid.radius)
        .put("nodes", static_cast<std::uint64_t>(grid.size()))
        .put("tolerance", cfg.tolerance)
        .put("seed", cfg.seed)
        .put_raw("checks", io::json_array(checks))
        .put("max_residual", max_residual)
        .put("pass", pass);
    const int ec = emit(cfg, top.str() + "\n", out, err);
    if (ec != kExitOk) return ec;
    return pass ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    return exit_for(e, err);
  }
}

namespace {

struct PreparedRun {
  weights::CoherentPowerState psi;
  quad::PhaseSpaceGrid grid;
};

PreparedRun prepare(const io::ProfileFile& pf, int n, int k, int w_max_override) {
  PreparedRun run;
  run.psi = weights::from_profile(pf.profile, n, w_max_override >= 0 ? w_max_override : pf.w_max);
  run.grid = quad::profile_adapted_grid(pf.profile, n, k, pf.target_tail, pf.grid_step);
  return run;
}

}  // namespace

int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  io::ProfileFile pf;
  try {
    pf = io::parse_profile_file(cfg.profile_path);
    if (cfg.grid_step > 0) pf.grid_step = cfg.grid_step;
    if (cfg.target_tail > 0) pf.target_tail = cfg.target_tail;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  try {
    const PreparedRun run = prepare(pf, pf.n, pf.k, cfg.w_max_override);
    const BoundReport rep = verify_bound(run.psi, pf.k, run.grid);
    std::string text;
    if (cfg.format == "csv") {
      text = std::string(io::kSweepCsvHeader) + "\n" + io::bound_report_csv_row(rep) + "\n";
    } else {
      io::JsonObj o = io::bound_report_json(rep);
      o.put("seed", cfg.seed);
      text = o.str() + "\n";
    }
    const int ec = emit(cfg, text, out, err);
    if (ec != kExitOk) return ec;
    return (rep.conservative_ok && !rep.quad_warning) ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    return exit_for(e, err);
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  io::ProfileFile pf;
  try {
    pf = io::parse_profile_file(cfg.profile_path);
    if (cfg.grid_step > 0) pf.grid_step = cfg.grid_step;
    if (cfg.target_tail > 0) pf.target_tail = cfg.target_tail;
    if (cfg.n_list.empty() || cfg.k_list.empty()) {
      throw invalid_input("sweep: n-list and k-list must be nonempty");
    }
    for (int k : cfg.k_list) {
      for (int n : cfg.n_list) {
        if (k < 1 || k >= n) {
          throw invalid_input("sweep: need 1 <= k < n for every row (offending: n=" +
                              std::to_string(n) + ", k=" + std::to_string(k) + ")");
        }
      }
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    struct Row {
      int n, k;
      BoundReport rep;
      std::string error;
    };
    std::vector<Row> rows;
    for (int k : cfg.k_list) {
      for (int n : cfg.n_list) rows.push_back(Row{n, k, {}, {}});
    }

    const int workers = std::max(1, cfg.workers);
    auto run_row = [&](Row& row) {
      try {
        const PreparedRun run = prepare(pf, row.n, row.k, cfg.w_max_override);
        row.rep = verify_bound(run.psi, row.k, run.grid);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    };
    if (workers == 1) {
      for (Row& row : rows) run_row(row);
    } else {
      std::vector<std::future<void>> futs;
      futs.reserve(workers);
      for (int w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
          for (std::size_t i = w; i < rows.size(); i += workers) run_row(rows[i]);
        }));
      }
      for (auto& f : futs) f.get();
    }

    bool any_bound_failure = false;
    bool any_row_error = false;
    for (const Row& row : rows) {
      if (!row.error.empty()) {
        any_row_error = true;
      } else if (!row.rep.conservative_ok || row.rep.quad_warning) {
        any_bound_failure = true;
      }
    }

    // Slope of delta_full vs n per k, over the rows that ran.
    std::vector<std::pair<int, double>> slopes;  // (k, slope)
    for (int k : cfg.k_list) {
      std::vector<std::pair<int, double>> pts;
      for (const Row& row : rows) {
        if (row.k == k && row.error.empty()) pts.emplace_back(row.n, row.rep.delta_full);
      }
      if (pts.size() >= 2) slopes.emplace_back(k, loglog_slope(pts));
    }

    std::string text;
    if (cfg.format == "csv") {
      text += std::string(io::kSweepCsvHeader) + "\n";
      for (const Row& row : rows) {
        if (row.error.empty()) {
          text += io::bound_report_csv_row(row.rep) + "\n";
        } else {
          text += "# n=" + std::to_string(row.n) + " k=" + std::to_string(row.k) +
                  " error: " + row.error + "\n";
        }
      }
      for (const auto& [k, slope] : slopes) {
        text += "# slope k=" + std::to_string(k) + ": " + io::fmt17(slope) + "\n";
      }
    } else {
      std::vector<std::string> row_objs;
      for (const Row& row : rows) {
        if (row.error.empty()) {
          row_objs.push_back(io::bound_report_json(row.rep).str());
        } else {
          io::JsonObj o;
          o.put("n", row.n).put("k", row.k).put_str("error", row.error);
          row_objs.push_back(o.str());
        }
      }
      std::vector<std::string> slope_objs;
      for (const auto& [k, slope] : slopes) {
        io::JsonObj o;
        o.put("k", k).put("slope", slope);
        slope_objs.push_back(o.str());
      }
      io::JsonObj top;
      top.put("seed", cfg.seed)
          .put("workers", cfg.workers)
          .put_raw("rows", io::json_array(row_objs))
          .put_raw("slopes", io::json_array(slope_objs));
      text = top.str() + "\n";
    }
    const int ec = emit(cfg, text, out, err);
    if (ec != kExitOk) return ec;
    if (any_row_error) return kExitInput;
    return any_bound_failure ? kExitFailure : kExitOk;
  } catch (const std::exception& e) {
    return exit_for(e, err);
  }
}

int cmd_gaussian_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.n < 2 || cfg.k < 1 || cfg.k >= cfg.n) {
      err << "gaussian-profile: need n >= 2 and 1 <= k < n\n";
      return kExitInput;
    }
    const auto comps =
        gaussian_profile_components(cfg.center1, cfg.center2, cfg.sigma, cfg.samples);
    io::ProfileFile pf;
    for (const auto& [gamma, weight] : comps) {
      pf.profile.components.push_back(weights::ProfileComponent{gamma, weight});
    }
    pf.n = cfg.n;
    pf.k = cfg.k;
    pf.w_max = cfg.w_max_override;
    pf.grid_step = cfg.grid_step;
    pf.target_tail = cfg.target_tail > 0 ? cfg.target_tail : 1e-10;
    return emit(cfg, io::profile_to_json(pf) + "\n", out, err);
  } catch (const std::exception& e) {
    return exit_for(e, err);
  }
}

}  // namespace definetti::cli
