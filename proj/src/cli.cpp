// Copyright 2026 The lindblad-ep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad_ep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindblad_ep/dynamics.hpp"
#include "lindblad_ep/exceptional.hpp"
#include "lindblad_ep/io.hpp"
#include "lindblad_ep/spectrum.hpp"
#include "lindblad_ep/superop.hpp"
#include "lindblad_ep/verify.hpp"

namespace lindblad_ep::cli {

namespace {

using nlohmann::json;

// Thrown for internal tolerance violations; maps to exit code 1.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

DensityMatrix preset(const std::string& name) {
  if (name == "excited") return DensityMatrix::excited();
  if (name == "ground") return DensityMatrix::ground();
  if (name == "mixed") return DensityMatrix::mixed();
  if (name == "coherent") return DensityMatrix::coherent();
  throw DomainError("unknown initial state '" + name + "'");
}

// Writes `text` to the --out path, or to `out` when no path was given.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open output file '" + cfg.out + "'");
  file << text;
  file.close();
  if (!file) throw DomainError("failed writing output file '" + cfg.out + "'");
}

std::string render(const RunConfig& cfg, const io::Table& table) {
  std::ostringstream os;
  if (cfg.format == "json") {
    io::write_json(os, table);
  } else {
    io::write_csv(os, table);
  }
  return os.str();
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const ModelParams params(cfg.delta, cfg.d, cfg.gamma);
  const PhasePoint pt = classify(params);
  const Superoperator l = build_lindblad(params);
  const double norm = max_abs(l);
  const Spectrum s = compute_spectrum(params);
  const Eigenvalues numeric = eigenvalues_numeric(l);

  const double char_tol = 1e-9 * std::pow(norm, 4);
  const double vec_tol = 1e-9 * std::max(1.0, norm);
  bool ok = true;
  json doc;
  doc["params"] = {{"delta", params.delta}, {"d", params.d}, {"gamma", params.gamma}};
  doc["d_tilde"] = pt.d_tilde;
  doc["gamma_tilde"] = pt.gamma_tilde;
  doc["region"] = std::string(to_string(pt.region));
  doc["ordering"] = pt.ordering;
  doc["disc"] = pt.disc;
  doc["scaled_disc"] = scaled_discriminant(params);
  json closed = json::array();
  json num = json::array();
  json char_res = json::array();
  json vec_res = json::array();
  for (int nu = 0; nu < 4; ++nu) {
    closed.push_back(complex_json(s.z[nu]));
    num.push_back(complex_json(numeric[nu]));
    char_res.push_back(s.char_residual[nu]);
    vec_res.push_back(number_or_null(s.vector_residual[nu]));
    ok = ok && s.char_residual[nu] <= char_tol;
    if (std::isfinite(s.vector_residual[nu])) ok = ok && s.vector_residual[nu] <= vec_tol;
  }
  doc["eigenvalues_closed_form"] = closed;
  doc["eigenvalues_numeric"] = num;
  doc["oracle_distance"] = matched_distance(s.z, numeric);
  doc["characteristic_residuals"] = char_res;
  doc["eigenvector_residuals"] = vec_res;
  json degenerate = json::array();
  for (std::size_t k = 0; k < kEigenPairs.size(); ++k) {
    if (s.degenerate[k]) {
      degenerate.push_back({kEigenPairs[k].first, kEigenPairs[k].second});
    }
  }
  doc["degenerate_pairs"] = degenerate;
  if (const auto bio = biorthogonality(s)) {
    json rows = json::array();
    for (int mu = 0; mu < 4; ++mu) {
      json row = json::array();
      for (int nu = 0; nu < 4; ++nu) row.push_back(complex_json((*bio)(mu, nu)));
      rows.push_back(row);
    }
    doc["biorthogonality"] = rows;
    const double bio_err = max_abs(*bio - Eigen::Matrix4cd::Identity());
    doc["biorthogonality_error"] = bio_err;
    ok = ok && (bio_err <= 1e-8 || std::any_of(s.degenerate.begin(), s.degenerate.end(),
                                               [](bool b) { return b; }));
  } else {
    doc["biorthogonality"] = nullptr;
    doc["biorthogonality_error"] = nullptr;
  }
  doc["tolerances"] = {{"characteristic", char_tol}, {"eigenvector", vec_tol}};
  doc["checks_passed"] = ok;
  emit(cfg, doc.dump(2) + "\n", out);
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_phase_diagram(const RunConfig& cfg, std::ostream& out) {
  const auto ds = linspace(cfg.d_min, cfg.d_max, cfg.nd);
  const auto gs = linspace(cfg.gamma_min, cfg.gamma_max, cfg.ngamma);
  const auto grid = classify_grid(ds, gs, cfg.delta, cfg.workers);

  io::Table table{{"d_tilde", "gamma_tilde", "disc", "region", "ordering"}, {}};
  table.rows.reserve(grid.size());
  std::size_t inconsistent = 0;
  for (const PhasePoint& pt : grid) {
    table.rows.push_back({pt.d_tilde, pt.gamma_tilde, pt.disc,
                          std::string(to_string(pt.region)),
                          static_cast<long long>(pt.ordering)});
    // Cross-check the label against the eigenvalue geometry.
    if (pt.region != Region::AllImaginary && pt.region != Region::SplitPair) continue;
    const Eigenvalues z = eigenvalues_closed_form(
        ModelParams(cfg.delta, pt.d_tilde * cfg.delta, pt.gamma_tilde * cfg.delta));
    double zmax = 1.0;
    for (const Complex& w : z) zmax = std::max(zmax, std::abs(w));
    const double tol = 1e-8 * zmax;
    int imaginary = 0;
    for (int nu = 1; nu < 4; ++nu) imaginary += std::abs(z[nu].real()) < tol;
    if (pt.region == Region::AllImaginary) {
      inconsistent += imaginary != 3;
    } else {
      const bool mirrored = std::abs(z[2] + std::conj(z[3])) < tol;
      inconsistent += !(mirrored && (imaginary == 1 || imaginary == 3));
    }
  }
  emit(cfg, render(cfg, table), out);
  if (inconsistent > 0) {
    throw VerificationFailure(std::to_string(inconsistent) +
                              " cells disagree with their eigenvalue geometry");
  }
  return kSuccess;
}

int cmd_ep_curve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.d_min < kEp3DTilde) {
    throw DomainError("ep-curve needs --d-min >= 2*sqrt(2) = " + io::format_double(kEp3DTilde));
  }
  io::Table table{{"d_tilde", "gamma_minus", "gamma_plus", "im_z_minus", "im_z_plus",
                   "disc_minus", "disc_plus"},
                  {}};
  double worst = 0.0;
  for (double d_tilde : linspace(cfg.d_min, cfg.d_max, cfg.nd)) {
    const EPCurvePoint pt = ep_curve_point(d_tilde);
    table.rows.push_back({pt.d_tilde, pt.gamma_minus, pt.gamma_plus, pt.z_minus.imag(),
                          pt.z_plus.imag(), pt.disc_minus, pt.disc_plus});
    worst = std::max({worst, std::abs(pt.disc_minus), std::abs(pt.disc_plus)});
  }
  emit(cfg, render(cfg, table), out);
  if (!(worst < 1e-10)) {
    throw VerificationFailure("EP2 curve residual " + io::format_double(worst) +
                              " exceeds 1e-10");
  }
  return kSuccess;
}

int cmd_ep3(const RunConfig& cfg, std::ostream& out) {
  const EP3Point exact = ep3_point();
  const EP3Point located = ep3_locate_numeric();
  const double err_d = std::abs(located.d_tilde - exact.d_tilde);
  const double err_g = std::abs(located.gamma_tilde - exact.gamma_tilde);
  const double err_z = std::abs(located.z - exact.z);
  const bool ok = err_d < 1e-6 && err_g < 1e-6 && err_z < 1e-8;
  json doc;
  doc["closed_form"] = {{"d_tilde", exact.d_tilde},
                        {"gamma_tilde", exact.gamma_tilde},
                        {"z", complex_json(exact.z)}};
  doc["bisection"] = {{"d_tilde", located.d_tilde},
                      {"gamma_tilde", located.gamma_tilde},
                      {"z", complex_json(located.z)}};
  doc["deviation"] = {{"d_tilde", err_d}, {"gamma_tilde", err_g}, {"z", err_z}};
  doc["checks_passed"] = ok;
  emit(cfg, doc.dump(2) + "\n", out);
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams params(cfg.delta, cfg.d, cfg.gamma);
  const Trajectory traj = evolve_rotating(params, preset(cfg.rho0), cfg.t_max, cfg.dt);
  io::Table table{{"t", "re_ee", "re_gg", "re_eg", "im_eg", "trace_dev", "dist_eq"}, {}};
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const DensityMatrix& rho = traj.states[k];
    table.rows.push_back({traj.times[k], rho.ee().real(), rho.gg().real(), rho.eg().real(),
                          rho.eg().imag(), traj.trace_dev[k], traj.dist_eq[k]});
  }
  emit(cfg, render(cfg, table), out);
  // Keep stdout clean CSV when it carries the table.
  std::ostream& summary = cfg.out.empty() ? err : out;
  summary << "final dist_eq = " << io::format_double(traj.dist_eq.back()) << "\n";
  if (!(traj.max_trace_dev() < 1e-10) || !(traj.max_herm_dev() < 1e-10)) {
    throw VerificationFailure("trace or Hermiticity drift above 1e-10");
  }
  return kSuccess;
}

int cmd_verify_frame(const RunConfig& cfg, std::ostream& out) {
  const LabParams params(cfg.Delta, cfg.omega, cfg.d, cfg.gamma);
  const double deviation = verify_frame_equivalence(params, preset(cfg.rho0), cfg.t_max, cfg.dt);
  const bool ok = deviation < 1e-8;
  json doc;
  doc["params"] = {{"Delta", params.Delta},
                   {"omega", params.omega},
                   {"d", params.d},
                   {"gamma", params.gamma},
                   {"delta", params.detuning()}};
  doc["t_max"] = cfg.t_max;
  doc["dt"] = cfg.dt;
  doc["max_deviation"] = deviation;
  doc["checks_passed"] = ok;
  emit(cfg, doc.dump(2) + "\n", out);
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opts;
  opts.checks = cfg.checks;
  opts.seed = cfg.seed;
  opts.tol_scale = cfg.tol_scale;
  opts.workers = cfg.workers;
  const auto results = run_checks(opts);
  std::ostringstream os;
  bool ok = true;
  for (const auto& r : results) {
    os << format_check_line(r) << "\n";
    ok = ok && r.passed;
  }
  os << (ok ? "all checks passed" : "verification FAILED") << " (" << results.size()
     << " checks, seed " << cfg.seed << ")\n";
  emit(cfg, os.str(), out);
  return ok ? kSuccess : kVerificationFailure;
}

enum class Opt : unsigned {
  kParams = 1u << 0,
  kLab = 1u << 1,
  kGrid = 1u << 2,
  kIntegrator = 1u << 3,
  kFormat = 1u << 4,
  kWorkers = 1u << 5,
  kVerify = 1u << 6,
};

constexpr unsigned operator|(Opt a, Opt b) {
  return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}
constexpr unsigned operator|(unsigned a, Opt b) { return a | static_cast<unsigned>(b); }
constexpr bool has(unsigned set, Opt o) { return (set & static_cast<unsigned>(o)) != 0; }

void add_options(CLI::App* sub, RunConfig& cfg, unsigned which) {
  if (has(which, Opt::kParams)) {
    sub->add_option("--delta", cfg.delta, "detuning delta (energy unit)")->capture_default_str();
    sub->add_option("--d", cfg.d, "drive amplitude d")->capture_default_str();
    sub->add_option("--gamma", cfg.gamma, "environment coupling Gamma >= 0")
        ->capture_default_str();
  }
  if (has(which, Opt::kLab)) {
    sub->add_option("--Delta", cfg.Delta, "level splitting E_e - E_g")->capture_default_str();
    sub->add_option("--omega", cfg.omega, "drive frequency")->capture_default_str();
  }
  if (has(which, Opt::kGrid)) {
    sub->add_option("--d-min", cfg.d_min, "smallest d/delta")->capture_default_str();
    sub->add_option("--d-max", cfg.d_max, "largest d/delta")->capture_default_str();
    sub->add_option("--nd", cfg.nd, "number of d/delta samples")->capture_default_str();
    sub->add_option("--gamma-min", cfg.gamma_min, "smallest Gamma/delta")
        ->capture_default_str();
    sub->add_option("--gamma-max", cfg.gamma_max, "largest Gamma/delta")
        ->capture_default_str();
    sub->add_option("--ngamma", cfg.ngamma, "number of Gamma/delta samples")
        ->capture_default_str();
  }
  if (has(which, Opt::kIntegrator)) {
    sub->add_option("--dt", cfg.dt, "RK4 step (upper bound)")->capture_default_str();
    sub->add_option("--t-max", cfg.t_max, "final time")->capture_default_str();
    sub->add_option("--rho0", cfg.rho0, "initial state preset")
        ->check(CLI::IsMember({"excited", "ground", "mixed", "coherent"}))
        ->capture_default_str();
  }
  if (has(which, Opt::kFormat)) {
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }
  if (has(which, Opt::kWorkers)) {
    sub->add_option("--workers", cfg.workers, "worker threads for grid sweeps")
        ->envname("LINDBLAD_EP_WORKERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  if (has(which, Opt::kVerify)) {
    sub->add_option("--checks", cfg.checks, "subset of checks to run")
        ->delimiter(',')
        ->check(CLI::IsMember(check_ids()));
    sub->add_option("--tol-scale", cfg.tol_scale,
                    "multiplier in (0, 1] applied to every tolerance")
        ->capture_default_str();
  }
  sub->add_option("--seed", cfg.seed, "random seed for sampled checks")->capture_default_str();
  sub->add_option("--out", cfg.out, "output path (default: standard output)");
}

}  // namespace

void RunConfig::validate() const {
  if (nd < 1 || ngamma < 1) throw DomainError("grid counts must be >= 1");
  if (d_max < d_min) throw DomainError("--d-max must be >= --d-min");
  if (gamma_max < gamma_min) throw DomainError("--gamma-max must be >= --gamma-min");
  if (!(dt > 0.0)) throw DomainError("--dt must be > 0");
  if (!(t_max > 0.0)) throw DomainError("--t-max must be > 0");
  if (workers < 1) throw DomainError("--workers must be >= 1");
  if (!(tol_scale > 0.0) || !(tol_scale <= 1.0)) {
    throw DomainError("--tol-scale must lie in (0, 1]");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven dissipative two-level Lindblad system: spectra, exceptional points, "
               "phase diagram and dynamics",
               "lindblad-ep"};
  app.require_subcommand(1);

  std::map<std::string, RunConfig> configs;
  const auto make = [&](const std::string& name, const std::string& help, unsigned which,
                        RunConfig cfg) {
    auto& slot = configs[name] = cfg;
    CLI::App* sub = app.add_subcommand(name, help);
    add_options(sub, slot, which);
    return sub;
  };

  RunConfig spectrum_cfg;
  spectrum_cfg.format = "json";
  make("spectrum", "eigenvalues, eigenvectors and region at one parameter point",
       Opt::kParams | Opt::kFormat, spectrum_cfg);

  make("phase-diagram", "classify a (d/delta, Gamma/delta) grid (CSV)",
       Opt::kParams | Opt::kGrid | Opt::kFormat | Opt::kWorkers, RunConfig{});

  RunConfig curve_cfg;
  curve_cfg.d_min = kEp3DTilde;
  curve_cfg.d_max = 10.0;
  curve_cfg.nd = 200;
  make("ep-curve", "sample both EP2 curves (CSV)", Opt::kGrid | Opt::kFormat, curve_cfg);

  make("ep3", "third-order EP: closed form vs bisection", 0u, RunConfig{});

  RunConfig evolve_cfg;
  evolve_cfg.d = 0.0;
  make("evolve", "RK4 trajectory in the rotating frame (CSV)",
       Opt::kParams | Opt::kIntegrator | Opt::kFormat, evolve_cfg);

  RunConfig frame_cfg;
  frame_cfg.d = 1.0;
  frame_cfg.gamma = 0.3;
  frame_cfg.rho0 = "coherent";
  make("verify-frame", "lab-frame vs rotating-frame evolution",
       Opt::kParams | Opt::kLab | Opt::kIntegrator, frame_cfg);

  make("verify", "run the acceptance checklist", Opt::kVerify | Opt::kWorkers, RunConfig{});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  RunConfig& cfg = configs.at(name);
  try {
    cfg.validate();
    if (name == "spectrum") return cmd_spectrum(cfg, out);
    if (name == "phase-diagram") return cmd_phase_diagram(cfg, out);
    if (name == "ep-curve") return cmd_ep_curve(cfg, out);
    if (name == "ep3") return cmd_ep3(cfg, out);
    if (name == "evolve") return cmd_evolve(cfg, out, err);
    if (name == "verify-frame") return cmd_verify_frame(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
  } catch (const StepSizeError& e) {
    err << "integrator failure: " << e.what() << "; try --dt "
        << io::format_double(e.suggested_dt()) << "\n";
    return kIntegratorFailure;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  err << "error: unknown subcommand " << name << "\n";
  return kUsageError;
}

}  // namespace lindblad_ep::cli
