// wigner-lab: config-driven experiment runner.
//
//   wigner-lab <command> --config <path> [--seed N] [--out DIR]
//
// Commands: displace, wigner, chirp, genopt, compare.
// Exit codes: 0 success, 2 config error, 3 numerical-validity error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wlab/dmfit.hpp"
#include "wlab/dynamics.hpp"
#include "wlab/fock.hpp"
#include "wlab/genopt.hpp"
#include "wlab/io.hpp"
#include "wlab/metrics.hpp"
#include "wlab/readout.hpp"
#include "wlab/sst.hpp"
#include "wlab/util.hpp"
#include "wlab/wigner.hpp"

namespace fs = std::filesystem;
using namespace wlab;
using nlohmann::json;

namespace {

struct CliArgs {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

CliArgs parse_args(int argc, char** argv) {
  if (argc < 2) throw ConfigError("usage: wigner-lab <command> --config <path> [--seed N] [--out DIR]");
  CliArgs args;
  args.command = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string flag = argv[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= argc) throw ConfigError("missing value for " + flag);
      return argv[++i];
    };
    if (flag == "--config") {
      args.config_path = value();
    } else if (flag == "--seed") {
      args.seed = std::stoull(value());
    } else if (flag == "--out") {
      args.out = value();
    } else {
      throw ConfigError("unknown flag: " + flag);
    }
  }
  if (args.config_path.empty()) throw ConfigError("--config is required");
  return args;
}

std::vector<double> parse_list(const std::string& text,
                               const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError(what + ": cannot parse list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

// Shared context resolved from config + flags.
struct Context {
  Config cfg;
  std::uint64_t seed = 1;
  fs::path out_dir;

  std::string meta() const {
    return "config_hash=" + cfg.hash() + ", seed=" + std::to_string(seed);
  }
  std::string path(const std::string& name) const {
    return (out_dir / name).string();
  }
};

Context make_context(const CliArgs& args) {
  Context ctx{Config::parse_file(args.config_path)};
  ctx.seed = args.seed.value_or(
      static_cast<std::uint64_t>(ctx.cfg.get_int("run", "seed", 1)));
  ctx.out_dir = args.out.value_or(ctx.cfg.get_or("run", "out", "out"));
  fs::create_directories(ctx.out_dir);
  return ctx;
}

const std::vector<std::string> kRunKeys = {"seed", "out"};
const std::vector<std::string> kSystemKeys = {"beta_mhz", "dim", "t1", "t2"};
const std::vector<std::string> kPulseKeys = {"fwhm_ns", "dt_ns",
                                             "cutoff_factor"};

SystemParams system_params(const Config& cfg, Eigen::Index default_dim = 15,
                           double default_beta_mhz = 20.0) {
  SystemParams p;
  p.beta = 2.0 * kPi * cfg.get_double("system", "beta_mhz",
                                      default_beta_mhz) * 1e-3;
  p.dim = cfg.get_int("system", "dim", default_dim);
  p.t1 = cfg.get_optional_double("system", "t1");
  p.t2 = cfg.get_optional_double("system", "t2");
  if (p.dim < 2) throw ConfigError("system.dim must be >= 2");
  if ((p.t1 && *p.t1 <= 0.0) || (p.t2 && *p.t2 <= 0.0))
    throw ConfigError("system.t1/t2 must be positive when given");
  return p;
}

TomographyConfig tomo_config(const Config& cfg) {
  TomographyConfig t;
  t.pulse_fwhm = cfg.get_double("pulse", "fwhm_ns", 1.6);
  t.pulse_dt = cfg.get_double("pulse", "dt_ns", 0.1);
  t.cutoff_factor = cfg.get_double("pulse", "cutoff_factor", 2.0);
  t.parity_levels = cfg.get_int("tomography", "parity_levels", 6);
  t.repetitions = static_cast<int>(cfg.get_int("tomography", "repetitions",
                                               900));
  return t;
}

GridSpec grid_spec(const Config& cfg, const GridSpec& dflt) {
  GridSpec g;
  g.x_min = cfg.get_double("grid", "x_min", dflt.x_min);
  g.x_max = cfg.get_double("grid", "x_max", dflt.x_max);
  g.y_min = cfg.get_double("grid", "y_min", dflt.y_min);
  g.y_max = cfg.get_double("grid", "y_max", dflt.y_max);
  g.nx = static_cast<int>(cfg.get_int("grid", "nx", dflt.nx));
  g.ny = static_cast<int>(cfg.get_int("grid", "ny", dflt.ny));
  try {
    g.validate();
  } catch (const NumericalError& e) {
    throw ConfigError(std::string("bad [grid]: ") + e.what());
  }
  return g;
}

double poisson_pmf(double mean, Eigen::Index n) {
  if (mean <= 0.0) return n == 0 ? 1.0 : 0.0;
  double log_p = -mean + n * std::log(mean) - std::lgamma(double(n) + 1.0);
  return std::exp(log_p);
}

// ------------------------------------------------------------------ displace

int cmd_displace(const Context& ctx) {
  ctx.cfg.enforce_schema({{"run", kRunKeys},
                          {"system", kSystemKeys},
                          {"pulse", kPulseKeys},
                          {"displace",
                           {"alpha_min", "alpha_max", "n_alpha", "levels"}}});
  SystemParams params = system_params(ctx.cfg, 30);
  const double fwhm = ctx.cfg.get_double("pulse", "fwhm_ns", 1.6);
  const double dt = ctx.cfg.get_double("pulse", "dt_ns", 0.1);
  const double cutoff =
      ctx.cfg.get_double("pulse", "cutoff_factor", 2.0) * fwhm;
  const double a0 = ctx.cfg.get_double("displace", "alpha_min", -2.5);
  const double a1 = ctx.cfg.get_double("displace", "alpha_max", 2.5);
  const long n_alpha = ctx.cfg.get_int("displace", "n_alpha", 51);
  const Eigen::Index levels = ctx.cfg.get_int("displace", "levels", 13);
  if (n_alpha < 2) throw ConfigError("displace.n_alpha must be >= 2");
  if (levels < 1 || levels > params.dim)
    throw ConfigError("displace.levels out of range");

  std::vector<RealVector> pulsed(n_alpha);
  std::vector<double> alphas(n_alpha);
  parallel_for(static_cast<std::size_t>(n_alpha), [&](std::size_t i) {
    double alpha = a0 + (a1 - a0) * double(i) / double(n_alpha - 1);
    alphas[i] = alpha;
    PulseEnvelope env = gaussian_envelope(alpha, fwhm, dt, cutoff);
    if (params.has_decoherence()) {
      DensityMatrix rho0 = DensityMatrix::pure(fock_state(0, params.dim));
      pulsed[i] = populations(propagate(rho0, env, params), levels);
    } else {
      pulsed[i] =
          populations(propagate_state(fock_state(0, params.dim), env, params),
                      levels);
    }
  });

  CsvWriter csv(ctx.path("displace.csv"),
                {"alpha", "n", "p_pulsed", "p_harmonic"}, ctx.meta());
  for (long i = 0; i < n_alpha; ++i) {
    double mean = alphas[i] * alphas[i];
    for (Eigen::Index n = 0; n < levels; ++n)
      csv.row({alphas[i], double(n), pulsed[i](n), poisson_pmf(mean, n)});
  }
  return 0;
}

// -------------------------------------------------------------------- wigner

WignerMode parse_mode(const std::string& name) {
  if (name == "exact") return WignerMode::Exact;
  if (name == "pulsed") return WignerMode::Pulsed;
  if (name == "pulsed_decoherence") return WignerMode::PulsedDecoherence;
  if (name == "shot_noise") return WignerMode::PulsedDecoherenceShotNoise;
  throw ConfigError("tomography.mode must be one of exact, pulsed, "
                    "pulsed_decoherence, shot_noise");
}

int cmd_wigner(const Context& ctx) {
  ctx.cfg.enforce_schema(
      {{"run", kRunKeys},
       {"system", kSystemKeys},
       {"pulse", kPulseKeys},
       {"state", {"l", "phi"}},
       {"grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny"}},
       {"tomography", {"mode", "repetitions", "parity_levels"}},
       {"fit", {"d", "n_samples", "radius", "ridge", "phase_correct_ns"}}});
  SystemParams params = system_params(ctx.cfg);
  TomographyConfig tcfg = tomo_config(ctx.cfg);
  WignerMode mode = parse_mode(ctx.cfg.get_or("tomography", "mode", "pulsed"));
  GridSpec spec = grid_spec(ctx.cfg, GridSpec{-2.2, 2.2, -2.2, 2.2, 41, 41});

  const Eigen::Index l = ctx.cfg.get_int("state", "l", 1);
  const double phi = ctx.cfg.get_double("state", "phi", 0.0);
  if (l < 1 || l >= params.dim) throw ConfigError("state.l out of range");
  ComplexVector psi = fock_superposition(l, params.dim, phi);
  DensityMatrix rho0 = DensityMatrix::pure(psi);

  WignerGrid grid = wigner_map(rho0, spec, mode, params, tcfg, ctx.seed);
  write_wigner_grid_csv(ctx.path("wigner.csv"), grid, ctx.meta());
  write_file(ctx.path("wigner.json"), wigner_grid_json(grid));

  // Density-matrix fit from pulsed displaced populations.
  FitConfig fcfg;
  fcfg.d = ctx.cfg.get_int("fit", "d", 6);
  fcfg.n_samples = static_cast<int>(ctx.cfg.get_int("fit", "n_samples", 200));
  fcfg.radius = ctx.cfg.get_double("fit", "radius", 2.0);
  fcfg.ridge = ctx.cfg.get_double("fit", "ridge", 0.0);
  const double pulse_len = tcfg.cutoff_factor * tcfg.pulse_fwhm;
  // default correction time: slightly under the pulse center, where the
  // displacement actually transfers its area (1.4 ns at fwhm 1.6)
  const double correct_ns =
      ctx.cfg.get_double("fit", "phase_correct_ns", 0.875 * tcfg.pulse_fwhm);

  SystemParams fit_params = params;
  fit_params.dim =
      std::max(params.dim, displacement_min_dim(fcfg.radius));
  if (mode == WignerMode::Exact || mode == WignerMode::Pulsed) {
    fit_params.t1.reset();
    fit_params.t2.reset();
  }
  ComplexVector psi_work = embed(psi, fit_params.dim);
  Rng disp_rng(derive_seed(ctx.seed, 0xD15, 0));
  std::vector<Complex> alphas = sample_displacements(fcfg, disp_rng);

  std::vector<RealVector> pops(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t s) {
    RealVector p;
    if (mode == WignerMode::Exact) {
      ComplexMatrix d = displacement(-alphas[s], fit_params.dim);
      p = populations(ComplexVector(d * psi_work), fcfg.d);
    } else {
      PulseEnvelope env = gaussian_envelope(-alphas[s], tcfg.pulse_fwhm,
                                            tcfg.pulse_dt, pulse_len);
      if (fit_params.has_decoherence()) {
        DensityMatrix out =
            propagate(DensityMatrix::pure(psi_work), env, fit_params);
        p = populations(out, fcfg.d);
      } else {
        p = populations(propagate_state(psi_work, env, fit_params), fcfg.d);
      }
    }
    if (mode == WignerMode::PulsedDecoherenceShotNoise) {
      Rng rng(derive_seed(ctx.seed, 0x5A0, s));
      p = sample_populations(p, tcfg.repetitions, rng);
    }
    pops[s] = std::move(p);
  });

  DisplacementFitter fitter(alphas, fcfg);
  FitResult fit = fitter.fit(pops);
  DensityMatrix corrected =
      mode == WignerMode::Exact
          ? fit.projected
          : phase_correct(fit.projected, params.beta, correct_ns);

  write_file(ctx.path("rho_raw.json"), density_matrix_json(fit.raw));
  write_file(ctx.path("rho_fit.json"),
             density_matrix_json(corrected.matrix()));

  DensityMatrix ideal = DensityMatrix::pure(fock_superposition(l, fcfg.d, phi));
  ErrorReport rep = offdiag_errors(corrected, ideal, l);
  CsvWriter csv(ctx.path("errors.csv"),
                {"fidelity", "fidelity_error", "amp_error_0l",
                 "phase_error_0l"},
                ctx.meta());
  csv.row({1.0 - rep.fidelity_error, rep.fidelity_error, rep.amp_error_0l,
           rep.phase_error_0l});
  return 0;
}

// --------------------------------------------------------------------- chirp

int cmd_chirp(const Context& ctx) {
  ctx.cfg.enforce_schema(
      {{"run", kRunKeys},
       {"system", kSystemKeys},
       {"grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny"}},
       {"chirp",
        {"rabi_mhz", "f_start_mhz", "f_end_mhz", "duration_ns", "dt_ns",
         "snapshot_times", "total_time_ns", "purity_dt_ns"}}});
  SystemParams params = system_params(ctx.cfg, 30);
  if (!params.t1 && !ctx.cfg.get("system", "t1")) params.t1 = 120.0;

  const double rabi =
      2.0 * kPi * ctx.cfg.get_double("chirp", "rabi_mhz", 66.0) * 1e-3;
  const double f_start =
      ctx.cfg.get_double("chirp", "f_start_mhz", 320.0) * 1e-3;
  const double f_end = ctx.cfg.get_double("chirp", "f_end_mhz", -50.0) * 1e-3;
  const double duration = ctx.cfg.get_double("chirp", "duration_ns", 20.0);
  const double env_dt = ctx.cfg.get_double("chirp", "dt_ns", 0.1);
  const double total = ctx.cfg.get_double("chirp", "total_time_ns", 300.0);
  const double purity_dt = ctx.cfg.get_double("chirp", "purity_dt_ns", 5.0);
  std::vector<double> snapshots = parse_list(
      ctx.cfg.get_or("chirp", "snapshot_times", "5,10,15,20,60,150"),
      "chirp.snapshot_times");
  GridSpec spec = grid_spec(ctx.cfg, GridSpec{-4, 4, -4, 4, 81, 81});

  PulseEnvelope env = chirp_envelope(rabi, f_start, f_end, duration, env_dt);

  std::vector<double> times;
  for (double t = purity_dt; t <= total + 1e-9; t += purity_dt)
    times.push_back(t);
  for (double t : snapshots)
    if (t > 0 && t <= total) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < 1e-9;
                          }),
              times.end());

  DensityMatrix rho0 = DensityMatrix::pure(fock_state(0, params.dim));
  std::vector<DensityMatrix> traj =
      propagate_trajectory(rho0, env, params, times);

  // Displaced-parity kernels, reused for the whole trajectory: the Wigner
  // value is Tr(D(-a)^dag P D(-a) rho), and only rho changes with time.
  const double corner = std::hypot(std::max(-spec.x_min, spec.x_max),
                                   std::max(-spec.y_min, spec.y_max));
  const Eigen::Index kdim = std::max(params.dim, displacement_min_dim(corner));
  const auto npts = static_cast<std::size_t>(spec.nx) * spec.ny;
  std::vector<ComplexMatrix> kernels(npts);
  parallel_for(npts, [&](std::size_t idx) {
    int ix = static_cast<int>(idx) % spec.nx;
    int iy = static_cast<int>(idx) / spec.nx;
    ComplexMatrix d = displacement(-spec.node(ix, iy), kdim);
    ComplexMatrix pd = d;
    for (Eigen::Index n = 1; n < kdim; n += 2) pd.row(n) *= -1.0;  // P D
    ComplexMatrix m = d.adjoint() * pd;
    kernels[idx] = m.topLeftCorner(params.dim, params.dim);
  });

  auto grid_of = [&](const ComplexMatrix& rho) {
    WignerGrid grid(spec);
    parallel_for(npts, [&](std::size_t idx) {
      int ix = static_cast<int>(idx) % spec.nx;
      int iy = static_cast<int>(idx) / spec.nx;
      grid.values(ix, iy) =
          kTwoOverPi *
          kernels[idx].transpose().cwiseProduct(rho).sum().real();
    });
    return grid;
  };

  CsvWriter purity_csv(ctx.path("purity.csv"),
                       {"t", "purity_grid", "purity_trace"}, ctx.meta());
  int snap_index = 0;
  json snap_meta = json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const DensityMatrix& rho = traj[i];
    WignerGrid grid = grid_of(rho.matrix());
    purity_csv.row({times[i], purity_from_grid(grid), rho.purity()});

    bool is_snapshot =
        std::any_of(snapshots.begin(), snapshots.end(), [&](double t) {
          return std::abs(t - times[i]) < 1e-9;
        });
    if (!is_snapshot) continue;
    // Display frame rotated by the accumulated chirp phase (frozen after
    // the drive): W_display(a) = W(a e^{i theta}), via rho -> R^dag rho R.
    double theta = chirp_phase(f_start, f_end, duration,
                               std::min(times[i], duration));
    ComplexMatrix rotated = rho.matrix();
    for (Eigen::Index n = 0; n < params.dim; ++n)
      for (Eigen::Index m = 0; m < params.dim; ++m)
        rotated(n, m) *= std::polar(1.0, theta * double(m - n));
    std::string name = "chirp_grid_" + std::to_string(snap_index) + ".csv";
    write_wigner_grid_csv(ctx.path(name), grid_of(rotated),
                          ctx.meta() + ", t=" + format_number(times[i]) +
                              ", theta=" + format_number(theta));
    snap_meta.push_back({{"index", snap_index},
                         {"t", times[i]},
                         {"theta", theta},
                         {"file", name}});
    ++snap_index;
  }
  purity_csv.close();

  json meta;
  meta["config_hash"] = ctx.cfg.hash();
  meta["seed"] = ctx.seed;
  meta["snapshots"] = snap_meta;
  write_file(ctx.path("chirp_meta.json"), meta.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------------------- genopt

int cmd_genopt(const Context& ctx) {
  ctx.cfg.enforce_schema(
      {{"run", kRunKeys},
       {"system", kSystemKeys},
       {"genopt",
        {"n_genomes", "elite_count", "n_timesteps", "max_generations",
         "plateau_generations", "plateau_threshold", "n_rep",
         "readout_repetitions", "noiseless", "max_amp", "noise_amp",
         "target"}}});
  SystemParams params = system_params(ctx.cfg);

  GenoptConfig g;
  g.n_genomes = static_cast<int>(ctx.cfg.get_int("genopt", "n_genomes", 30));
  g.elite_count =
      static_cast<int>(ctx.cfg.get_int("genopt", "elite_count", 8));
  g.n_timesteps =
      static_cast<int>(ctx.cfg.get_int("genopt", "n_timesteps", 15));
  g.max_generations =
      static_cast<int>(ctx.cfg.get_int("genopt", "max_generations", 200));
  g.plateau_generations = static_cast<int>(
      ctx.cfg.get_int("genopt", "plateau_generations", 30));
  g.plateau_threshold =
      ctx.cfg.get_double("genopt", "plateau_threshold", 0.003);
  g.n_rep = static_cast<int>(ctx.cfg.get_int("genopt", "n_rep", 5));
  g.readout_repetitions = static_cast<int>(
      ctx.cfg.get_int("genopt", "readout_repetitions", 900));
  g.noiseless = ctx.cfg.get_int("genopt", "noiseless", 0) != 0;
  g.max_amp = ctx.cfg.get_double("genopt", "max_amp", 0.0);
  g.noise_amp = ctx.cfg.get_double("genopt", "noise_amp", 0.0);
  g.seed = ctx.seed;
  std::vector<double> target = parse_list(
      ctx.cfg.get_or("genopt", "target", "0.5,0.5,0,0,0,0"), "genopt.target");
  g.target = Eigen::Map<RealVector>(target.data(), target.size());
  g.resolve_defaults();
  try {
    g.validate();
  } catch (const NumericalError& e) {
    throw ConfigError(e.what());
  }

  RunRecord rec = run_genopt(g, params);

  json j;
  j["config_hash"] = ctx.cfg.hash();
  j["seed"] = ctx.seed;
  j["generations"] = rec.generations;
  j["best_chi"] = rec.best_chi;
  j["mean_chi"] = rec.mean_chi;
  json samples = json::array();
  for (Eigen::Index i = 0; i < rec.best.samples.size(); ++i)
    samples.push_back(
        {rec.best.samples(i).real(), rec.best.samples(i).imag()});
  j["best_samples"] = samples;
  j["best_chi_final"] = rec.best.chi;
  write_file(ctx.path("record.json"), j.dump(2) + "\n");

  // Noiseless populations of the winning pulse, in a basis sized for its
  // drive area (matching evaluate_genome).
  PulseEnvelope env{rec.best.samples, 1.0, {}};
  double area = 0.5 * rec.best.samples.cwiseAbs().sum() * env.dt;
  SystemParams work = params;
  work.dim = std::max(params.dim, displacement_min_dim(area));
  RealVector achieved;
  if (work.has_decoherence()) {
    achieved = populations(
        propagate(DensityMatrix::pure(fock_state(0, work.dim)), env, work),
        g.target.size());
  } else {
    achieved = populations(
        propagate_state(fock_state(0, work.dim), env, work),
        g.target.size());
  }
  CsvWriter csv(ctx.path("best_populations.csv"),
                {"n", "p_target", "p_achieved"}, ctx.meta());
  for (Eigen::Index n = 0; n < g.target.size(); ++n)
    csv.row({double(n), g.target(n), achieved(n)});
  return 0;
}

// ------------------------------------------------------------------- compare

int cmd_compare(const Context& ctx) {
  ctx.cfg.enforce_schema(
      {{"run", kRunKeys},
       {"compare",
        {"state", "d", "wt_repetitions", "wt_pulses", "sst_repetitions",
         "ensemble", "radius"}}});
  CompareConfig c;
  c.d = ctx.cfg.get_int("compare", "d", 6);
  c.wt_repetitions =
      static_cast<int>(ctx.cfg.get_int("compare", "wt_repetitions", 900));
  c.ensemble = static_cast<int>(ctx.cfg.get_int("compare", "ensemble", 50));
  c.radius = ctx.cfg.get_double("compare", "radius", 2.0);
  if (auto v = ctx.cfg.get("compare", "wt_pulses")) {
    c.wt_pulses.clear();
    for (double x : parse_list(*v, "compare.wt_pulses"))
      c.wt_pulses.push_back(static_cast<int>(x));
  }
  if (auto v = ctx.cfg.get("compare", "sst_repetitions")) {
    c.sst_repetitions.clear();
    for (double x : parse_list(*v, "compare.sst_repetitions"))
      c.sst_repetitions.push_back(static_cast<int>(x));
  }

  std::string state = ctx.cfg.get_or("compare", "state", "dispersed");
  ComplexVector psi;
  if (state == "dispersed") {
    psi = fock_superposition(4, c.d);
  } else if (state == "flat") {
    psi = ComplexVector::Constant(5, 1.0 / std::sqrt(5.0));
  } else {
    throw ConfigError("compare.state must be 'dispersed' or 'flat'");
  }

  CompareResult res = compare_wt_sst(psi, c, ctx.seed);

  CsvWriter csv(ctx.path("compare.csv"),
                {"method", "N", "mean_dF", "std_dF"}, ctx.meta());
  for (const auto& p : res.points)
    csv.row_tagged(p.method, {p.n, p.mean_df, p.std_df});
  csv.close();

  json j;
  j["config_hash"] = ctx.cfg.hash();
  j["seed"] = ctx.seed;
  j["wt_slope"] = res.wt_slope;
  j["sst_slope"] = res.sst_slope;
  j["efficiency_ratio"] = res.efficiency_ratio;
  write_file(ctx.path("compare_summary.json"), j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    CliArgs args = parse_args(argc, argv);
    Context ctx = make_context(args);
    if (args.command == "displace") return cmd_displace(ctx);
    if (args.command == "wigner") return cmd_wigner(ctx);
    if (args.command == "chirp") return cmd_chirp(ctx);
    if (args.command == "genopt") return cmd_genopt(ctx);
    if (args.command == "compare") return cmd_compare(ctx);
    throw ConfigError("unknown command: " + args.command);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
