#include "bicdyn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "bicdyn/born_markov.hpp"
#include "bicdyn/bound_states.hpp"
#include "bicdyn/csv.hpp"
#include "bicdyn/greens.hpp"
#include "bicdyn/lattice.hpp"
#include "bicdyn/master_eq.hpp"
#include "bicdyn/spectral.hpp"

namespace bicdyn {

const char* kVersion = "bicdyn 1.0.0";

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setup {
  ReservoirModel model;
  CavityModel cavity;
  ThermalBath bath = ThermalBath::zero();
  double n0 = 0.0;
  std::vector<std::pair<std::string, std::string>> echo;
};

// Shared model/bath keys. With units = ueV the paper-style inputs are
// normalized to xi0 = 1 (time unit 1/xi0); with units = internal the values
// are taken as given.
Setup parse_setup(const Config& cfg, bool want_bath) {
  Setup s;
  const std::string units = cfg.get_string("units", "internal");
  double omega0, xi0;
  if (units == "ueV") {
    omega0 = cfg.get_double("omega0", 50.25);
    xi0 = cfg.get_double("xi0", 1.24);
  } else if (units == "internal") {
    omega0 = cfg.get_double("omega0", 0.0);
    xi0 = cfg.get_double("xi0", 1.0);
  } else {
    throw ConfigError("units must be 'internal' or 'ueV'");
  }
  const double eta = cfg.get_double("eta");
  const double xi00 = cfg.get_double("xi00", 0.0);
  const double dwc = cfg.get_double("dwc", 0.0);

  s.model = ReservoirModel{omega0 / xi0, 1.0, eta, xi00 / xi0};
  try {
    s.model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.cavity = CavityModel::from_detuning(s.model, dwc);

  s.echo.emplace_back("version", kVersion);
  s.echo.emplace_back("units", units);
  s.echo.emplace_back("omega0", format_double(s.model.omega0));
  s.echo.emplace_back("xi0", "1");
  s.echo.emplace_back("eta", format_double(eta));
  s.echo.emplace_back("xi00", format_double(s.model.xi00));
  s.echo.emplace_back("dwc", format_double(dwc));

  if (want_bath) {
    if (cfg.has("T_over_omega_c")) {
      const double r = cfg.get_double("T_over_omega_c");
      if (r <= 0.0) throw ConfigError("T_over_omega_c must be > 0");
      s.bath = ThermalBath::at(r * s.cavity.omega_c);
    } else if (cfg.has("T")) {
      const double T = cfg.get_double("T") / xi0;
      if (T > 0.0) s.bath = ThermalBath::at(T);
    }
    s.n0 = cfg.get_double("n0", 0.0);
    if (s.n0 < 0.0) throw ConfigError("n0 must be >= 0");
    s.echo.emplace_back("T", format_double(s.bath.temperature));
    s.echo.emplace_back("n0", format_double(s.n0));
  }
  return s;
}

void reject_unused(const Config& cfg) {
  const auto unused = cfg.unused_keys();
  if (!unused.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unused) msg += " '" + k + "'";
    throw ConfigError(msg);
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

double kind_code(BoundStateKind k) {
  switch (k) {
    case BoundStateKind::BOC_BELOW: return -1.0;
    case BoundStateKind::BIC: return 0.0;
    case BoundStateKind::BOC_ABOVE: return 1.0;
  }
  return kNaN;
}

std::vector<std::string> cmd_spectrum(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, false);
  const int n = cfg.get_int("points", 1200);
  if (n < 8) throw ConfigError("points must be >= 8");
  reject_unused(cfg);
  const ReservoirModel& m = s.model;
  std::vector<std::vector<double>> rows;
  // midpoint grid in the reduced detuning; never hits the singular center
  const double h = 2.0 / n;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + (i + 0.5) * h;
    const double w = m.omega0 + 4.0 * m.xi0 * x;
    double rho;
    try {
      rho = density_of_states(w, m);
    } catch (const std::domain_error&) {
      rho = kNaN;
    }
    rows.push_back({x, w, rho, spectral_density(w, m)});
  }
  const std::string path = join_path(out_dir, "spectrum.csv");
  write_csv(path, s.echo, {"domega", "omega", "rho", "J"}, rows);
  return {path};
}

std::vector<std::string> cmd_bound_states(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, false);
  reject_unused(cfg);
  const auto states = find_bound_states(s.model, s.cavity);
  const double sum_rule = completeness_check(s.model, s.cavity);
  std::vector<std::vector<double>> rows;
  for (const auto& b : states) {
    rows.push_back({kind_code(b.kind), b.omega_b,
                    (b.omega_b - s.model.omega0) / (4.0 * s.model.xi0), b.residue_z});
  }
  auto echo = s.echo;
  echo.emplace_back("sum_rule", format_double(sum_rule));
  const std::string path = join_path(out_dir, "bound_states.csv");
  write_csv(path, echo, {"kind", "omega_b", "dOmega", "Z"}, rows);
  return {path};
}

std::vector<std::string> cmd_sweep(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, false);  // eta required but overridden per point
  const std::vector<double> etas = cfg.get_double_list("eta_list");
  const std::vector<double> dwcs =
      cfg.has("dwc_list") ? cfg.get_double_list("dwc_list")
                          : std::vector<double>{s.cavity.detuning(s.model)};
  reject_unused(cfg);
  std::vector<std::vector<double>> rows;
  for (double dwc : dwcs) {
    for (double eta : etas) {
      ReservoirModel m = s.model;
      m.eta = eta;
      const CavityModel c = CavityModel::from_detuning(m, dwc);
      double dwm = kNaN, zm = 0.0, dw0 = kNaN, z0 = 0.0, dwp = kNaN, zp = 0.0;
      for (const auto& b : find_bound_states(m, c)) {
        const double dW = (b.omega_b - m.omega0) / (4.0 * m.xi0);
        switch (b.kind) {
          case BoundStateKind::BOC_BELOW: dwm = dW; zm = b.residue_z; break;
          case BoundStateKind::BIC: dw0 = dW; z0 = b.residue_z; break;
          case BoundStateKind::BOC_ABOVE: dwp = dW; zp = b.residue_z; break;
        }
      }
      rows.push_back({dwc, eta, dwm, zm, dw0, z0, dwp, zp, completeness_check(m, c)});
    }
  }
  const std::string path = join_path(out_dir, "sweep.csv");
  write_csv(path, s.echo,
            {"dwc", "eta", "dOmega_minus", "Z_minus", "dOmega_bic", "Z_bic",
             "dOmega_plus", "Z_plus", "sum_rule"},
            rows);
  return {path};
}

std::vector<std::string> cmd_propagate(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, false);
  const double dt = cfg.get_double("dt", 0.01);
  const double t_max = cfg.get_double("t_max", 100.0);
  const bool reconstruct = cfg.get_int("reconstruct", 0) != 0;
  const bool coeffs = cfg.get_int("coefficients", 0) != 0;
  const int stride = cfg.get_int("output_stride", 1);
  if (stride < 1) throw ConfigError("output_stride must be >= 1");
  reject_unused(cfg);

  UOptions uopt;
  uopt.convergence_check = true;
  Trajectory traj = solve_u(s.model, s.cavity, dt, t_max, uopt);
  std::vector<std::complex<double>> urec;
  std::vector<BoundState> states;
  if (reconstruct) {
    states = find_bound_states(s.model, s.cavity);
    urec = u_reconstruct(s.model, s.cavity, states, traj.t);
  }
  auto echo = s.echo;
  echo.emplace_back("dt", format_double(dt));
  echo.emplace_back("t_max", format_double(t_max));
  echo.emplace_back("accuracy_warning", traj.accuracy_warning ? "1" : "0");

  std::vector<std::string> written;
  {
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < traj.t.size(); i += stride) {
      std::vector<double> row{traj.t[i], traj.u[i].real(), traj.u[i].imag(),
                              std::abs(traj.u[i])};
      if (reconstruct) row.push_back(std::abs(urec[i]));
      rows.push_back(std::move(row));
    }
    std::vector<std::string> cols{"t", "re_u", "im_u", "abs_u"};
    if (reconstruct) cols.push_back("abs_u_rec");
    const std::string path = join_path(out_dir, "propagate.csv");
    write_csv(path, echo, cols, rows);
    written.push_back(path);
  }
  if (coeffs) {
    const CoefficientSeries cs = coefficients(traj);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < cs.t.size(); i += stride)
      rows.push_back({cs.t[i], cs.omega_c_ren[i], cs.kappa[i], cs.kappa_tilde[i],
                      double(cs.singular[i])});
    const std::string path = join_path(out_dir, "coefficients.csv");
    write_csv(path, echo, {"t", "omega_c_ren", "kappa", "kappa_tilde", "singular"}, rows);
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> cmd_thermal(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, true);
  if (s.bath.zero_temperature)
    throw ConfigError("thermal command needs T or T_over_omega_c");
  const double dt = cfg.get_double("dt", 0.01);
  const double t_max = cfg.get_double("t_max", 100.0);
  const int stride = cfg.get_int("output_stride", 1);
  if (stride < 1) throw ConfigError("output_stride must be >= 1");
  reject_unused(cfg);

  Trajectory traj = solve_u(s.model, s.cavity, dt, t_max);
  solve_v(traj, s.bath);
  const std::vector<double> n = photon_number(s.n0, traj);

  auto echo = s.echo;
  echo.emplace_back("dt", format_double(dt));
  echo.emplace_back("t_max", format_double(t_max));
  echo.emplace_back("nbar_wc", format_double(nbar(s.cavity.omega_c, s.bath)));

  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < traj.t.size(); i += stride)
    rows.push_back({traj.t[i], std::abs(traj.u[i]), traj.v[i], n[i]});
  const std::string path = join_path(out_dir, "thermal.csv");
  write_csv(path, echo, {"t", "abs_u", "v", "n"}, rows);
  return {path};
}

std::vector<std::string> cmd_density_matrix(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, true);
  const double dt = cfg.get_double("dt", 0.01);
  const double t_max = cfg.get_double("t_max", 100.0);
  const std::string initial = cfg.get_string("initial", "fock:1");
  const int samples = cfg.get_int("samples", 50);
  int dim = cfg.get_int("dim", 0);
  reject_unused(cfg);

  // Initial state: fock:n or plus:m,n for (|m> + |n>)/sqrt(2).
  std::vector<std::complex<double>> amps;
  if (initial.rfind("fock:", 0) == 0) {
    const int n = std::stoi(initial.substr(5));
    if (n < 0) throw ConfigError("fock level must be >= 0");
    amps.assign(n + 1, 0.0);
    amps[n] = 1.0;
  } else if (initial.rfind("plus:", 0) == 0) {
    std::istringstream ss(initial.substr(5));
    int a, b;
    char comma;
    if (!(ss >> a >> comma >> b) || comma != ',' || a < 0 || b < 0 || a == b)
      throw ConfigError("plus:m,n needs two distinct non-negative levels");
    amps.assign(std::max(a, b) + 1, 0.0);
    amps[a] = 1.0 / std::sqrt(2.0);
    amps[b] = 1.0 / std::sqrt(2.0);
  } else {
    throw ConfigError("initial must be fock:n or plus:m,n");
  }
  const int top = int(amps.size()) - 1;
  if (dim <= 0) dim = 4 * top + 20;
  if (dim <= top) throw ConfigError("dim too small for the initial state");

  Trajectory traj = solve_u(s.model, s.cavity, dt, t_max);
  if (!s.bath.zero_temperature) solve_v(traj, s.bath);
  const FockDensityMatrix rho0 = FockDensityMatrix::pure(dim, amps);

  auto echo = s.echo;
  echo.emplace_back("dt", format_double(dt));
  echo.emplace_back("t_max", format_double(t_max));
  echo.emplace_back("initial", initial);
  echo.emplace_back("dim", std::to_string(dim));

  std::vector<std::vector<double>> rows;
  const size_t step = std::max<size_t>(1, traj.t.size() / size_t(samples));
  for (size_t i = 0; i < traj.t.size(); i += step) {
    const double v = traj.v.empty() ? 0.0 : traj.v[i];
    EvolveOptions eo;
    eo.allow_leakage = true;  // reported per row instead of refusing mid-run
    const EvolveResult r = evolve_density_matrix(rho0, traj.u[i], v, eo);
    std::vector<double> row{traj.t[i], std::abs(traj.u[i]), v, r.rho.fidelity(amps),
                            r.rho.trace_real(), r.leakage};
    for (int p = 0; p < std::min(6, dim); ++p) row.push_back(r.rho.at(p, p).real());
    rows.push_back(std::move(row));
  }
  std::vector<std::string> cols{"t", "abs_u", "v", "fidelity", "trace", "leakage"};
  for (int p = 0; p < std::min(6, dim); ++p) cols.push_back("p" + std::to_string(p));
  const std::string path = join_path(out_dir, "density_matrix.csv");
  write_csv(path, echo, cols, rows);
  return {path};
}

std::vector<std::string> cmd_lattice(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, false);
  const int N = cfg.get_int("N", 60);
  const double t_max = cfg.get_double("t_max", 30.0);
  LatticeOptions opt;
  opt.dt = cfg.get_double("dt", 0.01);
  opt.sample_stride = cfg.get_int("sample_stride", 10);
  opt.site_radius = cfg.get_int("site_radius", 3);
  opt.snapshot_stride = cfg.get_int("snapshot_stride", 0);
  reject_unused(cfg);

  const LatticeRun run = run_lattice(s.model, s.cavity, N, t_max, opt);

  auto echo = s.echo;
  echo.emplace_back("N", std::to_string(N));
  echo.emplace_back("dt", format_double(opt.dt));
  echo.emplace_back("t_max", format_double(t_max));
  echo.emplace_back("t_reflection", format_double(reflection_horizon(N, s.model)));

  std::vector<std::string> written;
  {
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < run.t.size(); ++i)
      rows.push_back({run.t[i], std::abs(run.c_a[i]), run.grid_population[i], run.norm[i],
                      run.boundary_ring[i]});
    const std::string path = join_path(out_dir, "lattice_cavity.csv");
    write_csv(path, echo, {"t", "abs_c_a", "grid_population", "norm", "boundary_ring"}, rows);
    written.push_back(path);
  }
  {
    std::vector<std::string> cols{"t"};
    for (const auto& [x, y] : run.sites)
      cols.push_back("abs_c_" + std::to_string(x) + "_" + std::to_string(y));
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < run.t.size(); ++i) {
      std::vector<double> row{run.t[i]};
      for (size_t sidx = 0; sidx < run.sites.size(); ++sidx)
        row.push_back(std::abs(run.site_series[sidx][i]));
      rows.push_back(std::move(row));
    }
    const std::string path = join_path(out_dir, "lattice_sites.csv");
    write_csv(path, echo, cols, rows);
    written.push_back(path);
  }
  for (size_t k = 0; k < run.snapshots.size(); ++k) {
    std::vector<std::vector<double>> rows;
    LatticeState view;
    view.half_size = N;
    for (int y = -N; y <= N; ++y)
      for (int x = -N; x <= N; ++x) {
        const auto c = run.snapshots[k][view.index(x, y)];
        rows.push_back({double(x), double(y), c.real(), c.imag(), std::abs(c)});
      }
    auto snap_echo = echo;
    snap_echo.emplace_back("snapshot_t", format_double(run.snapshot_times[k]));
    const std::string path =
        join_path(out_dir, "lattice_snapshot_" + std::to_string(k) + ".csv");
    write_csv(path, snap_echo, {"x", "y", "re", "im", "abs"}, rows);
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> cmd_compare_bm(const Config& cfg, const std::string& out_dir) {
  Setup s = parse_setup(cfg, true);
  const double dt = cfg.get_double("dt", 0.01);
  const double t_max = cfg.get_double("t_max", 100.0);
  const int stride = cfg.get_int("output_stride", 1);
  reject_unused(cfg);

  Trajectory exact = solve_u(s.model, s.cavity, dt, t_max);
  if (!s.bath.zero_temperature) solve_v(exact, s.bath);
  const BMCoefficients bm = bm_coefficients(s.model, s.cavity, s.bath);
  const Trajectory bm_traj = bm_green_functions(s.model, s.cavity, bm, s.bath, exact.t);
  const std::vector<double> n_exact = photon_number(s.n0, exact);
  const std::vector<double> n_bm = photon_number(s.n0, bm_traj);

  auto echo = s.echo;
  echo.emplace_back("dt", format_double(dt));
  echo.emplace_back("t_max", format_double(t_max));
  echo.emplace_back("kappa_bm", format_double(bm.kappa));
  echo.emplace_back("omega_c_ren_bm", format_double(bm.omega_c_ren));

  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < exact.t.size(); i += stride) {
    const double ve = exact.v.empty() ? 0.0 : exact.v[i];
    rows.push_back({exact.t[i], std::abs(exact.u[i]), std::abs(bm_traj.u[i]), ve,
                    bm_traj.v[i], n_exact[i], n_bm[i]});
  }
  const std::string path = join_path(out_dir, "compare_bm.csv");
  write_csv(path, echo, {"t", "abs_u", "abs_u_bm", "v", "v_bm", "n", "n_bm"}, rows);
  return {path};
}

}  // namespace

std::vector<std::string> run_scenario(const std::string& command, const Config& cfg,
                                      const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  if (command == "spectrum") return cmd_spectrum(cfg, out_dir);
  if (command == "bound-states") return cmd_bound_states(cfg, out_dir);
  if (command == "sweep") return cmd_sweep(cfg, out_dir);
  if (command == "propagate") return cmd_propagate(cfg, out_dir);
  if (command == "thermal") return cmd_thermal(cfg, out_dir);
  if (command == "density-matrix") return cmd_density_matrix(cfg, out_dir);
  if (command == "lattice") return cmd_lattice(cfg, out_dir);
  if (command == "compare-bm") return cmd_compare_bm(cfg, out_dir);
  throw ConfigError("unknown command '" + command + "'");
}

void emit_plot_script(const std::vector<std::string>& datasets, const std::string& script_path) {
  if (datasets.empty()) throw ConfigError("emit_plot_script: empty dataset list");
  std::vector<std::string> missing;
  for (const auto& p : datasets)
    if (!std::filesystem::exists(p)) missing.push_back(p);
  if (!missing.empty()) {
    std::string msg = "emit_plot_script: missing datasets:";
    for (const auto& p : missing) msg += " " + p;
    throw ConfigError(msg);
  }
  std::ofstream out(script_path);
  if (!out) throw std::runtime_error("emit_plot_script: cannot open " + script_path);
  out << "# gnuplot script generated by " << kVersion << "\n";
  out << "set datafile separator ','\n";
  out << "set terminal pngcairo size 900,600\n";
  out << "set key outside\n";
  for (const auto& p : datasets) {
    const CsvData data = read_csv(p);
    const std::string stem = std::filesystem::path(p).stem().string();
    out << "set output '" << stem << ".png'\n";
    out << "set xlabel '" << (data.columns.empty() ? "x" : data.columns[0]) << "'\n";
    out << "plot";
    for (size_t c = 1; c < data.columns.size(); ++c) {
      if (c > 1) out << ",";
      out << " '" << p << "' skip 2 using 1:" << (c + 1) << " with lines title '"
          << data.columns[c] << "'";
    }
    out << "\n";
  }
}

}  // namespace bicdyn
