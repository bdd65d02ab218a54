// Command-line front end: closed-form sweeps, constrained optimization
// reports, slot-level simulation, and the bundled dataset presets.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wpc/wpc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Cell {
  std::string text;
  bool quoted = false;
};

Cell num(double v) { return {fmt12(v), false}; }
Cell str(std::string s) { return {std::move(s), true}; }

struct Table {
  std::vector<std::string> notes;  // emitted as leading '#' lines in CSV
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string render_csv(const Table& t) {
  std::ostringstream out;
  for (const auto& n : t.notes) out << "# " << n << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i)
    out << (i ? "," : "") << t.header[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i].text;
    out << "\n";
  }
  return out.str();
}

std::string json_scalar(const Cell& c) {
  if (c.quoted) return "\"" + c.text + "\"";
  if (c.text == "nan" || c.text == "-nan" || c.text == "inf" ||
      c.text == "-inf")
    return "null";
  return c.text;
}

std::string render_json(const Table& t) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "  {";
    for (std::size_t i = 0; i < t.header.size(); ++i)
      out << (i ? ", " : "") << "\"" << t.header[i]
          << "\": " << json_scalar(t.rows[r][i]);
    out << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

std::string render_json_object(const std::vector<std::pair<std::string, Cell>>& fields) {
  std::ostringstream out;
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i)
    out << "  \"" << fields[i].first << "\": " << json_scalar(fields[i].second)
        << (i + 1 < fields.size() ? "," : "") << "\n";
  out << "}\n";
  return out.str();
}

/// Writes via a temporary file and rename so a failed run never leaves a
/// partial file behind. An empty path streams to stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

struct SweepRange {
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;

  std::vector<double> points() const {
    if (!(step > 0.0) || !(from <= to))
      throw CLI::ValidationError("sweep", "empty sweep range");
    std::vector<double> xs;
    const auto n = static_cast<std::size_t>((to - from) / step + 0.5);
    for (std::size_t i = 0; i <= n; ++i) {
      const double x = from + static_cast<double>(i) * step;
      if (x > to + 0.5 * step) break;
      xs.push_back(x);
    }
    if (xs.empty()) throw CLI::ValidationError("sweep", "empty sweep range");
    return xs;
  }
};

struct CommonFlags {
  double gamma_o_db = -13.0;
  CLI::Option* gamma_db_opt = nullptr;
  CLI::Option* gamma_lin_opt = nullptr;
  wpc::SystemParams params;
  wpc::SimConfig sim;
  std::string out;
  std::string format = "csv";

  bool gamma_given() const {
    return (gamma_db_opt && gamma_db_opt->count() > 0) ||
           (gamma_lin_opt && gamma_lin_opt->count() > 0);
  }

  void attach_params(CLI::App* cmd) {
    gamma_db_opt = cmd->add_option("--gamma-o-db", gamma_o_db,
                                   "SIR outage threshold in dB");
    gamma_lin_opt = cmd->add_option("--gamma-o", params.gamma_o,
                                    "SIR outage threshold, linear");
    gamma_db_opt->excludes(gamma_lin_opt);
    gamma_lin_opt->excludes(gamma_db_opt);
    cmd->add_option("--theta", params.theta, "maximum outage probability");
    cmd->add_option("--mu", params.mu, "path-loss exponent");
    cmd->add_option("--d", params.d, "source-relay distance");
    cmd->add_option("--zeta", params.zeta, "harvesting efficiency");
    cmd->add_option("--p-a", params.p_a, "AP transmit power [W]");
    cmd->add_option("--sigma2", params.sigma2, "noise power [W]");
    cmd->add_option("--r-as", params.r_as, "AP-source distance");
    cmd->add_option("--r-ar", params.r_ar, "AP-relay distance");
    cmd->add_option("--r-ad", params.r_ad, "AP-destination distance");
  }

  void attach_sim(CLI::App* cmd) {
    cmd->add_option("--slots", sim.slots, "simulated slots");
    cmd->add_option("--seed", sim.seed, "simulation seed");
    cmd->add_flag("--noise", sim.include_noise,
                  "include the receiver-noise term");
    cmd->add_option("--chunk-size", sim.chunk_size,
                    "slots per worker task (never changes results)");
  }

  void attach_out(CLI::App* cmd, bool with_format = true) {
    cmd->add_option("--out", out, "output path (default: stdout)");
    if (with_format)
      cmd->add_option("--format", format, "output format")
          ->check(CLI::IsMember({"csv", "json"}));
  }

  /// Parameters with the dB threshold converted; `fallback_db` replaces the
  /// default threshold for presets anchored elsewhere.
  wpc::SystemParams finalized_params(double fallback_db = -13.0) const {
    wpc::SystemParams p = params;
    if (gamma_db_opt && gamma_db_opt->count() > 0)
      p.gamma_o = wpc::db_to_linear(gamma_o_db);
    else if (!(gamma_lin_opt && gamma_lin_opt->count() > 0))
      p.gamma_o = wpc::db_to_linear(fallback_db);
    return p;
  }
};

void render_and_emit(const Table& t, const CommonFlags& cf) {
  emit(cf.out, cf.format == "json" ? render_json(t) : render_csv(t));
}

// ---------------------------------------------------------------------------
// dt-sweep

int run_dt_sweep(const CommonFlags& cf, const SweepRange& range) {
  const wpc::SystemParams p = cf.finalized_params();
  Table t;
  t.header = {"alpha",          "analytic_throughput", "analytic_outage",
              "sim_throughput", "sim_stderr",          "sim_outage"};
  for (double a : range.points()) {
    if (!(a > 0.0 && a < 1.0))
      throw CLI::ValidationError("--from/--to", "alpha must lie in (0,1)");
    const wpc::DtSplit split{a};
    const wpc::SimResult sim = wpc::simulate_dt(p, split, cf.sim);
    t.rows.push_back({num(a), num(wpc::dt_expected_throughput(p, split)),
                      num(wpc::dt_outage(p, split)), num(sim.mean_throughput),
                      num(sim.throughput_stderr), num(sim.outage_rate)});
  }
  render_and_emit(t, cf);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dt-optimize

int run_dt_optimize(const CommonFlags& cf) {
  const wpc::DtOptimum opt = wpc::dt_optimize(cf.finalized_params());
  emit(cf.out, render_json_object({{"alpha_star", num(opt.alpha_star)},
                                   {"throughput", num(opt.throughput)},
                                   {"outage", num(opt.outage)},
                                   {"binding", str(wpc::to_string(opt.binding))}}));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// df-sweep

int run_df_sweep(const CommonFlags& cf, const SweepRange& range,
                 const std::string& axis, double fixed_kappa, double fixed_z) {
  const wpc::SystemParams p = cf.finalized_params();
  Table t;
  t.header = {"kappa",         "z",           "alpha",        "beta",
              "analytic_sr",   "analytic_rd", "analytic_df",  "analytic_outage",
              "sim_sr",        "sim_sr_stderr", "sim_rd",     "sim_rd_stderr",
              "sim_outage"};
  for (double x : range.points()) {
    const double kappa = axis == "kappa" ? x : fixed_kappa;
    const double z = axis == "z" ? x : fixed_z;
    if (!(z > 0.0 && z < 1.0))
      throw CLI::ValidationError("--z", "z must lie in (0,1) for df-sweep");
    const wpc::DfSplit split = wpc::to_split({kappa, z});
    const wpc::SimResult sim = wpc::simulate_df(p, split, cf.sim);
    t.rows.push_back({num(kappa), num(z), num(split.alpha), num(split.beta),
                      num(wpc::expected_throughput_sr(p, split)),
                      num(wpc::expected_throughput_rd(p, split)),
                      num(wpc::expected_throughput_df(p, split)),
                      num(wpc::outage_df(p, split)), num(sim.mean_sr),
                      num(sim.sr_stderr), num(sim.mean_rd), num(sim.rd_stderr),
                      num(sim.outage_rate)});
  }
  render_and_emit(t, cf);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// df-optimize

int run_df_optimize(const CommonFlags& cf) {
  const wpc::SystemParams p = cf.finalized_params();
  const wpc::DfOptimum opt = wpc::df_optimize(p);
  wpc::DfFeasibility window;
  if (opt.feasible) window = wpc::df_feasibility(p, opt.kappa_star);
  emit(cf.out,
       render_json_object({{"kappa_star", num(opt.kappa_star)},
                           {"z_star", num(opt.z_star)},
                           {"alpha_star", num(opt.alpha_star)},
                           {"beta_star", num(opt.beta_star)},
                           {"throughput", num(opt.throughput)},
                           {"outage", num(opt.outage)},
                           {"feasible", {opt.feasible ? "true" : "false", false}},
                           {"z_lower", num(window.z_lower)},
                           {"z_upper", num(window.z_upper)}}));
  return opt.feasible ? kExitOk : kExitInfeasible;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const CommonFlags& cf, std::optional<double> alpha,
                 std::optional<double> beta) {
  const wpc::SystemParams p = cf.finalized_params();
  if (!alpha) throw CLI::ValidationError("--alpha", "simulate needs --alpha");
  std::vector<std::pair<std::string, Cell>> fields;
  if (beta) {
    const wpc::SimResult r = wpc::simulate_df(p, {*alpha, *beta}, cf.sim);
    fields = {{"protocol", str("df")},
              {"slots", {std::to_string(r.slots), false}},
              {"seed", {std::to_string(cf.sim.seed), false}},
              {"mean_throughput", num(r.mean_throughput)},
              {"throughput_stderr", num(r.throughput_stderr)},
              {"outage_rate", num(r.outage_rate)},
              {"outage_stderr", num(r.outage_stderr)},
              {"mean_sr", num(r.mean_sr)},
              {"sr_stderr", num(r.sr_stderr)},
              {"mean_rd", num(r.mean_rd)},
              {"rd_stderr", num(r.rd_stderr)},
              {"outage_sr_rate", num(r.outage_sr_rate)},
              {"outage_rd_rate", num(r.outage_rd_rate)},
              {"mean_min", num(r.mean_min)},
              {"min_stderr", num(r.min_stderr)},
              {"mean_throughput_no_outage", num(r.mean_throughput_no_outage)}};
  } else {
    const wpc::SimResult r = wpc::simulate_dt(p, {*alpha}, cf.sim);
    fields = {{"protocol", str("dt")},
              {"slots", {std::to_string(r.slots), false}},
              {"seed", {std::to_string(cf.sim.seed), false}},
              {"mean_throughput", num(r.mean_throughput)},
              {"throughput_stderr", num(r.throughput_stderr)},
              {"outage_rate", num(r.outage_rate)},
              {"outage_stderr", num(r.outage_stderr)},
              {"mean_throughput_no_outage", num(r.mean_throughput_no_outage)}};
  }
  emit(cf.out, render_json_object(fields));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce presets

Table preset_fig3(const CommonFlags& cf) {
  Table t;
  const wpc::SystemParams p = cf.finalized_params();
  t.notes = {"direct transmission: throughput and outage versus harvest ratio",
             "gamma_o = " + fmt12(p.gamma_o) + " (linear), slots = " +
                 std::to_string(cf.sim.slots) + ", seed = " +
                 std::to_string(cf.sim.seed)};
  t.header = {"alpha",          "analytic_throughput", "analytic_outage",
              "sim_throughput", "sim_stderr",          "sim_outage"};
  for (int i = 1; i <= 99; ++i) {
    const double a = 0.01 * i;
    const wpc::DtSplit split{a};
    const wpc::SimResult sim = wpc::simulate_dt(p, split, cf.sim);
    t.rows.push_back({num(a), num(wpc::dt_expected_throughput(p, split)),
                      num(wpc::dt_outage(p, split)), num(sim.mean_throughput),
                      num(sim.throughput_stderr), num(sim.outage_rate)});
  }
  return t;
}

Table preset_fig4(const CommonFlags& cf) {
  Table t;
  const wpc::SystemParams base = cf.finalized_params();
  t.notes = {"optimized direct-transmission throughput versus harvesting "
             "efficiency",
             "gamma_o = " + fmt12(base.gamma_o) +
                 " (linear); relaxed column drops the outage cap"};
  t.header = {"zeta",
              "alpha_star_theta_002",
              "throughput_theta_002",
              "alpha_star_theta_005",
              "throughput_theta_005",
              "alpha_star_relaxed",
              "throughput_relaxed"};
  for (int i = 0; i <= 18; ++i) {
    const double zeta = 0.1 + 0.05 * i;
    std::vector<Cell> row{num(zeta)};
    for (double theta : {0.02, 0.05, 1.0 - 1e-12}) {
      wpc::SystemParams p = base;
      p.zeta = zeta;
      p.theta = theta;
      const auto opt = wpc::dt_optimize(p);
      row.push_back(num(opt.alpha_star));
      row.push_back(num(opt.throughput));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table preset_fig5(const CommonFlags& cf) {
  Table t;
  t.notes = {"optimal direct-transmission harvest ratio versus SIR threshold"};
  t.header = {"gamma_o_db", "alpha_star_theta_002", "alpha_star_theta_005"};
  const wpc::SystemParams base = cf.finalized_params();
  for (int i = 0; i <= 40; ++i) {
    const double db = -20.0 + 0.5 * i;
    std::vector<Cell> row{num(db)};
    for (double theta : {0.02, 0.05}) {
      wpc::SystemParams p = base;
      p.gamma_o = wpc::db_to_linear(db);
      p.theta = theta;
      row.push_back(num(wpc::dt_optimize(p).alpha_star));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table preset_fig6(const CommonFlags& cf) {
  Table t;
  const wpc::SystemParams p = cf.finalized_params();
  const double z = 1.0;  // harvest plus first hop fill the whole slot
  t.notes = {"first-hop expected throughput versus harvest ratio kappa",
             "z = 1, d = " + fmt12(p.d) + ", mu = " + fmt12(p.mu) +
                 ", slots = " + std::to_string(cf.sim.slots) + ", seed = " +
                 std::to_string(cf.sim.seed)};
  t.header = {"kappa", "analytic_throughput", "sim_throughput", "sim_stderr"};
  for (int i = 0; i <= 80; ++i) {
    const double kappa = std::pow(10.0, -2.0 + 4.0 * i / 80.0);
    const double analytic = wpc::esr_kappa_z(p, {kappa, z});
    const double scale = p.zeta * kappa * std::pow(p.d, -p.mu);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t slot = 0; slot < cf.sim.slots; ++slot) {
      wpc::Rng rng(cf.sim.seed, slot);
      const double v =
          z / (1.0 + kappa) * std::log2(1.0 + wpc::sample_ratio(rng, scale));
      sum += v;
      sumsq += v * v;
    }
    const double n = static_cast<double>(cf.sim.slots);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    t.rows.push_back({num(kappa), num(analytic), num(mean),
                      num(std::sqrt(var / n))});
  }
  return t;
}

Table preset_fig7(const CommonFlags& cf) {
  Table t;
  const wpc::SystemParams base = cf.finalized_params();
  const double kappa = wpc::optimize_kappa(base);
  t.notes = {"feasible window of the harvest-and-first-hop sum time versus "
             "SIR threshold",
             "d = " + fmt12(base.d) +
                 " (d = 0 is singular; override with --d), kappa = " +
                 fmt12(kappa) + " (per-unit-z optimum)",
             "z_lower = nan marks thresholds whose outage cap no z can meet"};
  t.header = {"gamma_o_db", "z_lower_theta_002", "z_lower_theta_005",
              "z_upper"};
  for (int i = 0; i <= 40; ++i) {
    const double db = -20.0 + 0.5 * i;
    std::vector<Cell> row{num(db)};
    double z_up = 0.0;
    for (double theta : {0.02, 0.05}) {
      wpc::SystemParams p = base;
      p.gamma_o = wpc::db_to_linear(db);
      p.theta = theta;
      const auto fs = wpc::df_feasibility(p, kappa);
      row.push_back(num(fs.z_lower));
      z_up = fs.z_upper;  // independent of theta
    }
    row.push_back(num(z_up));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table preset_fig8(const CommonFlags& cf) {
  Table t;
  const wpc::SystemParams base = cf.finalized_params(-18.0);
  t.notes = {"optimal throughput of both protocols versus source-relay "
             "distance",
             "gamma_o = " + fmt12(base.gamma_o) + " (linear), theta = " +
                 fmt12(base.theta) + " (override with --theta)"};
  t.header = {"d", "dt_throughput", "df_throughput_mu2", "df_throughput_mu3"};
  const double dt_value = wpc::dt_optimize(base).throughput;
  for (int i = 1; i <= 19; ++i) {
    const double d = 0.05 * i;
    std::vector<Cell> row{num(d), num(dt_value)};
    for (double mu : {2.0, 3.0}) {
      wpc::SystemParams p = base;
      p.d = d;
      p.mu = mu;
      const auto opt = wpc::df_optimize(p);
      row.push_back(num(opt.throughput));  // nan when infeasible
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

int run_reproduce(const CommonFlags& cf, const std::string& figure_id,
                  const std::string& out_dir) {
  Table t;
  if (figure_id == "fig3")
    t = preset_fig3(cf);
  else if (figure_id == "fig4")
    t = preset_fig4(cf);
  else if (figure_id == "fig5")
    t = preset_fig5(cf);
  else if (figure_id == "fig6")
    t = preset_fig6(cf);
  else if (figure_id == "fig7")
    t = preset_fig7(cf);
  else if (figure_id == "fig8")
    t = preset_fig8(cf);
  else
    throw CLI::ValidationError("figure", "unknown figure id " + figure_id);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path =
      std::filesystem::path(out_dir) / (figure_id + ".csv");
  emit(path.string(), render_csv(t));
  std::cout << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wireless-powered link analysis: closed forms, optimizers, "
               "and a slot-level simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read option defaults from an INI/TOML file (sections per "
                 "subcommand; command-line flags win)");

  CommonFlags dt_sweep_cf;
  SweepRange dt_range{0.01, 0.99, 0.01};
  auto* dt_sweep = app.add_subcommand("dt-sweep",
                                      "sweep the harvest ratio of the direct "
                                      "link; analytic and simulated columns");
  dt_sweep->fallthrough();  // --config after the subcommand reaches the app
  dt_sweep_cf.attach_params(dt_sweep);
  dt_sweep_cf.attach_sim(dt_sweep);
  dt_sweep_cf.attach_out(dt_sweep);
  dt_sweep->add_option("--from", dt_range.from, "first alpha");
  dt_sweep->add_option("--to", dt_range.to, "last alpha");
  dt_sweep->add_option("--step", dt_range.step, "alpha increment");

  CommonFlags dt_opt_cf;
  auto* dt_opt = app.add_subcommand(
      "dt-optimize", "optimal harvest ratio under the outage cap");
  dt_opt->fallthrough();
  dt_opt_cf.attach_params(dt_opt);
  dt_opt_cf.attach_out(dt_opt, false);

  CommonFlags df_sweep_cf;
  SweepRange df_range{0.1, 10.0, 0.1};
  std::string df_axis = "kappa";
  double fixed_kappa = 1.0, fixed_z = 0.8;
  auto* df_sweep = app.add_subcommand(
      "df-sweep", "sweep kappa or z of the relayed link");
  df_sweep->fallthrough();
  df_sweep_cf.attach_params(df_sweep);
  df_sweep_cf.attach_sim(df_sweep);
  df_sweep_cf.attach_out(df_sweep);
  df_sweep->add_option("--axis", df_axis, "sweep axis")
      ->check(CLI::IsMember({"kappa", "z"}));
  df_sweep->add_option("--from", df_range.from, "axis start");
  df_sweep->add_option("--to", df_range.to, "axis end");
  df_sweep->add_option("--step", df_range.step, "axis increment");
  df_sweep->add_option("--kappa", fixed_kappa, "fixed kappa (z sweeps)");
  df_sweep->add_option("--z", fixed_z, "fixed z (kappa sweeps)");

  CommonFlags df_opt_cf;
  auto* df_opt = app.add_subcommand(
      "df-optimize",
      "optimal relayed split under the outage cap and data causality");
  df_opt->fallthrough();
  df_opt_cf.attach_params(df_opt);
  df_opt_cf.attach_out(df_opt, false);

  CommonFlags sim_cf;
  std::optional<double> sim_alpha, sim_beta;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "slot-level simulation at a fixed split (direct link, or "
                  "relayed when --beta is given)");
  sim_cmd->fallthrough();
  sim_cf.attach_params(sim_cmd);
  sim_cf.attach_sim(sim_cmd);
  sim_cf.attach_out(sim_cmd, false);
  sim_cmd->add_option("--alpha", sim_alpha, "harvest ratio");
  sim_cmd->add_option("--beta", sim_beta, "first-hop share (relayed)");

  CommonFlags repro_cf;
  std::string figure_id;
  std::string repro_out = ".";
  auto* repro = app.add_subcommand(
      "reproduce", "write a bundled dataset preset (fig3..fig8) as CSV");
  repro->fallthrough();
  repro_cf.attach_params(repro);
  repro_cf.attach_sim(repro);
  repro->add_option("figure", figure_id, "one of fig3..fig8")->required();
  repro->add_option("--out", repro_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dt_sweep->parsed()) return run_dt_sweep(dt_sweep_cf, dt_range);
    if (dt_opt->parsed()) return run_dt_optimize(dt_opt_cf);
    if (df_sweep->parsed())
      return run_df_sweep(df_sweep_cf, df_range, df_axis, fixed_kappa, fixed_z);
    if (df_opt->parsed()) return run_df_optimize(df_opt_cf);
    if (sim_cmd->parsed()) return run_simulate(sim_cf, sim_alpha, sim_beta);
    if (repro->parsed()) return run_reproduce(repro_cf, figure_id, repro_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
