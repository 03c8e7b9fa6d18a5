#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strainlab/diagnostics.hpp"
#include "strainlab/io.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/solver.hpp"
#include "strainlab/verify.hpp"

using namespace strainlab;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

// Accepts either a config file or a manifest whose config_echo is replayed.
SimConfig load_any(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError(0, path + ": no such file");
  if (fs::path(path).extension() == ".json") {
    try {
      return parse_config(manifest_from_json(read_text_file(path)).config_echo);
    } catch (const ConfigError& e) {
      throw ConfigError(0, path + ": " + e.what());
    }
  }
  return load_config(path);
}

std::optional<std::uint64_t> seed_of(const SimConfig& cfg) {
  if (const auto* r = std::get_if<RandomBandInit>(&cfg.initial)) return r->seed;
  return std::nullopt;
}

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string out_path(const SimConfig& cfg, const std::string& suffix) {
  return (fs::path(cfg.output.directory) / (cfg.output.prefix + suffix)).string();
}

int cmd_simulate(const std::string& path) {
  const SimConfig cfg = load_any(path);
  fs::create_directories(cfg.output.directory);
  RunManifest m;
  m.config_echo = render_config(cfg);
  m.code_version = code_version();
  m.seed = seed_of(cfg);
  m.started = utc_timestamp();

  auto on_step = [&](const SimState& st) {
    if (cfg.output.snapshot_every > 0 && st.step_count % cfg.output.snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "_step%08ld.mnss", st.step_count);
      write_snapshot(out_path(cfg, name), st);
      m.files.push_back(fs::path(out_path(cfg, name)).filename().string());
    }
  };

  std::optional<RunResult> out;
  try {
    out = run(cfg, {}, on_step);
  } catch (const SolverError& e) {
    const std::string dump = out_path(cfg, "_failure.mnss");
    write_snapshot(dump, e.last_good());
    std::cerr << "solver failure: " << e.what() << " (last good state at t = " << e.last_good().t
              << " written to " << dump << ")\n";
    m.files.push_back(fs::path(dump).filename().string());
    m.verdict = std::string("solver failure: ") + e.what();
    m.steps = e.last_good().step_count;
    m.final_t = e.last_good().t;
    m.finished = utc_timestamp();
    write_text_file(out_path(cfg, "_manifest.json"), manifest_to_json(m));
    return kExitCheck;
  }

  const RunResult& res = *out;
  const std::string csv = out_path(cfg, "_diagnostics.csv");
  write_diagnostics_csv(csv, res.records, cfg.diagnostics_config());
  m.files.push_back(fs::path(csv).filename().string());
  if (cfg.output.final_snapshot) {
    const std::string snap = out_path(cfg, "_final.mnss");
    write_snapshot(snap, res.final_state);
    m.files.push_back(fs::path(snap).filename().string());
  }
  const MonitorReport rep = blowup_monitor(res.records, cfg, res.flag);
  m.verdict = rep.verdict;
  m.blowup_flag = to_string(res.flag);
  m.steps = res.final_state.step_count;
  m.final_t = res.final_state.t;
  m.finished = utc_timestamp();
  write_text_file(out_path(cfg, "_manifest.json"), manifest_to_json(m));

  std::cout << "steps " << m.steps << ", t = " << m.final_t << ", flag " << m.blowup_flag << "\n"
            << "verdict: " << m.verdict << "\n";
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, int n) {
  const auto lines = run_verify_suite(seed, n);
  std::cout << format_check_table(lines);
  bool ok = true;
  for (const auto& l : lines) ok = ok && l.pass();
  std::cout << (ok ? "all checks passed\n" : "CHECK FAILURES\n");
  return ok ? kExitOk : kExitCheck;
}

int cmd_diagnose(const std::string& path, const std::vector<double>& alphas,
                 const std::vector<double>& qs, double mu) {
  const Snapshot snap = read_snapshot(path);
  const SpectralStrainField s =
      snap.kind == FieldKind::kStrain ? *snap.strain : sym_grad(leray_project(*snap.vector));
  DiagnosticsConfig dc;
  dc.mu = mu;
  if (!alphas.empty()) dc.alphas = alphas;
  if (!qs.empty()) dc.qs = qs;
  std::cout << format_diagnostics_csv({compute_record(s, snap.t, 0, dc)}, dc);
  return kExitOk;
}

int cmd_scan_mu(const std::string& path, const std::vector<double>& mus) {
  const SimConfig base = load_any(path);
  const SpectralStrainField s0 = make_initial_strain(base);
  fs::create_directories(base.output.directory);
  std::vector<double> rates;
  std::printf("%-22s %-24s %-24s %s\n", "mu", "rate_measured(t=0)", "rate_identity(t=0)", "series");
  for (double mu : mus) {
    SimConfig cfg = base;
    cfg.mu = mu;
    cfg.validate();
    const RunResult res = run(cfg, s0);
    const std::string name = out_path(cfg, "_mu_" + shortest(mu) + ".csv");
    write_diagnostics_csv(name, res.records, cfg.diagnostics_config());
    rates.push_back(res.records.front().rate_measured);
    std::printf("%-22s %-24s %-24s %s\n", format_real(mu).c_str(),
                format_real(res.records.front().rate_measured).c_str(),
                format_real(res.records.front().rate_identity).c_str(), name.c_str());
  }
  double lo = rates.front(), hi = rates.front();
  for (double r : rates) lo = std::min(lo, r), hi = std::max(hi, r);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double spread = scale == 0.0 ? 0.0 : (hi - lo) / scale;
  const bool ok = spread <= 1e-9;
  std::printf("relative spread of t=0 rates %.3e (tolerance 1e-9) %s\n", spread, ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitCheck;
}

int cmd_constants() {
  for (const auto& c : reference_constants())
    std::printf("%-32s %.15g  %s\n", c.name.c_str(), c.value, c.description.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strain-formulation Navier-Stokes solver and diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  std::string sim_path;
  auto* sim = app.add_subcommand("simulate", "Run a simulation from a config or manifest");
  sim->add_option("config", sim_path, "Config file or run manifest (.json)")->required();

  std::uint64_t seed = 7;
  int n = 32;
  auto* ver = app.add_subcommand("verify", "Run the identity and property suite");
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--n", n, "Grid size (power of two >= 8)")->check(CLI::Range(8, 256));

  std::string snap_path;
  std::vector<double> alphas, qs;
  double mu = 1.0;
  auto* diag = app.add_subcommand("diagnose", "Diagnostics of one snapshot as CSV");
  diag->add_option("snapshot", snap_path)->required();
  diag->add_option("--alpha", alphas, "Sobolev indices")->delimiter(',');
  diag->add_option("--q", qs, "Lebesgue exponents (use inf for infinity)")->delimiter(',');
  diag->add_option("--mu", mu, "Equation parameter for the rate columns");

  std::string scan_path;
  std::vector<double> mus;
  auto* scan = app.add_subcommand("scan-mu", "Run one initial field for several mu");
  scan->add_option("config", scan_path)->required();
  scan->add_option("--mu-list", mus, "Comma-separated mu values")->delimiter(',')->required();

  app.add_subcommand("constants", "Print reference constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) return cmd_simulate(sim_path);
    if (*ver) return cmd_verify(seed, n);
    if (*diag) return cmd_diagnose(snap_path, alphas, qs, mu);
    if (*scan) return cmd_scan_mu(scan_path, mus);
    return cmd_constants();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SnapshotError& e) {
    std::cerr << "snapshot error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  }
}
