#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "strainlab/diagnostics.hpp"
#include "strainlab/field.hpp"

namespace strainlab {

struct TaylorGreenInit {
  double amplitude = 1.0;
};

/// Random strain-space data with max|k_i| <= band and ||S||_{L^2} = amplitude.
/// With `amplify` the field is turned into a blow-up seed (see amplify_blowup_seed).
struct RandomBandInit {
  std::uint64_t seed = 0;
  int band = 4;
  double amplitude = 1.0;
  bool amplify = false;
  double margin = 2.0;
};

struct SnapshotInit {
  std::string path;
};

using InitialData = std::variant<TaylorGreenInit, RandomBandInit, SnapshotInit>;

struct OutputSettings {
  std::string directory = ".";
  std::string prefix = "run";
  int snapshot_every = 0;  // in steps; 0 disables intermediate snapshots
  bool final_snapshot = true;
};

struct SimConfig {
  double mu = 1.0;
  bool advection = false;
  bool nonlinear = true;  // false drops N(S) entirely (pure heat flow)
  int grid_n = 32;
  int dealias_cutoff = -1;  // -1 resolves to n/3
  std::optional<double> dt;  // fixed step; adaptive when empty
  double cfl_factor = 0.5;
  double min_dt = 1e-10;
  double t_end = 1.0;
  int sample_every = 10;
  InitialData initial = TaylorGreenInit{};
  double blowup_threshold = 100.0;  // multiple of the initial enstrophy
  DiagnosticsLevel diagnostics = DiagnosticsLevel::kFull;
  std::vector<double> alphas{0.0, 1.0};
  std::vector<double> qs{2.0, 3.0, kInf};
  OutputSettings output;

  Grid3 grid() const;
  DiagnosticsConfig diagnostics_config() const;
  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

struct SimState {
  double t = 0.0;
  SpectralStrainField s;
  long step_count = 0;
  double initial_enstrophy = 0.0;
};

enum class BlowupFlag { kNone, kThresholdHit, kDtUnderflow };

const char* to_string(BlowupFlag f);

struct StepResult {
  SimState state;
  double dt_used = 0.0;
  BlowupFlag blowup_flag = BlowupFlag::kNone;
};

/// Non-finite coefficients during a step. Carries the last finite state.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SimState last_good)
      : std::runtime_error(what), last_good_(std::move(last_good)) {}
  const SimState& last_good() const { return last_good_; }

 private:
  SimState last_good_;
};

/// ||grad u||_{L^inf} on the grid, with |grad u|^2 = |S|^2 + |omega|^2 / 2 pointwise.
double grad_u_sup(const SpectralStrainField& s);

/// One integrating-factor RK4 step of size dt for dS/dt = Lap S - N(S),
/// followed by re-projection and truncation to the grid cutoff.
SpectralStrainField if_rk4_step(const SpectralStrainField& s, double dt, const SimConfig& cfg);

/// Step with the configured dt policy, clipped so the run lands on t_end.
StepResult step(const SimState& state, const SimConfig& cfg);

SpectralStrainField make_initial_strain(const SimConfig& cfg);
SimState initial_state(SpectralStrainField s0);

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  SimState final_state;
  BlowupFlag flag = BlowupFlag::kNone;
};

/// Called after every sampled record (including the initial one).
using SampleObserver = std::function<void(const SimState&, const DiagnosticsRecord&)>;
/// Called after every step.
using StepObserver = std::function<void(const SimState&)>;

RunResult run(const SimConfig& cfg, const SampleObserver& on_sample = {},
              const StepObserver& on_step = {});
RunResult run(const SimConfig& cfg, SpectralStrainField s0, const SampleObserver& on_sample = {},
              const StepObserver& on_step = {});

// ---- Duhamel fixed point ---------------------------------------------------

struct PicardResult {
  std::vector<double> times;             // uniform mesh 0 = t_0 < ... < t_M = T
  std::vector<double> distances;         // d_m = sup_j ||S^{m}(t_j) - S^{m-1}(t_j)||_{L^2}
  std::vector<double> ratios;            // d_{m+1} / d_m
  std::vector<SpectralStrainField> iterate;  // last iterate on the mesh
  bool converged = false;                // d_m at the round-off level of the Duhamel term
  bool nonconvergence = false;           // ratio >= 1 three times in a row
};

/// Iterates S -> e^{t Lap} S0 - int_0^t e^{(t-tau) Lap} N(S(tau)) dtau on a
/// uniform mesh with trapezoidal weights. Requires advection off.
PicardResult picard_fixed_point(const SpectralStrainField& s0, const SimConfig& cfg, double t_final,
                                int iterations, int mesh_intervals = 32);

/// Longest run of consecutive ratios below one.
int longest_contraction_run(const PicardResult& r);

struct ExistenceTimes {
  double t_general = kInf;    // C_mu / ||S0||^4
  double t_enstrophy = kInf;  // 1728 pi^4 / ||S0||^4
};

ExistenceTimes existence_time_bounds(const SpectralStrainField& s0, double mu);

// ---- blow-up monitor -------------------------------------------------------

/// E(t) <= E0 / sqrt(1 - E0^2 t / (1728 pi^4)); +inf once the root vanishes.
double riccati_envelope(double e0, double t);

/// Gronwall constants for the H1 envelope, available at alpha = 0 and 1 only.
std::optional<double> gronwall_constant(double alpha);

struct MonitorReport {
  bool envelope_violated = false;
  std::optional<double> first_envelope_violation_t;
  std::optional<bool> gronwall_violated;  // empty when not applicable or unchecked
  double max_ratio = 0.0;
  std::optional<double> first_ratio_violation_t;
  bool resolution_intact = true;
  std::optional<double> resolution_lost_t;
  bool threshold_hit = false;
  bool increasing_while_resolved = true;
  std::string verdict;
};

MonitorReport blowup_monitor(const std::vector<DiagnosticsRecord>& series, const SimConfig& cfg,
                             BlowupFlag flag = BlowupFlag::kNone);

}  // namespace strainlab
