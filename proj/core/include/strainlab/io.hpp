#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strainlab/diagnostics.hpp"
#include "strainlab/solver.hpp"

namespace strainlab {

// ---- configuration ---------------------------------------------------------

/// Parse failure; `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// INI-style `key = value` text with sections [equation], [grid], [time],
/// [initial], [output]. `#` and `;` start comments.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Canonical text form; parse_config(render_config(c)) reproduces c.
std::string render_config(const SimConfig& cfg);

// ---- snapshots -------------------------------------------------------------

enum class FieldKind : std::uint8_t { kStrain = 0, kVector = 1 };

inline constexpr char kSnapshotMagic[4] = {'M', 'N', 'S', 'S'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  FieldKind kind = FieldKind::kStrain;
  int n = 0;
  double t = 0.0;
  std::optional<SpectralStrainField> strain;
  std::optional<SpectralVectorField> vector;
};

/// Layout: magic, u32 version, u32 n, u8 kind, f64 t, then (re, im) f64 pairs
/// component-major over the full n^3 mode array. Little-endian throughout.
std::vector<std::uint8_t> encode_snapshot(const SpectralStrainField& s, double t);
std::vector<std::uint8_t> encode_snapshot(const SpectralVectorField& v, double t);
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes,
                         std::optional<int> expected_n = std::nullopt,
                         const std::string& context = "snapshot");

void write_snapshot(const std::string& path, const SimState& state);
void write_snapshot(const std::string& path, const SpectralVectorField& v, double t);
Snapshot read_snapshot(const std::string& path, std::optional<int> expected_n = std::nullopt);

// ---- diagnostics CSV -------------------------------------------------------

/// Header plus one row per record; reals as %.16e (17 significant digits).
std::string format_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                                   const DiagnosticsConfig& cfg);
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                           const DiagnosticsConfig& cfg);

std::string format_real(double v);

// ---- manifest --------------------------------------------------------------

struct RunManifest {
  std::string config_echo;
  std::string code_version;
  std::optional<std::uint64_t> seed;
  std::string started;
  std::string finished;
  std::string verdict;
  std::string blowup_flag;
  long steps = 0;
  double final_t = 0.0;
  std::vector<std::string> files;
};

std::string code_version();
/// UTC timestamp in ISO 8601 form.
std::string utc_timestamp();

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(std::string_view text);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace strainlab
