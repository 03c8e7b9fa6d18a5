#include "strainlab/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#ifndef STRAINLAB_VERSION
#define STRAINLAB_VERSION "unknown"
#endif

namespace strainlab {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_real(std::string_view v, int line, const std::string& key) {
  const std::string l = lower(v);
  if (l == "inf" || l == "+inf" || l == "infinity") return kInf;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError(line, key + ": expected a real number, got '" + std::string(v) + "'");
  return out;
}

long long parse_integer(std::string_view v, int line, const std::string& key) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(line, key + ": expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool parse_bool(std::string_view v, int line, const std::string& key) {
  const std::string l = lower(v);
  if (l == "true" || l == "yes" || l == "on" || l == "1") return true;
  if (l == "false" || l == "no" || l == "off" || l == "0") return false;
  throw ConfigError(line, key + ": expected true or false, got '" + std::string(v) + "'");
}

std::vector<double> parse_list(std::string_view v, int line, const std::string& key) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const std::string_view item = trim(v.substr(0, comma));
    if (item.empty()) throw ConfigError(line, key + ": empty list entry");
    out.push_back(parse_real(item, line, key));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + shortest(xs[i]);
  return out;
}

struct InitialKeys {
  std::string type = "taylor_green";
  int type_line = 0;
  std::map<std::string, std::pair<std::string, int>> values;
};

}  // namespace

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  InitialKeys init;
  std::map<std::string, int> seen;
  int equation_line = 0;
  int cutoff_line = 0;
  bool cutoff_given = false;
  std::string section;

  using Handler = std::function<void(std::string_view, int, const std::string&)>;
  const std::map<std::string, Handler> handlers{
      {"equation.mu", [&](auto v, int l, auto& k) { cfg.mu = parse_real(v, l, k); }},
      {"equation.advection", [&](auto v, int l, auto& k) { cfg.advection = parse_bool(v, l, k); }},
      {"equation.nonlinear", [&](auto v, int l, auto& k) { cfg.nonlinear = parse_bool(v, l, k); }},
      {"grid.n",
       [&](auto v, int l, auto& k) {
         const long long n = parse_integer(v, l, k);
         if (n < 8 || n > (1 << 12) || (n & (n - 1)) != 0)
           throw ConfigError(l, "n = " + std::string(v) + " must be a power of two >= 8");
         cfg.grid_n = static_cast<int>(n);
       }},
      {"grid.cutoff",
       [&](auto v, int l, auto& k) {
         cfg.dealias_cutoff = static_cast<int>(parse_integer(v, l, k));
         cutoff_line = l;
         cutoff_given = true;
       }},
      {"time.dt",
       [&](auto v, int l, auto& k) {
         if (lower(v) == "adaptive") {
           cfg.dt.reset();
           return;
         }
         const double dt = parse_real(v, l, k);
         if (!(dt > 0.0)) throw ConfigError(l, "dt must be positive");
         cfg.dt = dt;
       }},
      {"time.cfl",
       [&](auto v, int l, auto& k) {
         cfg.cfl_factor = parse_real(v, l, k);
         if (!(cfg.cfl_factor > 0.0)) throw ConfigError(l, "cfl must be positive");
       }},
      {"time.min_dt",
       [&](auto v, int l, auto& k) {
         cfg.min_dt = parse_real(v, l, k);
         if (!(cfg.min_dt > 0.0)) throw ConfigError(l, "min_dt must be positive");
       }},
      {"time.t_end",
       [&](auto v, int l, auto& k) {
         cfg.t_end = parse_real(v, l, k);
         if (!(cfg.t_end >= 0.0)) throw ConfigError(l, "t_end must be non-negative");
       }},
      {"time.sample_every",
       [&](auto v, int l, auto& k) {
         const long long s = parse_integer(v, l, k);
         if (s < 1) throw ConfigError(l, "sample_every must be at least 1");
         cfg.sample_every = static_cast<int>(s);
       }},
      {"time.blowup_threshold",
       [&](auto v, int l, auto& k) {
         cfg.blowup_threshold = parse_real(v, l, k);
         if (!(cfg.blowup_threshold > 1.0)) throw ConfigError(l, "blowup_threshold must exceed 1");
       }},
      {"output.directory", [&](auto v, int, auto&) { cfg.output.directory = std::string(v); }},
      {"output.prefix", [&](auto v, int, auto&) { cfg.output.prefix = std::string(v); }},
      {"output.snapshot_every",
       [&](auto v, int l, auto& k) {
         const long long s = parse_integer(v, l, k);
         if (s < 0) throw ConfigError(l, "snapshot_every must be non-negative");
         cfg.output.snapshot_every = static_cast<int>(s);
       }},
      {"output.final_snapshot",
       [&](auto v, int l, auto& k) { cfg.output.final_snapshot = parse_bool(v, l, k); }},
      {"output.diagnostics",
       [&](auto v, int l, auto&) {
         const std::string s = lower(v);
         if (s == "basic") cfg.diagnostics = DiagnosticsLevel::kBasic;
         else if (s == "full") cfg.diagnostics = DiagnosticsLevel::kFull;
         else throw ConfigError(l, "diagnostics must be 'basic' or 'full'");
       }},
      {"output.alphas",
       [&](auto v, int l, auto& k) {
         cfg.alphas = parse_list(v, l, k);
         for (double a : cfg.alphas)
           if (!(a >= 0.0 && a <= 1.0)) throw ConfigError(l, "alphas must lie in [0, 1]");
       }},
      {"output.qs",
       [&](auto v, int l, auto& k) {
         cfg.qs = parse_list(v, l, k);
         for (double q : cfg.qs)
           if (!(q > 1.5)) throw ConfigError(l, "qs must exceed 3/2");
       }},
  };
  static const std::vector<std::string> initial_keys{"amplitude", "seed",   "band",
                                                     "amplify",   "margin", "path"};

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                            : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section != "equation" && section != "grid" && section != "time" &&
          section != "initial" && section != "output")
        throw ConfigError(line_no, "unknown section [" + section + "]");
      if (section == "equation") equation_line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(line_no, "key '" + key + "' outside any section");
    if (value.empty()) throw ConfigError(line_no, key + ": missing value");
    const std::string full = section + "." + key;
    if (seen.count(full)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    seen[full] = line_no;

    if (section == "initial") {
      if (key == "type") {
        init.type = lower(value);
        init.type_line = line_no;
        if (init.type != "taylor_green" && init.type != "random_band" && init.type != "snapshot")
          throw ConfigError(line_no, "unknown initial type '" + init.type + "'");
      } else if (std::find(initial_keys.begin(), initial_keys.end(), key) != initial_keys.end()) {
        init.values[key] = {std::string(value), line_no};
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [initial]");
      }
      continue;
    }
    const auto h = handlers.find(full);
    if (h == handlers.end())
      throw ConfigError(line_no, "unknown key '" + key + "' in [" + section + "]");
    h->second(value, line_no, key);
  }

  if (!seen.count("equation.mu")) throw ConfigError(equation_line, "mu required");

  if (!cutoff_given) cfg.dealias_cutoff = cfg.grid_n / 3;
  if (cfg.dealias_cutoff < 1 || cfg.dealias_cutoff > cfg.grid_n / 3)
    throw ConfigError(cutoff_line, "cutoff must lie in [1, n/3] = [1, " +
                                       std::to_string(cfg.grid_n / 3) + "]");

  auto allowed = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : init.values)
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
        throw ConfigError(v.second, "key '" + k + "' does not apply to initial type '" +
                                        init.type + "'");
  };
  auto real_of = [&](const char* k, double def) {
    const auto it = init.values.find(k);
    return it == init.values.end() ? def : parse_real(it->second.first, it->second.second, k);
  };
  if (init.type == "taylor_green") {
    allowed({"amplitude"});
    cfg.initial = TaylorGreenInit{real_of("amplitude", 1.0)};
  } else if (init.type == "random_band") {
    allowed({"amplitude", "seed", "band", "amplify", "margin"});
    RandomBandInit r;
    if (auto it = init.values.find("seed"); it != init.values.end()) {
      const long long s = parse_integer(it->second.first, it->second.second, "seed");
      if (s < 0) throw ConfigError(it->second.second, "seed must be non-negative");
      r.seed = static_cast<std::uint64_t>(s);
    }
    r.band = std::max(1, cfg.dealias_cutoff / 2);
    if (auto it = init.values.find("band"); it != init.values.end()) {
      r.band = static_cast<int>(parse_integer(it->second.first, it->second.second, "band"));
      if (r.band < 1 || r.band > cfg.dealias_cutoff)
        throw ConfigError(it->second.second, "band must lie in [1, cutoff]");
    }
    r.amplitude = real_of("amplitude", 1.0);
    if (auto it = init.values.find("amplify"); it != init.values.end())
      r.amplify = parse_bool(it->second.first, it->second.second, "amplify");
    r.margin = real_of("margin", 2.0);
    if (!(r.margin > 1.0))
      throw ConfigError(init.values.count("margin") ? init.values["margin"].second : 0,
                        "margin must exceed 1");
    cfg.initial = r;
  } else {
    allowed({"path"});
    const auto it = init.values.find("path");
    if (it == init.values.end()) throw ConfigError(init.type_line, "snapshot initial data needs path");
    cfg.initial = SnapshotInit{it->second.first};
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line(), path + ": " + e.what());
  }
}

std::string render_config(const SimConfig& cfg) {
  std::ostringstream o;
  o << "[equation]\n"
    << "mu = " << shortest(cfg.mu) << "\n"
    << "advection = " << (cfg.advection ? "true" : "false") << "\n"
    << "nonlinear = " << (cfg.nonlinear ? "true" : "false") << "\n\n"
    << "[grid]\n"
    << "n = " << cfg.grid_n << "\n"
    << "cutoff = " << cfg.grid().cutoff() << "\n\n"
    << "[time]\n"
    << "dt = " << (cfg.dt ? shortest(*cfg.dt) : "adaptive") << "\n"
    << "cfl = " << shortest(cfg.cfl_factor) << "\n"
    << "min_dt = " << shortest(cfg.min_dt) << "\n"
    << "t_end = " << shortest(cfg.t_end) << "\n"
    << "sample_every = " << cfg.sample_every << "\n"
    << "blowup_threshold = " << shortest(cfg.blowup_threshold) << "\n\n"
    << "[initial]\n";
  if (const auto* tg = std::get_if<TaylorGreenInit>(&cfg.initial)) {
    o << "type = taylor_green\n"
      << "amplitude = " << shortest(tg->amplitude) << "\n";
  } else if (const auto* r = std::get_if<RandomBandInit>(&cfg.initial)) {
    o << "type = random_band\n"
      << "seed = " << r->seed << "\n"
      << "band = " << r->band << "\n"
      << "amplitude = " << shortest(r->amplitude) << "\n"
      << "amplify = " << (r->amplify ? "true" : "false") << "\n"
      << "margin = " << shortest(r->margin) << "\n";
  } else {
    o << "type = snapshot\n"
      << "path = " << std::get<SnapshotInit>(cfg.initial).path << "\n";
  }
  o << "\n[output]\n"
    << "directory = " << cfg.output.directory << "\n"
    << "prefix = " << cfg.output.prefix << "\n"
    << "snapshot_every = " << cfg.output.snapshot_every << "\n"
    << "final_snapshot = " << (cfg.output.final_snapshot ? "true" : "false") << "\n"
    << "diagnostics = " << (cfg.diagnostics == DiagnosticsLevel::kFull ? "full" : "basic") << "\n"
    << "alphas = " << join(cfg.alphas) << "\n"
    << "qs = " << join(cfg.qs) << "\n";
  return o.str();
}

// ---- snapshots -------------------------------------------------------------

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
  std::uint8_t b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.insert(out.end(), b, b + sizeof(T));
}

template <class T>
T get(const std::uint8_t* p) {
  std::uint8_t b[sizeof(T)];
  std::memcpy(b, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 1 + 8;

template <std::size_t C>
std::vector<std::uint8_t> encode(const SpectralField<C>& f, FieldKind kind, double t) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + C * f.grid().size() * 16);
  out.insert(out.end(), kSnapshotMagic, kSnapshotMagic + 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(kind));
  put<double>(out, t);
  for (std::size_t c = 0; c < C; ++c)
    for (const Complex& z : f.component(c)) {
      put<double>(out, z.real());
      put<double>(out, z.imag());
    }
  return out;
}

template <std::size_t C>
SpectralField<C> decode_body(const std::uint8_t* p, int n) {
  SpectralField<C> f{Grid3(n)};
  for (std::size_t c = 0; c < C; ++c)
    for (Complex& z : f.component(c)) {
      z = Complex(get<double>(p), get<double>(p + 8));
      p += 16;
    }
  return f;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError(path + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError(path + ": write failed");
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const SpectralStrainField& s, double t) {
  return encode(s, FieldKind::kStrain, t);
}

std::vector<std::uint8_t> encode_snapshot(const SpectralVectorField& v, double t) {
  return encode(v, FieldKind::kVector, t);
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes, std::optional<int> expected_n,
                         const std::string& context) {
  if (bytes.size() < kHeaderBytes)
    throw SnapshotError(context + ": truncated header (" + std::to_string(bytes.size()) + " bytes)");
  if (std::memcmp(bytes.data(), kSnapshotMagic, 4) != 0)
    throw SnapshotError(context + ": bad magic, not a snapshot file");
  const auto version = get<std::uint32_t>(bytes.data() + 4);
  if (version != kSnapshotVersion)
    throw SnapshotError(context + ": unsupported version " + std::to_string(version));
  const auto n = get<std::uint32_t>(bytes.data() + 8);
  const auto kind = get<std::uint8_t>(bytes.data() + 12);
  if (kind > 1) throw SnapshotError(context + ": unknown field kind " + std::to_string(kind));
  if (n < 8 || n > (1u << 12) || (n & (n - 1)) != 0)
    throw SnapshotError(context + ": invalid grid size " + std::to_string(n));
  if (expected_n && static_cast<int>(n) != *expected_n)
    throw SnapshotError(context + ": grid size " + std::to_string(n) + " does not match requested " +
                        std::to_string(*expected_n));

  Snapshot snap;
  snap.kind = static_cast<FieldKind>(kind);
  snap.n = static_cast<int>(n);
  snap.t = get<double>(bytes.data() + 13);
  const std::size_t comps = snap.kind == FieldKind::kStrain ? 6 : 3;
  const std::size_t need = kHeaderBytes + comps * std::size_t{n} * n * n * 16;
  if (bytes.size() < need)
    throw SnapshotError(context + ": truncated (expected " + std::to_string(need) + " bytes, got " +
                        std::to_string(bytes.size()) + ")");
  if (bytes.size() > need) throw SnapshotError(context + ": trailing bytes after coefficients");
  const std::uint8_t* body = bytes.data() + kHeaderBytes;
  if (snap.kind == FieldKind::kStrain) snap.strain = decode_body<6>(body, snap.n);
  else snap.vector = decode_body<3>(body, snap.n);
  return snap;
}

void write_snapshot(const std::string& path, const SimState& state) {
  write_bytes(path, encode_snapshot(state.s, state.t));
}

void write_snapshot(const std::string& path, const SpectralVectorField& v, double t) {
  write_bytes(path, encode_snapshot(v, t));
}

Snapshot read_snapshot(const std::string& path, std::optional<int> expected_n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(path + ": cannot open snapshot");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_snapshot(bytes, expected_n, path);
}

// ---- CSV -------------------------------------------------------------------

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string format_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                                   const DiagnosticsConfig& cfg) {
  const auto cols = record_columns(cfg);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : records) {
    const auto vals = record_values(r, cfg);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out += ',';
      if (cols[i] == "step" || cols[i] == "resolution_ok")
        out += std::to_string(static_cast<long long>(vals[i]));
      else
        out += format_real(vals[i]);
    }
    out += '\n';
  }
  return out;
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                           const DiagnosticsConfig& cfg) {
  write_text_file(path, format_diagnostics_csv(records, cfg));
}

// ---- manifest --------------------------------------------------------------

std::string code_version() { return STRAINLAB_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["code_version"] = m.code_version;
  j["config_echo"] = m.config_echo;
  if (m.seed) j["seed"] = *m.seed;
  else j["seed"] = nullptr;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["steps"] = m.steps;
  j["final_t"] = m.final_t;
  j["blowup_flag"] = m.blowup_flag;
  j["verdict"] = m.verdict;
  j["files"] = m.files;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  RunManifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.config_echo = j.at("config_echo").get<std::string>();
    m.code_version = j.value("code_version", "");
    if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
    m.started = j.value("started", "");
    m.finished = j.value("finished", "");
    m.steps = j.value("steps", 0L);
    m.final_t = j.value("final_t", 0.0);
    m.blowup_flag = j.value("blowup_flag", "");
    m.verdict = j.value("verdict", "");
    m.files = j.value("files", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(0, std::string("manifest: ") + e.what());
  }
  return m;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace strainlab
