// SPDX-License-Identifier: Apache-2.0
//
// tpoe: batch driver for the time-periodic Oseen solver library.
//
//   tpoe <subcommand> --config <path> [--set key=value]...
//
// Exit codes:
//   0  success
//   2  configuration error (parse error, unknown key or subcommand, invalid value)
//   3  precondition violation (IncompatibleMean, NonSolenoidal, NotPurelyPeriodic,
//      NotTimeConstant, SingularMode)
//   4  I/O failure
//   5  internal error

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpoe/tpoe.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 5;

constexpr int kSchemaVersion = 1;

const std::vector<std::string> kSubcommands = {"solve", "roundtrip", "marcinkiewicz", "transference", "sweep",
                                               "convergence"};

// Recognized keys and their defaults. An empty default means "unset".
const std::map<std::string, std::string>& key_defaults() {
  static const std::map<std::string, std::string> defaults = {
      {"schema_version", ""},
      {"n", "2"},
      {"L", "2*pi"},
      {"N", "16"},
      {"T", "2*pi"},
      {"Nt", "16"},
      {"lambda", "0"},
      {"q", "2"},
      {"recipe", ""},
      {"input", ""},
      {"output_dir", "runs"},
      {"seed", "0"},
      {"tol.precondition", "1e-10"},
      {"norms", ""},
      {"ensemble_size", "20"},
      {"lambdas", "0,1,10"},
      {"periods", "2*pi,20*pi"},
      {"resolutions", "16x16,32x32"},
      {"scan.r_min", "1e-2"},
      {"scan.r_max", "1e4"},
      {"scan.shells", "64"},
      {"scan.directions", "48"},
      {"scan.seed", "20130401"},
  };
  return defaults;
}

struct ExitError : std::runtime_error {
  ExitError(int code, std::string name, const std::string& message)
      : std::runtime_error(message), exit_code(code), error_name(std::move(name)) {}
  int exit_code;
  std::string error_name;
};

[[noreturn]] void config_error(const std::string& message) { throw ExitError(kExitConfig, "ConfigParse", message); }

int exit_code_for(tpoe_status status) {
  switch (status) {
    case TPOE_OK: return kExitOk;
    case TPOE_NOT_PURELY_PERIODIC:
    case TPOE_NOT_TIME_CONSTANT:
    case TPOE_NON_SOLENOIDAL:
    case TPOE_INCOMPATIBLE_MEAN:
    case TPOE_SINGULAR_MODE: return kExitPrecondition;
    case TPOE_DOMAIN_MISMATCH:
    case TPOE_INVALID_ARGUMENT:
    case TPOE_INVALID_EXPONENT:
    case TPOE_INVALID_GRID:
    case TPOE_UNKNOWN_RECIPE:
    case TPOE_EMPTY_SWEEP: return kExitConfig;
    case TPOE_IO_FAILURE: return kExitIo;
    default: return kExitInternal;
  }
}

void check(tpoe_status status) {
  if (status != TPOE_OK) throw ExitError(exit_code_for(status), tpoe_status_name(status), tpoe_last_error_message());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Config {
 public:
  void set(const std::string& key, const std::string& value, const std::string& where) {
    if (!key_defaults().contains(key)) config_error(where + ": unknown key '" + key + "'");
    values_[key] = value;
  }

  void load_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot read config file '" + path.string() + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      const std::string where = path.string() + ":" + std::to_string(lineno);
      if (eq == std::string::npos) config_error(where + ": expected key = value");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }
  }

  void apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) config_error("--set expects key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "--set");
  }

  [[nodiscard]] std::string raw(const std::string& key) const {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    return key_defaults().at(key);
  }

  [[nodiscard]] bool has(const std::string& key) const { return !raw(key).empty(); }

  [[nodiscard]] double number(const std::string& key) const { return parse_number(raw(key), key); }

  [[nodiscard]] long long integer(const std::string& key) const {
    const std::string text = raw(key);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      config_error("key '" + key + "' expects an integer, got '" + text + "'");
    }
  }

  [[nodiscard]] std::uint64_t unsigned_integer(const std::string& key) const {
    const std::string text = raw(key);
    try {
      std::size_t used = 0;
      if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      config_error("key '" + key + "' expects a non-negative integer, got '" + text + "'");
    }
  }

  [[nodiscard]] std::vector<double> number_list(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& item : split(raw(key), ',')) out.push_back(parse_number(item, key));
    return out;
  }

  /// Resolved key=value lines, sorted, for hashing and provenance.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> resolved() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, def] : key_defaults()) out.emplace_back(key, raw(key));
    return out;
  }

  /// Accepts a decimal literal, "pi", or "<decimal>*pi".
  static double parse_number(const std::string& text, const std::string& key) {
    constexpr double kPi = 3.141592653589793238462643383279502884;
    std::string body = trim(text);
    double factor = 1.0;
    if (body == "pi") return kPi;
    if (body.size() > 3 && body.compare(body.size() - 3, 3, "*pi") == 0) {
      factor = kPi;
      body = trim(body.substr(0, body.size() - 3));
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(body, &used);
      if (used != body.size() || !std::isfinite(v)) throw std::invalid_argument(text);
      return v * factor;
    } catch (const std::exception&) {
      config_error("key '" + key + "' expects a number, got '" + text + "'");
    }
  }

 private:
  std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExitError(kExitIo, "IoFailure", "cannot write " + path.string());
  out << text;
  if (!out) throw ExitError(kExitIo, "IoFailure", "write failed for " + path.string());
}

struct Field {
  tpoe_field* ptr = nullptr;
  Field() = default;
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;
  ~Field() { tpoe_field_destroy(ptr); }
};

class Run {
 public:
  Run(std::string subcommand, Config config) : sub_(std::move(subcommand)), cfg_(std::move(config)) {}

  int execute() {
    validate();
    prepare_directory();
    ordered_json result;
    if (sub_ == "solve") result = solve();
    else if (sub_ == "roundtrip") result = roundtrip();
    else if (sub_ == "marcinkiewicz") result = marcinkiewicz();
    else if (sub_ == "transference") result = transference();
    else if (sub_ == "sweep") result = sweep();
    else result = convergence();

    ordered_json record;
    record["subcommand"] = sub_;
    record["schema_version"] = kSchemaVersion;
    record["config_hash"] = hex16(hash_);
    ordered_json config = ordered_json::object();
    for (const auto& [k, v] : cfg_.resolved()) config[k] = v;
    record["config"] = config;
    record["result"] = result;
    write_file(run_dir_ / "run.json", record.dump(2) + "\n");

    ordered_json out;
    out["status"] = "ok";
    out["run_dir"] = run_dir_.string();
    out["result"] = result;
    std::cout << out.dump() << "\n";
    return kExitOk;
  }

 private:
  void validate() {
    if (!cfg_.has("schema_version")) config_error("missing required key 'schema_version'");
    if (cfg_.integer("schema_version") != kSchemaVersion) {
      config_error("unsupported schema_version " + cfg_.raw("schema_version") + " (expected 1)");
    }
    domain_ = tpoe_domain{static_cast<int>(cfg_.integer("n")), cfg_.number("L"), static_cast<int>(cfg_.integer("N")),
                          cfg_.number("T"), static_cast<int>(cfg_.integer("Nt"))};
    check(tpoe_domain_validate(&domain_));
    params_ = tpoe_params{cfg_.number("lambda"), domain_.T, cfg_.number("q")};
    seed_ = cfg_.unsigned_integer("seed");
    if (!(cfg_.number("tol.precondition") > 0.0)) config_error("tol.precondition must be positive");
    if (cfg_.has("input")) {
      if (cfg_.has("recipe")) config_error("set either 'input' or 'recipe', not both");
      if (!fs::exists(cfg_.raw("input"))) config_error("input file '" + cfg_.raw("input") + "' does not exist");
    }
    if (sub_ == "solve" && !cfg_.has("input") && !cfg_.has("recipe")) {
      config_error("solve needs 'recipe' or 'input'");
    }
    if (sub_ == "convergence" && !cfg_.has("recipe")) config_error("convergence needs 'recipe'");
    if (cfg_.integer("ensemble_size") < 1) config_error("ensemble_size must be positive");
  }

  void prepare_directory() {
    std::string canonical = "subcommand=" + sub_ + "\n";
    for (const auto& [k, v] : cfg_.resolved()) {
      if (k == "output_dir") continue;
      canonical += k + "=" + v + "\n";
    }
    hash_ = fnv1a(canonical);
    run_dir_ = fs::path(cfg_.raw("output_dir")) / ("run-" + hex16(hash_) + "-s" + std::to_string(seed_));
    std::error_code ec;
    fs::create_directories(run_dir_, ec);
    if (ec) throw ExitError(kExitIo, "IoFailure", "cannot create " + run_dir_.string() + ": " + ec.message());
  }

  tpoe_scan_grid scan_grid() const {
    return tpoe_scan_grid{cfg_.number("scan.r_min"), cfg_.number("scan.r_max"),
                          static_cast<int>(cfg_.integer("scan.shells")),
                          static_cast<int>(cfg_.integer("scan.directions")), cfg_.unsigned_integer("scan.seed")};
  }

  std::vector<tpoe_norm_tag> norm_tags() const {
    static const std::map<std::string, tpoe_norm_tag> names = {
        {"Lq", TPOE_NORM_LQ},
        {"Sobolev21q", TPOE_NORM_SOBOLEV_21Q},
        {"SteadyStokes", TPOE_NORM_STEADY_STOKES},
        {"SteadyOseen", TPOE_NORM_STEADY_OSEEN},
        {"SteadyOseen2D", TPOE_NORM_STEADY_OSEEN_2D},
        {"PressureXp", TPOE_NORM_PRESSURE_XP},
    };
    std::vector<tpoe_norm_tag> tags;
    for (const std::string& name : split(cfg_.raw("norms"), ',')) {
      auto it = names.find(name);
      if (it == names.end()) config_error("unknown norm '" + name + "'");
      tags.push_back(it->second);
    }
    return tags;
  }

  ordered_json solve() {
    Field u_ref, p_ref, f;
    const bool manufactured = cfg_.has("recipe");
    if (manufactured) {
      check(tpoe_manufactured_case(cfg_.raw("recipe").c_str(), &domain_, &params_, seed_, &u_ref.ptr, &p_ref.ptr,
                                   &f.ptr));
    } else {
      check(tpoe_field_load(cfg_.raw("input").c_str(), &f.ptr));
      tpoe_domain loaded{};
      check(tpoe_field_info(f.ptr, &loaded, nullptr));
      if (loaded.n != domain_.n || loaded.N != domain_.N || loaded.Nt != domain_.Nt || loaded.L != domain_.L ||
          loaded.T != domain_.T) {
        config_error("input snapshot domain does not match the configured domain");
      }
    }
    const std::vector<tpoe_norm_tag> tags = norm_tags();
    tpoe_solution* raw = nullptr;
    check(tpoe_solve_full(f.ptr, &params_, cfg_.number("tol.precondition"), tags.empty() ? nullptr : tags.data(),
                          tags.size(), &raw));
    std::unique_ptr<tpoe_solution, void (*)(tpoe_solution*)> solution(raw, tpoe_solution_destroy);
    check(tpoe_solution_write(solution.get(), run_dir_.string().c_str()));

    ordered_json result;
    result["residual"] = tpoe_solution_residual(solution.get());
    if (manufactured) {
      Field u, p;
      check(tpoe_solution_field(solution.get(), 'u', &u.ptr));
      check(tpoe_solution_field(solution.get(), 'p', &p.ptr));
      double du = 0.0, dp = 0.0;
      check(tpoe_field_max_abs_diff(u.ptr, u_ref.ptr, &du));
      check(tpoe_field_max_abs_diff(p.ptr, p_ref.ptr, &dp));
      result["recovery_error_u"] = du;
      result["recovery_error_p"] = dp;
    }
    ordered_json norms = ordered_json::object();
    for (std::size_t i = 0; i < tpoe_solution_norm_count(solution.get()); ++i) {
      const char* name = nullptr;
      double value = 0.0;
      check(tpoe_solution_norm_at(solution.get(), i, &name, &value));
      norms[name] = value;
    }
    result["norms"] = norms;
    return result;
  }

  ordered_json roundtrip() {
    double worst = 0.0;
    check(tpoe_roundtrip_verify(&domain_, &params_, static_cast<int>(cfg_.integer("ensemble_size")), seed_, &worst));
    ordered_json result{{"worst_relative_error", worst}};
    write_file(run_dir_ / "roundtrip.json", result.dump(2) + "\n");
    return result;
  }

  ordered_json transference() {
    double deviation = 0.0;
    check(tpoe_transference_check(&domain_, &params_, &deviation));
    ordered_json result{{"max_deviation", deviation}};
    write_file(run_dir_ / "transference.json", result.dump(2) + "\n");
    return result;
  }

  ordered_json marcinkiewicz() {
    const tpoe_scan_grid grid = scan_grid();
    tpoe_marcinkiewicz* raw = nullptr;
    check(tpoe_marcinkiewicz_scan(domain_.n, &params_, &grid, &raw));
    std::unique_ptr<tpoe_marcinkiewicz, void (*)(tpoe_marcinkiewicz*)> report(raw, tpoe_marcinkiewicz_destroy);
    check(tpoe_marcinkiewicz_write(report.get(), (run_dir_ / "marcinkiewicz.csv").string().c_str(),
                                   (run_dir_ / "marcinkiewicz.json").string().c_str()));
    return ordered_json{{"overall", tpoe_marcinkiewicz_overall(report.get())},
                        {"points", tpoe_marcinkiewicz_points(report.get())}};
  }

  ordered_json sweep() {
    const std::vector<double> lambdas = cfg_.number_list("lambdas");
    const std::vector<double> periods = cfg_.number_list("periods");
    const tpoe_scan_grid grid = scan_grid();
    tpoe_sweep* raw = nullptr;
    check(tpoe_constant_sweep(&domain_, params_.q, lambdas.data(), lambdas.size(), periods.data(), periods.size(),
                              static_cast<int>(cfg_.integer("ensemble_size")), seed_, &grid, &raw));
    std::unique_ptr<tpoe_sweep, void (*)(tpoe_sweep*)> sweep(raw, tpoe_sweep_destroy);
    check(tpoe_sweep_write(sweep.get(), (run_dir_ / "sweep.csv").string().c_str(),
                           (run_dir_ / "sweep_fits.json").string().c_str()));
    return ordered_json{{"records", tpoe_sweep_record_count(sweep.get())}};
  }

  ordered_json convergence() {
    std::vector<int> ns, nts;
    for (const std::string& item : split(cfg_.raw("resolutions"), ',')) {
      const auto x = item.find('x');
      if (x == std::string::npos) config_error("resolutions expects NxNt pairs, got '" + item + "'");
      try {
        ns.push_back(std::stoi(item.substr(0, x)));
        nts.push_back(std::stoi(item.substr(x + 1)));
      } catch (const std::exception&) {
        config_error("resolutions expects NxNt pairs, got '" + item + "'");
      }
    }
    tpoe_convergence* raw = nullptr;
    check(tpoe_convergence_study(cfg_.raw("recipe").c_str(), &domain_, &params_, ns.data(), nts.data(), ns.size(),
                                 seed_, &raw));
    std::unique_ptr<tpoe_convergence, void (*)(tpoe_convergence*)> study(raw, tpoe_convergence_destroy);
    check(tpoe_convergence_write(study.get(), (run_dir_ / "convergence.csv").string().c_str()));
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < tpoe_convergence_row_count(study.get()); ++i) {
      tpoe_convergence_row row{};
      check(tpoe_convergence_row_at(study.get(), i, &row));
      rows.push_back({{"N", row.N}, {"Nt", row.Nt}, {"residual", row.residual}, {"fd_ratio", row.fd_ratio}});
    }
    return ordered_json{{"rows", rows}};
  }

  std::string sub_;
  Config cfg_;
  tpoe_domain domain_{};
  tpoe_params params_{};
  std::uint64_t seed_ = 0;
  std::uint64_t hash_ = 0;
  fs::path run_dir_;
};

int report_error(int code, const std::string& name, const std::string& message) {
  ordered_json record{{"status", "error"}, {"error", name}, {"message", message}, {"exit_code", code}};
  std::cerr << record.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-periodic Oseen solver and verification harness"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  for (const std::string& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " pipeline");
    sub->add_option("--config", config_path, "key = value config file")->required();
    sub->add_option("--set", overrides, "override one config key (key=value)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "\n";
    if (argc > 1 && argv[1][0] != '-' && std::find(kSubcommands.begin(), kSubcommands.end(), argv[1]) == kSubcommands.end()) {
      return report_error(kExitConfig, "UnknownSubcommand", std::string("unknown subcommand '") + argv[1] + "'");
    }
    return report_error(kExitConfig, "ConfigParse", e.what());
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    Config config;
    config.load_file(config_path);
    for (const std::string& assignment : overrides) config.apply_override(assignment);
    return Run(sub, std::move(config)).execute();
  } catch (const ExitError& e) {
    return report_error(e.exit_code, e.error_name, e.what());
  } catch (const std::exception& e) {
    return report_error(kExitInternal, "Internal", e.what());
  }
}
