// SPDX-License-Identifier: Apache-2.0
#include "tpoe/reports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tpoe/error.hpp"
#include "tpoe/snapshot.hpp"

namespace tpoe {

namespace {

using nlohmann::ordered_json;

ordered_json domain_json(const TorusDomain& d) {
  return ordered_json{{"n", d.n}, {"L", d.L}, {"N", d.N}, {"T", d.T}, {"Nt", d.Nt}};
}

ordered_json params_json(const OseenParams& p) {
  return ordered_json{{"lambda", p.lambda}, {"T", p.T}, {"q", p.q}};
}

std::string eps_bits(unsigned eps, int n) {
  std::string bits;
  for (int j = 0; j <= n; ++j) bits.push_back((eps & (1u << j)) ? '1' : '0');
  return bits;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(ErrorCode::kIoFailure, "write failed for " + path.string());
}

std::string solution_summary_json(const SolutionBundle& bundle, const OseenParams& params) {
  ordered_json j;
  j["domain"] = domain_json(bundle.u.domain());
  j["params"] = params_json(params);
  j["residual"] = bundle.residual_norm;
  ordered_json norms = ordered_json::object();
  for (const auto& [name, value] : bundle.norm_report) norms[name] = value;
  j["norms"] = norms;
  return j.dump(2) + "\n";
}

void write_solution(const SolutionBundle& bundle, const OseenParams& params, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());
  save_snapshot(bundle.u, dir / "u.snap");
  save_snapshot(bundle.v, dir / "v.snap");
  save_snapshot(bundle.w, dir / "w.snap");
  save_snapshot(bundle.p, dir / "p.snap");
  write_text_file(dir / "summary.json", solution_summary_json(bundle, params));
}

void write_sweep_csv(std::span<const SweepRecord> records, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "lambda,T,q,N,Nt,statistic,value,seed\n";
  for (const SweepRecord& r : records) {
    out << format_double(r.lambda) << ',' << format_double(r.T) << ',' << format_double(r.q) << ',' << r.N << ','
        << r.Nt << ',' << r.statistic << ',' << format_double(r.value) << ',' << r.seed << '\n';
  }
  write_text_file(path, out.str());
}

void write_sweep_fits_json(const SweepResult& result, const std::filesystem::path& path) {
  ordered_json j = ordered_json::object();
  for (const auto& [stat, fit] : result.fits) {
    ordered_json f;
    f["model"] = "log(value) = sum_i c_i * regressor_i";
    f["regressors"] = fit.regressors;
    f["coefficients"] = fit.coefficients;
    f["rms_residual"] = fit.rms_residual;
    f["samples"] = fit.samples;
    j[stat] = f;
  }
  write_text_file(path, j.dump(2) + "\n");
}

void write_marcinkiewicz_csv(const MarcinkiewiczReport& report, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "eps_bits,sup_value\n";
  for (unsigned eps = 0; eps < report.per_epsilon.size(); ++eps) {
    out << eps_bits(eps, report.n) << ',' << format_double(report.per_epsilon[eps]) << '\n';
  }
  write_text_file(path, out.str());
}

void write_marcinkiewicz_json(const MarcinkiewiczReport& report, const std::filesystem::path& path) {
  ordered_json j;
  j["grid_spec"] = ordered_json{{"kind", "log-radial shells x directions"},
                                {"r_min", report.grid.r_min},
                                {"r_max", report.grid.r_max},
                                {"shells", report.grid.shells},
                                {"random_directions", report.grid.directions},
                                {"direction_seed", report.grid.seed},
                                {"points", report.points}};
  j["n"] = report.n;
  j["params"] = params_json(report.params);
  j["cutoff"] = ordered_json{{"formula", "s((outer-|eta|)/(outer-inner)), s(t)=g(t)/(g(t)+g(1-t)), g(t)=exp(-1/t)"},
                             {"inner", report.cutoff.inner},
                             {"outer", report.cutoff.outer}};
  j["overall"] = report.overall;
  j["fd_validation_error"] = report.fd_validation_error;
  write_text_file(path, j.dump(2) + "\n");
}

void write_convergence_csv(std::span<const ConvergenceRow> rows, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "N,Nt,residual,recovery_error,fd_residual,fd_ratio\n";
  for (const ConvergenceRow& r : rows) {
    out << r.N << ',' << r.Nt << ',' << format_double(r.residual) << ',' << format_double(r.recovery_error) << ','
        << format_double(r.fd_residual) << ',' << format_double(r.fd_ratio) << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace tpoe
