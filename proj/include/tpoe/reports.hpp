// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "tpoe/analysis.hpp"
#include "tpoe/solver.hpp"

namespace tpoe {

/// JSON summary of a solve: parameters, domain, residual and norm report.
std::string solution_summary_json(const SolutionBundle& bundle, const OseenParams& params);

/// Writes u.snap, v.snap, w.snap, p.snap and summary.json into `dir`.
void write_solution(const SolutionBundle& bundle, const OseenParams& params, const std::filesystem::path& dir);

/// CSV columns: lambda,T,q,N,Nt,statistic,value,seed.
void write_sweep_csv(std::span<const SweepRecord> records, const std::filesystem::path& path);

/// Descriptive power-law fits, one object per statistic.
void write_sweep_fits_json(const SweepResult& result, const std::filesystem::path& path);

/// CSV columns: eps_bits,sup_value. eps_bits lists (xi_1..xi_n, eta) as 0/1.
void write_marcinkiewicz_csv(const MarcinkiewiczReport& report, const std::filesystem::path& path);

/// Grid specification, parameters, cut-off and summary values.
void write_marcinkiewicz_json(const MarcinkiewiczReport& report, const std::filesystem::path& path);

/// CSV columns: N,Nt,residual,recovery_error,fd_residual,fd_ratio.
void write_convergence_csv(std::span<const ConvergenceRow> rows, const std::filesystem::path& path);

/// Renders a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

/// Writes text atomically enough for our purposes; throws kIoFailure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tpoe
