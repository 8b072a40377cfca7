// SPDX-License-Identifier: Apache-2.0
#include "tpoe/tpoe.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "tpoe/analysis.hpp"
#include "tpoe/error.hpp"
#include "tpoe/reports.hpp"
#include "tpoe/snapshot.hpp"
#include "tpoe/solver.hpp"

struct tpoe_field {
  tpoe::SpaceTimeField value;
};

struct tpoe_solution {
  tpoe::SolutionBundle bundle;
  tpoe::OseenParams params;
  std::vector<std::pair<std::string, double>> norms;
  std::string summary;
};

struct tpoe_marcinkiewicz {
  tpoe::MarcinkiewiczReport report;
};

struct tpoe_sweep {
  tpoe::SweepResult result;
};

struct tpoe_convergence {
  std::vector<tpoe::ConvergenceRow> rows;
};

namespace {

thread_local std::string g_last_error;

tpoe_status to_status(tpoe::ErrorCode code) {
  return static_cast<tpoe_status>(static_cast<int>(code) + 1);
}

template <class Fn>
tpoe_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TPOE_OK;
  } catch (const tpoe::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "Internal: out of memory";
    return TPOE_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("Internal: ") + e.what();
    return TPOE_INTERNAL;
  } catch (...) {
    g_last_error = "Internal: unknown exception";
    return TPOE_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) tpoe::fail(tpoe::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

tpoe::TorusDomain to_domain(const tpoe_domain* d) {
  require(d, "domain");
  tpoe::TorusDomain domain{d->n, d->L, d->N, d->T, d->Nt};
  domain.validate();
  return domain;
}

tpoe_domain from_domain(const tpoe::TorusDomain& d) { return tpoe_domain{d.n, d.L, d.N, d.T, d.Nt}; }

tpoe::OseenParams to_params(const tpoe_params* p) {
  require(p, "params");
  tpoe::OseenParams params{p->lambda, p->T, p->q};
  params.validate();
  return params;
}

tpoe::ScanGrid to_grid(const tpoe_scan_grid* g) {
  if (g == nullptr) return {};
  return tpoe::ScanGrid{g->r_min, g->r_max, g->shells, g->directions, g->seed};
}

}  // namespace

extern "C" {

const char* tpoe_version(void) { return "1.0.0"; }

const char* tpoe_status_name(tpoe_status status) {
  if (status == TPOE_OK) return "Ok";
  if (status < TPOE_DOMAIN_MISMATCH || status > TPOE_INTERNAL) return "Unknown";
  return tpoe::error_name(static_cast<tpoe::ErrorCode>(static_cast<int>(status) - 1)).data();
}

const char* tpoe_last_error_message(void) { return g_last_error.c_str(); }

tpoe_status tpoe_domain_validate(const tpoe_domain* domain) {
  return guarded([&] { (void)to_domain(domain); });
}

void tpoe_default_scan_grid(tpoe_scan_grid* grid) {
  if (grid == nullptr) return;
  const tpoe::ScanGrid g;
  *grid = tpoe_scan_grid{g.r_min, g.r_max, g.shells, g.directions, g.seed};
}

tpoe_status tpoe_field_create(const tpoe_domain* domain, int components, const double* samples, tpoe_field** out) {
  return guarded([&] {
    require(out, "out");
    const tpoe::TorusDomain d = to_domain(domain);
    if (samples == nullptr) {
      *out = new tpoe_field{tpoe::SpaceTimeField(d, components)};
      return;
    }
    if (components < 1) tpoe::fail(tpoe::ErrorCode::kInvalidArgument, "components must be positive");
    const std::size_t count = d.total_points() * static_cast<std::size_t>(components);
    *out = new tpoe_field{tpoe::SpaceTimeField(d, components, std::vector<double>(samples, samples + count))};
  });
}

void tpoe_field_destroy(tpoe_field* field) { delete field; }

tpoe_status tpoe_field_load(const char* path, tpoe_field** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tpoe_field{tpoe::load_snapshot(path)};
  });
}

tpoe_status tpoe_field_save(const tpoe_field* field, const char* path) {
  return guarded([&] {
    require(field, "field");
    require(path, "path");
    tpoe::save_snapshot(field->value, path);
  });
}

tpoe_status tpoe_field_info(const tpoe_field* field, tpoe_domain* domain, int* components) {
  return guarded([&] {
    require(field, "field");
    if (domain != nullptr) *domain = from_domain(field->value.domain());
    if (components != nullptr) *components = field->value.components();
  });
}

tpoe_status tpoe_field_samples(const tpoe_field* field, const double** data, size_t* count) {
  return guarded([&] {
    require(field, "field");
    require(data, "data");
    require(count, "count");
    *data = field->value.samples().data();
    *count = field->value.samples().size();
  });
}

tpoe_status tpoe_field_max_abs_diff(const tpoe_field* a, const tpoe_field* b, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = (a->value - b->value).max_abs();
  });
}

tpoe_status tpoe_lq_norm(const tpoe_field* field, double q, double* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = tpoe::lq_norm(field->value, q);
  });
}

tpoe_status tpoe_manufactured_case(const char* recipe, const tpoe_domain* domain, const tpoe_params* params,
                                   uint64_t seed, tpoe_field** u, tpoe_field** p, tpoe_field** f) {
  return guarded([&] {
    require(recipe, "recipe");
    tpoe::ManufacturedCase mc = tpoe::manufactured_case(recipe, to_domain(domain), to_params(params), seed);
    if (u != nullptr) *u = new tpoe_field{std::move(mc.u)};
    if (p != nullptr) *p = new tpoe_field{std::move(mc.p)};
    if (f != nullptr) *f = new tpoe_field{std::move(mc.f)};
  });
}

size_t tpoe_recipe_count(void) { return tpoe::recipe_catalog().size(); }

const char* tpoe_recipe_name(size_t index) {
  const auto& catalog = tpoe::recipe_catalog();
  return index < catalog.size() ? catalog[index].c_str() : nullptr;
}

tpoe_status tpoe_solve_full(const tpoe_field* f, const tpoe_params* params, double precondition_tol,
                            const tpoe_norm_tag* norms, size_t norm_count, tpoe_solution** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    const tpoe::OseenParams p = to_params(params);
    tpoe::SolveOptions options;
    if (precondition_tol > 0.0) options.tol.precondition = precondition_tol;
    if (norms != nullptr) {
      for (size_t i = 0; i < norm_count; ++i) {
        if (norms[i] < TPOE_NORM_LQ || norms[i] > TPOE_NORM_PRESSURE_XP) {
          tpoe::fail(tpoe::ErrorCode::kInvalidArgument, "unknown norm tag " + std::to_string(norms[i]));
        }
        options.requested_norms.push_back(static_cast<tpoe::NormTag>(norms[i]));
      }
    }
    auto solution = std::make_unique<tpoe_solution>();
    solution->bundle = tpoe::solve_full(f->value, p, options);
    solution->params = p;
    solution->norms.assign(solution->bundle.norm_report.begin(), solution->bundle.norm_report.end());
    solution->summary = tpoe::solution_summary_json(solution->bundle, p);
    *out = solution.release();
  });
}

void tpoe_solution_destroy(tpoe_solution* solution) { delete solution; }

double tpoe_solution_residual(const tpoe_solution* solution) {
  return solution != nullptr ? solution->bundle.residual_norm : std::nan("");
}

tpoe_status tpoe_solution_field(const tpoe_solution* solution, char which, tpoe_field** out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "out");
    const tpoe::SolutionBundle& b = solution->bundle;
    switch (which) {
      case 'u': *out = new tpoe_field{b.u}; break;
      case 'v': *out = new tpoe_field{b.v}; break;
      case 'w': *out = new tpoe_field{b.w}; break;
      case 'p': *out = new tpoe_field{b.p}; break;
      default: tpoe::fail(tpoe::ErrorCode::kInvalidArgument, std::string("unknown solution field '") + which + "'");
    }
  });
}

size_t tpoe_solution_norm_count(const tpoe_solution* solution) {
  return solution != nullptr ? solution->norms.size() : 0;
}

tpoe_status tpoe_solution_norm_at(const tpoe_solution* solution, size_t index, const char** name, double* value) {
  return guarded([&] {
    require(solution, "solution");
    if (index >= solution->norms.size()) tpoe::fail(tpoe::ErrorCode::kInvalidArgument, "norm index out of range");
    if (name != nullptr) *name = solution->norms[index].first.c_str();
    if (value != nullptr) *value = solution->norms[index].second;
  });
}

const char* tpoe_solution_summary_json(const tpoe_solution* solution) {
  return solution != nullptr ? solution->summary.c_str() : nullptr;
}

tpoe_status tpoe_solution_write(const tpoe_solution* solution, const char* directory) {
  return guarded([&] {
    require(solution, "solution");
    require(directory, "directory");
    tpoe::write_solution(solution->bundle, solution->params, directory);
  });
}

tpoe_status tpoe_roundtrip_verify(const tpoe_domain* domain, const tpoe_params* params, int ensemble_size,
                                  uint64_t seed, double* worst_error) {
  return guarded([&] {
    require(worst_error, "worst_error");
    *worst_error = tpoe::roundtrip_verify(to_domain(domain), to_params(params), ensemble_size, seed);
  });
}

tpoe_status tpoe_transference_check(const tpoe_domain* domain, const tpoe_params* params, double* max_deviation) {
  return guarded([&] {
    require(max_deviation, "max_deviation");
    *max_deviation = tpoe::transference_check(to_domain(domain), to_params(params));
  });
}

tpoe_status tpoe_marcinkiewicz_scan(int n, const tpoe_params* params, const tpoe_scan_grid* grid,
                                    tpoe_marcinkiewicz** out) {
  return guarded([&] {
    require(out, "out");
    if (n != 2 && n != 3) tpoe::fail(tpoe::ErrorCode::kInvalidArgument, "n must be 2 or 3");
    *out = new tpoe_marcinkiewicz{tpoe::marcinkiewicz_scan(n, to_params(params), to_grid(grid))};
  });
}

void tpoe_marcinkiewicz_destroy(tpoe_marcinkiewicz* report) { delete report; }

double tpoe_marcinkiewicz_overall(const tpoe_marcinkiewicz* report) {
  return report != nullptr ? report->report.overall : std::nan("");
}

size_t tpoe_marcinkiewicz_points(const tpoe_marcinkiewicz* report) {
  return report != nullptr ? report->report.points : 0;
}

tpoe_status tpoe_marcinkiewicz_sup(const tpoe_marcinkiewicz* report, unsigned eps, double* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (eps >= report->report.per_epsilon.size()) tpoe::fail(tpoe::ErrorCode::kInvalidArgument, "eps out of range");
    *out = report->report.per_epsilon[eps];
  });
}

tpoe_status tpoe_marcinkiewicz_write(const tpoe_marcinkiewicz* report, const char* csv_path, const char* json_path) {
  return guarded([&] {
    require(report, "report");
    if (csv_path != nullptr) tpoe::write_marcinkiewicz_csv(report->report, csv_path);
    if (json_path != nullptr) tpoe::write_marcinkiewicz_json(report->report, json_path);
  });
}

tpoe_status tpoe_constant_sweep(const tpoe_domain* domain, double q, const double* lambdas, size_t lambda_count,
                                const double* periods, size_t period_count, int ensemble_size, uint64_t seed,
                                const tpoe_scan_grid* grid, tpoe_sweep** out) {
  return guarded([&] {
    require(out, "out");
    if (lambda_count > 0) require(lambdas, "lambdas");
    if (period_count > 0) require(periods, "periods");
    const std::vector<double> ls(lambdas, lambdas + lambda_count);
    const std::vector<double> ts(periods, periods + period_count);
    *out = new tpoe_sweep{tpoe::constant_sweep(to_domain(domain), q, ls, ts, ensemble_size, seed, to_grid(grid))};
  });
}

void tpoe_sweep_destroy(tpoe_sweep* sweep) { delete sweep; }

size_t tpoe_sweep_record_count(const tpoe_sweep* sweep) {
  return sweep != nullptr ? sweep->result.records.size() : 0;
}

tpoe_status tpoe_sweep_write(const tpoe_sweep* sweep, const char* csv_path, const char* fits_json_path) {
  return guarded([&] {
    require(sweep, "sweep");
    if (csv_path != nullptr) tpoe::write_sweep_csv(sweep->result.records, csv_path);
    if (fits_json_path != nullptr) tpoe::write_sweep_fits_json(sweep->result, fits_json_path);
  });
}

tpoe_status tpoe_convergence_study(const char* recipe, const tpoe_domain* base, const tpoe_params* params,
                                   const int* Ns, const int* Nts, size_t count, uint64_t seed,
                                   tpoe_convergence** out) {
  return guarded([&] {
    require(recipe, "recipe");
    require(out, "out");
    if (count > 0) {
      require(Ns, "Ns");
      require(Nts, "Nts");
    }
    std::vector<std::pair<int, int>> resolutions;
    for (size_t i = 0; i < count; ++i) resolutions.emplace_back(Ns[i], Nts[i]);
    *out = new tpoe_convergence{
        tpoe::convergence_study(recipe, to_domain(base), to_params(params), resolutions, seed)};
  });
}

void tpoe_convergence_destroy(tpoe_convergence* study) { delete study; }

size_t tpoe_convergence_row_count(const tpoe_convergence* study) { return study != nullptr ? study->rows.size() : 0; }

tpoe_status tpoe_convergence_row_at(const tpoe_convergence* study, size_t index, tpoe_convergence_row* row) {
  return guarded([&] {
    require(study, "study");
    require(row, "row");
    if (index >= study->rows.size()) tpoe::fail(tpoe::ErrorCode::kInvalidArgument, "row index out of range");
    const tpoe::ConvergenceRow& r = study->rows[index];
    *row = tpoe_convergence_row{r.N, r.Nt, r.residual, r.recovery_error, r.fd_residual, r.fd_ratio};
  });
}

tpoe_status tpoe_convergence_write(const tpoe_convergence* study, const char* csv_path) {
  return guarded([&] {
    require(study, "study");
    require(csv_path, "csv_path");
    tpoe::write_convergence_csv(study->rows, csv_path);
  });
}

}  // extern "C"
