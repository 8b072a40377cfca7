// SPDX-License-Identifier: Apache-2.0
#include "tpoe/domain.hpp"

#include <cmath>
#include <string>

#include "tpoe/error.hpp"
#include "tpoe/symbols.hpp"

namespace tpoe {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kNonHermitian: return "NonHermitian";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularMode: return "SingularMode";
    case ErrorCode::kNotPurelyPeriodic: return "NotPurelyPeriodic";
    case ErrorCode::kNotTimeConstant: return "NotTimeConstant";
    case ErrorCode::kNonSolenoidal: return "NonSolenoidal";
    case ErrorCode::kIncompatibleMean: return "IncompatibleMean";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kInvalidGrid: return "InvalidGrid";
    case ErrorCode::kUnknownRecipe: return "UnknownRecipe";
    case ErrorCode::kEmptySweep: return "EmptySweep";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

void TorusDomain::validate() const {
  if (n != 2 && n != 3) fail(ErrorCode::kInvalidArgument, "spatial dimension must be 2 or 3, got " + std::to_string(n));
  if (N < 4 || N % 2 != 0) fail(ErrorCode::kInvalidArgument, "N must be even and >= 4, got " + std::to_string(N));
  if (Nt < 4 || Nt % 2 != 0) fail(ErrorCode::kInvalidArgument, "Nt must be even and >= 4, got " + std::to_string(Nt));
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorCode::kInvalidArgument, "box length L must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) fail(ErrorCode::kInvalidArgument, "period T must be positive");
}

std::size_t TorusDomain::spatial_points() const {
  std::size_t count = 1;
  for (int d = 0; d < n; ++d) count *= static_cast<std::size_t>(N);
  return count;
}

TorusDomain TorusDomain::refined(int factor) const {
  TorusDomain out = *this;
  out.N *= factor;
  out.Nt *= factor;
  return out;
}

DualIndex dual_index_at(const TorusDomain& domain, std::size_t flat) {
  DualIndex idx;
  const auto N = static_cast<std::size_t>(domain.N);
  for (int d = domain.n - 1; d >= 0; --d) {
    idx.m[static_cast<std::size_t>(d)] = signed_frequency(static_cast<int>(flat % N), domain.N);
    flat /= N;
  }
  idx.k = signed_frequency(static_cast<int>(flat), domain.Nt);
  return idx;
}

std::size_t flat_of(const TorusDomain& domain, const DualIndex& idx) {
  std::size_t flat = static_cast<std::size_t>(frequency_slot(idx.k, domain.Nt));
  for (int d = 0; d < domain.n; ++d) {
    flat = flat * static_cast<std::size_t>(domain.N) +
           static_cast<std::size_t>(frequency_slot(idx.m[static_cast<std::size_t>(d)], domain.N));
  }
  return flat;
}

bool is_nyquist(const TorusDomain& domain, const DualIndex& idx) {
  if (idx.k == -domain.Nt / 2) return true;
  for (int d = 0; d < domain.n; ++d) {
    if (idx.m[static_cast<std::size_t>(d)] == -domain.N / 2) return true;
  }
  return false;
}

std::array<double, kMaxDim> wavevector(const TorusDomain& domain, const DualIndex& idx) {
  std::array<double, kMaxDim> xi{0.0, 0.0, 0.0};
  for (int d = 0; d < domain.n; ++d) {
    xi[static_cast<std::size_t>(d)] = domain.xi_unit() * idx.m[static_cast<std::size_t>(d)];
  }
  return xi;
}

ModeTable build_mode_table(const TorusDomain& domain) {
  const std::size_t total = domain.total_points();
  ModeTable table;
  table.index.resize(total);
  table.xi.resize(total);
  table.xi_sq.resize(total);
  table.eta.resize(total);
  table.nyquist.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const DualIndex idx = dual_index_at(domain, i);
    table.index[i] = idx;
    table.xi[i] = wavevector(domain, idx);
    double sq = 0.0;
    for (double c : table.xi[i]) sq += c * c;
    table.xi_sq[i] = sq;
    table.eta[i] = temporal_frequency(idx.k, domain.T);
    table.nyquist[i] = is_nyquist(domain, idx) ? 1 : 0;
  }
  return table;
}

}  // namespace tpoe
