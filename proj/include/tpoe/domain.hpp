// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace tpoe {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr int kMaxDim = 3;

/// Discretized space-time torus: a periodic box [0,L)^n times one time period
/// [0,T). Samples are stored time-outermost, then x1, ..., xn (xn fastest).
struct TorusDomain {
  int n = 2;
  double L = kTwoPi;
  int N = 16;
  double T = kTwoPi;
  int Nt = 16;

  /// Throws kInvalidArgument unless n in {2,3}, N and Nt even and >= 4,
  /// L > 0 and T > 0.
  void validate() const;

  [[nodiscard]] std::size_t spatial_points() const;
  [[nodiscard]] std::size_t total_points() const { return spatial_points() * static_cast<std::size_t>(Nt); }

  [[nodiscard]] double dx() const { return L / N; }
  [[nodiscard]] double dt() const { return T / Nt; }
  /// Spatial wavenumber unit 2pi/L.
  [[nodiscard]] double xi_unit() const { return kTwoPi / L; }
  /// Temporal frequency unit 2pi/T.
  [[nodiscard]] double eta_unit() const { return kTwoPi / T; }

  /// Same L and T with the grid refined by an integer factor.
  [[nodiscard]] TorusDomain refined(int factor) const;

  friend bool operator==(const TorusDomain&, const TorusDomain&) = default;
};

/// Dual-group index (m, k): spatial multi-index and temporal index. Only the
/// first `n` entries of `m` are meaningful.
struct DualIndex {
  std::array<int, kMaxDim> m{0, 0, 0};
  int k = 0;

  friend bool operator==(const DualIndex&, const DualIndex&) = default;
};

/// Signed frequency of FFT slot j on an axis of length len.
constexpr int signed_frequency(int j, int len) { return j < len / 2 ? j : j - len; }

/// FFT slot of signed frequency f on an axis of length len.
constexpr int frequency_slot(int f, int len) { return f >= 0 ? f : f + len; }

/// Dual index of the flat spectral position `flat` (same layout as samples).
DualIndex dual_index_at(const TorusDomain& domain, std::size_t flat);

/// Flat spectral position of a dual index; indices must lie in [-N/2, N/2).
std::size_t flat_of(const TorusDomain& domain, const DualIndex& idx);

/// True when any index component sits on the unmatched Nyquist frequency.
bool is_nyquist(const TorusDomain& domain, const DualIndex& idx);

/// Spatial wavevector xi = (2pi/L) m; unused trailing entries are zero.
std::array<double, kMaxDim> wavevector(const TorusDomain& domain, const DualIndex& idx);

/// Precomputed per-mode data for loops over the spectral cube.
struct ModeTable {
  std::vector<DualIndex> index;
  std::vector<std::array<double, kMaxDim>> xi;
  std::vector<double> xi_sq;
  std::vector<double> eta;
  std::vector<unsigned char> nyquist;
};

ModeTable build_mode_table(const TorusDomain& domain);

}  // namespace tpoe
