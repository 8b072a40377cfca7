// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "tpoe/field.hpp"

namespace tpoe {

/// Group Fourier transform on the space-time torus.
///
///   c(m,k) = (1/Nt) sum_t (L/N)^n sum_x f(x,t) exp(-i xi.x - i eta t)
///
/// so c(0,0) is the space-time mean times L^n. Coefficients on the unmatched
/// Nyquist rows (any index equal to -N/2 or -Nt/2) are set to zero.
SpectralField forward(const SpaceTimeField& field);

/// Inverse transform, f(x,t) = sum_{m,k} L^{-n} c(m,k) exp(i xi.x + i eta t).
/// Throws kNonHermitian when the input is not the spectrum of a real field
/// (deviation above 1e-12 relative to the largest coefficient).
SpaceTimeField inverse(const SpectralField& spectrum);

/// Largest |c(-m,-k) - conj(c(m,k))| over all modes and components.
double hermitian_defect(const SpectralField& spectrum);

/// Multiplies each coefficient by (i xi)^alpha (i eta)^beta. Requires
/// |alpha| <= 2 and beta <= 1.
SpectralField spectral_derivative(const SpectralField& spectrum, const std::array<int, kMaxDim>& alpha, int beta);

/// sqrt(L^{-n} sum |c|^2): equals the discrete L^2 norm of the physical field
/// under the 1/T-normalized space-time measure.
double plancherel_norm(const SpectralField& spectrum);

/// Copies coefficients onto another grid with the same L and T, zero-padding
/// or truncating as needed. Coefficients keep their physical meaning.
SpectralField resample(const SpectralField& spectrum, const TorusDomain& target);

/// Band-limited interpolation of a physical field onto a finer grid.
SpaceTimeField oversample(const SpaceTimeField& field, int factor);

/// max over modes of |xi . c| / |xi|, divided by max |c|. Zero for spectrally
/// divergence-free vector spectra; zero for the zero spectrum.
double divergence_ratio(const SpectralField& spectrum);

}  // namespace tpoe
