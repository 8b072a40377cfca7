// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "tpoe/field.hpp"

namespace tpoe {

enum class NormTag { kLq, kSobolev21q, kSteadyStokes, kSteadyOseen, kSteadyOseen2D, kPressureXp };

struct NormKind {
  NormTag tag = NormTag::kLq;
  double q = 2.0;
};

std::string_view norm_tag_name(NormTag tag);

/// Throws kInvalidExponent unless the exponent (and n, lambda) are admissible:
///   Lq, Sobolev21q:  q in (1, inf)
///   SteadyStokes:    n >= 3, lambda == 0, q in (1, n/2)
///   SteadyOseen:     n >= 3, lambda != 0, q in (1, (n+1)/2)
///   SteadyOseen2D:   n == 2, lambda != 0, q in (1, 3/2)
///   PressureXp:      q in (1, n)
void check_norm_kind(const NormKind& kind, int n, double lambda);

/// The steady norm that characterizes the steady velocity space for (n, lambda, q),
/// or nullopt when none applies (including n == 2, lambda == 0).
std::optional<NormTag> steady_kind_for(int n, double lambda, double q);

/// ((1/T) int_0^T int_box |f|^q dx dt)^{1/q} with |.| the Euclidean magnitude
/// over components. Rectangle rule; for q != 2 the field is first oversampled
/// by a factor of 2 (band-limited interpolation).
double lq_norm(const SpaceTimeField& f, double q);

/// (sum_{|alpha|<=2} ||d_x^alpha u||_q^q + sum_{beta<=1} ||d_t^beta u||_q^q)^{1/q}.
/// The alpha = 0 and beta = 0 terms both appear, as in the defining display.
double sobolev_norm_21q(const SpaceTimeField& u, double q);

/// Steady Stokes / Oseen / two-dimensional Oseen norm of a time-constant
/// vector field. Throws kNotTimeConstant if v depends on time.
double steady_norm(const SpaceTimeField& v, const NormKind& kind, double lambda);

/// ((1/T) int_0^T ||p(.,t)||_{nq/(n-q)}^q + ||grad p(.,t)||_q^q dt)^{1/q}.
double pressure_norm(const SpaceTimeField& p, double q);

}  // namespace tpoe
