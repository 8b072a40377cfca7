// SPDX-License-Identifier: Apache-2.0
#include "tpoe/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "tpoe/error.hpp"

namespace tpoe {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(const TorusDomain& domain, int howmany, Complex* data, int sign) {
    std::array<int, kMaxDim + 1> dims{};
    dims[0] = domain.Nt;
    for (int d = 0; d < domain.n; ++d) dims[static_cast<std::size_t>(d) + 1] = domain.N;
    const int dist = static_cast<int>(domain.total_points());
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_many_dft(domain.n + 1, dims.data(), howmany, buf, nullptr, 1, dist, buf, nullptr, 1, dist, sign,
                               FFTW_ESTIMATE);
    if (plan_ == nullptr) fail(ErrorCode::kInternal, "FFTW failed to create a plan");
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

std::vector<std::size_t> partner_table(const TorusDomain& domain) {
  const std::size_t total = domain.total_points();
  std::vector<std::size_t> partner(total);
  for (std::size_t i = 0; i < total; ++i) {
    DualIndex idx = dual_index_at(domain, i);
    // Negation mod the axis length; -(-N/2) wraps back onto -N/2.
    idx.k = signed_frequency(frequency_slot(-idx.k, domain.Nt) % domain.Nt, domain.Nt);
    for (int d = 0; d < domain.n; ++d) {
      auto& m = idx.m[static_cast<std::size_t>(d)];
      m = signed_frequency(frequency_slot(-m, domain.N) % domain.N, domain.N);
    }
    partner[i] = flat_of(domain, idx);
  }
  return partner;
}

}  // namespace

SpectralField forward(const SpaceTimeField& field) {
  const TorusDomain& domain = field.domain();
  SpectralField out(domain, field.components());
  auto coeffs = out.coefficients();
  const auto samples = field.samples();
  std::transform(samples.begin(), samples.end(), coeffs.begin(), [](double s) { return Complex(s, 0.0); });

  FftPlan plan(domain, field.components(), coeffs.data(), FFTW_FORWARD);
  plan.execute();

  const double scale = std::pow(domain.dx(), domain.n) / domain.Nt;
  const std::size_t total = domain.total_points();
  for (int c = 0; c < field.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < total; ++i) {
      comp[i] = is_nyquist(domain, dual_index_at(domain, i)) ? Complex{} : comp[i] * scale;
    }
  }
  return out;
}

double hermitian_defect(const SpectralField& spectrum) {
  const auto partner = partner_table(spectrum.domain());
  double defect = 0.0;
  for (int c = 0; c < spectrum.components(); ++c) {
    const auto comp = spectrum.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      defect = std::max(defect, std::abs(comp[partner[i]] - std::conj(comp[i])));
    }
  }
  return defect;
}

SpaceTimeField inverse(const SpectralField& spectrum) {
  const TorusDomain& domain = spectrum.domain();
  const double scale_ref = std::max(1.0, spectrum.max_abs());
  const double defect = hermitian_defect(spectrum);
  if (defect > 1e-12 * scale_ref) {
    fail(ErrorCode::kNonHermitian, "spectrum violates Hermitian symmetry by " + std::to_string(defect));
  }

  std::vector<Complex> work(spectrum.coefficients().begin(), spectrum.coefficients().end());
  FftPlan plan(domain, spectrum.components(), work.data(), FFTW_BACKWARD);
  plan.execute();

  const double scale = 1.0 / std::pow(domain.L, domain.n);
  std::vector<double> samples(work.size());
  std::transform(work.begin(), work.end(), samples.begin(), [scale](const Complex& z) { return z.real() * scale; });
  return SpaceTimeField(domain, spectrum.components(), std::move(samples));
}

SpectralField spectral_derivative(const SpectralField& spectrum, const std::array<int, kMaxDim>& alpha, int beta) {
  const TorusDomain& domain = spectrum.domain();
  int order = 0;
  for (int d = 0; d < kMaxDim; ++d) {
    const int a = alpha[static_cast<std::size_t>(d)];
    if (a < 0 || (d >= domain.n && a != 0)) fail(ErrorCode::kInvalidArgument, "invalid spatial multi-index");
    order += a;
  }
  if (order > 2 || beta < 0 || beta > 1) {
    fail(ErrorCode::kInvalidArgument, "derivative orders limited to |alpha| <= 2 and beta <= 1");
  }

  const ModeTable modes = build_mode_table(domain);
  std::vector<Complex> factor(spectrum.modes());
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < factor.size(); ++i) {
    Complex f(1.0, 0.0);
    for (int d = 0; d < domain.n; ++d) {
      for (int p = 0; p < alpha[static_cast<std::size_t>(d)]; ++p) f *= I * modes.xi[i][static_cast<std::size_t>(d)];
    }
    if (beta == 1) f *= I * modes.eta[i];
    factor[i] = modes.nyquist[i] ? Complex{} : f;
  }

  SpectralField out = spectrum;
  for (int c = 0; c < out.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= factor[i];
  }
  return out;
}

double plancherel_norm(const SpectralField& spectrum) {
  double sum = 0.0;
  for (const Complex& z : spectrum.coefficients()) sum += std::norm(z);
  return std::sqrt(sum / std::pow(spectrum.domain().L, spectrum.domain().n));
}

SpectralField resample(const SpectralField& spectrum, const TorusDomain& target) {
  const TorusDomain& source = spectrum.domain();
  if (source.n != target.n || source.L != target.L || source.T != target.T) {
    fail(ErrorCode::kDomainMismatch, "resample requires identical n, L and T");
  }
  SpectralField out(target, spectrum.components());
  const std::size_t total = source.total_points();
  for (std::size_t i = 0; i < total; ++i) {
    const DualIndex idx = dual_index_at(source, i);
    if (is_nyquist(source, idx)) continue;
    bool fits = 2 * std::abs(idx.k) < target.Nt;
    for (int d = 0; d < source.n; ++d) fits = fits && 2 * std::abs(idx.m[static_cast<std::size_t>(d)]) < target.N;
    if (!fits) continue;
    const std::size_t j = flat_of(target, idx);
    for (int c = 0; c < spectrum.components(); ++c) out.component(c)[j] = spectrum.component(c)[i];
  }
  return out;
}

SpaceTimeField oversample(const SpaceTimeField& field, int factor) {
  if (factor < 1) fail(ErrorCode::kInvalidArgument, "oversampling factor must be >= 1");
  if (factor == 1) return field;
  return inverse(resample(forward(field), field.domain().refined(factor)));
}

double divergence_ratio(const SpectralField& spectrum) {
  const TorusDomain& domain = spectrum.domain();
  if (spectrum.components() != domain.n) fail(ErrorCode::kDomainMismatch, "divergence needs a vector spectrum");
  const double scale = spectrum.max_abs();
  if (scale == 0.0) return 0.0;
  const ModeTable modes = build_mode_table(domain);
  double worst = 0.0;
  for (std::size_t i = 0; i < spectrum.modes(); ++i) {
    if (modes.xi_sq[i] == 0.0) continue;
    Complex div{};
    for (int c = 0; c < domain.n; ++c) div += modes.xi[i][static_cast<std::size_t>(c)] * spectrum.component(c)[i];
    worst = std::max(worst, std::abs(div) / std::sqrt(modes.xi_sq[i]));
  }
  return worst / scale;
}

}  // namespace tpoe
