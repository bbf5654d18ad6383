#include "resplit/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "resplit/errors.hpp"
#include "resplit/format.hpp"

namespace resplit {

namespace {

// fftw planning and plan destruction are not thread safe.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

SpectralState::SpectralState(int n, Grid grid) : n_(n), grid_(grid) {
  if (n < 2 || n % 2 != 0) throw ParameterError("spectral state: N must be even and >= 2");
  coeffs_.assign(static_cast<std::size_t>(n), Complex{});
}

std::size_t SpectralState::slot(int k) const {
  if (k < k_min() || k > k_max()) {
    throw RangeError("spectral state: mode " + std::to_string(k) + " outside [" +
                     std::to_string(k_min()) + ", " + std::to_string(k_max()) + "]");
  }
  return static_cast<std::size_t>(k < 0 ? k + n_ : k);
}

void SpectralState::scale(double factor) {
  for (auto& c : coeffs_) c *= factor;
}

int signed_mode(int slot, int n) noexcept { return slot < n / 2 ? slot : slot - n; }

FourierTransform::FourierTransform(int n, Grid grid) : n_(n), grid_(grid) {
  if (n < 2 || n % 2 != 0) throw ParameterError("fourier transform: N must be even and >= 2");
  twiddle_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double k = signed_mode(i, n);
    twiddle_[i] = grid == Grid::Shifted ? std::polar(1.0, k * std::numbers::pi / n) : Complex{1.0};
  }
  std::lock_guard lock(fftw_planner_mutex());
  buffer_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
  forward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  fftw_free(buffer_);
}

void FourierTransform::to_physical(const SpectralState& state, std::vector<Complex>& values) {
  if (state.size() != n_) throw ParameterError("to_physical: grid size mismatch");
  const auto c = state.raw();
  for (int i = 0; i < n_; ++i) buffer_[i] = c[i] * twiddle_[i];
  fftw_execute(static_cast<fftw_plan>(backward_));
  values.assign(buffer_, buffer_ + n_);
}

void FourierTransform::to_spectral(std::span<const Complex> values, SpectralState& state) {
  if (static_cast<int>(values.size()) != n_) throw ParameterError("to_spectral: size mismatch");
  if (state.size() != n_ || state.grid() != grid_) state = SpectralState(n_, grid_);
  for (int i = 0; i < n_; ++i) buffer_[i] = values[i];
  fftw_execute(static_cast<fftw_plan>(forward_));
  auto c = state.raw();
  const double inv_n = 1.0 / n_;
  for (int i = 0; i < n_; ++i) c[i] = buffer_[i] * std::conj(twiddle_[i]) * inv_n;
}

std::vector<double> FourierTransform::points() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  const double offset = grid_ == Grid::Shifted ? 0.5 : 0.0;
  for (int m = 0; m < n_; ++m) x[m] = 2.0 * std::numbers::pi * (m + offset) / n_;
  return x;
}

std::vector<double> actions(const SpectralState& state) {
  const int half = state.size() / 2;
  std::vector<double> out(static_cast<std::size_t>(half), 0.0);
  out[0] = std::norm(state[0]);
  for (int k = 1; k < half; ++k) out[k] = std::norm(state[k]) + std::norm(state[-k]);
  return out;
}

std::vector<double> index_actions(const SpectralState& state) {
  std::vector<double> out;
  out.reserve(state.raw().size());
  for (const auto& c : state.raw()) out.push_back(std::norm(c));
  return out;
}

double sobolev_norm(const SpectralState& state, double s) {
  if (s < 0.0) throw ParameterError("sobolev_norm: s must be >= 0");
  const auto c = state.raw();
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    const double w = std::max(1, std::abs(signed_mode(i, state.size())));
    sum += std::pow(w, 2.0 * s) * 2.0 * std::norm(c[i]);
  }
  return std::sqrt(sum);
}

double l2_norm(const SpectralState& state) {
  double sum = 0.0;
  for (const auto& c : state.raw()) sum += std::norm(c);
  return std::sqrt(2.0 * std::numbers::pi * sum);
}

Grid InitialSpec::effective_grid() const {
  if (grid) return *grid;
  return std::holds_alternative<PaperDatum>(source) ? Grid::Shifted : Grid::Standard;
}

Complex paper_datum(double x) {
  const Complex i{0.0, 1.0};
  return 0.1 / (2.0 - 2.0 * std::cos(x)) +
         0.05 * (2.0 * std::exp(2.0 * i * x) - 2.0 * std::exp(5.0 * i * x) +
                 3.0 * std::exp(7.0 * i * x));
}

SpectralState synthesize_initial(const InitialSpec& spec, int n) {
  const Grid grid = spec.effective_grid();
  SpectralState state;
  if (const auto* table = std::get_if<CoefficientTable>(&spec.source)) {
    state = SpectralState(n, grid);
    for (const auto& [k, v] : table->coeffs) state[k] = v;
  } else {
    if (n < 16 || n % 2 != 0) throw ParameterError("synthesize_initial: N must be even and >= 16");
    const auto& datum = std::get<PaperDatum>(spec.source);
    FourierTransform fft(n, grid);
    const auto x = fft.points();
    std::vector<Complex> values(x.size());
    for (std::size_t m = 0; m < x.size(); ++m) {
      if (2.0 - 2.0 * std::cos(x[m]) == 0.0) {
        throw SingularityError(
            "initial datum is singular at collocation point x = 0; use the shifted grid or a "
            "coefficient table");
      }
      values[m] = datum.amplitude * paper_datum(x[m]);
    }
    fft.to_spectral(values, state);
  }
  if (spec.scale_to) {
    const double norm = sobolev_norm(state, spec.scale_to->s);
    if (norm > 0.0) state.scale(spec.scale_to->epsilon / norm);
  }
  return state;
}

std::string state_to_csv(const SpectralState& state) {
  std::ostringstream out;
  out << "k,re,im\n";
  for (int k = state.k_min(); k <= state.k_max(); ++k) {
    out << k << ',' << format_double(state[k].real()) << ',' << format_double(state[k].imag())
        << '\n';
  }
  return out.str();
}

}  // namespace resplit
