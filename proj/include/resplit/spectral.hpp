#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace resplit {

using Complex = std::complex<double>;

// Collocation points x_m = 2 pi m / N (Standard) or 2 pi (m + 1/2) / N (Shifted).
enum class Grid { Standard, Shifted };

/// Fourier coefficients u_k, k = -N/2 .. N/2-1, of a field on the torus with
/// u(x_m) = sum_k u_k e^{i k x_m}. Only xi is stored; eta = conj(xi) is implicit.
class SpectralState {
 public:
  SpectralState() = default;
  explicit SpectralState(int n, Grid grid = Grid::Standard);

  int size() const noexcept { return n_; }
  Grid grid() const noexcept { return grid_; }
  int k_min() const noexcept { return -n_ / 2; }
  int k_max() const noexcept { return n_ / 2 - 1; }

  Complex& operator[](int k) { return coeffs_[slot(k)]; }
  const Complex& operator[](int k) const { return coeffs_[slot(k)]; }

  // Storage in FFT order: slot i holds k = i for i < N/2 and k = i - N otherwise.
  std::span<Complex> raw() noexcept { return coeffs_; }
  std::span<const Complex> raw() const noexcept { return coeffs_; }

  void scale(double factor);

 private:
  std::size_t slot(int k) const;

  int n_ = 0;
  Grid grid_ = Grid::Standard;
  std::vector<Complex> coeffs_;
};

int signed_mode(int slot, int n) noexcept;

/// FFTW-backed physical <-> spectral transforms for one grid size and grid kind.
/// Each instance owns its buffers and plans; do not share across threads.
class FourierTransform {
 public:
  FourierTransform(int n, Grid grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  int size() const noexcept { return n_; }
  Grid grid() const noexcept { return grid_; }

  void to_physical(const SpectralState& state, std::vector<Complex>& values);
  void to_spectral(std::span<const Complex> values, SpectralState& state);

  std::vector<double> points() const;

 private:
  int n_;
  Grid grid_;
  std::vector<Complex> twiddle_;
  Complex* buffer_ = nullptr;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

/// A_k = |u_k|^2 + |u_{-k}|^2 for k = 1 .. N/2-1, A_0 = |u_0|^2.
std::vector<double> actions(const SpectralState& state);

/// I_a = |u_a|^2 in storage order.
std::vector<double> index_actions(const SpectralState& state);

/// sqrt(sum_k max(1,|k|)^{2s} 2 |u_k|^2). The factor 2 counts the (xi, eta) pair.
double sobolev_norm(const SpectralState& state, double s);

/// sqrt(2 pi sum_k |u_k|^2).
double l2_norm(const SpectralState& state);

struct PaperDatum {
  double amplitude = 1.0;
};

struct CoefficientTable {
  std::map<int, Complex> coeffs;
};

struct SobolevScaling {
  double s = 0.0;
  double epsilon = 0.0;
};

struct InitialSpec {
  std::variant<PaperDatum, CoefficientTable> source = PaperDatum{};
  std::optional<Grid> grid;  // default: Shifted for PaperDatum, Standard for tables
  std::optional<SobolevScaling> scale_to;

  Grid effective_grid() const;
};

/// The closed form 0.1/(2 - 2 cos x) + 0.05 (2 e^{2ix} - 2 e^{5ix} + 3 e^{7ix}).
Complex paper_datum(double x);

/// Builds the initial state. The closed form is sampled on the grid and
/// transformed; tables are copied. Throws SingularityError when a sample
/// lands on the pole at x = 0 and ParameterError for odd or small N.
SpectralState synthesize_initial(const InitialSpec& spec, int n);

/// "k,re,im" rows for k = -N/2 .. N/2-1.
std::string state_to_csv(const SpectralState& state);

}  // namespace resplit
