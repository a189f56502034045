#include "sle/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "sle/errors.hpp"

namespace sle {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution on distinct buffers is.
// FFTW_ESTIMATE keeps the plan choice deterministic, FFTW_UNALIGNED lets the
// same plan run on any std::vector storage.
const PlanPair& plans_for(int n) {
  static std::mutex mtx;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.inv = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p.fwd || !p.inv) fail(ErrorCode::internal, "FFTW plan creation failed");
  return cache.emplace(n, p).first->second;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in) {
  const int n = static_cast<int>(in.size());
  if (n == 0) fail(ErrorCode::invalid, "dft of empty input");
  std::vector<std::complex<double>> out(in.begin(), in.end());
  fftw_execute_dft(plans_for(n).fwd, as_fftw(out.data()), as_fftw(out.data()));
  return out;
}

std::vector<std::complex<double>> idft(std::span<const std::complex<double>> in) {
  const int n = static_cast<int>(in.size());
  if (n == 0) fail(ErrorCode::invalid, "idft of empty input");
  std::vector<std::complex<double>> out(in.begin(), in.end());
  fftw_execute_dft(plans_for(n).inv, as_fftw(out.data()), as_fftw(out.data()));
  const double scale = 1.0 / n;
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<std::complex<double>> spectral_derivative(
    const XGrid& grid, std::span<const std::complex<double>> values) {
  auto spec = dft(values);
  for (int k = 0; k < grid.m; ++k)
    spec[k] *= std::complex<double>(0.0, grid.freq_bin(k));
  return idft(spec);
}

std::vector<std::complex<double>> shifted_samples(
    const XGrid& grid, std::span<const std::complex<double>> spectrum,
    double delta) {
  std::vector<std::complex<double>> spec(spectrum.begin(), spectrum.end());
  for (int k = 0; k < grid.m; ++k)
    spec[k] *= std::polar(1.0, grid.freq_bin(k) * delta);
  return idft(spec);
}

}  // namespace sle
