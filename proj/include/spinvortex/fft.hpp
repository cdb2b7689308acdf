#pragma once

// Centred, unitary 2D DFT on ComplexField, backed by FFTW.
//
// forward:  F(k) = 1/sqrt(N) sum_x f(x) e^{-i k.x}
// inverse:  f(x) = 1/sqrt(N) sum_k F(k) e^{+i k.x}
//
// Both the spatial origin and the DC term live at pixel (nx/2, ny/2). The
// returned field carries the dual grid (spacing 2 pi / (n d)).

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "grid.hpp"

namespace spinvortex {

enum class FftDirection { forward, inverse };

namespace detail {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

class FftPlanCache {
public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  /// Plan for an in-place transform of an aligned ny x nx buffer. The planner
  /// is not thread-safe; execution through fftw_execute_dft is.
  fftw_plan plan(std::size_t nx, std::size_t ny, FftDirection dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(nx, ny, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    FftwBuffer scratch(nx * ny);
    fftw_plan p = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), scratch.data,
                                   scratch.data, dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
    plans_.emplace(key, p);
    return p;
  }

  ~FftPlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, FftDirection>, fftw_plan> plans_;
};

/// Copies `in` into `out` with the centre pixel moved to (0, 0) (or back).
/// For even sizes both shifts are the same half-period roll.
inline void roll_half(const complex* in, complex* out, std::size_t nx, std::size_t ny) {
  const std::size_t hx = nx / 2;
  const std::size_t hy = ny / 2;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const std::size_t oy = (iy + hy) % ny;
    const complex* src = in + iy * nx;
    complex* dst = out + oy * nx;
    std::memcpy(dst + hx, src, sizeof(complex) * (nx - hx));
    std::memcpy(dst, src + (nx - hx), sizeof(complex) * hx);
  }
}

} // namespace detail

inline ComplexField fourier_transform(const ComplexField& field,
                                      FftDirection direction = FftDirection::forward) {
  const auto& grid = field.grid();
  grid.validate();
  const std::size_t n = grid.size();
  detail::FftwBuffer buf(n);
  auto* work = reinterpret_cast<complex*>(buf.data);
  detail::roll_half(field.values().data(), work, grid.nx, grid.ny);

  fftw_plan plan = detail::FftPlanCache::instance().plan(grid.nx, grid.ny, direction);
  fftw_execute_dft(plan, buf.data, buf.data);

  ComplexField out(grid.reciprocal());
  detail::roll_half(work, out.values().data(), grid.nx, grid.ny);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out.values()) v *= scale;
  return out;
}

template <std::size_t N>
SpinorField<N> fourier_transform(const SpinorField<N>& field,
                                 FftDirection direction = FftDirection::forward) {
  std::array<ComplexField, N> comps;
  for (std::size_t c = 0; c < N; ++c) comps[c] = fourier_transform(field[c], direction);
  return SpinorField<N>(std::move(comps));
}

} // namespace spinvortex
