#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srsm/error.hpp"

namespace srsm {

/// Dense row-major raster; (0, 0) is the north-west pixel.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Grid(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, ErrorCode::DimMismatch, "grid data size does not match dims");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  /// Replicate-border access.
  const T& clamped(std::ptrdiff_t r, std::ptrdiff_t c) const noexcept {
    const auto rr = std::clamp<std::ptrdiff_t>(r, 0, static_cast<std::ptrdiff_t>(rows_) - 1);
    const auto cc = std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(cols_) - 1);
    return data_[static_cast<std::size_t>(rr) * cols_ + static_cast<std::size_t>(cc)];
  }

  bool contains(std::ptrdiff_t r, std::ptrdiff_t c) const noexcept {
    return r >= 0 && c >= 0 && r < static_cast<std::ptrdiff_t>(rows_) && c < static_cast<std::ptrdiff_t>(cols_);
  }

  bool same_shape(const Grid& other) const noexcept { return rows_ == other.rows_ && cols_ == other.cols_; }
  template <class U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  std::vector<T>& storage() noexcept { return data_; }
  const std::vector<T>& storage() const noexcept { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarField = Grid<double>;
/// Dense elevation raster (meters).
using ZImage = Grid<double>;
using BinaryMask = Grid<std::uint8_t>;

struct VectorField {
  ScalarField u;  // column-direction component
  ScalarField v;  // row-direction component
};

/// Bilinear sample at continuous pixel coordinates. Pixel (r, c) covers
/// [r, r+1) x [c, c+1), so its value sits at (r + 0.5, c + 0.5). Borders replicate.
inline double sample_bilinear(const ScalarField& f, double row, double col) noexcept {
  const double y = row - 0.5;
  const double x = col - 0.5;
  const double fy = std::floor(y);
  const double fx = std::floor(x);
  const auto r0 = static_cast<std::ptrdiff_t>(fy);
  const auto c0 = static_cast<std::ptrdiff_t>(fx);
  const double ty = y - fy;
  const double tx = x - fx;
  const double a = f.clamped(r0, c0);
  const double b = f.clamped(r0, c0 + 1);
  const double c = f.clamped(r0 + 1, c0);
  const double d = f.clamped(r0 + 1, c0 + 1);
  return (1.0 - ty) * ((1.0 - tx) * a + tx * b) + ty * ((1.0 - tx) * c + tx * d);
}

inline std::size_t count_true(const BinaryMask& m) noexcept {
  return static_cast<std::size_t>(std::count_if(m.values().begin(), m.values().end(), [](std::uint8_t b) { return b != 0; }));
}

}  // namespace srsm
