#ifndef DATS_TENSOR_HPP
#define DATS_TENSOR_HPP

#include <cstddef>
#include <vector>

namespace dats {

/// Dense H x W x C activation/parameter tensor, row-major with interleaved
/// channels: index(i, j, c) = (i * width + j) * channels + c.
/// Double precision throughout; the whole pipeline is CPU-bound and the
/// gradient checks rely on the extra headroom.
struct Tensor {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int h, int w, int c) : height(h), width(w), channels(c), v(static_cast<std::size_t>(h) * w * c, 0.0) {}

  static Tensor full(int h, int w, int c, double value) {
    Tensor t(h, w, c);
    std::fill(t.v.begin(), t.v.end(), value);
    return t;
  }

  std::size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }

  double& at(int i, int j, int c) { return v[(static_cast<std::size_t>(i) * width + j) * channels + c]; }
  double at(int i, int j, int c) const { return v[(static_cast<std::size_t>(i) * width + j) * channels + c]; }

  double* data() { return v.data(); }
  const double* data() const { return v.data(); }

  void zero() { std::fill(v.begin(), v.end(), 0.0); }

  bool same_shape(const Tensor& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
};

/// Elementwise helpers shared by layers and tests.
bool all_finite(const Tensor& t);
Tensor clamp01(const Tensor& t);

/// Channel-axis concatenation, a's channels first.
Tensor concat_channels(const Tensor& a, const Tensor& b);

/// Slice [c0, c1) along the channel axis.
Tensor slice_channels(const Tensor& t, int c0, int c1);

}  // namespace dats

#endif
