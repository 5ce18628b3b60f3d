#ifndef DATS_RASTER_HPP
#define DATS_RASTER_HPP

#include <vector>

#include "dats/tensor.hpp"

namespace dats {

/// An H x W x C image. Values are stored as doubles in row-major order with
/// interleaved channels, either in raw sensor units (as loaded from disk) or
/// in [0,1] after normalize(). source_bit_depth records the sensor range,
/// e.g. 12 for Pleiades products shipped in 16-bit containers.
struct Raster {
  int height = 0;
  int width = 0;
  int channels = 0;
  int bit_depth = 16;
  bool normalized = false;
  std::vector<double> data;

  Raster() = default;
  Raster(int h, int w, int c, int bits = 16)
      : height(h), width(w), channels(c), bit_depth(bits), data(static_cast<std::size_t>(h) * w * c, 0.0) {}

  double& at(int i, int j, int c) { return data[(static_cast<std::size_t>(i) * width + j) * channels + c]; }
  double at(int i, int j, int c) const { return data[(static_cast<std::size_t>(i) * width + j) * channels + c]; }

  std::size_t size() const { return data.size(); }

  /// Full-scale sensor value, (2^bit_depth - 1).
  double max_value() const { return static_cast<double>((1u << bit_depth) - 1u); }

  bool same_shape(const Raster& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
};

/// Scale raw sensor values into [0,1] by the recorded bit depth, clamping
/// out-of-range samples. Already-normalized rasters pass through unchanged.
Raster normalize(const Raster& r);

/// Validate the invariants a freshly constructed raster must satisfy
/// (positive dims, channels in {1,3,4}, finite values). Throws ValueError.
void check_raster(const Raster& r);

Tensor to_tensor(const Raster& r);
Raster to_raster(const Tensor& t, int bit_depth = 16, bool normalized = true);

}  // namespace dats

#endif
