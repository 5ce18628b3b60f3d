#include "dats/raster.hpp"

#include <algorithm>
#include <cmath>

#include "dats/errors.hpp"

namespace dats {

Raster normalize(const Raster& r) {
  if (r.normalized) return r;
  if (r.bit_depth < 1 || r.bit_depth > 16) {
    throw ValueError("normalize: bit depth must be in [1,16], got " + std::to_string(r.bit_depth));
  }
  Raster out = r;
  const double scale = 1.0 / r.max_value();
  for (double& x : out.data) x = std::clamp(x * scale, 0.0, 1.0);
  out.normalized = true;
  return out;
}

void check_raster(const Raster& r) {
  if (r.height < 1 || r.width < 1) {
    throw ValueError("raster: dimensions must be >= 1");
  }
  if (r.channels != 1 && r.channels != 3 && r.channels != 4) {
    throw ValueError("raster: channel count must be 1, 3 or 4, got " + std::to_string(r.channels));
  }
  if (r.data.size() != static_cast<std::size_t>(r.height) * r.width * r.channels) {
    throw ValueError("raster: data size does not match dimensions");
  }
  for (double x : r.data) {
    if (!std::isfinite(x)) throw ValueError("raster: non-finite sample value");
  }
}

Tensor to_tensor(const Raster& r) {
  Tensor t(r.height, r.width, r.channels);
  t.v = r.data;
  return t;
}

Raster to_raster(const Tensor& t, int bit_depth, bool normalized) {
  Raster r(t.height, t.width, t.channels, bit_depth);
  r.data = t.v;
  r.normalized = normalized;
  return r;
}

}  // namespace dats
