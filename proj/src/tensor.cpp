#include "dats/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "dats/errors.hpp"

namespace dats {

bool all_finite(const Tensor& t) {
  for (double x : t.v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Tensor clamp01(const Tensor& t) {
  Tensor out = t;
  for (double& x : out.v) x = std::clamp(x, 0.0, 1.0);
  return out;
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
  if (a.height != b.height || a.width != b.width) {
    throw ValueError("concat_channels: spatial dimensions differ");
  }
  Tensor out(a.height, a.width, a.channels + b.channels);
  const std::size_t pixels = static_cast<std::size_t>(a.height) * a.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    double* dst = out.data() + p * out.channels;
    const double* pa = a.data() + p * a.channels;
    const double* pb = b.data() + p * b.channels;
    std::copy(pa, pa + a.channels, dst);
    std::copy(pb, pb + b.channels, dst + a.channels);
  }
  return out;
}

Tensor slice_channels(const Tensor& t, int c0, int c1) {
  if (c0 < 0 || c1 > t.channels || c0 >= c1) {
    throw ValueError("slice_channels: bad channel range");
  }
  Tensor out(t.height, t.width, c1 - c0);
  const std::size_t pixels = static_cast<std::size_t>(t.height) * t.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* src = t.data() + p * t.channels + c0;
    std::copy(src, src + (c1 - c0), out.data() + p * out.channels);
  }
  return out;
}

}  // namespace dats
