#ifndef DATS_RESAMPLE_HPP
#define DATS_RESAMPLE_HPP

#include "dats/raster.hpp"

namespace dats {

/// Wald-style degradation settings. The reduced-resolution protocol blurs
/// with a separable Gaussian and then decimates; the defaults (std = scale/2,
/// truncation at 4 sigma, top-left sampling phase) are a plain, documented
/// choice — substitute MTF-matched kernels here if sensor data is available.
struct DegradeConfig {
  int scale = 4;
  double blur_std_y = 2.0;
  double blur_std_x = 2.0;
  int phase_y = 0;
  int phase_x = 0;

  static DegradeConfig for_scale(int s) {
    DegradeConfig c;
    c.scale = s;
    c.blur_std_y = c.blur_std_x = s / 2.0;
    return c;
  }
  void validate() const;
};

/// Separable Gaussian blur, kernel truncated at 4 sigma, replicate borders.
Raster gaussian_blur(const Raster& r, double std_y, double std_x);

/// Blur then decimate by cfg.scale. Dimensions must be divisible by scale.
Raster degrade(const Raster& r, const DegradeConfig& cfg);

/// Bicubic (Catmull-Rom, a = -0.5) upsampling by an integer factor, per
/// channel, centers aligned (src = (dst + 0.5)/scale - 0.5), replicate
/// borders. Output is clamped to the raster's valid range.
Raster upsample(const Raster& r, int scale);

/// False-color preview: bands (3,2,1) by 1-based index mapped to (R,G,B),
/// each band min-max stretched independently. A constant band maps to 0.5.
Raster false_color(const Raster& r);

}  // namespace dats

#endif
