#include "dats/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dats/errors.hpp"

namespace dats {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ValueError("gaussian_blur: std-dev must be > 0");
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i / sigma) * (i / sigma));
    sum += k[i + radius];
  }
  for (double& x : k) x /= sum;
  return k;
}

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Catmull-Rom weight, a = -0.5
inline double cubic_weight(double t) {
  t = std::fabs(t);
  if (t <= 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

}  // namespace

void DegradeConfig::validate() const {
  if (scale < 2) throw ValueError("degrade: scale must be >= 2");
  if (!(blur_std_y > 0.0) || !(blur_std_x > 0.0)) throw ValueError("degrade: blur std-dev must be > 0");
  if (phase_y < 0 || phase_y >= scale || phase_x < 0 || phase_x >= scale) {
    throw ValueError("degrade: decimation phase must be in [0, scale)");
  }
}

Raster gaussian_blur(const Raster& r, double std_y, double std_x) {
  const auto ky = gaussian_kernel(std_y);
  const auto kx = gaussian_kernel(std_x);
  const int ry = (static_cast<int>(ky.size()) - 1) / 2;
  const int rx = (static_cast<int>(kx.size()) - 1) / 2;

  Raster tmp = r;  // horizontal pass
  for (int i = 0; i < r.height; ++i) {
    for (int j = 0; j < r.width; ++j) {
      for (int c = 0; c < r.channels; ++c) {
        double acc = 0.0;
        for (int t = -rx; t <= rx; ++t) {
          acc += kx[t + rx] * r.at(i, clamp_index(j + t, r.width), c);
        }
        tmp.at(i, j, c) = acc;
      }
    }
  }
  Raster out = r;  // vertical pass
  for (int i = 0; i < r.height; ++i) {
    for (int j = 0; j < r.width; ++j) {
      for (int c = 0; c < r.channels; ++c) {
        double acc = 0.0;
        for (int t = -ry; t <= ry; ++t) {
          acc += ky[t + ry] * tmp.at(clamp_index(i + t, r.height), j, c);
        }
        out.at(i, j, c) = acc;
      }
    }
  }
  return out;
}

Raster degrade(const Raster& r, const DegradeConfig& cfg) {
  cfg.validate();
  if (r.height % cfg.scale != 0 || r.width % cfg.scale != 0) {
    throw ValueError("degrade: dimensions must be divisible by scale");
  }
  const Raster blurred = gaussian_blur(r, cfg.blur_std_y, cfg.blur_std_x);
  Raster out(r.height / cfg.scale, r.width / cfg.scale, r.channels, r.bit_depth);
  out.normalized = r.normalized;
  for (int i = 0; i < out.height; ++i) {
    for (int j = 0; j < out.width; ++j) {
      for (int c = 0; c < r.channels; ++c) {
        out.at(i, j, c) = blurred.at(i * cfg.scale + cfg.phase_y, j * cfg.scale + cfg.phase_x, c);
      }
    }
  }
  return out;
}

Raster upsample(const Raster& r, int scale) {
  if (scale < 2) throw ValueError("upsample: scale must be >= 2");
  Raster out(r.height * scale, r.width * scale, r.channels, r.bit_depth);
  out.normalized = r.normalized;
  const double lo = 0.0;
  const double hi = r.normalized ? 1.0 : r.max_value();

  // precompute per-axis taps: each output coordinate uses 4 source rows/cols
  struct Taps {
    int idx[4];
    double w[4];
  };
  auto make_taps = [scale](int out_n, int in_n) {
    std::vector<Taps> taps(out_n);
    for (int o = 0; o < out_n; ++o) {
      const double src = (o + 0.5) / scale - 0.5;
      const int base = static_cast<int>(std::floor(src)) - 1;
      for (int t = 0; t < 4; ++t) {
        taps[o].idx[t] = clamp_index(base + t, in_n);
        taps[o].w[t] = cubic_weight(src - (base + t));
      }
    }
    return taps;
  };
  const auto row_taps = make_taps(out.height, r.height);
  const auto col_taps = make_taps(out.width, r.width);

  for (int i = 0; i < out.height; ++i) {
    const Taps& ti = row_taps[i];
    for (int j = 0; j < out.width; ++j) {
      const Taps& tj = col_taps[j];
      for (int c = 0; c < r.channels; ++c) {
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
          double row = 0.0;
          for (int b = 0; b < 4; ++b) row += tj.w[b] * r.at(ti.idx[a], tj.idx[b], c);
          acc += ti.w[a] * row;
        }
        out.at(i, j, c) = std::clamp(acc, lo, hi);
      }
    }
  }
  return out;
}

Raster false_color(const Raster& r) {
  if (r.channels < 3) throw ValueError("false_color: raster needs at least 3 channels");
  Raster out(r.height, r.width, 3, 8);
  out.normalized = true;
  const int band_order[3] = {2, 1, 0};  // bands 3,2,1 -> R,G,B
  for (int k = 0; k < 3; ++k) {
    const int c = band_order[k];
    double lo = r.at(0, 0, c), hi = lo;
    for (int i = 0; i < r.height; ++i) {
      for (int j = 0; j < r.width; ++j) {
        lo = std::min(lo, r.at(i, j, c));
        hi = std::max(hi, r.at(i, j, c));
      }
    }
    if (hi > lo) {
      const double inv = 1.0 / (hi - lo);
      for (int i = 0; i < r.height; ++i) {
        for (int j = 0; j < r.width; ++j) out.at(i, j, k) = (r.at(i, j, c) - lo) * inv;
      }
    } else {
      // degenerate constant band: mid-gray by convention
      for (int i = 0; i < r.height; ++i) {
        for (int j = 0; j < r.width; ++j) out.at(i, j, k) = 0.5;
      }
    }
  }
  return out;
}

}  // namespace dats
