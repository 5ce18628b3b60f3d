#include "dats/patches.hpp"

#include <string>

#include "dats/errors.hpp"

namespace dats {

void Sample::check(int scale) const {
  if (pan.channels != 1) throw ValueError("sample: pan must be single-band");
  if (hrms_ref.height != pan.height || hrms_ref.width != pan.width) {
    throw ValueError("sample: hrms_ref and pan dimensions differ");
  }
  if (lrms_up.height != pan.height || lrms_up.width != pan.width) {
    throw ValueError("sample: lrms_up and pan dimensions differ");
  }
  if (lrms.height * scale != pan.height || lrms.width * scale != pan.width) {
    throw ValueError("sample: lrms must be exactly 1/" + std::to_string(scale) + " of pan per axis");
  }
  if (lrms.channels != lrms_up.channels || lrms.channels != hrms_ref.channels) {
    throw ValueError("sample: MS channel counts differ");
  }
}

Raster crop(const Raster& r, int i0, int j0, int h, int w) {
  if (i0 < 0 || j0 < 0 || i0 + h > r.height || j0 + w > r.width) {
    throw ValueError("crop: window outside raster");
  }
  Raster out(h, w, r.channels, r.bit_depth);
  out.normalized = r.normalized;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      for (int c = 0; c < r.channels; ++c) out.at(i, j, c) = r.at(i0 + i, j0 + j, c);
    }
  }
  return out;
}

std::vector<Sample> extract_patches(const Raster& pan, const Raster& ms, int patch, int stride,
                                    const DegradeConfig& cfg) {
  cfg.validate();
  if (pan.channels != 1) throw ValueError("extract_patches: pan must be single-band");
  if (pan.height != ms.height * cfg.scale || pan.width != ms.width * cfg.scale) {
    throw ValueError("extract_patches: pan must be scale x the size of ms");
  }
  if (patch < cfg.scale || patch % cfg.scale != 0) {
    throw ValueError("extract_patches: patch must be a positive multiple of scale");
  }
  if (stride < 1 || stride % cfg.scale != 0) {
    throw ValueError("extract_patches: stride must be a positive multiple of scale");
  }
  if (patch > pan.height || patch > pan.width) {
    throw ValueError("extract_patches: patch larger than image");
  }

  const int ny = (pan.height - patch) / stride + 1;
  const int nx = (pan.width - patch) / stride + 1;
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(ny) * nx);
  for (int wy = 0; wy < ny; ++wy) {
    for (int wx = 0; wx < nx; ++wx) {
      const int i0 = wy * stride;
      const int j0 = wx * stride;
      Sample s;
      s.hrms_ref = crop(ms, i0 / cfg.scale, j0 / cfg.scale, patch / cfg.scale, patch / cfg.scale);
      s.pan = degrade(crop(pan, i0, j0, patch, patch), cfg);
      s.lrms = degrade(s.hrms_ref, cfg);
      s.lrms_up = upsample(s.lrms, cfg.scale);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace dats
