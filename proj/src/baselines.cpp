#include "dats/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dats/errors.hpp"

namespace dats {

namespace {

constexpr double kBroveyEps = 1e-6;

/// Per-pixel intensity component: the band mean.
std::vector<double> intensity(const Raster& ms) {
  const std::size_t n = static_cast<std::size_t>(ms.height) * ms.width;
  std::vector<double> out(n);
  for (std::size_t p = 0; p < n; ++p) {
    double acc = 0.0;
    for (int c = 0; c < ms.channels; ++c) acc += ms.data[p * ms.channels + c];
    out[p] = acc / ms.channels;
  }
  return out;
}

/// Match pan's mean/std to the intensity component.
std::vector<double> match_histogram(const Raster& pan, const std::vector<double>& target) {
  const std::size_t n = target.size();
  double mp = 0.0, mt = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    mp += pan.data[p];
    mt += target[p];
  }
  mp /= n;
  mt /= n;
  double vp = 0.0, vt = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    vp += (pan.data[p] - mp) * (pan.data[p] - mp);
    vt += (target[p] - mt) * (target[p] - mt);
  }
  const double gain = vp > 0.0 ? std::sqrt(vt / vp) : 0.0;
  std::vector<double> out(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = (pan.data[p] - mp) * gain + mt;
  return out;
}

/// Box low-pass with replicate borders.
std::vector<double> box_lowpass(const Raster& pan, int size) {
  const int r = size / 2;
  std::vector<double> out(static_cast<std::size_t>(pan.height) * pan.width);
  for (int i = 0; i < pan.height; ++i) {
    for (int j = 0; j < pan.width; ++j) {
      double acc = 0.0;
      for (int di = -r; di <= r; ++di) {
        for (int dj = -r; dj <= r; ++dj) {
          const int ii = std::clamp(i + di, 0, pan.height - 1);
          const int jj = std::clamp(j + dj, 0, pan.width - 1);
          acc += pan.at(ii, jj, 0);
        }
      }
      out[static_cast<std::size_t>(i) * pan.width + j] = acc / (size * size);
    }
  }
  return out;
}

}  // namespace

BaselineMethod baseline_from_name(const std::string& name) {
  if (name == "ihs") return {Baseline::Ihs};
  if (name == "brovey") return {Baseline::Brovey};
  if (name == "hpf") return {Baseline::Hpf};
  if (name == "bicubic") return {Baseline::BicubicOnly};
  throw ValueError("unknown classical method '" + name + "' (expected ihs, brovey, hpf or bicubic)");
}

Raster pansharpen_classical(const BaselineMethod& method, const Raster& pan, const Raster& lrms_up) {
  if (pan.height != lrms_up.height || pan.width != lrms_up.width) {
    throw ValueError("pansharpen_classical: pan and lrms_up dimensions differ");
  }
  if (pan.channels != 1) throw ValueError("pansharpen_classical: pan must be single-band");
  if (method.kind == Baseline::Hpf && (method.hpf_kernel < 3 || method.hpf_kernel % 2 == 0)) {
    throw ValueError("pansharpen_classical: HPF kernel must be odd and >= 3");
  }

  Raster out = lrms_up;
  const std::size_t n = static_cast<std::size_t>(pan.height) * pan.width;

  switch (method.kind) {
    case Baseline::BicubicOnly:
      return out;

    case Baseline::Ihs: {
      // replace the intensity component with the matched PAN
      const auto inten = intensity(lrms_up);
      const auto matched = match_histogram(pan, inten);
      for (std::size_t p = 0; p < n; ++p) {
        const double delta = matched[p] - inten[p];
        for (int c = 0; c < lrms_up.channels; ++c) out.data[p * lrms_up.channels + c] += delta;
      }
      break;
    }

    case Baseline::Brovey: {
      const auto inten = intensity(lrms_up);
      for (std::size_t p = 0; p < n; ++p) {
        const double ratio = pan.data[p] / std::max(inten[p], kBroveyEps);
        for (int c = 0; c < lrms_up.channels; ++c) out.data[p * lrms_up.channels + c] *= ratio;
      }
      break;
    }

    case Baseline::Hpf: {
      const auto low = box_lowpass(pan, method.hpf_kernel);
      for (std::size_t p = 0; p < n; ++p) {
        const double detail = pan.data[p] - low[p];
        for (int c = 0; c < lrms_up.channels; ++c) out.data[p * lrms_up.channels + c] += detail;
      }
      break;
    }
  }

  for (double& x : out.data) x = std::clamp(x, 0.0, 1.0);
  return out;
}

}  // namespace dats
