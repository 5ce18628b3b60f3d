#ifndef DATS_BASELINES_HPP
#define DATS_BASELINES_HPP

#include <string>

#include "dats/raster.hpp"

namespace dats {

enum class Baseline { Ihs, Brovey, Hpf, BicubicOnly };

struct BaselineMethod {
  Baseline kind = Baseline::BicubicOnly;
  /// Box low-pass size the HPF detail is derived from; odd, >= 3.
  int hpf_kernel = 5;
};

/// Parse a CLI method name: ihs | brovey | hpf | bicubic.
BaselineMethod baseline_from_name(const std::string& name);

/// Classical pansharpening on co-registered, normalized inputs. `pan` is
/// single-band, `lrms_up` the MS image already upsampled to PAN size. All
/// methods clamp their output to [0,1].
Raster pansharpen_classical(const BaselineMethod& method, const Raster& pan, const Raster& lrms_up);

}  // namespace dats

#endif
