#ifndef DATS_PATCHES_HPP
#define DATS_PATCHES_HPP

#include <vector>

#include "dats/resample.hpp"

namespace dats {

/// One training/evaluation tuple at reduced resolution. pan, lrms_up and
/// hrms_ref share spatial dimensions h x w; lrms is h/scale x w/scale and
/// lrms_up is derived from it deterministically by upsample().
struct Sample {
  Raster lrms;
  Raster pan;
  Raster lrms_up;
  Raster hrms_ref;

  void check(int scale = 4) const;
};

/// Slide a patch x patch window over the full-resolution PAN grid (row-major
/// window order) and emit the reduced-resolution tuple for each window:
/// the MS patch becomes the reference, the degraded MS patch the LrMS input,
/// and the degraded PAN patch the PAN input. `pan` must be exactly
/// cfg.scale times the size of `ms`; patch and stride must be multiples of
/// cfg.scale. Window count per axis is floor((N - patch)/stride) + 1.
std::vector<Sample> extract_patches(const Raster& pan, const Raster& ms, int patch, int stride,
                                    const DegradeConfig& cfg);

/// Crop a window; exposed for the archive tooling and tests.
Raster crop(const Raster& r, int i0, int j0, int h, int w);

}  // namespace dats

#endif
