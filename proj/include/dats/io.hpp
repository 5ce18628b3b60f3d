#ifndef DATS_IO_HPP
#define DATS_IO_HPP

#include <string>

#include "dats/raster.hpp"

namespace dats {

/// Load a raster, sniffing the container from its leading bytes. Supported:
///  - PSRK, the portable fixture format (see read_psrk)
///  - uncompressed striped or tiled TIFF, 8/16-bit, chunky or planar,
///    multi-band either as SamplesPerPixel > 1 or as one band per IFD
/// The result carries raw sample values (no normalization applied).
Raster load_raster(const std::string& path);

/// Save by extension: .psrk, .tif/.tiff (16-bit uncompressed), .png (8-bit
/// preview, 1 or 3 channels). Normalized rasters are rescaled to sensor
/// units for .psrk/.tif so that load(save(r)) round-trips.
void save_raster(const Raster& r, const std::string& path);

/// PSRK: little-endian magic "PSRK", u32 height/width/channels/bit_depth,
/// then height*width*channels u16 samples, row-major, channel-interleaved.
Raster read_psrk(const std::string& path);
void write_psrk(const Raster& r, const std::string& path);

Raster read_tiff(const std::string& path);
void write_tiff(const Raster& r, const std::string& path);

/// 8-bit PNG, grayscale (1 channel) or RGB (3 channels).
void write_png(const Raster& r, const std::string& path);

}  // namespace dats

#endif
