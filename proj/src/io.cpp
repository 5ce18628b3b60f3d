#include "dats/io.hpp"

#include <fstream>

#include "dats/errors.hpp"

namespace dats {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Raster load_raster(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.close();
  if (magic[0] == 'P' && magic[1] == 'S' && magic[2] == 'R' && magic[3] == 'K') {
    return read_psrk(path);
  }
  if ((magic[0] == 'I' && magic[1] == 'I') || (magic[0] == 'M' && magic[1] == 'M')) {
    return read_tiff(path);
  }
  throw IoError(path + ": unrecognized raster format (expected PSRK or TIFF)");
}

void save_raster(const Raster& r, const std::string& path) {
  if (ends_with(path, ".psrk")) {
    write_psrk(r, path);
  } else if (ends_with(path, ".tif") || ends_with(path, ".tiff")) {
    write_tiff(r, path);
  } else if (ends_with(path, ".png")) {
    write_png(r, path);
  } else {
    throw IoError("save_raster: unsupported extension on " + path + " (use .psrk, .tif or .png)");
  }
}

}  // namespace dats
