#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include <zlib.h>

#include "dats/errors.hpp"
#include "dats/io.hpp"

namespace dats {

namespace {

void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4], const std::vector<std::uint8_t>& payload) {
  put_u32be(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  const std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
  put_u32be(out, crc);
}

}  // namespace

void write_png(const Raster& r, const std::string& path) {
  if (r.channels != 1 && r.channels != 3) {
    throw ValueError("write_png: expected 1 or 3 channels, got " + std::to_string(r.channels));
  }
  check_raster(r);
  const double scale = 255.0 / (r.normalized ? 1.0 : r.max_value());

  // filter byte 0 per scanline, 8-bit samples
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(r.height) * (1 + static_cast<std::size_t>(r.width) * r.channels));
  for (int i = 0; i < r.height; ++i) {
    raw.push_back(0);
    for (int j = 0; j < r.width; ++j) {
      for (int c = 0; c < r.channels; ++c) {
        double q = std::round(r.at(i, j, c) * scale);
        if (q < 0.0) q = 0.0;
        if (q > 255.0) q = 255.0;
        raw.push_back(static_cast<std::uint8_t>(q));
      }
    }
  }

  uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> comp(comp_len);
  if (compress2(comp.data(), &comp_len, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK) {
    throw IoError("write_png: deflate failed");
  }
  comp.resize(comp_len);

  std::vector<std::uint8_t> ihdr;
  put_u32be(ihdr, static_cast<std::uint32_t>(r.width));
  put_u32be(ihdr, static_cast<std::uint32_t>(r.height));
  ihdr.push_back(8);                                   // bit depth
  ihdr.push_back(r.channels == 1 ? 0 : 2);             // gray / truecolor
  ihdr.push_back(0);                                   // deflate
  ihdr.push_back(0);                                   // adaptive filtering
  ihdr.push_back(0);                                   // no interlace

  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", comp);
  put_chunk(out, "IEND", {});

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("short write to " + path);
}

}  // namespace dats
