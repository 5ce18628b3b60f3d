#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include "dats/errors.hpp"
#include "dats/io.hpp"

namespace dats {

namespace {

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

Raster read_psrk(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 20 || buf[0] != 'P' || buf[1] != 'S' || buf[2] != 'R' || buf[3] != 'K') {
    throw IoError(path + ": not a PSRK file");
  }
  const std::uint32_t h = get_u32le(&buf[4]);
  const std::uint32_t w = get_u32le(&buf[8]);
  const std::uint32_t c = get_u32le(&buf[12]);
  const std::uint32_t bits = get_u32le(&buf[16]);
  if (h < 1 || w < 1 || c < 1 || bits < 1 || bits > 16) {
    throw IoError(path + ": bad PSRK header");
  }
  const std::size_t n = static_cast<std::size_t>(h) * w * c;
  if (buf.size() != 20 + 2 * n) {
    throw IoError(path + ": PSRK payload size mismatch");
  }
  Raster r(static_cast<int>(h), static_cast<int>(w), static_cast<int>(c), static_cast<int>(bits));
  const std::uint8_t* p = buf.data() + 20;
  for (std::size_t i = 0; i < n; ++i, p += 2) {
    r.data[i] = static_cast<double>(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
  }
  check_raster(r);
  return r;
}

void write_psrk(const Raster& r, const std::string& path) {
  check_raster(r);
  if (r.bit_depth > 16) throw IoError("PSRK stores at most 16-bit samples");
  const double scale = r.normalized ? r.max_value() : 1.0;
  const double hi = r.max_value();

  std::vector<std::uint8_t> buf;
  buf.reserve(20 + 2 * r.size());
  buf.insert(buf.end(), {'P', 'S', 'R', 'K'});
  put_u32le(buf, static_cast<std::uint32_t>(r.height));
  put_u32le(buf, static_cast<std::uint32_t>(r.width));
  put_u32le(buf, static_cast<std::uint32_t>(r.channels));
  put_u32le(buf, static_cast<std::uint32_t>(r.bit_depth));
  for (double x : r.data) {
    double q = std::round(x * scale);
    if (q < 0.0) q = 0.0;
    if (q > hi) q = hi;
    const std::uint16_t s = static_cast<std::uint16_t>(q);
    buf.push_back(static_cast<std::uint8_t>(s & 0xff));
    buf.push_back(static_cast<std::uint8_t>(s >> 8));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("short write to " + path);
}

}  // namespace dats
