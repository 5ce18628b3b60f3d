// Reader for the subset of TIFF that uncompressed multi-band GeoTIFFs use:
// classic (non-Big) TIFF, both byte orders, 8- or 16-bit unsigned samples,
// striped or tiled layout, chunky or planar configuration. Bands may come
// either as SamplesPerPixel > 1 in one IFD or as one single-band IFD per
// band. GeoTIFF metadata tags are ignored (passthrough is a non-goal).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <vector>

#include "dats/errors.hpp"
#include "dats/io.hpp"

namespace dats {

namespace {

struct TiffEntry {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::uint32_t value = 0;  // inline value or offset
  std::uint32_t raw_offset = 0;
};

struct TiffFile {
  std::vector<std::uint8_t> buf;
  bool big_endian = false;

  std::uint16_t u16(std::size_t off) const {
    require(off + 2);
    return big_endian ? static_cast<std::uint16_t>((buf[off] << 8) | buf[off + 1])
                      : static_cast<std::uint16_t>(buf[off] | (buf[off + 1] << 8));
  }
  std::uint32_t u32(std::size_t off) const {
    require(off + 4);
    if (big_endian) {
      return (static_cast<std::uint32_t>(buf[off]) << 24) | (static_cast<std::uint32_t>(buf[off + 1]) << 16) |
             (static_cast<std::uint32_t>(buf[off + 2]) << 8) | buf[off + 3];
    }
    return static_cast<std::uint32_t>(buf[off]) | (static_cast<std::uint32_t>(buf[off + 1]) << 8) |
           (static_cast<std::uint32_t>(buf[off + 2]) << 16) | (static_cast<std::uint32_t>(buf[off + 3]) << 24);
  }
  void require(std::size_t end) const {
    if (end > buf.size()) throw IoError("TIFF: truncated file");
  }
};

constexpr std::uint16_t kTypeByte = 1;
constexpr std::uint16_t kTypeShort = 3;
constexpr std::uint16_t kTypeLong = 4;

std::size_t type_size(std::uint16_t type) {
  switch (type) {
    case kTypeByte: return 1;
    case kTypeShort: return 2;
    case kTypeLong: return 4;
    default: return 0;  // unused types
  }
}

using Ifd = std::map<std::uint16_t, TiffEntry>;

Ifd read_ifd(const TiffFile& f, std::size_t off, std::uint32_t* next) {
  Ifd ifd;
  const std::uint16_t n = f.u16(off);
  off += 2;
  for (std::uint16_t i = 0; i < n; ++i, off += 12) {
    TiffEntry e;
    const std::uint16_t tag = f.u16(off);
    e.type = f.u16(off + 2);
    e.count = f.u32(off + 4);
    e.raw_offset = static_cast<std::uint32_t>(off + 8);
    e.value = f.u32(off + 8);
    ifd[tag] = e;
  }
  *next = f.u32(off);
  return ifd;
}

/// Integer array for SHORT/LONG (and BYTE) entries, handling inline storage.
std::vector<std::uint32_t> int_array(const TiffFile& f, const TiffEntry& e) {
  const std::size_t ts = type_size(e.type);
  if (ts == 0) throw IoError("TIFF: unsupported entry type " + std::to_string(e.type));
  const std::size_t total = ts * e.count;
  const std::size_t base = total <= 4 ? e.raw_offset : e.value;
  std::vector<std::uint32_t> out(e.count);
  for (std::uint32_t i = 0; i < e.count; ++i) {
    const std::size_t off = base + static_cast<std::size_t>(i) * ts;
    if (ts == 1) {
      f.require(off + 1);
      out[i] = f.buf[off];
    } else if (ts == 2) {
      out[i] = f.u16(off);
    } else {
      out[i] = f.u32(off);
    }
  }
  return out;
}

std::uint32_t int_scalar(const TiffFile& f, const Ifd& ifd, std::uint16_t tag, std::uint32_t fallback,
                         bool required = false) {
  auto it = ifd.find(tag);
  if (it == ifd.end()) {
    if (required) throw IoError("TIFF: missing required tag " + std::to_string(tag));
    return fallback;
  }
  return int_array(f, it->second).at(0);
}

struct Page {
  std::uint32_t width = 0, height = 0, spp = 1, bits = 16;
  Tensor samples;  // height x width x spp, raw values
};

/// Copy one decoded chunk (strip or tile) into the page. Planar chunks carry
/// a single band (`plane`), chunky chunks carry all bands interleaved.
void blit(Page& page, const TiffFile& f, std::size_t src, std::uint32_t row0, std::uint32_t col0,
          std::uint32_t rows, std::uint32_t cols, std::uint32_t row_stride_px, int plane) {
  const std::uint32_t vals_per_px = plane < 0 ? page.spp : 1;
  const std::size_t bytes_per_val = page.bits / 8;
  for (std::uint32_t r = 0; r < rows; ++r) {
    if (row0 + r >= page.height) break;  // padded edge chunk
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (col0 + c >= page.width) continue;
      for (std::uint32_t s = 0; s < vals_per_px; ++s) {
        const std::size_t off = src + ((static_cast<std::size_t>(r) * row_stride_px + c) * vals_per_px + s) * bytes_per_val;
        const double value = bytes_per_val == 1 ? static_cast<double>((f.require(off + 1), f.buf[off]))
                                                : static_cast<double>(f.u16(off));
        const int band = plane < 0 ? static_cast<int>(s) : plane;
        page.samples.at(static_cast<int>(row0 + r), static_cast<int>(col0 + c), band) = value;
      }
    }
  }
}

Page read_page(const TiffFile& f, const Ifd& ifd) {
  Page page;
  page.width = int_scalar(f, ifd, 256, 0, true);
  page.height = int_scalar(f, ifd, 257, 0, true);
  page.spp = int_scalar(f, ifd, 277, 1);

  auto bits_it = ifd.find(258);
  if (bits_it != ifd.end()) {
    const auto bits = int_array(f, bits_it->second);
    page.bits = bits.at(0);
    for (std::uint32_t b : bits) {
      if (b != page.bits) throw IoError("TIFF: mixed bits-per-sample not supported");
    }
  } else {
    page.bits = 1;
  }
  if (page.bits != 8 && page.bits != 16) {
    throw IoError("TIFF: only 8- or 16-bit samples supported, got " + std::to_string(page.bits));
  }
  if (int_scalar(f, ifd, 259, 1) != 1) throw IoError("TIFF: compressed files not supported");
  if (int_scalar(f, ifd, 339, 1) != 1) throw IoError("TIFF: only unsigned integer samples supported");
  const std::uint32_t planar = int_scalar(f, ifd, 284, 1);
  if (planar != 1 && planar != 2) throw IoError("TIFF: bad planar configuration");
  const bool separate_planes = planar == 2 && page.spp > 1;

  page.samples = Tensor(static_cast<int>(page.height), static_cast<int>(page.width), static_cast<int>(page.spp));

  const bool tiled = ifd.count(322) != 0;
  if (tiled) {
    const std::uint32_t tw = int_scalar(f, ifd, 322, 0, true);
    const std::uint32_t tl = int_scalar(f, ifd, 323, 0, true);
    if (tw == 0 || tl == 0) throw IoError("TIFF: bad tile size");
    auto offsets = int_array(f, ifd.at(324));
    const std::uint32_t across = (page.width + tw - 1) / tw;
    const std::uint32_t down = (page.height + tl - 1) / tl;
    const std::uint32_t per_plane = across * down;
    const std::uint32_t planes = separate_planes ? page.spp : 1;
    if (offsets.size() != static_cast<std::size_t>(per_plane) * planes) {
      throw IoError("TIFF: tile offset count mismatch");
    }
    for (std::uint32_t pl = 0; pl < planes; ++pl) {
      for (std::uint32_t t = 0; t < per_plane; ++t) {
        const std::uint32_t ty = t / across, tx = t % across;
        blit(page, f, offsets[pl * per_plane + t], ty * tl, tx * tw, tl, tw, tw,
             separate_planes ? static_cast<int>(pl) : -1);
      }
    }
  } else {
    auto it = ifd.find(273);
    if (it == ifd.end()) throw IoError("TIFF: no strip or tile offsets");
    auto offsets = int_array(f, it->second);
    const std::uint32_t rps = int_scalar(f, ifd, 278, page.height);
    if (rps == 0) throw IoError("TIFF: bad rows-per-strip");
    const std::uint32_t per_plane = (page.height + rps - 1) / rps;
    const std::uint32_t planes = separate_planes ? page.spp : 1;
    if (offsets.size() != static_cast<std::size_t>(per_plane) * planes) {
      throw IoError("TIFF: strip offset count mismatch");
    }
    for (std::uint32_t pl = 0; pl < planes; ++pl) {
      for (std::uint32_t s = 0; s < per_plane; ++s) {
        const std::uint32_t row0 = s * rps;
        const std::uint32_t rows = std::min(rps, page.height - row0);
        blit(page, f, offsets[pl * per_plane + s], row0, 0, rows, page.width, page.width,
             separate_planes ? static_cast<int>(pl) : -1);
      }
    }
  }
  return page;
}

}  // namespace

Raster read_tiff(const std::string& path) {
  TiffFile f;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    f.buf.assign((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  }
  if (f.buf.size() < 8) throw IoError(path + ": not a TIFF file");
  if (f.buf[0] == 'I' && f.buf[1] == 'I') {
    f.big_endian = false;
  } else if (f.buf[0] == 'M' && f.buf[1] == 'M') {
    f.big_endian = true;
  } else {
    throw IoError(path + ": not a TIFF file");
  }
  if (f.u16(2) != 42) throw IoError(path + ": not a classic TIFF file");

  std::vector<Page> pages;
  std::uint32_t next = f.u32(4);
  while (next != 0) {
    Ifd ifd = read_ifd(f, next, &next);
    pages.push_back(read_page(f, ifd));
    if (pages.size() > 8) throw IoError(path + ": too many TIFF directories");
  }
  if (pages.empty()) throw IoError(path + ": no TIFF directories");

  Raster r;
  if (pages.size() == 1) {
    const Page& p = pages[0];
    r = Raster(static_cast<int>(p.height), static_cast<int>(p.width), static_cast<int>(p.spp),
               static_cast<int>(p.bits));
    r.data = p.samples.v;
  } else {
    // one band per IFD; all bands must agree on shape and depth
    for (const Page& p : pages) {
      if (p.spp != 1) throw IoError(path + ": multi-sample pages in a multi-directory file");
      if (p.width != pages[0].width || p.height != pages[0].height || p.bits != pages[0].bits) {
        throw IoError(path + ": band dimension mismatch across directories");
      }
    }
    r = Raster(static_cast<int>(pages[0].height), static_cast<int>(pages[0].width),
               static_cast<int>(pages.size()), static_cast<int>(pages[0].bits));
    for (int i = 0; i < r.height; ++i) {
      for (int j = 0; j < r.width; ++j) {
        for (int c = 0; c < r.channels; ++c) r.at(i, j, c) = pages[c].samples.at(i, j, 0);
      }
    }
  }
  check_raster(r);
  return r;
}

void write_tiff(const Raster& r, const std::string& path) {
  check_raster(r);
  const double scale = r.normalized ? r.max_value() : 1.0;
  const double hi = r.max_value();
  const std::uint32_t w = static_cast<std::uint32_t>(r.width);
  const std::uint32_t h = static_cast<std::uint32_t>(r.height);
  const std::uint16_t spp = static_cast<std::uint16_t>(r.channels);

  std::vector<std::uint8_t> out;
  auto u16le = [&out](std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  auto u32le = [&out](std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
  };

  // layout: header, IFD (11 entries), optional bits array, pixel data
  const std::uint16_t n_entries = 11;
  const std::uint32_t ifd_off = 8;
  const std::uint32_t ifd_size = 2 + n_entries * 12 + 4;
  const bool bits_external = spp > 2;
  const std::uint32_t bits_off = ifd_off + ifd_size;
  const std::uint32_t data_off = bits_off + (bits_external ? 2u * spp : 0u);

  out.insert(out.end(), {'I', 'I'});
  u16le(42);
  u32le(ifd_off);

  u16le(n_entries);
  auto entry = [&](std::uint16_t tag, std::uint16_t type, std::uint32_t count, std::uint32_t value) {
    u16le(tag);
    u16le(type);
    u32le(count);
    u32le(value);
  };
  // SHORT inline values live in the low bytes of the value word (LE)
  entry(256, kTypeLong, 1, w);                                    // ImageWidth
  entry(257, kTypeLong, 1, h);                                    // ImageLength
  if (bits_external) {
    entry(258, kTypeShort, spp, bits_off);                        // BitsPerSample
  } else if (spp == 2) {
    entry(258, kTypeShort, 2, 16u | (16u << 16));
  } else {
    entry(258, kTypeShort, 1, 16);
  }
  entry(259, kTypeShort, 1, 1);                                   // Compression: none
  entry(262, kTypeShort, 1, 1);                                   // Photometric: BlackIsZero
  entry(273, kTypeLong, 1, data_off);                             // StripOffsets
  entry(277, kTypeShort, 1, spp);                                 // SamplesPerPixel
  entry(278, kTypeLong, 1, h);                                    // RowsPerStrip: one strip
  entry(279, kTypeLong, 1, 2u * w * h * spp);                     // StripByteCounts
  entry(284, kTypeShort, 1, 1);                                   // PlanarConfiguration: chunky
  entry(339, kTypeShort, 1, 1);                                   // SampleFormat: unsigned
  u32le(0);                                                       // no next IFD

  if (bits_external) {
    for (int c = 0; c < spp; ++c) u16le(16);
  }
  for (double x : r.data) {
    double q = std::round(x * scale);
    if (q < 0.0) q = 0.0;
    if (q > hi) q = hi;
    u16le(static_cast<std::uint16_t>(q));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("short write to " + path);
}

}  // namespace dats
