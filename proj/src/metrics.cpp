#include "dats/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "dats/errors.hpp"

namespace dats {

namespace {

void check_pair(const Raster& fused, const Raster& ref) {
  if (!fused.same_shape(ref)) {
    throw ValueError("metrics: fused and reference dimensions differ (" + std::to_string(fused.height) + "x" +
                     std::to_string(fused.width) + "x" + std::to_string(fused.channels) + " vs " +
                     std::to_string(ref.height) + "x" + std::to_string(ref.width) + "x" +
                     std::to_string(ref.channels) + ")");
  }
}

/// Wang-Bovik Q over one window. Follows the original reference code for the
/// degenerate cases: pure luminance term when both windows are constant,
/// 1 when additionally both means vanish.
double q_window(const Raster& a, const Raster& b, int i0, int j0, int wh, int ww, int c) {
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < wh; ++i) {
    for (int j = 0; j < ww; ++j) {
      sa += a.at(i0 + i, j0 + j, c);
      sb += b.at(i0 + i, j0 + j, c);
    }
  }
  const double N = static_cast<double>(wh) * ww;
  const double ma = sa / N, mb = sb / N;
  double va = 0.0, vb = 0.0, cov = 0.0;
  for (int i = 0; i < wh; ++i) {
    for (int j = 0; j < ww; ++j) {
      const double da = a.at(i0 + i, j0 + j, c) - ma;
      const double db = b.at(i0 + i, j0 + j, c) - mb;
      va += da * da;
      vb += db * db;
      cov += da * db;
    }
  }
  const double mean_term = ma * ma + mb * mb;
  const double var_sum = va + vb;
  if (var_sum == 0.0) {
    return mean_term == 0.0 ? 1.0 : 2.0 * ma * mb / mean_term;
  }
  return 4.0 * cov * ma * mb / (var_sum * mean_term);
}

}  // namespace

void MetricConfig::validate() const {
  if (resolution_ratio <= 0.0) throw ValueError("metrics: resolution ratio must be > 0");
  if (ssim_window < 3 || ssim_window % 2 == 0) throw ValueError("metrics: SSIM window must be odd and >= 3");
  if (uiqi_window < 3) throw ValueError("metrics: UIQI window must be >= 3");
  if (!(ssim_sigma > 0.0) || !(ssim_c1 > 0.0) || !(ssim_c2 > 0.0)) {
    throw ValueError("metrics: SSIM constants must be > 0");
  }
}

double ergas(const Raster& fused, const Raster& ref, const MetricConfig& cfg) {
  check_pair(fused, ref);
  cfg.validate();
  const double n_px = static_cast<double>(ref.height) * ref.width;
  double acc = 0.0;
  for (int c = 0; c < ref.channels; ++c) {
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < ref.height; ++i) {
      for (int j = 0; j < ref.width; ++j) {
        sum += ref.at(i, j, c);
        const double d = fused.at(i, j, c) - ref.at(i, j, c);
        sq += d * d;
      }
    }
    const double mean = sum / n_px;
    if (mean == 0.0) {
      throw NumericError("ergas: reference band " + std::to_string(c) + " has zero mean");
    }
    const double rmse = std::sqrt(sq / n_px);
    acc += (rmse / mean) * (rmse / mean);
  }
  return 100.0 * cfg.resolution_ratio * std::sqrt(acc / ref.channels);
}

double sam(const Raster& fused, const Raster& ref, const MetricConfig& cfg, long* excluded) {
  check_pair(fused, ref);
  if (ref.channels < 2) throw ValueError("sam: needs at least 2 channels");
  double acc = 0.0;
  long valid = 0, skipped = 0;
  for (int i = 0; i < ref.height; ++i) {
    for (int j = 0; j < ref.width; ++j) {
      double dot = 0.0, na = 0.0, nb = 0.0;
      for (int c = 0; c < ref.channels; ++c) {
        const double a = ref.at(i, j, c);
        const double b = fused.at(i, j, c);
        dot += a * b;
        na += a * a;
        nb += b * b;
      }
      if (na == 0.0 || nb == 0.0) {
        ++skipped;
        continue;
      }
      const double cosv = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
      acc += std::acos(cosv);
      ++valid;
    }
  }
  if (excluded) *excluded = skipped;
  if (valid == 0) throw NumericError("sam: every pixel has a zero-norm spectrum");
  const double mean = acc / valid;
  return cfg.sam_degrees ? mean * (180.0 / 3.14159265358979323846) : mean;
}

double uiqi(const Raster& fused, const Raster& ref, const MetricConfig& cfg) {
  check_pair(fused, ref);
  cfg.validate();
  double acc = 0.0;
  long count = 0;
  if (cfg.uiqi_global) {
    // one window spanning the whole image, per band
    for (int c = 0; c < ref.channels; ++c) {
      acc += q_window(fused, ref, 0, 0, ref.height, ref.width, c);
      ++count;
    }
  } else {
    const int n = cfg.uiqi_window;
    if (ref.height < n || ref.width < n) {
      throw ValueError("uiqi: image smaller than the " + std::to_string(n) + "-pixel window");
    }
    for (int c = 0; c < ref.channels; ++c) {
      for (int i = 0; i + n <= ref.height; ++i) {
        for (int j = 0; j + n <= ref.width; ++j) {
          acc += q_window(fused, ref, i, j, n, n, c);
          ++count;
        }
      }
    }
  }
  return acc / count;
}

double scc(const Raster& fused, const Raster& ref) {
  check_pair(fused, ref);
  // 8-connected Laplacian, replicate borders
  static const double kKernel[3][3] = {{-1, -1, -1}, {-1, 8, -1}, {-1, -1, -1}};
  const std::size_t n_px = static_cast<std::size_t>(ref.height) * ref.width;
  std::vector<double> fa(n_px), fb(n_px);

  double acc = 0.0;
  for (int c = 0; c < ref.channels; ++c) {
    for (int i = 0; i < ref.height; ++i) {
      for (int j = 0; j < ref.width; ++j) {
        double va = 0.0, vb = 0.0;
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            const int ii = std::clamp(i + di, 0, ref.height - 1);
            const int jj = std::clamp(j + dj, 0, ref.width - 1);
            va += kKernel[di + 1][dj + 1] * fused.at(ii, jj, c);
            vb += kKernel[di + 1][dj + 1] * ref.at(ii, jj, c);
          }
        }
        fa[static_cast<std::size_t>(i) * ref.width + j] = va;
        fb[static_cast<std::size_t>(i) * ref.width + j] = vb;
      }
    }
    double sa = 0.0, sb = 0.0;
    for (std::size_t p = 0; p < n_px; ++p) {
      sa += fa[p];
      sb += fb[p];
    }
    const double ma = sa / n_px, mb = sb / n_px;
    double va = 0.0, vb = 0.0, cov = 0.0;
    for (std::size_t p = 0; p < n_px; ++p) {
      const double da = fa[p] - ma;
      const double db = fb[p] - mb;
      va += da * da;
      vb += db * db;
      cov += da * db;
    }
    if (va == 0.0 || vb == 0.0) {
      throw NumericError("scc: Laplacian-filtered band " + std::to_string(c) + " has zero variance");
    }
    acc += cov / std::sqrt(va * vb);
  }
  return acc / ref.channels;
}

double ssim(const Raster& fused, const Raster& ref, const MetricConfig& cfg) {
  check_pair(fused, ref);
  cfg.validate();
  const int n = cfg.ssim_window;
  if (ref.height < n || ref.width < n) {
    throw ValueError("ssim: image smaller than the " + std::to_string(n) + "-pixel window");
  }

  // normalized Gaussian window
  std::vector<double> wgt(static_cast<std::size_t>(n) * n);
  const int r = n / 2;
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dy = i - r, dx = j - r;
      wgt[i * n + j] = std::exp(-(dy * dy + dx * dx) / (2.0 * cfg.ssim_sigma * cfg.ssim_sigma));
      wsum += wgt[i * n + j];
    }
  }
  for (double& x : wgt) x /= wsum;

  double acc = 0.0;
  long count = 0;
  for (int c = 0; c < ref.channels; ++c) {
    for (int i0 = 0; i0 + n <= ref.height; ++i0) {
      for (int j0 = 0; j0 + n <= ref.width; ++j0) {
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            ma += wgt[i * n + j] * fused.at(i0 + i, j0 + j, c);
            mb += wgt[i * n + j] * ref.at(i0 + i, j0 + j, c);
          }
        }
        double va = 0.0, vb = 0.0, cov = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            const double da = fused.at(i0 + i, j0 + j, c) - ma;
            const double db = ref.at(i0 + i, j0 + j, c) - mb;
            va += wgt[i * n + j] * da * da;
            vb += wgt[i * n + j] * db * db;
            cov += wgt[i * n + j] * da * db;
          }
        }
        acc += (2.0 * ma * mb + cfg.ssim_c1) * (2.0 * cov + cfg.ssim_c2) /
               ((ma * ma + mb * mb + cfg.ssim_c1) * (va + vb + cfg.ssim_c2));
        ++count;
      }
    }
  }
  return acc / count;
}

MetricReport evaluate(const Raster& fused, const Raster& ref, const MetricConfig& cfg) {
  check_pair(fused, ref);
  MetricReport rep;
  rep.ergas = ergas(fused, ref, cfg);
  rep.sam = sam(fused, ref, cfg, &rep.sam_excluded_pixels);
  rep.uiqi = uiqi(fused, ref, cfg);
  rep.scc = scc(fused, ref);
  rep.ssim = ssim(fused, ref, cfg);
  return rep;
}

std::string format_report_table(const std::vector<std::pair<std::string, MetricReport>>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %10s %10s %10s %10s %10s\n", "Methods", "ERGAS", "SAM", "UIQI",
                "SCC", "SSIM");
  out << line;
  auto put = [&](const std::string& name, const MetricReport& r) {
    std::snprintf(line, sizeof(line), "%-16s %10.6f %10.6f %10.6f %10.6f %10.6f\n", name.c_str(), r.ergas,
                  r.sam, r.uiqi, r.scc, r.ssim);
    out << line;
  };
  for (const auto& [name, rep] : rows) put(name, rep);
  put("Reference", MetricReport::ideal());
  return out.str();
}

std::string report_to_json(const std::string& name, const MetricReport& r) {
  nlohmann::json j = {{"method", name}, {"ergas", r.ergas},   {"sam", r.sam},
                      {"uiqi", r.uiqi}, {"scc", r.scc},       {"ssim", r.ssim},
                      {"sam_excluded_pixels", r.sam_excluded_pixels}};
  return j.dump();
}

MetricReport parse_report_json(const std::string& line, std::string* name) {
  nlohmann::json j = nlohmann::json::parse(line);
  MetricReport r;
  r.ergas = j.at("ergas").get<double>();
  r.sam = j.at("sam").get<double>();
  r.uiqi = j.at("uiqi").get<double>();
  r.scc = j.at("scc").get<double>();
  r.ssim = j.at("ssim").get<double>();
  r.sam_excluded_pixels = j.value("sam_excluded_pixels", 0L);
  if (name) *name = j.value("method", "");
  return r;
}

}  // namespace dats
