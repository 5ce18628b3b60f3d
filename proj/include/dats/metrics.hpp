#ifndef DATS_METRICS_HPP
#define DATS_METRICS_HPP

#include <string>
#include <vector>

#include "dats/raster.hpp"

namespace dats {

struct MetricConfig {
  /// dk/dl, the PAN-to-MS ground sample ratio. 1/4 for Pleiades.
  double resolution_ratio = 0.25;
  int ssim_window = 11;
  double ssim_sigma = 1.5;
  double ssim_c1 = 0.01 * 0.01;  // (K1 * L)^2 on the [0,1] range
  double ssim_c2 = 0.03 * 0.03;
  int uiqi_window = 8;
  /// Window-averaged Q (Wang-Bovik convention) when false; one global
  /// window when true.
  bool uiqi_global = false;
  bool sam_degrees = false;

  void validate() const;
};

/// The five reference-based scores for one (fused, reference) pair.
/// Ideal values: ERGAS 0, SAM 0, UIQI 1, SCC 1, SSIM 1.
struct MetricReport {
  double ergas = 0.0;
  double sam = 0.0;
  double uiqi = 0.0;
  double scc = 0.0;
  double ssim = 0.0;
  /// Pixels with a zero-norm spectrum in either image, excluded from SAM.
  long sam_excluded_pixels = 0;

  static MetricReport ideal() { return {0.0, 0.0, 1.0, 1.0, 1.0, 0}; }
};

double ergas(const Raster& fused, const Raster& ref, const MetricConfig& cfg);
double sam(const Raster& fused, const Raster& ref, const MetricConfig& cfg, long* excluded = nullptr);
double uiqi(const Raster& fused, const Raster& ref, const MetricConfig& cfg);
double scc(const Raster& fused, const Raster& ref);
double ssim(const Raster& fused, const Raster& ref, const MetricConfig& cfg);

MetricReport evaluate(const Raster& fused, const Raster& ref, const MetricConfig& cfg = {});

/// Table and record output in the layout used throughout the toolkit:
/// Methods, ERGAS, SAM, UIQI, SCC, SSIM. format_report_table always appends
/// the ideal-value row. report_to_json emits one JSON object per report,
/// suitable for line-delimited files, and parse_report_json inverts it.
std::string format_report_table(const std::vector<std::pair<std::string, MetricReport>>& rows);
std::string report_to_json(const std::string& name, const MetricReport& r);
MetricReport parse_report_json(const std::string& line, std::string* name = nullptr);

}  // namespace dats

#endif
