#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "srsm/types.hpp"

namespace srsm::eval {

/// Completeness, correctness and quality in percent; nullopt where the ratio is undefined.
struct Ratios {
  std::optional<double> cp;
  std::optional<double> cr;
  std::optional<double> q;
};

Ratios ratios_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Pixel counts of E and R: tp = #(E and R), fp = #(E \ R), fn = #(R \ E).
/// Per-tile counts merge by summation.
struct AreaCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  AreaCounts& operator+=(const AreaCounts& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const AreaCounts&) const = default;
  Ratios ratios() const { return ratios_from_counts(tp, fp, fn); }
};

struct ObjectMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  Ratios ratios;
};

struct MatchedPair {
  std::size_t extracted = 0;
  std::size_t truth = 0;
  double overlap = 0.0;  // fraction of the extracted object covered by this truth object
};

std::vector<BinaryMask> rasterize_all(const std::vector<Contour>& contours, std::size_t rows, std::size_t cols);

AreaCounts area_counts(const std::vector<BinaryMask>& extracted, const std::vector<BinaryMask>& truth,
                       std::size_t rows, std::size_t cols);
Ratios area_metrics(const std::vector<BinaryMask>& extracted, const std::vector<BinaryMask>& truth, std::size_t rows,
                    std::size_t cols);

/// Each extracted object is a TP when at least half of it lies on the union of truth objects;
/// each truth object is an FN when less than half of it lies on the union of extracted objects.
/// Objects smaller than `min_area` (m^2, via pixel count) are dropped from both sides first.
ObjectMetrics object_metrics(const std::vector<BinaryMask>& extracted, const std::vector<BinaryMask>& truth,
                             std::size_t rows, std::size_t cols, double pixel_area, double min_area);

/// Squared distances (m^2) from the extracted boundary, densified at 0.5 px, to the truth
/// polyline; samples farther than `cutoff` meters are dropped.
std::vector<double> boundary_sq_distances(const Contour& extracted, const Contour& truth, const GeoTransform& gt,
                                          double cutoff = 3.0);
/// nullopt when every sample is beyond the cutoff.
std::optional<double> boundary_rmse(const Contour& extracted, const Contour& truth, const GeoTransform& gt,
                                    double cutoff = 3.0);

struct EvalReport {
  AreaCounts area;
  Ratios per_area;
  ObjectMetrics per_object;
  ObjectMetrics per_object_50;
  std::optional<double> boundary_rmse;  // pooled over matched pairs, meters
  std::vector<MatchedPair> matched_pairs;
};

inline constexpr double kLargeObjectArea = 50.0;  // m^2

EvalReport evaluate(const std::vector<Contour>& extracted, const std::vector<Contour>& truth, const GeoTransform& gt);

/// Machine-readable report, one metric per row.
std::string report_csv(const EvalReport& r);
/// Text table with per-area and per-object blocks.
std::string report_table(const EvalReport& r);

}  // namespace srsm::eval
