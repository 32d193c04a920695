#include "srsm/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "srsm/geometry.hpp"

namespace srsm::eval {

namespace {

std::optional<double> percent(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

BinaryMask union_of(const std::vector<BinaryMask>& masks, std::size_t rows, std::size_t cols) {
  BinaryMask out(rows, cols, 0);
  for (const auto& m : masks) {
    require(m.rows() == rows && m.cols() == cols, ErrorCode::DimMismatch, "object masks must share dims");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] |= m[i];
  }
  return out;
}

std::size_t overlap(const BinaryMask& a, const BinaryMask& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] && b[i]) ? 1 : 0;
  return n;
}

std::string fmt_pct(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::string fmt_m(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

}  // namespace

Ratios ratios_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  return {percent(tp, tp + fn), percent(tp, tp + fp), percent(tp, tp + fp + fn)};
}

std::vector<BinaryMask> rasterize_all(const std::vector<Contour>& contours, std::size_t rows, std::size_t cols) {
  std::vector<BinaryMask> out;
  out.reserve(contours.size());
  for (const auto& c : contours) out.push_back(geometry::rasterize(c, rows, cols));
  return out;
}

AreaCounts area_counts(const std::vector<BinaryMask>& extracted, const std::vector<BinaryMask>& truth,
                       std::size_t rows, std::size_t cols) {
  const BinaryMask e = union_of(extracted, rows, cols);
  const BinaryMask r = union_of(truth, rows, cols);
  AreaCounts out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] && r[i]) ++out.tp;
    else if (e[i]) ++out.fp;
    else if (r[i]) ++out.fn;
  }
  return out;
}

Ratios area_metrics(const std::vector<BinaryMask>& extracted, const std::vector<BinaryMask>& truth, std::size_t rows,
                    std::size_t cols) {
  return area_counts(extracted, truth, rows, cols).ratios();
}

ObjectMetrics object_metrics(const std::vector<BinaryMask>& extracted, const std::vector<BinaryMask>& truth,
                             std::size_t rows, std::size_t cols, double pixel_area, double min_area) {
  require(pixel_area > 0.0, ErrorCode::InvalidArgument, "pixel_area must be > 0");
  const auto keep = [&](const std::vector<BinaryMask>& objs) {
    std::vector<BinaryMask> kept;
    for (const auto& m : objs) {
      if (static_cast<double>(count_true(m)) * pixel_area >= min_area) kept.push_back(m);
    }
    return kept;
  };
  const auto ext = keep(extracted);
  const auto ref = keep(truth);
  const BinaryMask ext_union = union_of(ext, rows, cols);
  const BinaryMask ref_union = union_of(ref, rows, cols);

  ObjectMetrics out;
  for (const auto& m : ext) {
    // at least 50% of the object: 2 * overlap >= area, in exact integers
    if (2 * overlap(m, ref_union) >= count_true(m) && count_true(m) > 0) ++out.tp;
    else ++out.fp;
  }
  for (const auto& m : ref) {
    if (!(2 * overlap(m, ext_union) >= count_true(m) && count_true(m) > 0)) ++out.fn;
  }
  out.ratios = ratios_from_counts(out.tp, out.fp, out.fn);
  return out;
}

std::vector<double> boundary_sq_distances(const Contour& extracted, const Contour& truth, const GeoTransform& gt,
                                          double cutoff) {
  std::vector<double> out;
  for (const auto& p : geometry::densify(extracted, 0.5)) {
    const double d = geometry::distance_to_polyline(truth, p) * gt.pixel_size;
    if (d <= cutoff) out.push_back(d * d);
  }
  return out;
}

std::optional<double> boundary_rmse(const Contour& extracted, const Contour& truth, const GeoTransform& gt, double cutoff) {
  const auto sq = boundary_sq_distances(extracted, truth, gt, cutoff);
  if (sq.empty()) return std::nullopt;
  double acc = 0.0;
  for (const double v : sq) acc += v;
  return std::sqrt(acc / static_cast<double>(sq.size()));
}

EvalReport evaluate(const std::vector<Contour>& extracted, const std::vector<Contour>& truth, const GeoTransform& gt) {
  gt.validate();
  const auto ext = rasterize_all(extracted, gt.rows, gt.cols);
  const auto ref = rasterize_all(truth, gt.rows, gt.cols);

  EvalReport r;
  r.area = area_counts(ext, ref, gt.rows, gt.cols);
  r.per_area = r.area.ratios();
  r.per_object = object_metrics(ext, ref, gt.rows, gt.cols, gt.pixel_area(), 0.0);
  r.per_object_50 = object_metrics(ext, ref, gt.rows, gt.cols, gt.pixel_area(), kLargeObjectArea);

  double acc = 0.0;
  std::size_t samples = 0;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    std::size_t best = 0;
    std::size_t best_overlap = 0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      const std::size_t o = overlap(ext[i], ref[j]);
      if (o > best_overlap) best_overlap = o, best = j;
    }
    if (best_overlap == 0) continue;
    r.matched_pairs.push_back({i, best, static_cast<double>(best_overlap) / static_cast<double>(count_true(ext[i]))});
    for (const double v : boundary_sq_distances(extracted[i], truth[best], gt)) acc += v, ++samples;
  }
  if (samples > 0) r.boundary_rmse = std::sqrt(acc / static_cast<double>(samples));
  return r;
}

std::string report_csv(const EvalReport& r) {
  std::ostringstream os;
  os << "scope,tp,fp,fn,cp,cr,q\n";
  os << "area," << r.area.tp << ',' << r.area.fp << ',' << r.area.fn << ',' << fmt_pct(r.per_area.cp) << ','
     << fmt_pct(r.per_area.cr) << ',' << fmt_pct(r.per_area.q) << '\n';
  const auto object_row = [&](const char* name, const ObjectMetrics& m) {
    os << name << ',' << m.tp << ',' << m.fp << ',' << m.fn << ',' << fmt_pct(m.ratios.cp) << ',' << fmt_pct(m.ratios.cr)
       << ',' << fmt_pct(m.ratios.q) << '\n';
  };
  object_row("object", r.per_object);
  object_row("object_50m2", r.per_object_50);
  os << "boundary_rmse_m,,,,,," << fmt_m(r.boundary_rmse) << '\n';
  return os.str();
}

std::string report_table(const EvalReport& r) {
  std::ostringstream os;
  char line[160];
  os << "Per-area accuracy (%)\n";
  std::snprintf(line, sizeof line, "  %-10s %8s %8s %8s\n", "", "Cp", "Cr", "Q");
  os << line;
  std::snprintf(line, sizeof line, "  %-10s %8s %8s %8s\n", "area", fmt_pct(r.per_area.cp).c_str(),
                fmt_pct(r.per_area.cr).c_str(), fmt_pct(r.per_area.q).c_str());
  os << line << "\nPer-object accuracy\n";
  std::snprintf(line, sizeof line, "  %-10s %5s %5s %5s %8s %8s %8s\n", "objects", "TP", "FP", "FN", "Cp", "Cr", "Q");
  os << line;
  const auto object_row = [&](const char* name, const ObjectMetrics& m) {
    std::snprintf(line, sizeof line, "  %-10s %5zu %5zu %5zu %8s %8s %8s\n", name, m.tp, m.fp, m.fn,
                  fmt_pct(m.ratios.cp).c_str(), fmt_pct(m.ratios.cr).c_str(), fmt_pct(m.ratios.q).c_str());
    os << line;
  };
  object_row("all", r.per_object);
  object_row(">=50 m2", r.per_object_50);
  os << "\nBoundary RMSE (m, 3 m cutoff): " << fmt_m(r.boundary_rmse) << '\n';
  return os.str();
}

}  // namespace srsm::eval
