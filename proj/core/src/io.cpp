#include "srsm/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace srsm::io {

namespace {

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  if (!fs::exists(path)) fail(ErrorCode::MissingInput, "missing input file: " + path.string());
  std::ifstream in(path, mode);
  if (!in) fail(ErrorCode::IoError, "cannot open for reading: " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open for writing: " + path.string());
  return out;
}

void put_u32le(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                              static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  os.write(b.data(), 4);
}

std::uint32_t get_u32le(const unsigned char* b) {
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::pair<double, double> value_range(const Grid<double>& img) {
  if (img.empty()) return {0.0, 0.0};
  const auto [lo, hi] = std::minmax_element(img.values().begin(), img.values().end());
  return {*lo, *hi};
}

void write_pgm(const fs::path& path, const Grid<double>& img, unsigned maxval, double lo, double hi) {
  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << img.cols() << ' ' << img.rows() << '\n' << maxval << '\n';
  const double span = hi - lo;
  for (const double v : img.values()) {
    const double t = span > 0.0 ? std::clamp((v - lo) / span, 0.0, 1.0) : 0.0;
    const auto q = static_cast<unsigned>(std::lround(t * maxval));
    if (maxval > 255) {
      out.put(static_cast<char>((q >> 8) & 0xFF));  // PGM stores 16-bit samples big-endian
      out.put(static_cast<char>(q & 0xFF));
    } else {
      out.put(static_cast<char>(q));
    }
  }
}

std::string next_pgm_token(std::istream& in) {
  std::string tok;
  while (in) {
    const int ch = in.peek();
    if (ch == '#') {
      std::string skip;
      std::getline(in, skip);
    } else if (std::isspace(ch)) {
      in.get();
    } else {
      break;
    }
  }
  in >> tok;
  return tok;
}

}  // namespace

PointCloud3D read_xyz(const fs::path& path) {
  auto in = open_in(path);
  std::vector<Point3> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Point3 p;
    if (!(ls >> p.x >> p.y >> p.z)) {
      fail(ErrorCode::FormatError, path.string() + ":" + std::to_string(lineno) + ": expected 'x y z'");
    }
    pts.push_back(p);
  }
  return PointCloud3D(std::move(pts));
}

void write_xyz(const fs::path& path, const PointCloud3D& cloud) {
  auto out = open_out(path);
  out << "# x y z\n" << std::setprecision(17);
  for (const auto& p : cloud.points()) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
}

void write_zimg(const fs::path& path, const Grid<double>& img) {
  require(img.rows() <= UINT32_MAX && img.cols() <= UINT32_MAX, ErrorCode::InvalidArgument, "raster too large for ZIMG");
  auto out = open_out(path, std::ios::binary);
  out.write("ZIMG", 4);
  put_u32le(out, static_cast<std::uint32_t>(img.rows()));
  put_u32le(out, static_cast<std::uint32_t>(img.cols()));
  put_u32le(out, 0);
  for (const double v : img.values()) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    put_u32le(out, bits);
  }
}

Grid<double> read_zimg(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::array<unsigned char, 16> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in || std::memcmp(header.data(), "ZIMG", 4) != 0) fail(ErrorCode::FormatError, "not a ZIMG raster: " + path.string());
  const std::size_t rows = get_u32le(header.data() + 4);
  const std::size_t cols = get_u32le(header.data() + 8);
  std::vector<unsigned char> raw(rows * cols * 4);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(ErrorCode::FormatError, "truncated ZIMG raster: " + path.string());
  std::vector<double> values(rows * cols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(std::bit_cast<float>(get_u32le(raw.data() + 4 * i)));
  }
  return Grid<double>(rows, cols, std::move(values));
}

fs::path sidecar_path(const fs::path& raster) {
  fs::path p = raster;
  p += ".geo";
  return p;
}

void write_geotransform(const fs::path& path, const GeoTransform& gt) {
  auto out = open_out(path);
  out << std::setprecision(17) << "origin_x = " << gt.origin_x << "\norigin_y = " << gt.origin_y
      << "\npixel_size = " << gt.pixel_size << "\nrows = " << gt.rows << "\ncols = " << gt.cols << '\n';
}

GeoTransform read_geotransform(const fs::path& path) {
  auto in = open_in(path);
  GeoTransform gt;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char ch) { return std::isspace(ch); }), key.end());
    std::istringstream vs(line.substr(eq + 1));
    bool ok = true;
    if (key == "origin_x") ok = static_cast<bool>(vs >> gt.origin_x);
    else if (key == "origin_y") ok = static_cast<bool>(vs >> gt.origin_y);
    else if (key == "pixel_size") ok = static_cast<bool>(vs >> gt.pixel_size);
    else if (key == "rows") ok = static_cast<bool>(vs >> gt.rows);
    else if (key == "cols") ok = static_cast<bool>(vs >> gt.cols);
    if (!ok) fail(ErrorCode::FormatError, "bad geotransform value for '" + key + "' in " + path.string());
  }
  gt.validate();
  return gt;
}

void write_zimg_geo(const fs::path& path, const Grid<double>& img, const GeoTransform& gt) {
  write_zimg(path, img);
  write_geotransform(sidecar_path(path), gt);
}

void write_pgm16(const fs::path& path, const Grid<double>& img) {
  const auto [lo, hi] = value_range(img);
  write_pgm(path, img, 65535, lo, hi);
}

void write_pgm8(const fs::path& path, const Grid<double>& img) {
  const auto [lo, hi] = value_range(img);
  write_pgm(path, img, 255, lo, hi);
}

void write_band_pgm(const fs::path& path, const Grid<double>& band) { write_pgm(path, band, 65535, 0.0, 1.0); }

Grid<double> read_pgm(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  if (next_pgm_token(in) != "P5") fail(ErrorCode::FormatError, "not a binary PGM: " + path.string());
  std::size_t cols = 0, rows = 0;
  unsigned maxval = 0;
  try {
    cols = std::stoul(next_pgm_token(in));
    rows = std::stoul(next_pgm_token(in));
    maxval = static_cast<unsigned>(std::stoul(next_pgm_token(in)));
  } catch (const std::exception&) {
    fail(ErrorCode::FormatError, "bad PGM header: " + path.string());
  }
  if (maxval == 0 || maxval > 65535) fail(ErrorCode::FormatError, "bad PGM maxval: " + path.string());
  in.get();  // single whitespace before the raster
  const std::size_t bytes = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(rows * cols * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(ErrorCode::FormatError, "truncated PGM: " + path.string());
  std::vector<double> values(rows * cols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const unsigned q = bytes == 2 ? (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1] : raw[i];
    values[i] = static_cast<double>(q) / static_cast<double>(maxval);
  }
  return Grid<double>(rows, cols, std::move(values));
}

void write_trace_csv(const fs::path& path, const sr::SrTrace& trace) {
  auto out = open_out(path);
  out << "iter,diff,cost\n" << std::setprecision(10);
  for (std::size_t k = 0; k < trace.iterations(); ++k) out << k << ',' << trace.diff[k] << ',' << trace.cost[k] << '\n';
}

void write_history_csv(const fs::path& path, const std::vector<snake::SnakeState>& history) {
  auto out = open_out(path);
  out << "iter,max_move,area\n" << std::setprecision(10);
  for (const auto& s : history) out << s.iteration << ',' << s.last_move << ',' << s.contour.area() << '\n';
}

std::string read_text(const fs::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace srsm::io
