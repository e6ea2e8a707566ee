#pragma once

// CSV and manifest emission. Every table is long-format with a leading
// comment line carrying the config hash, and all numbers are printed with
// %.17g so a rerun of the same config in sequential mode reproduces every
// file byte for byte.

#include <cstdio>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/fields.hpp"
#include "stripwave/transform.hpp"

namespace stripwave::output {

namespace detail {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& hash,
          const char* header) {
    f_ = std::fopen(path.string().c_str(), "wb");
    if (!f_)
      throw std::runtime_error("cannot open output file: " + path.string());
    std::fprintf(f_, "# config=%s\n%s\n", hash.c_str(), header);
  }
  ~CsvFile() {
    if (f_) std::fclose(f_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void field(double v) {
    if (col_++) std::fputc(',', f_);
    std::fprintf(f_, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  }
  void field(const char* s) {
    if (col_++) std::fputc(',', f_);
    std::fputs(s, f_);
  }
  void complex_fields(cplx v) {
    field(v.real());
    field(v.imag());
    field(std::abs(v));
    field(std::arg(v));
  }
  void endrow() {
    std::fputc('\n', f_);
    col_ = 0;
  }

 private:
  std::FILE* f_ = nullptr;
  int col_ = 0;
};

}  // namespace detail

// One complex quantity on the (x, y) strip grid.
inline void write_map_csv(const std::filesystem::path& path,
                          const std::string& hash,
                          const transform::CurrentMap& map,
                          const std::vector<cplx>& quantity) {
  detail::CsvFile csv(path, hash, "x,y,re,im,abs,arg");
  for (size_t ix = 0; ix < map.x.size(); ++ix)
    for (size_t iy = 0; iy < map.y.size(); ++iy) {
      csv.field(map.x[ix]);
      csv.field(map.y[iy]);
      csv.complex_fields(quantity[ix * map.y.size() + iy]);
      csv.endrow();
    }
}

// One complex quantity along the x grid.
inline void write_line_csv(const std::filesystem::path& path,
                           const std::string& hash,
                           std::span<const double> x,
                           std::span<const cplx> values) {
  detail::CsvFile csv(path, hash, "x,re,im,abs,arg");
  for (size_t i = 0; i < x.size(); ++i) {
    csv.field(x[i]);
    csv.complex_fields(values[i]);
    csv.endrow();
  }
}

// One real quantity along the x grid (relative-difference tables).
inline void write_real_csv(const std::filesystem::path& path,
                           const std::string& hash, const char* name,
                           std::span<const double> x,
                           std::span<const double> values) {
  const std::string header = std::string("x,") + name;
  detail::CsvFile csv(path, hash, header.c_str());
  for (size_t i = 0; i < x.size(); ++i) {
    csv.field(x[i]);
    csv.field(values[i]);
    csv.endrow();
  }
}

// Field samples: one row per probe and vector component.
inline void write_fields_csv(const std::filesystem::path& path,
                             const std::string& hash,
                             std::span<const fields::FieldSample> samples,
                             bool electric) {
  detail::CsvFile csv(path, hash, "x,y,z,component,re,im,abs,arg");
  const char* names[] = {"x", "y", "z"};
  for (const auto& s : samples) {
    const Vec3c& v = electric ? s.E : s.H;
    const cplx comps[] = {v.x, v.y, v.z};
    for (int c = 0; c < 3; ++c) {
      csv.field(s.at.x);
      csv.field(s.at.y);
      csv.field(s.at.z);
      csv.field(names[c]);
      csv.complex_fields(comps[c]);
      csv.endrow();
    }
  }
}

inline void write_manifest(const std::filesystem::path& path,
                           const std::vector<std::string>& lines) {
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f)
    throw std::runtime_error("cannot open output file: " + path.string());
  for (const std::string& l : lines) std::fprintf(f, "%s\n", l.c_str());
  std::fclose(f);
}

}  // namespace stripwave::output
