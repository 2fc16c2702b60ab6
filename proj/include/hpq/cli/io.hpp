#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hpq/complex.hpp"

namespace hpq::io {

inline constexpr const char* kGeneratorVersion = "hpq 1.0.0";

/// Writes to `<path>.tmp` then renames over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Marks a run directory as failed; the message goes into the marker.
void mark_failed(const std::filesystem::path& dir, const std::string& message);
/// Removes a stale marker before a new run.
void clear_failed(const std::filesystem::path& dir);

/// Decimal string with as many significant digits as the value's precision
/// carries.
std::string decimal(const Real& x);
/// Shortest round-trip decimal for a double.
std::string decimal(double x);

/// RFC 4180 table: header row plus records, CRLF line ends.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(std::vector<std::string> fields);
  size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Series {
  std::string label;
  std::string color;
  std::vector<std::complex<double>> points;
};

/// SVG 1.1 scatter plot of the series in the complex plane with axes, ticks
/// and a legend.
std::string scatter_svg(const std::string& title, const std::vector<Series>& series);

}  // namespace hpq::io
