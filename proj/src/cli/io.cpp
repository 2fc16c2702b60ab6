#include "hpq/cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hpq/errors.hpp"

namespace hpq::io {

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void mark_failed(const fs::path& dir, const std::string& message) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / ".failed", std::ios::binary | std::ios::trunc);
  out << message << '\n';
}

void clear_failed(const fs::path& dir) {
  std::error_code ec;
  fs::remove(dir / ".failed", ec);
}

std::string decimal(const Real& x) { return x.to_string(); }

std::string decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) throw Error("csv row width does not match header");
  rows_.push_back(std::move(fields));
}

namespace {

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void csv_line(std::string& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string Csv::str() const {
  std::string out;
  csv_line(out, header_);
  for (const auto& r : rows_) csv_line(out, r);
  return out;
}

std::string scatter_svg(const std::string& title, const std::vector<Series>& series) {
  double x0 = -1.0, x1 = 1.0, y0 = -0.5, y1 = 0.5;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (first) {
        x0 = x1 = p.real();
        y0 = y1 = p.imag();
        first = false;
      }
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
  }
  const double min_span = 0.5;
  if (x1 - x0 < min_span) {
    const double c = 0.5 * (x0 + x1);
    x0 = c - min_span / 2;
    x1 = c + min_span / 2;
  }
  if (y1 - y0 < min_span) {
    const double c = 0.5 * (y0 + y1);
    y0 = c - min_span / 2;
    y1 = c + min_span / 2;
  }
  const double px = 0.08 * (x1 - x0), py = 0.08 * (y1 - y0);
  x0 -= px;
  x1 += px;
  y0 -= py;
  y1 += py;

  const double width = 720, height = 540, left = 70, right = 170, top = 50, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<!-- generator: " << kGeneratorVersion << " -->\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
  o << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  o << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\" fill=\"black\">\n";
  const double xs = nice_step(x1 - x0), ys = nice_step(y1 - y0);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1; t += xs) {
    o << "<line x1=\"" << fmt(sx(t)) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(sx(t)) << "\" y2=\""
      << fmt(top + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(top + ph + 18) << "\" text-anchor=\"middle\">"
      << tick_label(t) << "</text>\n";
  }
  for (double t = std::ceil(y0 / ys) * ys; t <= y1; t += ys) {
    o << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(sy(t)) << "\" x2=\"" << fmt(left) << "\" y2=\""
      << fmt(sy(t)) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(sy(t) + 4) << "\" text-anchor=\"end\">" << tick_label(t)
      << "</text>\n";
  }
  o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(height - 15) << "\" text-anchor=\"middle\">Re z</text>\n";
  o << "<text x=\"20\" y=\"" << fmt(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << fmt(top + ph / 2) << ")\">Im z</text>\n";
  o << "</g>\n";

  if (y0 < 0 && y1 > 0) {
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(sy(0)) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
      << fmt(sy(0)) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  }

  for (const auto& s : series) {
    o << "<g fill=\"" << s.color << "\" stroke=\"none\">\n";
    for (const auto& p : s.points) {
      o << "<circle cx=\"" << fmt(sx(p.real())) << "\" cy=\"" << fmt(sy(p.imag())) << "\" r=\"2.5\"/>\n";
    }
    o << "</g>\n";
  }

  o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = top + 15;
  for (const auto& s : series) {
    o << "<circle cx=\"" << fmt(left + pw + 20) << "\" cy=\"" << fmt(ly - 4) << "\" r=\"4\" fill=\"" << s.color
      << "\"/>\n";
    o << "<text x=\"" << fmt(left + pw + 30) << "\" y=\"" << fmt(ly) << "\">" << xml_escape(s.label) << " ("
      << s.points.size() << ")</text>\n";
    ly += 20;
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace hpq::io
