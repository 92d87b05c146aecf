#include "rotquad/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "rotquad/error.hpp"

namespace rotquad::io {

namespace {

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string line_id(const loci::LocusLine& l) {
  return (l.kind == loci::LocusLine::Kind::Axis ? "axis_" : "transversal_") +
         std::to_string(l.index);
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::Internal, "non-finite value in CSV output");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<SampleRow> locus_samples(const LocusReport& r, int samples, double extent) {
  if (samples < 2) fail(ErrorKind::InvalidInput, "at least 2 samples are needed");
  std::vector<SampleRow> rows;
  if (r.point) {
    for (const auto& l : r.point->lines) {
      const std::string id = line_id(l);
      for (int k = 0; k < samples; ++k) {
        const double t = extent * (-1 + 2.0 * k / (samples - 1));
        rows.push_back({id, t, l.line.point_at(t)});
      }
    }
  }
  for (const auto& h : r.hyperboloids) {
    if (!h.result) continue;
    for (std::size_t c = 0; c < h.result->circles.size(); ++c) {
      const auto& circle = h.result->circles[c].check.circle;
      if (!circle) continue;
      const std::string id =
          "circle_" + std::to_string(h.transversal) + "_" + std::to_string(c);
      for (int k = 0; k < samples; ++k) {
        const double t = 2 * std::numbers::pi * k / samples;
        rows.push_back({id, t, circle->point(t)});
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SampleRow>& rows) {
  out << "locus_id,t,x,y,z\r\n";
  for (const auto& row : rows)
    out << quoted(row.locus_id) << ',' << format_number(row.t) << ','
        << format_number(row.x(0)) << ',' << format_number(row.x(1)) << ','
        << format_number(row.x(2)) << "\r\n";
}

}  // namespace rotquad::io
