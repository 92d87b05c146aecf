#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rotquad/io/locus_report.hpp"

namespace rotquad::io {

struct SampleRow {
  std::string locus_id;
  double t = 0;
  Vec3 x = Vec3::Zero();
};

/// Sampled points of the point locus lines (moving frame) and of the
/// trajectory circles (fixed frame). Lines are sampled on [-extent, extent]
/// around their foot, circles by angle.
std::vector<SampleRow> locus_samples(const LocusReport& r, int samples = 20,
                                     double extent = 1.0);

/// Header "locus_id,t,x,y,z", CRLF line ends, fields quoted when needed and
/// numbers with 17 significant digits independent of the locale.
void write_csv(std::ostream& out, const std::vector<SampleRow>& rows);

/// 17 significant digits in the general format, locale-independent.
std::string format_number(double x);

}  // namespace rotquad::io
