#pragma once

#include <array>
#include <cmath>
#include <string>

#include <json.hpp>

#include "rotquad/error.hpp"
#include "rotquad/linegeom/pluecker_line.hpp"
#include "rotquad/types.hpp"

namespace rotquad::io::detail {

using nlohmann::json;

[[noreturn]] inline void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

inline json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing field '" + key + "'");
  return *it;
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where + ": number is not finite");
  return x;
}

inline int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where + ": expected an integer");
  return v.get<int>();
}

template <int N>
std::array<double, N> numbers(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != N)
    bad(where + ": expected an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (int i = 0; i < N; ++i) out[i] = number(v[i], where);
  return out;
}

inline Vec3 vec3(const json& v, const std::string& where) {
  const auto a = numbers<3>(v, where);
  return Vec3(a[0], a[1], a[2]);
}

inline json to_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

template <class Derived>
json to_json_array(const Eigen::MatrixBase<Derived>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json line_json(const linegeom::PlueckerLine& l) { return to_json_array(l.coords()); }

// {"pluecker": [d, m]} or {"point": p, "direction": d}.
inline linegeom::PlueckerLine parse_line(const json& v, const std::string& where) {
  if (!v.is_object()) bad(where + ": expected a line object");
  const bool pl = v.contains("pluecker");
  const bool pd = v.contains("point") || v.contains("direction");
  if (pl == pd) bad(where + ": give either 'pluecker' or 'point' and 'direction'");
  try {
    if (pl) {
      const auto a = numbers<6>(v["pluecker"], where + ".pluecker");
      linegeom::Vec6 c;
      for (int i = 0; i < 6; ++i) c(i) = a[i];
      return linegeom::PlueckerLine::from_coords(c);
    }
    return linegeom::PlueckerLine::from_point_direction(
        vec3(field(v, "point", where), where + ".point"),
        vec3(field(v, "direction", where), where + ".direction"));
  } catch (const Error& e) {
    bad(where + ": " + e.what());
  }
}

}  // namespace rotquad::io::detail
