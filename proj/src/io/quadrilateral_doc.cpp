#include "rotquad/io/quadrilateral_doc.hpp"

#include "json_util.hpp"

namespace rotquad::io {

using namespace detail;
using ojson = nlohmann::ordered_json;

namespace {

DisplacementEntry parse_entry(const json& v, const std::string& where) {
  if (!v.is_object()) bad(where + ": expected an object");
  const bool m = v.contains("rotation") || v.contains("translation");
  const bool d = v.contains("dq");
  if (m == d) bad(where + ": give either 'rotation' and 'translation' or 'dq'");
  DisplacementEntry e;
  if (m) {
    e.form = DisplacementEntry::Form::Matrix;
    const auto r = numbers<9>(field(v, "rotation", where), where + ".rotation");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) e.matrix.rotation(i, j) = r[3 * i + j];
    e.matrix.translation = vec3(field(v, "translation", where), where + ".translation");
  } else {
    e.form = DisplacementEntry::Form::DualQuat;
    const auto c = numbers<8>(v["dq"], where + ".dq");
    for (int i = 0; i < 8; ++i) e.dq(i) = c[i];
  }
  // Reject entries that do not describe a rigid displacement right away.
  try {
    (void)e.to_displacement();
  } catch (const Error& err) {
    bad(where + ": " + err.what());
  }
  return e;
}

ojson entry_json(const DisplacementEntry& e) {
  ojson o = ojson::object();
  if (e.form == DisplacementEntry::Form::Matrix) {
    ojson r = ojson::array();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.push_back(e.matrix.rotation(i, j));
    o["rotation"] = r;
    o["translation"] = ojson::array(
        {e.matrix.translation(0), e.matrix.translation(1), e.matrix.translation(2)});
  } else {
    ojson d = ojson::array();
    for (int i = 0; i < 8; ++i) d.push_back(e.dq(i));
    o["dq"] = d;
  }
  return o;
}

DisplacementEntry matrix_entry(const Displacement& d) {
  DisplacementEntry e;
  e.matrix = d;
  return e;
}

ojson line_ojson(const PlueckerLine& l) {
  ojson a = ojson::array();
  for (int i = 0; i < 6; ++i) a.push_back(l.coords()(i));
  return ojson{{"pluecker", a}};
}

int parse_index(const json& v, const std::string& where) {
  const int i = integer(v, where);
  if (i < 0 || i > 3) bad(where + ": position index must be 0..3");
  return i;
}

}  // namespace

Displacement DisplacementEntry::to_displacement() const {
  if (form == Form::Matrix) {
    matrix.validate();
    return matrix;
  }
  return kinematics::displacement_from_dq(kinematics::DualQuaternion::from_coeffs(dq));
}

bool DisplacementEntry::operator==(const DisplacementEntry& o) const {
  if (form != o.form) return false;
  if (form == Form::DualQuat) return dq == o.dq;
  return matrix.rotation == o.matrix.rotation && matrix.translation == o.matrix.translation;
}

bool QuadrilateralDoc::operator==(const QuadrilateralDoc& o) const {
  return version == o.version && displacements == o.displacements && seed == o.seed &&
         scale == o.scale;
}

QuadrilateralDoc parse_quadrilateral_doc(const std::string& text) {
  const json j = parse_json(text, "quadrilateral document");
  QuadrilateralDoc doc;
  const json& ver = field(j, "version", "document");
  if (!ver.is_string()) bad("document.version: expected a string");
  doc.version = ver.get<std::string>();
  if (doc.version != "1.0") bad("document.version: unsupported version '" + doc.version + "'");
  const json& ds = field(j, "displacements", "document");
  if (!ds.is_array() || ds.size() != 4) bad("document.displacements: expected 4 entries");
  for (int k = 0; k < 4; ++k)
    doc.displacements[k] = parse_entry(ds[k], "document.displacements[" + std::to_string(k) + "]");
  if (j.contains("metadata")) {
    const json& m = j["metadata"];
    if (!m.is_object()) bad("document.metadata: expected an object");
    if (m.contains("seed")) {
      if (!m["seed"].is_number_unsigned()) bad("document.metadata.seed: expected an unsigned integer");
      doc.seed = m["seed"].get<std::uint64_t>();
    }
    if (m.contains("scale")) {
      doc.scale = number(m["scale"], "document.metadata.scale");
      if (!(*doc.scale > 0)) bad("document.metadata.scale: must be positive");
    }
  }
  return doc;
}

std::string emit_quadrilateral_doc(const QuadrilateralDoc& doc) {
  ojson j;
  j["version"] = doc.version;
  ojson ds = ojson::array();
  for (const auto& e : doc.displacements) ds.push_back(entry_json(e));
  j["displacements"] = ds;
  if (doc.seed || doc.scale) {
    ojson m = ojson::object();
    if (doc.seed) m["seed"] = *doc.seed;
    if (doc.scale) m["scale"] = *doc.scale;
    j["metadata"] = m;
  }
  return j.dump(2) + "\n";
}

QuadrilateralDoc doc_from_quadrilateral(const RotationQuadrilateral& q,
                                        std::optional<std::uint64_t> seed,
                                        std::optional<double> scale) {
  QuadrilateralDoc doc;
  for (int k = 0; k < 4; ++k) doc.displacements[k] = matrix_entry(q.displacements[k]);
  doc.seed = seed;
  doc.scale = scale;
  return doc;
}

std::array<Displacement, 4> positions_of(const QuadrilateralDoc& doc) {
  std::array<Displacement, 4> p;
  for (int k = 0; k < 4; ++k) p[k] = doc.displacements[k].to_displacement();
  return p;
}

RotationQuadrilateral quadrilateral_from_doc(const QuadrilateralDoc& doc, double tol) {
  return construct::from_positions(positions_of(doc), tol);
}

V1Input parse_v1_input(const std::string& text) {
  const json j = parse_json(text, "v1 input");
  V1Input in;
  in.alpha = parse_entry(field(j, "alpha", "v1"), "v1.alpha").to_displacement();
  in.index = parse_index(field(j, "index", "v1"), "v1.index");
  const json& axes = field(j, "axes", "v1");
  if (!axes.is_array() || axes.size() != 3) bad("v1.axes: expected 3 lines");
  for (int k = 0; k < 3; ++k)
    in.axes[k] = parse_line(axes[k], "v1.axes[" + std::to_string(k) + "]");
  in.angles = numbers<2>(field(j, "angles", "v1"), "v1.angles");
  return in;
}

V2Input parse_v2_input(const std::string& text) {
  const json j = parse_json(text, "v2 input");
  V2Input in;
  in.alpha_i = parse_entry(field(j, "alpha_i", "v2"), "v2.alpha_i").to_displacement();
  in.alpha_i2 = parse_entry(field(j, "alpha_i2", "v2"), "v2.alpha_i2").to_displacement();
  in.index = parse_index(field(j, "index", "v2"), "v2.index");
  in.r_i = parse_line(field(j, "r_i", "v2"), "v2.r_i");
  in.r_i2 = parse_line(field(j, "r_i2", "v2"), "v2.r_i2");
  return in;
}

std::string emit_v1_input(const V1Input& in) {
  ojson j;
  j["alpha"] = entry_json(matrix_entry(in.alpha));
  j["index"] = in.index;
  j["axes"] = ojson::array({line_ojson(in.axes[0]), line_ojson(in.axes[1]), line_ojson(in.axes[2])});
  j["angles"] = ojson::array({in.angles[0], in.angles[1]});
  return j.dump(2) + "\n";
}

std::string emit_v2_input(const V2Input& in) {
  ojson j;
  j["alpha_i"] = entry_json(matrix_entry(in.alpha_i));
  j["alpha_i2"] = entry_json(matrix_entry(in.alpha_i2));
  j["index"] = in.index;
  j["r_i"] = line_ojson(in.r_i);
  j["r_i2"] = line_ojson(in.r_i2);
  return j.dump(2) + "\n";
}

V2Input v2_input_from_quadrilateral(const RotationQuadrilateral& q, int i) {
  if (i < 0 || i > 3) bad("position index must be 0..3");
  return {q.displacements[i], q.displacements[(i + 2) % 4], i, q.rel_axes_moving[i],
          q.rel_axes_moving[(i + 2) % 4]};
}

Tolerances parse_tolerances(const std::string& text, std::optional<double> base_override) {
  const json j = parse_json(text, "tolerance config");
  if (!j.is_object()) bad("tolerance config: expected an object");
  auto positive = [](const json& v, const std::string& key) {
    const double x = number(v, "tolerance config." + key);
    if (!(x > 0)) bad("tolerance config." + key + ": must be positive");
    return x;
  };
  Tolerances t;
  if (base_override) t = Tolerances::with_base(*base_override);
  else if (j.contains("tol")) t = Tolerances::with_base(positive(j["tol"], "tol"));
  for (const auto& [key, v] : j.items()) {
    if (key == "tol") continue;
    const double x = positive(v, key);
    if (key == "base") t.base = x;
    else if (key == "imag") t.imag = x;
    else if (key == "indeterminate") t.indeterminate = x;
    else if (key == "angle") t.angle = x;
    else if (key == "concyclic") t.concyclic = x;
    else if (key == "quadric") t.quadric = x;
    else if (key == "center") t.center = x;
    else bad("tolerance config: unknown field '" + key + "'");
  }
  return t;
}

}  // namespace rotquad::io
