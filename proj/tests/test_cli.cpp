#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "rotquad/construct/random_quadrilateral.hpp"
#include "rotquad/io/quadrilateral_doc.hpp"

using namespace rotquad;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = tools::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("rotquad_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

void check_error_json(const Run& r, const char* kind) {
  CHECK(r.out.empty());
  const json e = json::parse(r.err);
  CHECK(e["error"]["kind"] == kind);
  CHECK(e["error"]["exit_code"] == r.code);
}

}  // namespace

TEST_CASE("construct --random is deterministic and emits only the document") {
  const Run a = run({"construct", "--random", "--seed", "42"});
  const Run b = run({"construct", "--random", "--seed", "42"});
  CHECK(a.code == 0);
  CHECK(a.err.empty());
  CHECK(a.out == b.out);
  const auto doc = io::parse_quadrilateral_doc(a.out);
  CHECK(doc.seed == 42u);
  CHECK(doc.scale == 1.0);
  CHECK(run({"construct", "--random", "--seed", "43"}).out != a.out);
  CHECK(run({"construct", "--random", "--seed", "42", "--scale", "3"}).out != a.out);
}

TEST_CASE("construct v1 with a zero angle exits 2 with a JSON error") {
  TempDir t;
  const auto q = construct::random_rotation_quadrilateral(42);
  io::V1Input in{q.displacements[0], 0,
                 {q.rel_axes_moving[0], q.rel_axes_moving[1], q.rel_axes_moving[2]},
                 {0.0, q.rel_angles[1]}};
  const Run r = run({"construct", "--variant", "v1", "-i", t.file("v1.json", io::emit_v1_input(in))});
  CHECK(r.code == 2);
  check_error_json(r, "degenerate");
  CHECK(json::parse(r.err)["error"]["message"] == "degenerate: zero angle");

  in.angles[0] = q.rel_angles[0];
  const Run ok = run({"construct", "--variant", "v1", "-i", t.file("v1.json", io::emit_v1_input(in))});
  CHECK(ok.code == 0);
  const auto pos = io::positions_of(io::parse_quadrilateral_doc(ok.out));
  for (int k = 0; k < 4; ++k)
    CHECK((pos[k].translation - q.displacements[k].translation).norm() < 1e-9);
}

TEST_CASE("construct v2 from data extracted from a v1 document") {
  TempDir t;
  const Run v1 = run({"construct", "--random", "--seed", "42"});
  const auto doc = io::parse_quadrilateral_doc(v1.out);
  const auto q = io::quadrilateral_from_doc(doc);
  for (int i = 0; i < 4; ++i) {
    const std::string path =
        t.file("roundtrip.json", io::emit_v2_input(io::v2_input_from_quadrilateral(q, i)));
    const Run r = run({"construct", "--variant", "v2", "-i", path});
    REQUIRE(r.code == 0);
    const auto a = io::positions_of(io::parse_quadrilateral_doc(r.out));
    const auto b = io::positions_of(doc);
    for (int k = 0; k < 4; ++k) {
      CHECK((a[k].rotation - b[k].rotation).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((a[k].translation - b[k].translation).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("invalid input exits 1") {
  TempDir t;
  const std::string bad = t.file("bad.json", "{\"version\": \"1.0\", ");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"construct", "--variant", "v1", "-i", bad},
           {"construct", "--variant", "v2", "-i", bad},
           {"construct", "--variant", "v3", "-i", bad},
           {"construct"},
           {"construct", "--random", "--scale", "-1"},
           {"locus", "-i", bad},
           {"locus", "-i", t.path("missing.json")},
           {"locus", "--kind", "curve", "-i", bad},
           {"verify"},
           {"verify", "--doc", bad},
           {"frobnicate"},
           {}}) {
    const Run r = run(args);
    CAPTURE(r.err);
    CHECK(r.code == 1);
    check_error_json(r, "invalid_input");
  }
}

TEST_CASE("locus kinds on the seed 42 document") {
  TempDir t;
  const std::string doc = t.file("doc.json", run({"construct", "--random", "--seed", "42"}).out);

  const Run p = run({"locus", "--kind", "point", "-i", doc});
  REQUIRE(p.code == 0);
  const json pj = json::parse(p.out);
  CHECK(pj["point_locus"]["lines"].size() == 6);
  for (const auto& l : pj["point_locus"]["lines"]) CHECK(l["max_residual"].get<double>() <= 1e-8);

  const Run pl = run({"locus", "--kind", "plane", "-i", doc});
  REQUIRE(pl.code == 0);
  const json plj = json::parse(pl.out);
  CHECK(plj["plane_locus"]["valid"].size() == 6);
  CHECK(plj["plane_locus"]["total_multiplicity"] == 12);
  CHECK(plj["plane_locus"].contains("spurious"));

  const Run l = run({"locus", "--kind", "line", "-i", doc});
  REQUIRE(l.code == 0);
  const json lj = json::parse(l.out);
  CHECK(lj["transversals"]["lines"].size() == 2);
  CHECK(lj["line_locus"]["reports"].size() == 2);
  for (const auto& rep : lj["line_locus"]["reports"]) {
    CHECK(rep["skew_ok"] == true);
    CHECK(rep["revolution_found"] == true);
  }

  CHECK(run({"locus", "--kind", "all", "-i", doc}).out ==
        run({"locus", "--kind", "all", "-i", doc}).out);
}

TEST_CASE("locus --samples-csv writes the sampled points") {
  TempDir t;
  const std::string doc = t.file("doc.json", run({"construct", "--random", "--seed", "42"}).out);
  const std::string csv = t.path("samples.csv");
  const Run r = run({"locus", "--kind", "point", "-i", doc, "--samples-csv", csv,
                     "-o", t.path("report.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp(t.path("report.json")))["schema_version"] == "1.0");
  const std::string text = slurp(csv);
  CHECK(text.rfind("locus_id,t,x,y,z\r\n", 0) == 0);
  CHECK(text.find("\r\naxis_3,") != std::string::npos);
  CHECK(text.find("\r\ntransversal_1,") != std::string::npos);
  CHECK(text.find("\r\ncircle_1_9,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 6 * 20 + 2 * 10 * 20);
}

TEST_CASE("tolerances reach the report") {
  TempDir t;
  const std::string doc = t.file("doc.json", run({"construct", "--random", "--seed", "42"}).out);
  const std::string cfg = t.file("tol.json", R"({"angle": 1e-6})");
  const json j = json::parse(
      run({"locus", "--kind", "plane", "-i", doc, "--tol", "1e-8", "--config", cfg}).out);
  CHECK(j["tolerances"]["base"] == 1e-8);
  CHECK(j["tolerances"]["angle"] == 1e-6);
  CHECK(j["tolerances"]["imag"].get<double>() == doctest::Approx(1e-6));
  CHECK(run({"locus", "-i", doc, "--config", t.file("bad.json", R"({"nope": 1})")}).code == 1);
}

TEST_CASE("complex transversals: reality flag and exit 0") {
  TempDir t;
  std::uint64_t seed = 0;
  for (;; ++seed) {
    const auto q = construct::random_rotation_quadrilateral(seed);
    if (q.transversals && q.transversals->reality == linegeom::Reality::ComplexPair) break;
  }
  const std::string doc =
      t.file("doc.json", run({"construct", "--random", "--seed", std::to_string(seed)}).out);
  const Run r = run({"locus", "-i", doc});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["line_locus"]["reality"] == false);
}

TEST_CASE("verify over random seeds passes") {
  const Run r = run({"verify", "--random-count", "100"});
  CAPTURE(r.err);
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["cases"] == 100);
  for (const auto& inv : j["invariants"]) {
    CAPTURE(inv.dump());
    if (inv["informational"] == false) CHECK(inv["failed"] == 0);
  }
}

TEST_CASE("verify names the broken invariant of a corrupted document") {
  TempDir t;
  auto doc = io::parse_quadrilateral_doc(run({"construct", "--random", "--seed", "42"}).out);
  doc.displacements[2].matrix.translation(1) += 0.25;
  const Run r = run({"verify", "--doc", t.file("bad.json", io::emit_quadrilateral_doc(doc))});
  CHECK(r.code == 3);
  CHECK(r.err.find("pure_rotation") != std::string::npos);
  const json j = json::parse(r.out);
  CHECK(j["ok"] == false);
  bool named = false;
  for (const auto& inv : j["invariants"])
    if (inv["name"] == "pure_rotation" && inv["failed"].get<int>() > 0) named = true;
  CHECK(named);
}

TEST_CASE("verify on the golden document is stable") {
  const std::string golden = std::string(ROTQUAD_TEST_DATA) + "/golden.json";
  const Run a = run({"verify", "--doc", golden});
  const Run b = run({"verify", "--doc", golden});
  CAPTURE(a.err);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
