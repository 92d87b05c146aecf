#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotquad/construct/random_quadrilateral.hpp"
#include "rotquad/error.hpp"
#include "rotquad/io/csv.hpp"
#include "rotquad/io/locus_report.hpp"
#include "rotquad/io/quadrilateral_doc.hpp"
#include "verify.hpp"

namespace rotquad::tools {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) fail(ErrorKind::InvalidInput, "cannot write " + path);
}

void report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  nlohmann::ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  err << j.dump() << "\n";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return kExitInvalid;
    case ErrorKind::Degenerate: return kExitDegenerate;
    case ErrorKind::Internal: return kExitInternal;
  }
  return kExitInternal;
}

struct Common {
  std::optional<double> tol;
  std::string config;
  std::string output;

  void add(CLI::App* app) {
    app->add_option("--tol", tol, "global relative tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);
    app->add_option("--config", config, "JSON file with per-check tolerance overrides");
    app->add_option("-o,--output", output, "output file (default: standard output)");
  }

  Tolerances tolerances() const {
    if (!config.empty()) return io::parse_tolerances(read_input(config), tol);
    return tol ? Tolerances::with_base(*tol) : Tolerances{};
  }
};

struct ConstructArgs {
  Common common;
  std::string variant, input;
  bool random = false, real_transversals = false;
  std::uint64_t seed = 0;
  double scale = 1;
};

struct LocusArgs {
  Common common;
  std::string kind = "all", input, csv;
  int samples = 20;
};

struct VerifyArgs {
  Common common;
  std::string doc;
  std::optional<int> count;
  std::uint64_t seed = 0;
  double scale = 1;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const Tolerances tol = a.common.tolerances();
  io::QuadrilateralDoc doc;
  if (a.random) {
    if (!a.variant.empty() || !a.input.empty())
      fail(ErrorKind::InvalidInput, "--random excludes --variant and --input");
    if (!(a.scale > 0)) fail(ErrorKind::InvalidInput, "--scale must be positive");
    std::uint64_t used = a.seed;
    const auto q = a.real_transversals
                       ? construct::random_quadrilateral_with_real_transversals(a.seed, a.scale, &used)
                       : construct::random_rotation_quadrilateral(a.seed, a.scale);
    doc = io::doc_from_quadrilateral(q, used, a.scale);
  } else {
    if (a.input.empty()) fail(ErrorKind::InvalidInput, "--input is required unless --random");
    const std::string text = read_input(a.input);
    if (a.variant == "v1") {
      const auto in = io::parse_v1_input(text);
      doc = io::doc_from_quadrilateral(
          construct::construct_v1(in.alpha, in.index, in.axes, in.angles, tol.base));
    } else if (a.variant == "v2") {
      const auto in = io::parse_v2_input(text);
      doc = io::doc_from_quadrilateral(construct::construct_v2(
          in.alpha_i, in.alpha_i2, in.index, in.r_i, in.r_i2, tol.base));
    } else {
      fail(ErrorKind::InvalidInput, "--variant must be v1 or v2");
    }
  }
  write_output(a.common.output, io::emit_quadrilateral_doc(doc), out);
  return kExitOk;
}

int cmd_locus(const LocusArgs& a, std::ostream& out) {
  const Tolerances tol = a.common.tolerances();
  const auto kind = io::parse_locus_kind(a.kind);
  if (a.input.empty()) fail(ErrorKind::InvalidInput, "--input is required");
  const auto doc = io::parse_quadrilateral_doc(read_input(a.input));
  const auto q = io::quadrilateral_from_doc(doc, tol.base);
  const auto report = io::compute_locus_report(q, kind, tol, a.samples);
  if (!a.csv.empty()) {
    std::ostringstream s;
    io::write_csv(s, io::locus_samples(report, a.samples, doc.scale.value_or(1.0)));
    write_output(a.csv, s.str(), out);
  }
  write_output(a.common.output, io::emit_locus_report(report), out);
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Tolerances tol = a.common.tolerances();
  if (a.doc.empty() == !a.count)
    fail(ErrorKind::InvalidInput, "give exactly one of --doc and --random-count");
  VerifySummary s;
  std::string mode;
  if (!a.doc.empty()) {
    mode = "doc";
    verify_doc(io::parse_quadrilateral_doc(read_input(a.doc)), a.doc, tol, s);
  } else {
    mode = "random";
    s = verify_random(a.seed, *a.count, a.scale, tol);
  }
  write_output(a.common.output, emit_summary(s, tol, mode), out);
  if (s.ok()) return kExitOk;
  for (const auto& t : s.invariants) {
    if (t.informational || t.failed == 0) continue;
    nlohmann::ordered_json j;
    j["invariant_failed"] = {{"name", t.name}, {"failed", t.failed}, {"cases", t.failures}};
    err << j.dump() << "\n";
  }
  return kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation quadrilaterals: construction, loci and verification", "rotquad"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a quadrilateral document");
  construct->add_option("--variant", ca.variant, "input data variant: v1 or v2")
      ->check(CLI::IsMember({"v1", "v2"}));
  construct->add_option("-i,--input", ca.input, "variant input JSON ('-' for standard input)");
  construct->add_flag("--random", ca.random, "draw a random quadrilateral");
  construct->add_option("--seed", ca.seed, "random seed");
  construct->add_option("--scale", ca.scale, "length scale of the random draw");
  construct->add_flag("--real-transversals", ca.real_transversals,
                      "advance the seed until the relative axes have real transversals");
  ca.common.add(construct);

  LocusArgs la;
  auto* locus = app.add_subcommand("locus", "compute point, plane and line loci");
  locus->add_option("--kind", la.kind, "point, plane, line or all")
      ->check(CLI::IsMember({"point", "plane", "line", "all"}));
  locus->add_option("-i,--input", la.input, "quadrilateral document ('-' for standard input)");
  locus->add_option("--samples-csv", la.csv, "also write sampled locus points as CSV");
  locus->add_option("--samples", la.samples, "samples per locus line and circle")
      ->check(CLI::Range(4, 100000));
  la.common.add(locus);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--doc", va.doc, "quadrilateral document to check");
  verify->add_option("--random-count", va.count, "number of random seeds to check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "first random seed");
  verify->add_option("--scale", va.scale, "length scale of the random draws");
  va.common.add(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "invalid_input", e.what(), kExitInvalid);
    return kExitInvalid;
  }

  try {
    if (construct->parsed()) return cmd_construct(ca, out);
    if (locus->parsed()) return cmd_locus(la, out);
    return cmd_verify(va, out, err);
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    report_error(err, to_string(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), kExitInternal);
    return kExitInternal;
  }
}

}  // namespace rotquad::tools
