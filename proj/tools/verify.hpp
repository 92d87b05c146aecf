#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rotquad/io/quadrilateral_doc.hpp"
#include "rotquad/tolerance.hpp"

namespace rotquad::tools {

struct InvariantTally {
  std::string name;
  // Reported, but a failure does not fail the run.
  bool informational = false;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;  // "<case>: <detail>", capped
};

struct VerifySummary {
  std::vector<InvariantTally> invariants;
  int cases = 0;
  bool ok() const;
};

/// The invariant suite over one quadrilateral document. `label` names the
/// case in failure messages; lengths are compared against doc.scale, or 1.
void verify_doc(const io::QuadrilateralDoc& doc, const std::string& label,
                const Tolerances& tol, VerifySummary& out);

/// The suite over seeds first..first+count-1 of the random generator,
/// including the determinism checks.
VerifySummary verify_random(std::uint64_t first, int count, double scale,
                            const Tolerances& tol);

std::string emit_summary(const VerifySummary& s, const Tolerances& tol,
                         const std::string& mode);

}  // namespace rotquad::tools
