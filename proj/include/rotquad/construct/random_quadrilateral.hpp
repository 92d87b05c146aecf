#pragma once

#include <cstdint>

#include "rotquad/construct/rotation_quadrilateral.hpp"

namespace rotquad::construct {

/// Deterministic random quadrilateral: construct_v1 from a random alpha_0,
/// axes through points of a ball of radius `scale`, angles in (0.2, pi-0.2).
/// Near-degenerate draws are regenerated, at most 100 times.
RotationQuadrilateral random_rotation_quadrilateral(std::uint64_t seed, double scale = 1.0);

/// Same, retrying seeds seed, seed+1, ... until the axes have real distinct
/// transversals. Returns the seed used through `used`.
RotationQuadrilateral random_quadrilateral_with_real_transversals(
    std::uint64_t seed, double scale = 1.0, std::uint64_t* used = nullptr);

}  // namespace rotquad::construct
