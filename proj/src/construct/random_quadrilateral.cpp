#include "rotquad/construct/random_quadrilateral.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rotquad/error.hpp"

namespace rotquad::construct {

namespace {

// Portable draws: the standard distributions are implementation-defined.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double sym() { return 2 * unit() - 1; }

  Vec3 in_ball() {
    for (;;) {
      const Vec3 p(sym(), sym(), sym());
      if (p.squaredNorm() <= 1) return p;
    }
  }

  Vec3 on_sphere() {
    for (;;) {
      const Vec3 p = in_ball();
      if (p.norm() > 0.1) return p.normalized();
    }
  }

  Mat3 rotation() {
    for (;;) {
      const Eigen::Vector4d q(sym(), sym(), sym(), sym());
      const double n = q.squaredNorm();
      if (n > 0.01 && n <= 1)
        return Eigen::Quaterniond(q(0), q(1), q(2), q(3)).normalized().toRotationMatrix();
    }
  }

 private:
  std::mt19937_64 rng_;
};

constexpr int kRetries = 100;
constexpr double kMinAngle = 0.05;

}  // namespace

RotationQuadrilateral random_rotation_quadrilateral(std::uint64_t seed, double scale) {
  if (!(scale > 0) || !std::isfinite(scale))
    fail(ErrorKind::InvalidInput, "scale must be positive");
  Draw draw(seed);
  constexpr double pi = std::numbers::pi;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const Displacement alpha0{draw.rotation(), scale * draw.in_ball()};
    std::array<PlueckerLine, 3> axes;
    for (auto& a : axes) {
      const Vec3 p = scale * draw.in_ball();
      a = PlueckerLine::from_point_direction(p, draw.on_sphere());
    }
    const std::array<double, 2> angles{0.2 + (pi - 0.4) * draw.unit(),
                                       0.2 + (pi - 0.4) * draw.unit()};
    try {
      RotationQuadrilateral q = construct_v1(alpha0, 0, axes, angles);
      bool ok = q.transversals.has_value();
      for (double w : q.rel_angles) ok = ok && std::abs(w) >= kMinAngle;
      if (ok) return q;
    } catch (const Error&) {
    }
  }
  fail(ErrorKind::Internal, "random quadrilateral: retry budget exhausted");
}

RotationQuadrilateral random_quadrilateral_with_real_transversals(std::uint64_t seed,
                                                                  double scale,
                                                                  std::uint64_t* used) {
  for (std::uint64_t s = seed; s < seed + 10000; ++s) {
    RotationQuadrilateral q = random_rotation_quadrilateral(s, scale);
    if (q.transversals->reality == linegeom::Reality::RealDistinct) {
      if (used) *used = s;
      return q;
    }
  }
  fail(ErrorKind::Internal, "no quadrilateral with real transversals found");
}

}  // namespace rotquad::construct
