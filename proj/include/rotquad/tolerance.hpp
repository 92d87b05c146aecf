#pragma once

namespace rotquad {

// Relative tolerances shared by the command line front end. `base` is the
// single global knob exposed as --tol; the others default to fixed multiples
// of it and can be overridden one by one from a config file.
struct Tolerances {
  // Rank decisions, incidence and invariant checks.
  double base = 1e-9;
  // Imaginary parts up to this (relative) are treated as real.
  double imag = 1e-7;
  // Roots with imaginary parts between `imag` and this are indeterminate.
  double indeterminate = 1e-5;
  // Angular agreement of directions, radians.
  double angle = 1e-7;
  // Concyclicity residual accepted for points of a locus, times the spread.
  double concyclic = 1e-8;
  // Quadric membership of normalized homogeneous points.
  double quadric = 1e-8;
  // Distance of trajectory circle centers from the quadric axis, times the
  // scale.
  double center = 1e-7;

  static Tolerances with_base(double base) {
    const double s = base / 1e-9;
    Tolerances t;
    t.base = base;
    t.imag *= s;
    t.indeterminate *= s;
    t.angle *= s;
    t.concyclic *= s;
    t.quadric *= s;
    t.center *= s;
    return t;
  }
};

}  // namespace rotquad
