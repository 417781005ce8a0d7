#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prolsm/linalg.hpp"

namespace prolsm {

enum class ProfileKind { Constant, IncDec, DecInc, Oscillatory, TwoComponent, Piecewise };

// a0 + a1*s + a2*cos(k*s) on [lo, hi).
struct Piece {
  double lo = 0.0, hi = 0.0;
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, k = 0.0;

  double value(double s) const;
  bool operator==(const Piece &) const = default;
};

// Contrast q supported in (-1, 1). Every kind carries an equivalent list of
// non-overlapping pieces (sorted by lo), used for transforms of composite
// profiles and for background shifts; built-in kinds evaluate through their
// closed forms on the open interval (-r, r).
struct ContrastProfile {
  ProfileKind kind = ProfileKind::Piecewise;
  double r = 0.0;   // support radius (built-ins), outer radius (TwoComponent)
  int m = 0;        // Oscillatory only
  double gap = 0.0; // TwoComponent only
  std::vector<Piece> pieces;

  static ContrastProfile constant(double r);
  static ContrastProfile inc_dec(double r);
  static ContrastProfile dec_inc(double r);
  static ContrastProfile oscillatory(double r, int m);
  // Two blocks of value 2r on (-r, -gap/2) and (gap/2, r).
  static ContrastProfile two_component(double r, double gap);
  static ContrastProfile piecewise(std::vector<Piece> pieces);
  // q_inf on (-radius, radius).
  static ContrastProfile background(double q_inf, double radius);

  // q + q_inf * 1_(-radius, radius), as a Piecewise profile.
  ContrastProfile plus_background(double q_inf, double radius) const;

  double support_lo() const;
  double support_hi() const;
};

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string &name);

double contrast_eval(const ContrastProfile &profile, double s);

// F(w) = int exp(i w y) q(y) dy, in closed form.
cplx fourier_transform(const ContrastProfile &profile, double w);

// (mean of 1/q over [lo, hi])^-1, or nullopt unless q > 0 throughout.
std::optional<double> harmonic_average(const ContrastProfile &profile, double lo, double hi);

} // namespace prolsm
