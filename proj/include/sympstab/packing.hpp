#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympstab/spheres.hpp"

namespace sympstab {

/// Balls of capacities c_1..c_m in `base`. In ray mode the capacities are weights w_i and the
/// balls have capacities c * w_i for a varying c > 0.
struct BallConfig {
  SurfaceModel base = SurfaceModel::blowup(0);
  std::vector<Rational> capacities;
  bool ray_mode = false;
};

struct BlownUpClass {
  SurfaceModel surface;
  SymplecticClass u;
};

/// Surface obtained by blowing up one point per ball. The product uses
/// (S^2 x S^2) # (-CP^2) = CP^2 # 2(-CP^2) with B = H - E_1, F = H - E_2 and the first ball E = H - E_1 - E_2.
SurfaceModel blowup_surface(const SurfaceModel& base, std::size_t balls);

/// u_c with the new exceptional classes of area c_i. Throws ValidationError naming the
/// exceptional class that loses positive area when the capacities are too large.
BlownUpClass blowup_class(const SurfaceModel& surface, const SymplecticClass& u, const BallConfig& config);

/// c_max as the square root of a rational: sup{c : u_c.u_c > 0}.
struct CapacityBound {
  Rational squared;

  /// c_max itself when it is rational.
  std::optional<Rational> exact() const;
  bool contains(const Rational& c) const { return c > 0 && c * c < squared; }
};

struct CriticalValue {
  Rational capacity;
  std::vector<LatticeClass> wall_classes;  ///< blow-up classes with zero area at `capacity`
};

/// Open interval of constant wall chamber; `upper` empty means c_max.
struct CapacityInterval {
  Rational lower;
  std::optional<Rational> upper;
};

struct CapacityProfile {
  SurfaceModel blowup;
  std::vector<Rational> weights;
  CapacityBound c_max;
  int floor = 2;
  std::vector<CriticalValue> critical;
  std::vector<CapacityInterval> intervals;
  Certification certification = Certification::Candidate;
  std::vector<std::string> notes;

  std::vector<Rational> critical_values() const;
};

/// Square floor used when bounds.square_min is not given: the squares the Cremona tier certifies.
inline constexpr int kDefaultCapacityFloor = 2;

/// Capacities c in (0, c_max) where a negative-square candidate of the blow-up changes the sign
/// of its area along the ray c * (w_1..w_m). Bounds refer to the blown-up surface.
CapacityProfile critical_capacities(const SurfaceModel& surface, const SymplecticClass& u,
                                    const BallConfig& config, const EnumerationBounds& bounds = {});

}  // namespace sympstab
