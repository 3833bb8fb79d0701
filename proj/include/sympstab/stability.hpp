#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympstab/spheres.hpp"

namespace sympstab {

enum class StabilityMode { Full, Level, None };

const char* to_string(StabilityMode mode);

/// Closed range [lo, hi] of homotopy degrees; empty when hi < lo.
struct DegreeRange {
  int lo = 1;
  int hi = 0;

  bool empty() const { return hi < lo; }
  friend bool operator==(const DegreeRange&, const DegreeRange&) = default;
};

/// Range [1, 2n-3] granted by equality of the sphere sets down to square -n.
DegreeRange level_range(int n);

/// Homotopy-group verdict for Symp(M, omega) vs Symp(M, omega'). Never computed, only
/// asserted from the stability theorems; `justification` carries the citations.
struct StabilityVerdict {
  StabilityMode mode = StabilityMode::None;
  int level = 0;  ///< n* in Level mode
  DegreeRange range;
  bool pi0_equal = false;  ///< pi_0 of the compactly supported group; Full mode only
  int floor = 1;           ///< square floor the sphere sets were compared down to
  bool floor_certified = false;
  Certification certification = Certification::Candidate;
  std::vector<std::string> justification;

  /// Mode, level and range; the fields the theorems speak about.
  bool same_claim(const StabilityVerdict& other) const {
    return mode == other.mode && level == other.level && range == other.range &&
           pi0_equal == other.pi0_equal;
  }
};

enum class Direction { Gained, Lost };

const char* to_string(Direction direction);

/// u_t.A = 0 exactly at t_star on u_t = (1-t) u + t v.
struct WallCrossing {
  LatticeClass wall_class;
  Rational t_star;
  Direction direction = Direction::Gained;  ///< whether A enters or leaves S as t increases
};

enum class Inclusion { Subset, Superset, Equal };

const char* to_string(Inclusion relation);

/// Relation between the sphere sets of two consecutive samples.
struct InclusionRecord {
  std::size_t from = 0;
  std::size_t to = 0;
  Inclusion relation = Inclusion::Equal;
  std::vector<LatticeClass> gained;  ///< in S_to only
  std::vector<LatticeClass> lost;    ///< in S_from only
  std::optional<int> step_level;     ///< n for this step; none for an Equal step
  DegreeRange range;
  std::vector<std::string> citations;
};

/// u~ = u + epsilon * direction with S_u~ = S_u and a generic segment [u~, v].
struct Perturbation {
  SymplecticClass perturbed;
  SymplecticClass direction;
  Rational epsilon;
  int witness_floor = 1;  ///< floor of the empty difference S_u vs S_u~
};

struct StabilityCertificate {
  SurfaceModel surface;
  SymplecticClass u, v;
  std::vector<WallCrossing> walls;  ///< sorted by t_star, on the (possibly perturbed) segment
  bool generic = true;              ///< genericity of the original segment [u, v]
  std::optional<Perturbation> perturbation;
  std::vector<SymplecticClass> samples;
  std::vector<InclusionRecord> chain;
  StabilityVerdict verdict;
};

/// Verdict implied by a computed difference of sphere sets.
StabilityVerdict verdict_from_difference(const SurfaceModel& surface, const SetDifference& diff);

/// Largest n with S_u^{>=-n} = S_v^{>=-n}, turned into a verdict.
StabilityVerdict max_stable_level(const SurfaceModel& surface, const SymplecticClass& u,
                                  const SymplecticClass& v, const EnumerationBounds& bounds = {});

/// One crossing per class of S_u (triangle) S_v. Throws ValidationError when an endpoint lies on
/// the wall of a differing class, or when a candidate vanishes at both endpoints.
std::vector<WallCrossing> segment_walls(const SurfaceModel& surface, const SymplecticClass& u,
                                        const SymplecticClass& v, const EnumerationBounds& bounds = {});

/// All t_star pairwise distinct.
bool is_generic(const std::vector<WallCrossing>& walls);

/// u itself when [u, v] is generic; otherwise the first u + 2^-j * (+-e_i) (i in basis order,
/// + before -, then increasing j) that keeps S_u and makes the segment generic.
SymplecticClass perturb(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                        const EnumerationBounds& bounds = {});

/// Full search record behind perturb(); throws when no direction works.
Perturbation find_perturbation(const SurfaceModel& surface, const SymplecticClass& u,
                               const SymplecticClass& v, const EnumerationBounds& bounds = {});

/// Wall-crossing certificate. Throws ValidationError when the segment crosses a root wall (the
/// endpoints lie in different Weyl chambers) and ConsistencyError if any inclusion check fails.
StabilityCertificate certify(const SurfaceModel& surface, const SymplecticClass& u,
                             const SymplecticClass& v, const EnumerationBounds& bounds = {});

/// (1 - t) u + t v.
SymplecticClass segment_point(const SymplecticClass& u, const SymplecticClass& v, const Rational& t);

}  // namespace sympstab
