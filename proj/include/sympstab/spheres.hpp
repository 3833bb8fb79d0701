#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sympstab/lattice.hpp"

namespace sympstab {

enum class Certification { Candidate, CremonaCertified };

const char* to_string(Certification tier);

/// Inclusive per-coordinate bounds on a class.
struct CoefficientBox {
  std::vector<std::pair<Integer, Integer>> ranges;

  static CoefficientBox uniform(const SurfaceModel& surface, Integer bound);
  bool contains(const LatticeClass& a) const;
};

struct EnumerationBounds {
  /// Lowest square to consider; an explicit floor for searches that cannot certify their own.
  std::optional<int> square_min;
  /// Mandatory for CP^2 # 9(-CP^2), where each square has infinitely many candidates.
  std::optional<CoefficientBox> box;

  void validate(const SurfaceModel& surface) const;
};

/// Every class with A.A = square and K.A = -A.A - 2.
///
/// Complete for the product and for k <= 8: with m_i the E-multiplicities, sum m_i = 3d - s - 2
/// and sum m_i^2 = d^2 - s, and Cauchy-Schwarz (sum m_i)^2 <= k sum m_i^2 confines d to the
/// interval where (9-k) d^2 - 6(s+2) d + (s+2)^2 + k s <= 0. The same inequality prunes the
/// depth-first search over the m_i. For k = 9 the leading coefficient vanishes and the box is
/// the only bound. Returned in canonical order.
std::vector<LatticeClass> enumerate_candidates(const SurfaceModel& surface, int square,
                                               const EnumerationBounds& bounds = {});

/// Cremona tier: square -1 classes reduce to some E_i, square -2 classes are K-orthogonal roots.
bool cremona_certified(const SurfaceModel& surface, const LatticeClass& a);

struct SphereClassSet {
  SurfaceModel surface;
  std::vector<LatticeClass> classes;
  int square_floor = 1;
  Certification certification = Certification::Candidate;
  /// Members that failed (or are beyond the reach of) the Cremona checks, when that tier was requested.
  std::vector<LatticeClass> uncertified;

  bool empty() const { return classes.empty(); }
  std::size_t size() const { return classes.size(); }
  bool contains(const LatticeClass& a) const;
};

/// All candidates with square in [-floor, -1], ordered by square then canonically. Pools are
/// memoized per surface, floor and box, so repeated construction is cheap.
class CandidatePool {
 public:
  CandidatePool(const SurfaceModel& surface, int floor, const EnumerationBounds& bounds);

  const SurfaceModel& surface() const { return surface_; }
  int floor() const { return floor_; }
  const std::vector<LatticeClass>& classes() const { return *classes_; }

  /// Members with u.A > 0, canonical order.
  std::vector<LatticeClass> positive(const SymplecticClass& u) const;

 private:
  SurfaceModel surface_;
  int floor_;
  std::shared_ptr<const std::vector<LatticeClass>> classes_;
};

/// S_u^{>= -n} restricted to negative squares: candidates with -n <= A.A <= -1 and u.A > 0.
SphereClassSet spherical_set(const SurfaceModel& surface, const SymplecticClass& u, int n,
                             const EnumerationBounds& bounds = {},
                             Certification tier = Certification::Candidate);

/// Square floor beyond which no candidate can change sign on the segment [u, v].
///
/// If A.w = 0 for a forward w on the segment, A lies in the negative-definite w-perp, so
/// Cauchy-Schwarz against the projection of K gives (A.K)^2 <= |A.A| ((K.w)^2 / w.w - K.K).
/// With K.A = |A.A| - 2, (K.w)^2 <= max((K.u)^2, (K.v)^2) and w.w >= u.u v.v / (u.u + v.v),
/// this fails for all |A.A| past the larger root of a quadratic. Requires K.K > 0; for k = 9
/// bounds.square_min must be supplied instead. A larger explicit floor is honoured.
int unbounded_floor(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                    const EnumerationBounds& bounds = {});

struct SetDifference {
  SphereClassSet only_first;   ///< S_u \ S_v
  SphereClassSet only_second;  ///< S_v \ S_u
  int floor = 1;
  bool floor_certified = false;  ///< true when the floor came from unbounded_floor (n = infinity)

  bool empty() const { return only_first.empty() && only_second.empty(); }
};

/// (S_u \ S_v, S_v \ S_u) over squares >= -n; std::nullopt for n means the full sets.
SetDifference symmetric_difference(const SurfaceModel& surface, const SymplecticClass& u,
                                   const SymplecticClass& v, std::optional<int> n,
                                   const EnumerationBounds& bounds = {});

}  // namespace sympstab
