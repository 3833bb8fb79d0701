#include "sympstab/packing.hpp"

#include <algorithm>
#include <map>

namespace sympstab {

SurfaceModel blowup_surface(const SurfaceModel& base, std::size_t balls) {
  if (balls == 0) throw ValidationError("at least one ball is required");
  // (S^2 x S^2) # m(-CP^2) = CP^2 # (m+1)(-CP^2)
  const auto existing = static_cast<std::size_t>(base.is_product() ? 1 : base.points());
  const std::size_t total = existing + balls;
  if (total > 9) {
    throw ValidationError("blowing up " + std::to_string(balls) + " balls in " + base.spec_string() +
                          " exceeds nine points (Euler characteristic > 12)");
  }
  return SurfaceModel::blowup(static_cast<int>(total));
}

namespace {

// Areas of the blown-up class in the basis (H, E_1..E_N).
SymplecticClass blowup_areas(const SurfaceModel& base, const SymplecticClass& u,
                             const std::vector<Rational>& caps) {
  const SurfaceModel target = blowup_surface(base, caps.size());
  const SymplecticClass a = areas(base, u);
  SymplecticClass out = SymplecticClass::Zero(target.rank());
  if (base.is_product()) {
    const Rational& b = a(0);
    const Rational& f = a(1);
    out(0) = b + f - caps[0];
    out(1) = f - caps[0];
    out(2) = b - caps[0];
    for (std::size_t i = 1; i < caps.size(); ++i) out(static_cast<Eigen::Index>(i) + 2) = caps[i];
  } else {
    out.head(a.size()) = a;
    for (std::size_t i = 0; i < caps.size(); ++i) out(a.size() + static_cast<Eigen::Index>(i)) = caps[i];
  }
  return out;
}

void require_positive(const std::vector<Rational>& values, const std::string& what) {
  if (values.empty()) throw ValidationError("at least one ball is required");
  for (const auto& c : values) {
    if (c <= 0) throw ValidationError(what + " must be positive; got " + format_rational(c));
  }
}

}  // namespace

BlownUpClass blowup_class(const SurfaceModel& surface, const SymplecticClass& u, const BallConfig& config) {
  if (!(config.base == surface)) throw ValidationError("ball configuration is for a different surface");
  require_forward(surface, u, "u");
  require_positive(config.capacities, "ball capacities");
  const SurfaceModel target = blowup_surface(surface, config.capacities.size());
  const SymplecticClass uc = from_areas(target, blowup_areas(surface, u, config.capacities));
  const Rational volume = square(target, uc);
  if (volume <= 0) {
    throw ValidationError("capacities too large: the blown-up class has u_c.u_c = " + format_rational(volume) +
                          " <= 0");
  }
  try {
    reduce(target, uc);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("capacities too large: ") + e.what());
  }
  return BlownUpClass{target, uc};
}

std::optional<Rational> CapacityBound::exact() const {
  Rational root;
  if (exact_sqrt(squared, root)) return root;
  return std::nullopt;
}

std::vector<Rational> CapacityProfile::critical_values() const {
  std::vector<Rational> out;
  for (const auto& c : critical) out.push_back(c.capacity);
  return out;
}

CapacityProfile critical_capacities(const SurfaceModel& surface, const SymplecticClass& u,
                                    const BallConfig& config, const EnumerationBounds& bounds) {
  if (!(config.base == surface)) throw ValidationError("ball configuration is for a different surface");
  if (!config.ray_mode) throw ValidationError("critical capacities need a ray configuration (weights)");
  require_forward(surface, u, "u");
  for (const auto& w : config.capacities) {
    if (w <= 0) throw ValidationError("degenerate ray: weights must be positive; got " + format_rational(w));
  }
  require_positive(config.capacities, "weights");

  CapacityProfile profile;
  profile.blowup = blowup_surface(surface, config.capacities.size());
  bounds.validate(profile.blowup);  // enumeration happens on the blow-up
  profile.weights = config.capacities;
  const SurfaceModel& target = profile.blowup;

  // Along the ray the blown-up class is origin + c * slope.
  const std::vector<Rational> zeros(config.capacities.size(), Rational(0));
  const SymplecticClass origin_areas = blowup_areas(surface, u, zeros);
  const SymplecticClass slope_areas = blowup_areas(surface, u, config.capacities) - origin_areas;
  const SymplecticClass origin = from_areas(target, origin_areas);
  const SymplecticClass slope = from_areas(target, slope_areas);
  if (pairing(target, origin, slope) != 0) throw ConsistencyError("blow-up ray is not orthogonal to the base class");
  profile.c_max.squared = -square(target, origin) / square(target, slope);

  profile.floor = bounds.square_min ? -*bounds.square_min : kDefaultCapacityFloor;
  const CandidatePool pool(target, profile.floor, bounds);
  const AreaForm base_area(target, origin), rate(target, slope);

  std::map<Rational, std::vector<LatticeClass>> walls;
  for (const auto& a : pool.classes()) {
    const Rational beta = rate(a);
    if (beta == 0) continue;
    const Rational c0 = -base_area(a) / beta;
    if (profile.c_max.contains(c0)) walls[c0].push_back(a);
  }

  bool certified = profile.floor <= 2;
  Rational lower = 0;
  for (auto& [c0, classes] : walls) {
    canonicalize(classes);
    for (const auto& a : classes) certified = certified && cremona_certified(target, a);
    profile.intervals.push_back(CapacityInterval{lower, c0});
    lower = c0;
    profile.critical.push_back(CriticalValue{c0, std::move(classes)});
  }
  profile.intervals.push_back(CapacityInterval{lower, std::nullopt});
  profile.certification = certified ? Certification::CremonaCertified : Certification::Candidate;

  profile.notes.push_back("walls from negative-square sphere candidates with square >= -" +
                          std::to_string(profile.floor) + "; higher-genus negative curves are not enumerated");
  profile.notes.push_back("c_max is the volume bound u_c.u_c > 0; packing obstructions may end the range earlier");
  profile.notes.push_back("on each interval the space of ball embeddings has constant weak homotopy type");
  if (target.points() == 9) {
    profile.notes.push_back("the blow-up is CP2#9(-CP2): only candidates inside the coefficient box were checked");
  }
  return profile;
}

}  // namespace sympstab
