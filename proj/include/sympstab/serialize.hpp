#pragma once

#include <json.hpp>

#include "sympstab/packing.hpp"
#include "sympstab/stability.hpp"
#include "sympstab/strata.hpp"

namespace sympstab {

/// Bumped whenever a JSON layout below changes.
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

Json to_json(const SurfaceModel& surface);
SurfaceModel surface_from_json(const Json& j);

/// Rationals are always written as strings "p/q" or "p"; integers are accepted on input.
Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

/// Integer coordinates in the standard basis.
Json to_json(const LatticeClass& a);
LatticeClass class_from_json(const SurfaceModel& surface, const Json& j);

/// Symplectic classes are written by their basis areas (u.B, u.F) or (nu; c_1..c_k).
Json areas_to_json(const SurfaceModel& surface, const SymplecticClass& u);
SymplecticClass areas_from_json(const SurfaceModel& surface, const Json& j);

/// {"surface", "floor", "classes", "certification"}; "uncertified" only when non-empty.
Json to_json(const SphereClassSet& set);
SphereClassSet sphere_set_from_json(const Json& j);

Json to_json(const SurfaceModel& surface, const SetDifference& diff);
Json to_json(const StratificationIndex& index);
Json to_json(const StabilityVerdict& verdict);
Json to_json(const StabilityCertificate& cert);
Json to_json(const CapacityProfile& profile);

}  // namespace sympstab
