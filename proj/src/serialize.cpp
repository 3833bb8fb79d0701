#include "sympstab/serialize.hpp"

namespace sympstab {

Json to_json(const SurfaceModel& surface) {
  if (surface.is_product()) return Json{{"kind", "product"}};
  return Json{{"kind", "blowup"}, {"k", surface.points()}};
}

SurfaceModel surface_from_json(const Json& j) {
  if (j.is_string()) return parse_surface(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("surface must be {\"kind\": ...}");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "product") return SurfaceModel::product();
  if (kind == "blowup") {
    if (!j.contains("k") || !j.at("k").is_number_integer()) throw ValidationError("blowup surface needs integer k");
    return SurfaceModel::blowup(j.at("k").get<int>());
  }
  throw ValidationError("unknown surface kind '" + kind + "'");
}

Json to_json(const Rational& value) { return format_rational(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    throw ValidationError("floating-point value " + j.dump() + " is not exact; write fractions as \"p/q\"");
  }
  throw ValidationError("expected a rational, got " + j.dump());
}

Json to_json(const LatticeClass& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) out.push_back(a(i));
  return out;
}

LatticeClass class_from_json(const SurfaceModel& surface, const Json& j) {
  if (!j.is_array()) throw ValidationError("class must be an array of integers");
  detail::check_rank(surface, static_cast<Eigen::Index>(j.size()));
  LatticeClass a(surface.rank());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw ValidationError("class coordinates must be integers");
    a(static_cast<Eigen::Index>(i)) = j[i].get<Integer>();
  }
  return a;
}

Json areas_to_json(const SurfaceModel& surface, const SymplecticClass& u) {
  const SymplecticClass a = areas(surface, u);
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) out.push_back(to_json(a(i)));
  return out;
}

SymplecticClass areas_from_json(const SurfaceModel& surface, const Json& j) {
  if (!j.is_array()) throw ValidationError("symplectic class must be an array of areas");
  detail::check_rank(surface, static_cast<Eigen::Index>(j.size()));
  SymplecticClass a(surface.rank());
  for (std::size_t i = 0; i < j.size(); ++i) a(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
  return from_areas(surface, a);
}

namespace {

Json class_list(const std::vector<LatticeClass>& classes) {
  Json out = Json::array();
  for (const auto& a : classes) out.push_back(to_json(a));
  return out;
}

Json range_json(const DegreeRange& range) {
  if (range.empty()) return Json::array();
  return Json::array({range.lo, range.hi});
}

}  // namespace

Json to_json(const SphereClassSet& set) {
  Json out{{"surface", to_json(set.surface)},
           {"floor", set.square_floor},
           {"classes", class_list(set.classes)},
           {"certification", to_string(set.certification)}};
  if (!set.uncertified.empty()) out["uncertified"] = class_list(set.uncertified);
  return out;
}

SphereClassSet sphere_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("surface") || !j.contains("classes") || !j.contains("floor")) {
    throw ValidationError("sphere-class set JSON needs surface, floor and classes");
  }
  SphereClassSet set;
  set.surface = surface_from_json(j.at("surface"));
  set.square_floor = j.at("floor").get<int>();
  if (set.square_floor < 1) throw ValidationError("floor must be >= 1");
  for (const auto& c : j.at("classes")) {
    LatticeClass a = class_from_json(set.surface, c);
    const Integer s = square(set.surface, a);
    if (s >= 0 || s < -set.square_floor || adjunction_defect(set.surface, a) != 0) {
      throw ValidationError("class " + notation(set.surface, a) + " is not a candidate within the floor");
    }
    set.classes.push_back(std::move(a));
  }
  canonicalize(set.classes);
  const auto tier = j.value("certification", std::string("candidate"));
  set.certification = tier == "cremona" ? Certification::CremonaCertified : Certification::Candidate;
  return set;
}

Json to_json(const SurfaceModel& surface, const SetDifference& diff) {
  Json out{{"surface", to_json(surface)},
           {"floor", diff.floor},
           {"only_u", to_json(diff.only_first)},
           {"only_v", to_json(diff.only_second)}};
  if (diff.floor_certified) out["complete"] = true;
  return out;
}

Json to_json(const StratificationIndex& index) {
  Json strata = Json::array();
  for (const auto& s : index.strata) {
    strata.push_back(Json{{"classes", class_list(s.classes)}, {"codim", s.codim}});
  }
  return Json{{"surface", to_json(index.surface)},
              {"level", index.level},
              {"strata", strata},
              {"residual_codim", index.residual_codim},
              {"certification", to_string(index.certification)},
              {"nonemptiness", "unverified"}};
}

Json to_json(const StabilityVerdict& verdict) {
  Json out{{"mode", to_string(verdict.mode)},
           {"range", range_json(verdict.range)},
           {"pi0_equal", verdict.pi0_equal},
           {"floor", verdict.floor},
           {"floor_certified", verdict.floor_certified},
           {"certification", to_string(verdict.certification)},
           {"justification", verdict.justification}};
  if (verdict.mode == StabilityMode::Level) out["level"] = verdict.level;
  return out;
}

Json to_json(const StabilityCertificate& cert) {
  const SurfaceModel& surface = cert.surface;
  Json walls = Json::array();
  for (const auto& w : cert.walls) {
    walls.push_back(Json{{"class", to_json(w.wall_class)},
                         {"notation", notation(surface, w.wall_class)},
                         {"square", square(surface, w.wall_class)},
                         {"t_star", to_json(w.t_star)},
                         {"direction", to_string(w.direction)}});
  }
  Json samples = Json::array();
  for (const auto& s : cert.samples) samples.push_back(areas_to_json(surface, s));
  Json chain = Json::array();
  for (const auto& step : cert.chain) {
    Json record{{"from", step.from},
                {"to", step.to},
                {"relation", to_string(step.relation)},
                {"gained", class_list(step.gained)},
                {"lost", class_list(step.lost)},
                {"range", range_json(step.range)},
                {"citations", step.citations}};
    if (step.step_level) record["level"] = *step.step_level;
    chain.push_back(std::move(record));
  }
  Json perturbation = nullptr;
  if (cert.perturbation) {
    perturbation = Json{{"u", areas_to_json(surface, cert.perturbation->perturbed)},
                        {"direction", areas_to_json(surface, cert.perturbation->direction)},
                        {"epsilon", to_json(cert.perturbation->epsilon)},
                        {"witness", "S_u = S_u~ down to square -" + std::to_string(cert.perturbation->witness_floor)}};
  }
  return Json{{"version", kSchemaVersion},
              {"surface", to_json(surface)},
              {"u", areas_to_json(surface, cert.u)},
              {"v", areas_to_json(surface, cert.v)},
              {"walls", walls},
              {"generic", cert.generic},
              {"perturbation", perturbation},
              {"samples", samples},
              {"chain", chain},
              {"verdict", to_json(cert.verdict)}};
}

Json to_json(const CapacityProfile& profile) {
  Json critical = Json::array();
  for (const auto& c : profile.critical) {
    Json names = Json::array();
    for (const auto& a : c.wall_classes) names.push_back(notation(profile.blowup, a));
    critical.push_back(Json{{"capacity", to_json(c.capacity)},
                            {"wall_classes", class_list(c.wall_classes)},
                            {"notation", names}});
  }
  Json intervals = Json::array();
  for (const auto& i : profile.intervals) {
    intervals.push_back(Json::array({to_json(i.lower), i.upper ? to_json(*i.upper) : Json("c_max")}));
  }
  Json weights = Json::array();
  for (const auto& w : profile.weights) weights.push_back(to_json(w));
  const auto exact = profile.c_max.exact();
  return Json{{"blowup", to_json(profile.blowup)},
              {"weights", weights},
              {"c_max", exact ? to_json(*exact) : Json(nullptr)},
              {"c_max_squared", to_json(profile.c_max.squared)},
              {"floor", profile.floor},
              {"critical", critical},
              {"intervals", intervals},
              {"certification", to_string(profile.certification)},
              {"notes", profile.notes}};
}

}  // namespace sympstab
