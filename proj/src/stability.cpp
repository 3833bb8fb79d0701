#include "sympstab/stability.hpp"

#include <algorithm>
#include <limits>

namespace sympstab {

const char* to_string(StabilityMode mode) {
  switch (mode) {
    case StabilityMode::Full: return "full";
    case StabilityMode::Level: return "level";
    case StabilityMode::None: return "none";
  }
  return "none";
}

const char* to_string(Direction direction) {
  return direction == Direction::Gained ? "gained" : "lost";
}

const char* to_string(Inclusion relation) {
  switch (relation) {
    case Inclusion::Subset: return "subset";
    case Inclusion::Superset: return "superset";
    case Inclusion::Equal: return "equal";
  }
  return "equal";
}

DegreeRange level_range(int n) { return DegreeRange{1, 2 * n - 3}; }

SymplecticClass segment_point(const SymplecticClass& u, const SymplecticClass& v, const Rational& t) {
  return (Rational(1) - t) * u + t * v;
}

namespace {

const char* kInclusionLemma = "inclusion lemma: S_u subset of S_u' implies A_u subset of A_u'";
const char* kBasicLemma = "basic lemma: A_u subset of A_u' and A_u^{2n} = A_u'^{2n} give pi_i(G_u) = pi_i(G_u') for 1 <= i <= 2n-3";

int max_square(const SurfaceModel& surface, const SetDifference& diff) {
  int best = std::numeric_limits<int>::min();
  for (const auto* set : {&diff.only_first, &diff.only_second}) {
    for (const auto& a : set->classes) best = std::max(best, static_cast<int>(square(surface, a)));
  }
  return best;
}

StabilityVerdict level_verdict(int n) {
  StabilityVerdict verdict;
  verdict.level = n;
  verdict.range = level_range(n);
  verdict.mode = n >= 1 ? StabilityMode::Level : StabilityMode::None;
  if (n < 1) verdict.range = DegreeRange{1, 0};
  return verdict;
}

}  // namespace

StabilityVerdict verdict_from_difference(const SurfaceModel& surface, const SetDifference& diff) {
  StabilityVerdict verdict;
  const std::string floor_note = "negative squares compared down to -" + std::to_string(diff.floor) +
                                 (diff.floor_certified ? " (no deeper class can cross the segment)"
                                                       : " (explicit floor; deeper squares unchecked)");
  if (diff.empty()) {
    if (diff.floor_certified) {
      verdict.mode = StabilityMode::Full;
      verdict.pi0_equal = true;
      verdict.range = DegreeRange{1, 0};
      verdict.justification = {
          "S_u = S_u' on all negative squares; " + floor_note,
          "nonnegative-square sphere classes have the same sign on every forward class",
          "pi_i(Symp(M,omega)) = pi_i(Symp(M,omega')) for all i >= 1",
          "pi_0(G_omega) = pi_0(G_omega')",
      };
    } else {
      verdict = level_verdict(diff.floor);
      verdict.justification = {"S_u^{>=-n} = S_u'^{>=-n} for n = " + std::to_string(diff.floor) + "; " + floor_note};
    }
  } else {
    const int s = max_square(surface, diff);
    verdict = level_verdict(-s - 1);
    verdict.justification.push_back("first difference of the sphere sets at square " + std::to_string(s) + "; " +
                                    floor_note);
  }
  if (verdict.mode == StabilityMode::Level) {
    const std::string n = std::to_string(verdict.level);
    verdict.justification.push_back("S_u^{>=-" + n + "} = S_u'^{>=-" + n + "}");
    if (verdict.range.empty()) {
      verdict.justification.push_back("range 1 <= i <= 2n-3 is empty for n = " + n + "; no claim is made");
    } else {
      verdict.justification.push_back("pi_i(Symp(M,omega)) = pi_i(Symp(M,omega')) for 1 <= i <= " +
                                      std::to_string(verdict.range.hi));
    }
  } else if (verdict.mode == StabilityMode::None) {
    verdict.justification.push_back("exceptional (square -1) classes differ; no stability range");
  }

  verdict.floor = diff.floor;
  verdict.floor_certified = diff.floor_certified;
  bool certified = !diff.empty();
  for (const auto* set : {&diff.only_first, &diff.only_second}) {
    for (const auto& a : set->classes) certified = certified && cremona_certified(surface, a);
  }
  verdict.certification = certified ? Certification::CremonaCertified : Certification::Candidate;
  verdict.justification.push_back(std::string("sphere classes at tier: ") + to_string(verdict.certification));
  return verdict;
}

StabilityVerdict max_stable_level(const SurfaceModel& surface, const SymplecticClass& u,
                                  const SymplecticClass& v, const EnumerationBounds& bounds) {
  return verdict_from_difference(surface, symmetric_difference(surface, u, v, std::nullopt, bounds));
}

namespace {

std::vector<WallCrossing> walls_on_pool(const CandidatePool& pool, const SymplecticClass& u,
                                        const SymplecticClass& v) {
  const SurfaceModel& surface = pool.surface();
  const AreaForm area_u(surface, u), area_v(surface, v);
  std::vector<WallCrossing> walls;
  if (u == v) return walls;
  for (const auto& a : pool.classes()) {
    const int su = area_u.sign(a), sv = area_v.sign(a);
    if (su == 0 && sv == 0) {
      throw ValidationError("degenerate segment: both endpoints lie on the wall of " + notation(surface, a));
    }
    if ((su > 0) == (sv > 0)) continue;
    const Rational au = area_u(a), av = area_v(a);
    if (av == 0) {
      throw ValidationError("degenerate segment: v lies on the wall of " + notation(surface, a) + " (t* = 1)");
    }
    if (au == 0) {
      throw ValidationError("degenerate segment: u lies on the wall of " + notation(surface, a) + " (t* = 0)");
    }
    walls.push_back(WallCrossing{a, au / (au - av), au > 0 ? Direction::Lost : Direction::Gained});
  }
  std::sort(walls.begin(), walls.end(), [](const WallCrossing& x, const WallCrossing& y) {
    if (x.t_star != y.t_star) return x.t_star < y.t_star;
    return CanonicalOrder{}(x.wall_class, y.wall_class);
  });
  return walls;
}

}  // namespace

std::vector<WallCrossing> segment_walls(const SurfaceModel& surface, const SymplecticClass& u,
                                        const SymplecticClass& v, const EnumerationBounds& bounds) {
  require_forward(surface, u, "u");
  require_forward(surface, v, "v");
  const CandidatePool pool(surface, unbounded_floor(surface, u, v, bounds), bounds);
  return walls_on_pool(pool, u, v);
}

bool is_generic(const std::vector<WallCrossing>& walls) {
  for (std::size_t i = 0; i < walls.size(); ++i) {
    for (std::size_t j = i + 1; j < walls.size(); ++j) {
      if (walls[i].t_star == walls[j].t_star) return false;
    }
  }
  return true;
}

namespace {

constexpr int kMaxHalvings = 48;

}  // namespace

Perturbation find_perturbation(const SurfaceModel& surface, const SymplecticClass& u,
                               const SymplecticClass& v, const EnumerationBounds& bounds) {
  require_forward(surface, u, "u");
  require_forward(surface, v, "v");
  for (Eigen::Index i = 0; i < surface.rank(); ++i) {
    for (int sgn : {1, -1}) {
      const SymplecticClass direction = SymplecticClass::Unit(surface.rank(), i) * Rational(sgn);
      Rational epsilon = 1;
      for (int j = 1; j <= kMaxHalvings; ++j) {
        epsilon /= 2;
        const SymplecticClass candidate = u + epsilon * direction;
        if (!is_forward(surface, candidate)) continue;
        const SetDifference witness = symmetric_difference(surface, u, candidate, std::nullopt, bounds);
        if (!witness.empty()) continue;
        std::vector<WallCrossing> walls;
        try {
          walls = segment_walls(surface, candidate, v, bounds);
        } catch (const ValidationError&) {
          continue;
        }
        if (is_generic(walls)) return Perturbation{candidate, direction, epsilon, witness.floor};
      }
    }
  }
  throw ValidationError("no perturbation of u keeps S_u and separates the walls; u may lie on a wall of its own chamber");
}

SymplecticClass perturb(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                        const EnumerationBounds& bounds) {
  if (is_generic(segment_walls(surface, u, v, bounds))) return u;
  return find_perturbation(surface, u, v, bounds).perturbed;
}

namespace {

InclusionRecord check_step(const SurfaceModel& surface, const SymplecticClass& from_u,
                           const SymplecticClass& to_u, std::size_t from, std::size_t to,
                           const std::vector<const WallCrossing*>& expected, const EnumerationBounds& bounds) {
  const SetDifference diff = symmetric_difference(surface, from_u, to_u, std::nullopt, bounds);
  InclusionRecord record;
  record.from = from;
  record.to = to;
  record.lost = diff.only_first.classes;
  record.gained = diff.only_second.classes;

  std::vector<LatticeClass> want_gained, want_lost;
  for (const auto* wall : expected) {
    (wall->direction == Direction::Gained ? want_gained : want_lost).push_back(wall->wall_class);
  }
  canonicalize(want_gained);
  canonicalize(want_lost);
  auto same = [](const std::vector<LatticeClass>& a, const std::vector<LatticeClass>& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), same_class);
  };
  if (!same(record.gained, want_gained) || !same(record.lost, want_lost)) {
    throw ConsistencyError("certificate step " + std::to_string(from) + "->" + std::to_string(to) +
                           ": sphere-set difference does not match the walls crossed");
  }
  if (!record.gained.empty() && !record.lost.empty()) {
    throw ConsistencyError("certificate step " + std::to_string(from) + "->" + std::to_string(to) +
                           ": sphere sets are not nested");
  }

  if (record.gained.empty() && record.lost.empty()) {
    record.relation = Inclusion::Equal;
    record.citations = {"S_u = S_u' on this step"};
    return record;
  }
  record.relation = record.gained.empty() ? Inclusion::Superset : Inclusion::Subset;
  int s = std::numeric_limits<int>::min();
  for (const auto* set : {&record.gained, &record.lost}) {
    for (const auto& a : *set) s = std::max(s, static_cast<int>(square(surface, a)));
  }
  const int n = -s - 1;
  record.step_level = n;
  record.range = n >= 2 ? level_range(n) : DegreeRange{1, 0};
  record.citations = {kInclusionLemma,
                      "level-n lemma: S^{>=-n} agree for n = " + std::to_string(n) + ", so A^{2n} agree",
                      kBasicLemma};
  return record;
}

}  // namespace

StabilityCertificate certify(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                             const EnumerationBounds& bounds) {
  StabilityCertificate cert{surface, u, v, {}, true, std::nullopt, {}, {}, {}};
  cert.walls = segment_walls(surface, u, v, bounds);
  // A root r and -r swap at the same wall, so the sets on either side are never nested.
  for (const auto& wall : cert.walls) {
    const LatticeClass& a = wall.wall_class;
    if (square(surface, a) == -2 && pairing(surface, surface.canonical(), a) == 0) {
      throw ValidationError("segment crosses the wall of the root " + notation(surface, a) + " at t = " +
                            format_rational(wall.t_star) +
                            "; certificates stay inside one Weyl chamber, so reduce() the endpoints first");
    }
  }
  cert.generic = is_generic(cert.walls);
  SymplecticClass start = u;
  if (!cert.generic) {
    cert.perturbation = find_perturbation(surface, u, v, bounds);
    start = cert.perturbation->perturbed;
    cert.walls = segment_walls(surface, start, v, bounds);
    if (!is_generic(cert.walls)) throw ConsistencyError("perturbed segment is still not generic");
  }

  const std::size_t k = cert.walls.size();
  cert.samples.push_back(start);
  if (k == 0) {
    cert.chain.push_back(check_step(surface, start, v, 0, 0, {}, bounds));
  } else {
    for (std::size_t i = 1; i < k; ++i) {
      const Rational mid = (cert.walls[i - 1].t_star + cert.walls[i].t_star) / 2;
      cert.samples.push_back(segment_point(start, v, mid));
    }
    cert.samples.push_back(v);
    for (std::size_t i = 0; i < k; ++i) {
      cert.chain.push_back(check_step(surface, cert.samples[i], cert.samples[i + 1], i, i + 1,
                                      {&cert.walls[i]}, bounds));
    }
  }

  cert.verdict = max_stable_level(surface, u, v, bounds);

  // The chain alone implies the level: the smallest step level, or Full with no walls.
  if (k == 0) {
    if (cert.verdict.mode != StabilityMode::Full && cert.verdict.floor_certified) {
      throw ConsistencyError("certificate has no walls but the verdict is not Full");
    }
  } else {
    int chain_level = std::numeric_limits<int>::max();
    for (const auto& step : cert.chain) chain_level = std::min(chain_level, *step.step_level);
    if (cert.verdict.level != chain_level) {
      throw ConsistencyError("certificate chain level " + std::to_string(chain_level) +
                             " disagrees with the verdict level " + std::to_string(cert.verdict.level));
    }
  }
  return cert;
}

}  // namespace sympstab
