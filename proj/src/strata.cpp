#include "sympstab/strata.hpp"

#include <algorithm>

namespace sympstab {

namespace {

void validate_member(const SurfaceModel& surface, const LatticeClass& a) {
  detail::check_rank(surface, a.size());
  if (a.isZero() || square(surface, a) >= 0) {
    throw ValidationError("admissible sets contain negative classes only; got " + notation(surface, a));
  }
  if (adjunction_defect(surface, a) != 0) {
    throw ValidationError(notation(surface, a) + " fails the adjunction constraint");
  }
}

bool strata_less(const AdmissibleSet& a, const AdmissibleSet& b) {
  if (a.codim != b.codim) return a.codim < b.codim;
  if (a.classes.size() != b.classes.size()) return a.classes.size() < b.classes.size();
  return std::lexicographical_compare(
      a.classes.begin(), a.classes.end(), b.classes.begin(), b.classes.end(),
      [](const LatticeClass& x, const LatticeClass& y) { return CanonicalOrder{}(x, y); });
}

}  // namespace

bool is_admissible(const SurfaceModel& surface, const std::vector<LatticeClass>& classes) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    validate_member(surface, classes[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (same_class(classes[i], classes[j])) {
        throw ValidationError("repeated class " + notation(surface, classes[i]));
      }
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (pairing(surface, classes[i], classes[j]) < 0) return false;
    }
  }
  return true;
}

AdmissibleSet make_admissible(const SurfaceModel& surface, std::vector<LatticeClass> classes) {
  if (!is_admissible(surface, classes)) throw ValidationError("classes are not pairwise nonnegative");
  AdmissibleSet set;
  for (const auto& a : classes) set.codim += cod(surface, a);
  std::sort(classes.begin(), classes.end(), CanonicalOrder{});
  set.classes = std::move(classes);
  return set;
}

StratificationIndex enumerate_admissible(const SurfaceModel& surface, const SymplecticClass& u,
                                         int level, const EnumerationBounds& bounds) {
  if (level < 2 || level % 2 != 0) throw ValidationError("level must be an even integer 2n >= 2");
  const int n = level / 2;
  // cod_A < 2n forces A.A >= -n.
  const SphereClassSet sphere = spherical_set(surface, u, n, bounds);

  std::vector<LatticeClass> pool;
  std::vector<int> codims;
  for (const auto& a : sphere.classes) {
    const int c = cod(surface, a);
    if (c > 0 && c < level) {
      pool.push_back(a);
      codims.push_back(c);
    }
  }

  StratificationIndex index{surface, level, {}, level, sphere.certification};
  std::vector<std::size_t> chosen;
  // Depth-first over increasing pool indices keeps every subset unique.
  auto grow = [&](auto&& self, std::size_t start, int codim) -> void {
    AdmissibleSet label;
    label.codim = codim;
    for (std::size_t i : chosen) label.classes.push_back(pool[i]);
    index.strata.push_back(std::move(label));
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (codim + codims[i] >= level) continue;
      const bool compatible = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t j) {
        return pairing(surface, pool[i], pool[j]) >= 0;
      });
      if (!compatible) continue;
      chosen.push_back(i);
      self(self, i + 1, codim + codims[i]);
      chosen.pop_back();
    }
  };
  grow(grow, 0, 0);
  std::sort(index.strata.begin(), index.strata.end(), strata_less);
  return index;
}

bool same_strata(const StratificationIndex& a, const StratificationIndex& b) {
  return a.surface == b.surface && a.level == b.level && a.strata == b.strata;
}

bool compare_levels(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                    int level, const EnumerationBounds& bounds) {
  require_forward(surface, v, "v");
  return same_strata(enumerate_admissible(surface, u, level, bounds),
                     enumerate_admissible(surface, v, level, bounds));
}

}  // namespace sympstab
