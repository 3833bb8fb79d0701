#pragma once

#include <algorithm>
#include <vector>

#include "sympstab/spheres.hpp"

namespace sympstab {

/// A set of negative sphere classes with pairwise nonnegative intersections.
struct AdmissibleSet {
  std::vector<LatticeClass> classes;  ///< canonical order
  int codim = 0;                      ///< sum of cod(A_i)

  friend bool operator==(const AdmissibleSet& a, const AdmissibleSet& b) {
    return a.codim == b.codim && a.classes.size() == b.classes.size() &&
           std::equal(a.classes.begin(), a.classes.end(), b.classes.begin(), same_class);
  }
};

/// Labels of the decomposition of A_u^{2n}: every admissible set of codimension < 2n.
/// The residual piece X_{u,2n} is represented only by its codimension bound.
struct StratificationIndex {
  SurfaceModel surface;
  int level = 2;                     ///< 2n
  std::vector<AdmissibleSet> strata;  ///< ordered by (codim, size, classes)
  int residual_codim = 2;            ///< == level
  Certification certification = Certification::Candidate;
};

/// True iff all pairwise pairings are nonnegative. Throws on repeated classes, nonnegative
/// squares, or classes failing adjunction.
bool is_admissible(const SurfaceModel& surface, const std::vector<LatticeClass>& classes);

/// Build the admissible set (canonical order, summed codimension); throws unless admissible.
AdmissibleSet make_admissible(const SurfaceModel& surface, std::vector<LatticeClass> classes);

/// Square -1 classes have codimension zero and are left out of the labels.
StratificationIndex enumerate_admissible(const SurfaceModel& surface, const SymplecticClass& u,
                                         int level, const EnumerationBounds& bounds = {});

/// Same labelled strata at level 2n.
bool compare_levels(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                    int level, const EnumerationBounds& bounds = {});

bool same_strata(const StratificationIndex& a, const StratificationIndex& b);

}  // namespace sympstab
