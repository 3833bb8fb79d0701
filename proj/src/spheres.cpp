#include "sympstab/spheres.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace sympstab {

const char* to_string(Certification tier) {
  return tier == Certification::CremonaCertified ? "cremona" : "candidate";
}

CoefficientBox CoefficientBox::uniform(const SurfaceModel& surface, Integer bound) {
  CoefficientBox box;
  box.ranges.assign(static_cast<std::size_t>(surface.rank()), {-bound, bound});
  return box;
}

bool CoefficientBox::contains(const LatticeClass& a) const {
  if (static_cast<std::size_t>(a.size()) != ranges.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto& [lo, hi] = ranges[static_cast<std::size_t>(i)];
    if (a(i) < lo || a(i) > hi) return false;
  }
  return true;
}

void EnumerationBounds::validate(const SurfaceModel& surface) const {
  if (square_min && *square_min > -1) throw ValidationError("square_min must be <= -1");
  if (box) {
    if (box->ranges.size() != static_cast<std::size_t>(surface.rank())) {
      throw ValidationError("coefficient box needs one range per basis class");
    }
    for (const auto& [lo, hi] : box->ranges) {
      if (lo > hi) throw ValidationError("coefficient box is empty");
    }
  }
}

namespace {

struct BlowUpSearch {
  int k;
  const std::optional<CoefficientBox>& box;
  std::vector<Integer> m;
  Integer degree = 0;
  std::vector<LatticeClass>* out;

  // Fill m[i..k-1] with sum `rest_sum` and sum of squares `rest_sq`.
  void fill(int i, Integer rest_sum, Integer rest_sq) {
    const int remaining = k - i;
    if (remaining == 0) {
      if (rest_sum == 0 && rest_sq == 0) emit();
      return;
    }
    if (rest_sq < 0 || rest_sum * rest_sum > remaining * rest_sq) return;
    if (((rest_sum - rest_sq) & 1) != 0) return;  // m^2 and m share parity
    auto root = static_cast<Integer>(std::sqrt(static_cast<long double>(rest_sq)));
    while (root * root > rest_sq) --root;
    while ((root + 1) * (root + 1) <= rest_sq) ++root;
    Integer lo = -root, hi = root;
    if (box) {
      // coordinate a_i = -m_i
      const auto& [blo, bhi] = box->ranges[static_cast<std::size_t>(i + 1)];
      lo = std::max(lo, -bhi);
      hi = std::min(hi, -blo);
    }
    for (Integer v = lo; v <= hi; ++v) {
      const Integer s = rest_sum - v, q = rest_sq - v * v;
      if (q < 0) continue;
      if (s * s > (remaining - 1) * q) continue;
      m[static_cast<std::size_t>(i)] = v;
      fill(i + 1, s, q);
    }
  }

  void emit() {
    LatticeClass a(k + 1);
    a(0) = degree;
    for (int i = 0; i < k; ++i) a(i + 1) = -m[static_cast<std::size_t>(i)];
    out->push_back(std::move(a));
  }
};

// Integer d with a d^2 + b d + c <= 0, a > 0.
std::pair<Integer, Integer> quadratic_window(Integer a, Integer b, Integer c) {
  const long double disc = static_cast<long double>(b) * b - 4.0L * a * c;
  if (disc < 0) return {1, 0};
  const long double r = std::sqrt(disc);
  Integer lo = static_cast<Integer>(std::floor((-b - r) / (2.0L * a))) - 2;
  Integer hi = static_cast<Integer>(std::ceil((-b + r) / (2.0L * a))) + 2;
  auto q = [&](Integer d) { return a * d * d + b * d + c; };
  while (lo <= hi && q(lo) > 0) ++lo;
  while (hi >= lo && q(hi) > 0) --hi;
  return {lo, hi};
}

}  // namespace

std::vector<LatticeClass> enumerate_candidates(const SurfaceModel& surface, int square,
                                               const EnumerationBounds& bounds) {
  if (square >= 0) throw ValidationError("candidate enumeration needs a negative square");
  bounds.validate(surface);
  std::vector<LatticeClass> out;
  const Integer s = square;

  if (surface.is_product()) {
    // A = xB + yF: (x-1)(y-1) = 0, so A = B - mF or F - mB with s = -2m.
    if (s % 2 == 0) {
      const Integer m = -s / 2;
      out.push_back(make_class(surface, {1, -m}));
      out.push_back(make_class(surface, {-m, 1}));
    }
  } else {
    const int k = surface.points();
    if (k == 9 && !bounds.box) {
      throw ValidationError("CP2#9(-CP2) has infinitely many candidates per square; a coefficient box is required");
    }
    Integer dlo, dhi;
    if (k < 9) {
      std::tie(dlo, dhi) = quadratic_window(9 - k, -6 * (s + 2), (s + 2) * (s + 2) + k * s);
    } else {
      dlo = bounds.box->ranges[0].first;
      dhi = bounds.box->ranges[0].second;
    }
    if (bounds.box) {
      dlo = std::max(dlo, bounds.box->ranges[0].first);
      dhi = std::min(dhi, bounds.box->ranges[0].second);
    }
    BlowUpSearch search{k, bounds.box, std::vector<Integer>(static_cast<std::size_t>(k)), 0, &out};
    for (Integer d = dlo; d <= dhi; ++d) {
      search.degree = d;
      search.fill(0, 3 * d - s - 2, d * d - s);
    }
  }

  if (bounds.box) {
    std::erase_if(out, [&](const LatticeClass& a) { return !bounds.box->contains(a); });
  }
  canonicalize(out);
  return out;
}

bool cremona_certified(const SurfaceModel& surface, const LatticeClass& a) {
  const Integer s = square(surface, a);
  if (s == -1) return exceptional_reduction(surface, a).has_value();
  if (s == -2) return pairing(surface, surface.canonical(), a) == 0;
  return false;
}

bool SphereClassSet::contains(const LatticeClass& a) const {
  return std::binary_search(classes.begin(), classes.end(), a, CanonicalOrder{});
}

namespace {

// Certificates and verdicts ask for the same pools over and over; enumeration is pure, so memoize.
using PoolKey = std::tuple<int, int, int, std::vector<std::pair<Integer, Integer>>>;

std::shared_ptr<const std::vector<LatticeClass>> cached_pool(const SurfaceModel& surface, int floor,
                                                             const EnumerationBounds& bounds) {
  static std::mutex mutex;
  static std::map<PoolKey, std::shared_ptr<const std::vector<LatticeClass>>> cache;
  const auto box = bounds.box ? bounds.box->ranges : std::vector<std::pair<Integer, Integer>>{};
  const auto key = [&](int f) { return PoolKey{static_cast<int>(surface.kind()), surface.points(), f, box}; };
  {
    const std::lock_guard lock(mutex);
    if (const auto it = cache.find(key(floor)); it != cache.end()) return it->second;
  }
  // Extend the deepest cached pool below this floor rather than starting over.
  auto pool = std::make_shared<std::vector<LatticeClass>>();
  int done = 0;
  {
    const std::lock_guard lock(mutex);
    auto it = cache.lower_bound(key(floor));
    if (it != cache.begin()) {
      --it;
      const auto& [kind, points, f, b] = it->first;
      if (kind == static_cast<int>(surface.kind()) && points == surface.points() && b == box) {
        *pool = *it->second;
        done = f;
      }
    }
  }
  for (int s = -done - 1; s >= -floor; --s) {
    auto shell = enumerate_candidates(surface, s, bounds);
    pool->insert(pool->end(), std::make_move_iterator(shell.begin()), std::make_move_iterator(shell.end()));
  }
  const std::lock_guard lock(mutex);
  return cache.try_emplace(key(floor), std::move(pool)).first->second;
}

}  // namespace

CandidatePool::CandidatePool(const SurfaceModel& surface, int floor, const EnumerationBounds& bounds)
    : surface_(surface), floor_(floor) {
  if (floor < 1) throw ValidationError("square floor n must be >= 1");
  bounds.validate(surface);
  classes_ = cached_pool(surface, floor, bounds);
}

std::vector<LatticeClass> CandidatePool::positive(const SymplecticClass& u) const {
  const AreaForm area(surface_, u);
  std::vector<LatticeClass> out;
  for (const auto& a : *classes_) {
    if (area.sign(a) > 0) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), CanonicalOrder{});
  return out;
}

SphereClassSet spherical_set(const SurfaceModel& surface, const SymplecticClass& u, int n,
                             const EnumerationBounds& bounds, Certification tier) {
  require_forward(surface, u, "u");
  const CandidatePool pool(surface, n, bounds);
  SphereClassSet set{surface, pool.positive(u), n, Certification::Candidate, {}};
  if (tier == Certification::CremonaCertified) {
    for (const auto& a : set.classes) {
      if (!cremona_certified(surface, a)) set.uncertified.push_back(a);
    }
    if (set.uncertified.empty()) set.certification = Certification::CremonaCertified;
  }
  return set;
}

int unbounded_floor(const SurfaceModel& surface, const SymplecticClass& u, const SymplecticClass& v,
                    const EnumerationBounds& bounds) {
  bounds.validate(surface);
  const Integer k2 = surface.canonical_square();
  if (k2 <= 0) {
    if (!bounds.square_min) {
      throw ValidationError(
          "CP2#9(-CP2): finiteness of the sphere-set difference is not known; pass an explicit square_min");
    }
    return -*bounds.square_min;
  }
  require_forward(surface, u, "u");
  require_forward(surface, v, "v");
  // Max over the segment of (K.w)^2 / w^2 with w = u + t(v - u). The numerator is (a + bt)^2 and the
  // denominator q0 + q1 t + q2 t^2, so the derivative vanishes at a root of a + bt or at one linear root.
  const Rational a = pairing(surface, u, surface.canonical());
  const Rational b = pairing(surface, v, surface.canonical()) - a;
  const Rational uu = square(surface, u), uv = pairing(surface, u, v), vv = square(surface, v);
  const Rational q0 = uu, q1 = 2 * (uv - uu), q2 = uu - 2 * uv + vv;
  auto ratio = [&](const Rational& t) {
    const Rational kw = a + b * t;
    return kw * kw / (q0 + q1 * t + q2 * t * t);
  };
  Rational worst = std::max(ratio(Rational(0)), ratio(Rational(1)));
  const Rational denom = b * q1 - 2 * a * q2;
  if (denom != 0) {
    const Rational t = (a * q1 - 2 * b * q0) / denom;
    if (t > 0 && t < 1) worst = std::max(worst, ratio(t));
  }
  const Rational spread = worst - Rational(k2);

  // g(N) = (N-2)^2 - N*spread is convex with g(2) <= 0; find the first N > 2 where it is positive.
  auto positive = [&](Integer n) { return Rational((n - 2) * (n - 2)) > Rational(n) * spread; };
  Integer hi = 3;
  while (!positive(hi)) hi *= 2;
  Integer lo = hi / 2;  // g(lo) <= 0 or lo <= 2
  while (hi - lo > 1) {
    const Integer mid = lo + (hi - lo) / 2;
    (positive(mid) ? hi : lo) = mid;
  }
  int floor = static_cast<int>(hi - 1);
  if (bounds.square_min) floor = std::max(floor, -*bounds.square_min);
  return std::max(floor, 1);
}

SetDifference symmetric_difference(const SurfaceModel& surface, const SymplecticClass& u,
                                   const SymplecticClass& v, std::optional<int> n,
                                   const EnumerationBounds& bounds) {
  require_forward(surface, u, "u");
  require_forward(surface, v, "v");
  SetDifference diff;
  if (n) {
    if (*n < 1) throw ValidationError("square floor n must be >= 1");
    diff.floor = *n;
  } else {
    diff.floor = unbounded_floor(surface, u, v, bounds);
    diff.floor_certified = surface.canonical_square() > 0;
  }
  diff.only_first = SphereClassSet{surface, {}, diff.floor, Certification::Candidate, {}};
  diff.only_second = diff.only_first;
  if (u == v) return diff;

  const CandidatePool pool(surface, diff.floor, bounds);
  const AreaForm area_u(surface, u), area_v(surface, v);
  for (const auto& a : pool.classes()) {
    const bool in_u = area_u.sign(a) > 0;
    const bool in_v = area_v.sign(a) > 0;
    if (in_u && !in_v) diff.only_first.classes.push_back(a);
    if (in_v && !in_u) diff.only_second.classes.push_back(a);
  }
  canonicalize(diff.only_first.classes);
  canonicalize(diff.only_second.classes);
  return diff;
}

}  // namespace sympstab
