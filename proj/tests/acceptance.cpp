// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "oracle.hpp"
#include "sympstab/packing.hpp"
#include "sympstab/stability.hpp"
#include "sympstab/strata.hpp"

using namespace sympstab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the first few failures of a criterion; an empty log means it passed.
struct Log {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

bool same_list(std::vector<LatticeClass> a, std::vector<LatticeClass> b) {
  canonicalize(a);
  canonicalize(b);
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), same_class);
}

SymplecticClass product_mu(const Rational& mu) {
  const auto p = SurfaceModel::product();
  SymplecticClass a(2);
  a << mu, Rational(1);
  return from_areas(p, a);
}

std::string str(const Rational& r) { return format_rational(r); }

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Integer to_integer(const Rational& r) {
  return static_cast<Integer>(boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r));
}

int failed = 0;

void report(int id, const std::string& title, const std::function<void(Log&)>& body) {
  Log log;
  const auto start = Clock::now();
  try {
    body(log);
  } catch (const std::exception& e) {
    log.failures.push_back(std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  std::printf("%s criterion %d: %s (%zu checks, %.2f s)\n", log.ok() ? "PASS" : "FAIL", id, title.c_str(),
              log.checks, elapsed);
  for (const auto& f : log.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
  if (!log.ok()) ++failed;
}

// 1 -------------------------------------------------------------------------------------------

void exceptional_counts(Log& log) {
  const std::vector<std::size_t> classical{1, 3, 6, 10, 16, 27, 56, 240};
  for (int k = 1; k <= 8; ++k) {
    const auto s = SurfaceModel::blowup(k);
    const auto start = Clock::now();
    const auto found = enumerate_candidates(s, -1);
    const double elapsed = seconds_since(start);
    const std::string tag = "k=" + std::to_string(k);
    log.expect(found.size() == classical[static_cast<std::size_t>(k - 1)],
               tag + ": " + std::to_string(found.size()) + " classes");
    log.expect(same_list(found, oracle::candidates(s, -1)), tag + ": differs from brute force");
    if (k == 8) log.expect(elapsed < 10.0, "k=8 took " + std::to_string(elapsed) + " s");
  }
}

// 2 -------------------------------------------------------------------------------------------

void root_counts(Log& log) {
  const std::vector<std::size_t> classical{8, 20, 40, 72, 126, 240};
  for (int k = 3; k <= 8; ++k) {
    const auto s = SurfaceModel::blowup(k);
    std::vector<LatticeClass> roots;
    for (const auto& a : enumerate_candidates(s, -2)) {
      if (pairing(s, a, s.canonical()) == 0) roots.push_back(a);
    }
    const std::string tag = "k=" + std::to_string(k);
    log.expect(roots.size() == classical[static_cast<std::size_t>(k - 3)],
               tag + ": " + std::to_string(roots.size()) + " roots");
    log.expect(same_list(roots, oracle::roots(s)), tag + ": differs from brute force");
  }
}

// 3 -------------------------------------------------------------------------------------------

void product_walls(Log& log) {
  const auto p = SurfaceModel::product();
  gen::Rng rng(3);
  std::vector<Rational> mus{Rational(1), Rational(3, 2), Rational(2), Rational(5, 2), Rational(27, 10),
                            Rational(7, 2), Rational(6), Rational(37, 3)};
  for (int i = 0; i < 40; ++i) mus.push_back(rng.rational(1, 15, 11));

  for (const auto& mu : mus) {
    const auto u = product_mu(mu);
    std::vector<LatticeClass> expected;
    for (Integer m = 1; Rational(m) < mu; ++m) expected.push_back(make_class(p, {1, -m}));
    const int n = 2 * static_cast<int>(to_integer(mu)) + 6;
    log.expect(same_list(spherical_set(p, u, n).classes, expected), "S_u^{<0} wrong at mu=" + str(mu));
  }

  for (int trial = 0; trial < 200; ++trial) {
    Rational a = rng.rational(1, 12, 7), b = rng.rational(1, 12, 7);
    if (a == b || is_integer(a) || is_integer(b)) continue;
    const auto walls = segment_walls(p, product_mu(a), product_mu(b));
    std::vector<Rational> hits;
    bool classes_ok = true;
    for (const auto& w : walls) {
      const Rational at = a + w.t_star * (b - a);
      hits.push_back(at);
      classes_ok = classes_ok && is_integer(at) &&
                   same_class(w.wall_class, make_class(p, {1, -to_integer(at)}));
    }
    std::sort(hits.begin(), hits.end());
    std::vector<Rational> integers;
    const Rational lo = std::min(a, b), hi = std::max(a, b);
    for (Integer m = 1; Rational(m) < hi; ++m) {
      if (Rational(m) > lo) integers.push_back(Rational(m));
    }
    log.expect(hits == integers && classes_ok, "walls between " + str(a) + " and " + str(b));
  }
}

// 4 -------------------------------------------------------------------------------------------

// Recomputes each step of the chain from the full sphere sets of the two samples.
bool chain_holds(const SurfaceModel& s, const StabilityCertificate& cert) {
  if (cert.chain.size() + 1 != cert.samples.size() && !(cert.samples.size() == 1 && cert.chain.size() == 1)) {
    return false;
  }
  for (const auto& step : cert.chain) {
    const auto d = symmetric_difference(s, cert.samples[step.from], cert.samples[step.to], std::nullopt);
    bool ok = false;
    switch (step.relation) {
      case Inclusion::Equal: ok = d.empty(); break;
      case Inclusion::Subset: ok = d.only_first.empty() && !d.only_second.empty(); break;
      case Inclusion::Superset: ok = d.only_second.empty() && !d.only_first.empty(); break;
    }
    ok = ok && same_list(d.only_second.classes, step.gained) && same_list(d.only_first.classes, step.lost);
    if (!ok) return false;
  }
  return true;
}

void verdicts(Log& log, double& random_seconds, int& with_walls) {
  const auto full = max_stable_level(SurfaceModel::product(), product_mu(Rational(5, 2)), product_mu(Rational(27, 10)));
  log.expect(full.mode == StabilityMode::Full, "5/2 -> 27/10 is not Full");
  const auto level = max_stable_level(SurfaceModel::product(), product_mu(Rational(5, 2)), product_mu(Rational(7, 2)));
  log.expect(level.mode == StabilityMode::Level && level.level == 5 && level.range == DegreeRange{1, 7},
             "5/2 -> 7/2 is not Level(5) on [1,7]");

  const auto start = Clock::now();
  gen::Rng rng(4);
  int done = 0;
  while (done < 1000) {
    const auto s = gen::surface(rng, 5);
    const auto [u, v] = gen::reduced_pair(rng, s, 16);
    ++done;
    StabilityCertificate cert;
    try {
      cert = certify(s, u, v);
    } catch (const std::exception& e) {
      log.expect(false, s.spec_string() + ": certify threw: " + e.what());
      continue;
    }
    if (!cert.walls.empty()) ++with_walls;
    log.expect(chain_holds(s, cert), s.spec_string() + ": inclusion chain fails at pair " + std::to_string(done));
    log.expect(cert.verdict.same_claim(max_stable_level(s, u, v)), "certificate verdict disagrees");
  }
  random_seconds = seconds_since(start);
  log.expect(random_seconds < 60.0, "1000 random pairs took " + std::to_string(random_seconds) + " s");
}

// 5 -------------------------------------------------------------------------------------------

void codimension(Log& log) {
  const auto p = SurfaceModel::product();
  const auto b4 = SurfaceModel::blowup(4);
  const auto bf = make_class(p, {1, -1});
  const auto line = make_class(b4, {1, -1, -1, -1, -1});  // square -3
  log.expect(square(p, bf) == -2 && cod(p, bf) == 2, "cod(B-F) != 2");
  log.expect(square(b4, line) == -3 && cod(b4, line) == 4, "cod(H-E_1-E_2-E_3-E_4) != 4");
  // cod_A = 2(-A.A - 1) for every candidate of each square.
  for (int sq = -1; sq >= -6; --sq) {
    for (const auto& a : enumerate_candidates(SurfaceModel::blowup(5), sq)) {
      log.expect(cod(SurfaceModel::blowup(5), a) == 2 * (-sq - 1), "cod formula at square " + std::to_string(sq));
    }
  }
  const auto b2f = make_class(p, {1, -2});
  log.expect(pairing(p, bf, b2f) == -3, "(B-F).(B-2F) != -3");
  log.expect(!is_admissible(p, {bf, b2f}), "{B-F, B-2F} accepted");
}

// 6 -------------------------------------------------------------------------------------------

// Zeros c in (0, c_max) of d + c * sum(a_i w_i) over brute-force classes, c_max^2 = 1 / sum(w_i^2).
std::map<Rational, std::size_t> oracle_cp2_walls(const std::vector<Integer>& weights, int floor) {
  const auto s = SurfaceModel::blowup(static_cast<int>(weights.size()));
  Integer w2 = 0;
  for (Integer w : weights) w2 += w * w;
  std::map<Rational, std::size_t> out;
  for (int sq = -1; sq >= -floor; --sq) {
    for (const auto& a : oracle::candidates(s, sq)) {
      Integer rate = 0;
      for (std::size_t i = 0; i < weights.size(); ++i) rate += a(static_cast<Eigen::Index>(i + 1)) * weights[i];
      if (rate == 0) continue;
      const Rational c = Rational(-a(0)) / rate;
      if (c > 0 && c * c * w2 < 1) ++out[c];
    }
  }
  return out;
}

void packing(Log& log) {
  const auto cp2 = SurfaceModel::blowup(0);
  SymplecticClass h(1);
  h << Rational(1);
  for (const auto& [weights, expected] :
       std::vector<std::pair<std::vector<Integer>, std::vector<Rational>>>{{{1}, {}}, {{1, 1}, {Rational(1, 2)}}}) {
    std::vector<Rational> w(weights.begin(), weights.end());
    const auto profile = critical_capacities(cp2, h, BallConfig{cp2, w, true});
    const auto oracle = oracle_cp2_walls(weights, profile.floor);
    std::vector<Rational> brute;
    for (const auto& [c, count] : oracle) brute.push_back(c);
    const std::string tag = std::to_string(weights.size()) + " ball(s)";
    log.expect(profile.critical_values() == expected, tag + ": unexpected critical values");
    log.expect(brute == expected, tag + ": brute force disagrees with the expected values");
    for (std::size_t i = 0; i < profile.critical.size() && i < brute.size(); ++i) {
      log.expect(profile.critical[i].wall_classes.size() == oracle.at(brute[i]), tag + ": wall class count");
    }
  }
}

// 7 -------------------------------------------------------------------------------------------

constexpr int kInstances = 10000;

void property_suites(Log& log, std::vector<std::string>& lines) {
  auto timed = [&](const std::string& name, const std::function<int(Log&)>& run) {
    const auto start = Clock::now();
    const std::size_t before = log.failures.size();
    const int count = run(log);
    log.expect(count >= kInstances, name + ": only " + std::to_string(count) + " instances");
    std::ostringstream line;
    line << name << ": " << count << " instances, " << (log.failures.size() - before) << " violations, "
         << seconds_since(start) << " s";
    lines.push_back(line.str());
  };

  timed("pairing symmetry", [](Log& log) {
    gen::Rng rng(71);
    for (int i = 0; i < kInstances; ++i) {
      const auto s = gen::surface(rng, 9);
      const auto a = gen::rational_class(rng, s, 9, 7), b = gen::rational_class(rng, s, 9, 7);
      log.expect(pairing(s, a, b) == pairing(s, b, a), "pairing not symmetric on " + s.spec_string());
    }
    return kInstances;
  });

  timed("reflection isometry and involution", [](Log& log) {
    gen::Rng rng(72);
    int count = 0;
    while (count < kInstances) {
      const auto s = gen::surface(rng, 9);
      if (!s.is_product() && s.points() < 2) continue;
      const auto r = gen::root(rng, s);
      const auto x = gen::rational_class(rng, s, 9, 7), y = gen::rational_class(rng, s, 9, 7);
      const auto rx = reflect(s, x, r), ry = reflect(s, y, r);
      log.expect(pairing(s, rx, ry) == pairing(s, x, y), "reflection is not an isometry");
      log.expect(reflect(s, rx, r) == x, "reflection is not an involution");
      log.expect(reflect(s, s.canonical(), r) == s.canonical(), "reflection moves K");
      ++count;
    }
    return count;
  });

  timed("reduce idempotence and word replay", [](Log& log) {
    gen::Rng rng(73);
    for (int i = 0; i < kInstances; ++i) {
      const auto s = gen::surface(rng, 8);
      const auto u = apply(s, gen::weyl_word(rng, s, 8), gen::reduced_class(rng, s));
      const auto r = reduce(s, u);
      log.expect(is_reduced(s, r.reduced), "reduce output not reduced");
      log.expect(apply(s, r.word, u) == r.reduced, "word does not replay");
      log.expect(apply(s, inverse(r.word), r.reduced) == u, "inverse word does not return");
      const auto again = reduce(s, r.reduced);
      log.expect(again.reduced == r.reduced && again.word.empty(), "reduce not idempotent");
    }
    return kInstances;
  });

  timed("light-cone sign lemma", [](Log& log) {
    gen::Rng rng(74);
    int count = 0;
    while (count < kInstances) {
      const auto s = gen::surface(rng, 9);
      const LatticeClass a = gen::lattice_class(rng, s, 5);
      if (a.isZero() || square(s, a) < 0) continue;
      const auto u = gen::forward_class(rng, s), v = gen::forward_class(rng, s);
      const int su = sign(pairing(s, a, u));
      log.expect(su != 0 && su == sign(pairing(s, a, v)), "light-cone sign differs");
      ++count;
    }
    return count;
  });

  timed("scale invariance of verdicts", [](Log& log) {
    gen::Rng rng(75);
    for (int i = 0; i < kInstances; ++i) {
      const auto s = gen::surface(rng, 5);
      const auto [u, v] = gen::reduced_pair(rng, s, 16);
      const Rational lambda = rng.rational(1, 9, 7);
      log.expect(max_stable_level(s, lambda * u, lambda * v).same_claim(max_stable_level(s, u, v)),
                 "verdict changes under scaling on " + s.spec_string());
    }
    return kInstances;
  });

  timed("certificate and verdict agreement", [](Log& log) {
    gen::Rng rng(76);
    for (int i = 0; i < kInstances; ++i) {
      const auto s = gen::surface(rng, 5);
      const auto [u, v] = gen::reduced_pair(rng, s, 16);
      log.expect(certify(s, u, v).verdict.same_claim(max_stable_level(s, u, v)),
                 "certificate disagrees with verdict on " + s.spec_string());
    }
    return kInstances;
  });
}

// 8 -------------------------------------------------------------------------------------------

void oracle_equivalence(Log& log) {
  std::vector<SurfaceModel> surfaces{SurfaceModel::product()};
  for (int k = 0; k <= 5; ++k) surfaces.push_back(SurfaceModel::blowup(k));
  for (const auto& s : surfaces) {
    for (int sq = -1; sq >= -6; --sq) {
      log.expect(same_list(enumerate_candidates(s, sq), oracle::candidates(s, sq)),
                 s.spec_string() + " square " + std::to_string(sq));
    }
  }
}

}  // namespace

int main() {
  report(1, "exceptional-class counts 1,3,6,10,16,27,56,240 match brute force", exceptional_counts);
  report(2, "root counts 8,20,40,72,126,240 match brute force", root_counts);
  report(3, "S^2xS^2 negative classes and walls at the integers", product_walls);
  double random_seconds = 0;
  int with_walls = 0;
  report(4, "Full / Level(5) verdicts and 1000 certified random pairs", [&](Log& log) {
    verdicts(log, random_seconds, with_walls);
  });
  std::printf("    random pairs: %.2f s, %d of 1000 cross at least one wall\n", random_seconds, with_walls);
  report(5, "cod = 2 and 4 for squares -2 and -3; {B-F, B-2F} not admissible", codimension);
  report(6, "one ball in CP2 has no critical capacity, two equal balls have 1/2", packing);
  std::vector<std::string> lines;
  report(7, "property suites with 10^4 instances each", [&](Log& log) { property_suites(log, lines); });
  for (const auto& l : lines) std::printf("    %s\n", l.c_str());
  report(8, "enumerator equals brute force for k <= 5 and squares -1..-6", oracle_equivalence);
  std::printf("%s\n", failed == 0 ? "all criteria passed" : "some criteria failed");
  return failed == 0 ? 0 : 1;
}
