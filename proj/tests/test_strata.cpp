#include <doctest.h>

#include "generators.hpp"
#include "sympstab/strata.hpp"

using namespace sympstab;

namespace {

SymplecticClass product_class(Rational mu) {
  const auto p = SurfaceModel::product();
  SymplecticClass a(2);
  a << mu, Rational(1);
  return from_areas(p, a);
}

}  // namespace

TEST_CASE("admissibility") {
  const auto p = SurfaceModel::product();
  const auto bf = make_class(p, {1, -1});
  const auto b2f = make_class(p, {1, -2});
  CHECK(is_admissible(p, {bf}));
  CHECK(pairing(p, bf, b2f) == -3);
  CHECK_FALSE(is_admissible(p, {bf, b2f}));
  CHECK_THROWS_AS(make_admissible(p, {bf, b2f}), ValidationError);
  CHECK_THROWS_AS(is_admissible(p, {bf, bf}), ValidationError);
  CHECK_THROWS_AS(is_admissible(p, {make_class(p, {1, 0})}), ValidationError);
  CHECK_THROWS_AS(is_admissible(p, {make_class(p, {1, -3}) * 2}), ValidationError);

  const auto b3 = SurfaceModel::blowup(3);
  const auto pair = make_admissible(b3, {make_class(b3, {0, 0, 1, 0}), make_class(b3, {0, 1, 0, 0})});
  CHECK(pair.codim == 0);
  CHECK(pair.classes.front() == make_class(b3, {0, 0, 1, 0}));
  CHECK_FALSE(is_admissible(b3, {make_class(b3, {1, -1, -1, -1}), make_class(b3, {0, 1, -1, -1})}));
  const auto b5 = SurfaceModel::blowup(5);
  CHECK(make_admissible(b5, {make_class(b5, {0, 1, -1, 0, 0, 0}), make_class(b5, {0, 0, 0, 1, -1, -1})}).codim ==
        2 + 4);
  CHECK(make_admissible(p, {}).codim == 0);
}

TEST_CASE("stratification examples") {
  const auto p = SurfaceModel::product();
  const auto idx = enumerate_admissible(p, product_class(Rational(5, 2)), 4);
  REQUIRE(idx.strata.size() == 2);
  CHECK(idx.strata[0].classes.empty());
  CHECK(idx.strata[0].codim == 0);
  CHECK(idx.strata[1].classes.size() == 1);
  CHECK(idx.strata[1].classes[0] == make_class(p, {1, -1}));
  CHECK(idx.strata[1].codim == 2);
  CHECK(idx.residual_codim == 4);

  CHECK(enumerate_admissible(p, product_class(Rational(3, 2)), 8).strata.size() == 2);
  CHECK(enumerate_admissible(p, product_class(Rational(9, 2)), 2).strata.size() == 1);

  CHECK(compare_levels(p, product_class(Rational(5, 2)), product_class(Rational(27, 10)), 20));
  CHECK(compare_levels(p, product_class(Rational(5, 2)), product_class(Rational(7, 2)), 10));
  CHECK_FALSE(compare_levels(p, product_class(Rational(5, 2)), product_class(Rational(7, 2)), 12));

  CHECK_THROWS_AS(enumerate_admissible(p, product_class(2), 3), ValidationError);
  CHECK_THROWS_AS(enumerate_admissible(p, product_class(2), 0), ValidationError);
}

TEST_CASE("blow-up strata include disjoint pairs") {
  // Both -2 roots E_1-E_2 and E_3-E_4 have positive area and are orthogonal.
  const auto b4 = SurfaceModel::blowup(4);
  SymplecticClass a(5);
  a << 3, Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1, 7);
  const auto u = from_areas(b4, a);
  const auto idx = enumerate_admissible(b4, u, 6);
  const auto wanted = make_admissible(b4, {make_class(b4, {0, 1, -1, 0, 0}), make_class(b4, {0, 0, 0, 1, -1})});
  CHECK(std::find(idx.strata.begin(), idx.strata.end(), wanted) != idx.strata.end());
  for (std::size_t i = 1; i < idx.strata.size(); ++i) CHECK(idx.strata[i - 1].codim <= idx.strata[i].codim);
  for (const auto& s : idx.strata) {
    CHECK(s.codim < 6);
    CHECK(is_admissible(b4, s.classes));
  }
}

TEST_CASE("strata properties on random data") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen::surface(rng, 5);
    const auto u = gen::reduced_class(rng, s, 12);
    const auto v = gen::reduced_class(rng, s, 12);
    const int n = static_cast<int>(rng.integer(1, 4));
    if (symmetric_difference(s, u, v, n).empty()) REQUIRE(compare_levels(s, u, v, 2 * n));

    const auto idx = enumerate_admissible(s, u, 2 * n);
    // Unions of compatible labels add codimension.
    for (std::size_t i = 0; i + 1 < idx.strata.size() && i < 6; ++i) {
      const auto& x = idx.strata[i];
      const auto& y = idx.strata[i + 1];
      std::vector<LatticeClass> both = x.classes;
      bool disjoint = true;
      for (const auto& c : y.classes) {
        disjoint = disjoint && std::none_of(x.classes.begin(), x.classes.end(),
                                            [&](const LatticeClass& d) { return same_class(c, d); });
        both.push_back(c);
      }
      if (disjoint && is_admissible(s, both)) REQUIRE(make_admissible(s, both).codim == x.codim + y.codim);
    }

    const auto word = gen::weyl_word(rng, s, 4);
    const auto moved = enumerate_admissible(s, apply(s, word, u), 2 * n);
    REQUIRE(moved.strata.size() == idx.strata.size());
    for (const auto& label : idx.strata) {
      std::vector<LatticeClass> image;
      for (const auto& c : label.classes) image.push_back(apply(s, word, c));
      const auto mapped = make_admissible(s, image);
      REQUIRE(std::find(moved.strata.begin(), moved.strata.end(), mapped) != moved.strata.end());
    }
  }
}
