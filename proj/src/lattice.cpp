#include "sympstab/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace sympstab {

SurfaceModel::SurfaceModel(SurfaceKind kind, int points) : kind_(kind), points_(points) {
  if (kind == SurfaceKind::Product) {
    gram_ = GramMatrix(2, 2);
    gram_ << 0, 1, 1, 0;
    canonical_ = LatticeClass(2);
    canonical_ << -2, -2;
    return;
  }
  const Eigen::Index r = points + 1;
  gram_ = GramMatrix::Identity(r, r) * -1;
  gram_(0, 0) = 1;
  canonical_ = LatticeClass::Ones(r);
  canonical_(0) = -3;
}

SurfaceModel SurfaceModel::product() { return SurfaceModel(SurfaceKind::Product, 0); }

SurfaceModel SurfaceModel::blowup(int k) {
  if (k < 0) throw ValidationError("number of blown-up points must be nonnegative");
  if (k > 9) {
    throw ValidationError("CP2#" + std::to_string(k) +
                          "(-CP2) has Euler characteristic " + std::to_string(3 + k) +
                          " > 12; only k <= 9 is supported");
  }
  return SurfaceModel(SurfaceKind::BlowUp, k);
}

Integer SurfaceModel::canonical_square() const { return square(*this, canonical_); }

LatticeClass SurfaceModel::unit(Eigen::Index i) const {
  if (i < 0 || i >= rank()) throw ValidationError("basis index out of range");
  return LatticeClass::Unit(rank(), i);
}

std::string SurfaceModel::spec_string() const {
  return is_product() ? std::string("product") : "blowup:" + std::to_string(points_);
}

SurfaceModel parse_surface(const std::string& text) {
  if (text == "product" || text == "S2xS2") return SurfaceModel::product();
  const std::string prefix = "blowup:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 3) {
      throw ValidationError("bad surface '" + text + "'; expected blowup:k with integer k");
    }
    return SurfaceModel::blowup(std::stoi(digits));
  }
  throw ValidationError("unknown surface '" + text + "'; expected 'product' or 'blowup:k'");
}

LatticeClass make_class(const SurfaceModel& surface, std::initializer_list<Integer> coords) {
  detail::check_rank(surface, static_cast<Eigen::Index>(coords.size()));
  LatticeClass a(surface.rank());
  Eigen::Index i = 0;
  for (Integer c : coords) a(i++) = c;
  return a;
}

void detail::check_rank(const SurfaceModel& surface, Eigen::Index size) {
  if (size != surface.rank()) {
    throw ValidationError("dimension mismatch: class has " + std::to_string(size) +
                          " coordinates but " + surface.spec_string() + " has rank " +
                          std::to_string(surface.rank()));
  }
}

Integer adjunction_defect(const SurfaceModel& surface, const LatticeClass& a) {
  detail::check_rank(surface, a.size());
  if (a.isZero()) throw ValidationError("adjunction defect is undefined for the zero class");
  return pairing(surface, surface.canonical(), a) + square(surface, a) + 2;
}

int cod(const SurfaceModel& surface, const LatticeClass& a) {
  const Integer s = square(surface, a);
  if (s >= 0) {
    throw ValidationError("codimension requires a negative square; " + notation(surface, a) +
                          " has square " + std::to_string(s));
  }
  return static_cast<int>(2 * (-s - 1));
}

SymplecticClass areas(const SurfaceModel& surface, const SymplecticClass& u) {
  detail::check_rank(surface, u.size());
  return surface.gram().cast<Rational>() * u;
}

SymplecticClass from_areas(const SurfaceModel& surface, const SymplecticClass& area_vector) {
  detail::check_rank(surface, area_vector.size());
  return surface.gram().cast<Rational>() * area_vector;
}

bool is_forward(const SurfaceModel& surface, const SymplecticClass& u) {
  return square(surface, u) > 0 && pairing(surface, u, surface.canonical()) < 0;
}

void require_forward(const SurfaceModel& surface, const SymplecticClass& u, const std::string& label) {
  detail::check_rank(surface, u.size());
  const Rational sq = square(surface, u);
  if (sq <= 0) {
    throw ValidationError(label + " is not a forward class: u.u = " + format_rational(sq) + " <= 0");
  }
  const Rational k = pairing(surface, u, surface.canonical());
  if (k >= 0) {
    throw ValidationError(label + " is not a forward class: u.K = " + format_rational(k) + " >= 0");
  }
}

bool same_class(const LatticeClass& a, const LatticeClass& b) {
  return a.size() == b.size() && a == b;
}

void canonicalize(std::vector<LatticeClass>& classes) {
  std::sort(classes.begin(), classes.end(), CanonicalOrder{});
  classes.erase(std::unique(classes.begin(), classes.end(), same_class), classes.end());
}

namespace {

void append_term(std::ostringstream& out, bool& first, Integer coeff, const std::string& symbol) {
  if (coeff == 0) return;
  if (coeff < 0) {
    out << '-';
  } else if (!first) {
    out << '+';
  }
  const Integer mag = coeff < 0 ? -coeff : coeff;
  if (mag != 1) out << mag;
  out << symbol;
  first = false;
}

}  // namespace

std::string notation(const SurfaceModel& surface, const LatticeClass& a) {
  detail::check_rank(surface, a.size());
  std::ostringstream out;
  bool first = true;
  if (surface.is_product()) {
    append_term(out, first, a(0), "B");
    append_term(out, first, a(1), "F");
  } else {
    append_term(out, first, a(0), "H");
    for (Eigen::Index i = 1; i < a.size(); ++i) append_term(out, first, a(i), "E_" + std::to_string(i));
  }
  if (first) return "0";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

void check_point(const SurfaceModel& surface, int i) {
  if (surface.is_product()) throw ValidationError("blow-up reflections need a blow-up surface");
  if (i < 1 || i > surface.points()) {
    throw ValidationError("exceptional index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(surface.points()));
  }
}

struct RootBuilder {
  const SurfaceModel& surface;

  LatticeClass operator()(const CremonaMove& m) const {
    check_point(surface, m.i);
    check_point(surface, m.j);
    check_point(surface, m.l);
    if (m.i == m.j || m.j == m.l || m.i == m.l) throw ValidationError("Cremona triple must be distinct");
    LatticeClass r = surface.unit(0);
    r(m.i) = r(m.j) = r(m.l) = -1;
    return r;
  }
  LatticeClass operator()(const Transposition& t) const {
    check_point(surface, t.i);
    check_point(surface, t.j);
    if (t.i == t.j) throw ValidationError("transposition needs two distinct indices");
    LatticeClass r = surface.zero();
    r(t.i) = 1;
    r(t.j) = -1;
    return r;
  }
  LatticeClass operator()(const FactorSwap&) const {
    if (!surface.is_product()) throw ValidationError("factor swap needs the product surface");
    return make_class(surface, {1, -1});
  }
};

struct Describer {
  std::string operator()(const CremonaMove& m) const {
    return "cremona(" + std::to_string(m.i) + "," + std::to_string(m.j) + "," + std::to_string(m.l) + ")";
  }
  std::string operator()(const Transposition& t) const {
    return "swap(" + std::to_string(t.i) + "," + std::to_string(t.j) + ")";
  }
  std::string operator()(const FactorSwap&) const { return "swap(B,F)"; }
};

}  // namespace

LatticeClass root_of(const SurfaceModel& surface, const Reflection& step) {
  return std::visit(RootBuilder{surface}, step);
}

std::string describe(const Reflection& step) { return std::visit(Describer{}, step); }

void require_root(const SurfaceModel& surface, const LatticeClass& root) {
  detail::check_rank(surface, root.size());
  if (square(surface, root) != -2 || pairing(surface, surface.canonical(), root) != 0) {
    throw ValidationError("invalid root " + notation(surface, root) +
                          ": reflection roots need square -2 and K.r = 0");
  }
}

WeylWord inverse(const WeylWord& word) { return WeylWord(word.rbegin(), word.rend()); }

namespace {

constexpr int kMaxReductionSteps = 1 << 20;

// Sort E-areas descending with transpositions.
void sort_points(const SurfaceModel& surface, Reduction& r) {
  const int k = surface.points();
  for (int i = 1; i <= k; ++i) {
    const SymplecticClass a = areas(surface, r.reduced);
    int best = i;
    for (int j = i + 1; j <= k; ++j) {
      if (a(j) > a(best)) best = j;
    }
    if (best != i) {
      const Reflection step = Transposition{i, best};
      r.reduced = reflect(surface, r.reduced, root_of(surface, step));
      r.word.push_back(step);
    }
  }
}

[[noreturn]] void reject_boundary(const SurfaceModel& surface, const Reduction& r,
                                  const LatticeClass& reduced_frame_class, const Rational& area) {
  const LatticeClass original = apply(surface, inverse(r.word), reduced_frame_class);
  throw ValidationError("class is not in the open symplectic cone: exceptional class " +
                        notation(surface, original) + " has area " + format_rational(area));
}

}  // namespace

Reduction reduce(const SurfaceModel& surface, const SymplecticClass& u) {
  require_forward(surface, u, "u");
  Reduction r{u, {}};
  if (surface.is_product()) {
    const SymplecticClass a = areas(surface, u);
    if (a(1) > a(0)) {
      r.reduced = reflect(surface, r.reduced, root_of(surface, FactorSwap{}));
      r.word.push_back(FactorSwap{});
    }
    return r;
  }

  const int k = surface.points();
  for (int step = 0;; ++step) {
    if (step > kMaxReductionSteps) throw ConsistencyError("Cremona reduction did not terminate");
    sort_points(surface, r);
    if (k < 3) break;
    const SymplecticClass a = areas(surface, r.reduced);
    if (a(0) >= a(1) + a(2) + a(3)) break;
    const Reflection move = CremonaMove{1, 2, 3};
    r.reduced = reflect(surface, r.reduced, root_of(surface, move));
    r.word.push_back(move);
  }

  const SymplecticClass a = areas(surface, r.reduced);
  if (k >= 1 && a(k) <= 0) reject_boundary(surface, r, surface.unit(k), a(k));
  if (k == 2 && a(0) - a(1) - a(2) <= 0) {
    reject_boundary(surface, r, make_class(surface, {1, -1, -1}), a(0) - a(1) - a(2));
  }
  return r;
}

bool is_reduced(const SurfaceModel& surface, const SymplecticClass& u) {
  const SymplecticClass a = areas(surface, u);
  if (surface.is_product()) return a(0) >= a(1);
  const int k = surface.points();
  Rational top3 = 0;
  for (int i = 1; i <= k; ++i) {
    if (a(i) < 0) return false;
    if (i < k && a(i) < a(i + 1)) return false;
    if (i <= 3) top3 += a(i);
  }
  return a(0) >= top3;
}

std::optional<WeylWord> exceptional_reduction(const SurfaceModel& surface, const LatticeClass& a) {
  detail::check_rank(surface, a.size());
  if (surface.is_product()) return std::nullopt;
  if (square(surface, a) != -1 || pairing(surface, surface.canonical(), a) != -1) return std::nullopt;

  // Cremona moves need three points; pad with unused points when k < 3.
  const int k = std::max(surface.points(), 3);
  const SurfaceModel padded = SurfaceModel::blowup(k);
  LatticeClass x = padded.zero();
  x.head(a.size()) = a;

  WeylWord word;
  for (int step = 0; step < kMaxReductionSteps; ++step) {
    // coordinates: x = d H + sum x_i E_i, multiplicities m_i = -x_i
    for (int i = 1; i <= k; ++i) {
      int best = i;
      for (int j = i + 1; j <= k; ++j) {
        if (-x(j) > -x(best)) best = j;
      }
      if (best != i) {
        std::swap(x(i), x(best));
        word.push_back(Transposition{i, best});
      }
    }
    const Integer d = x(0);
    if (d == 0) {
      // Square -1 with d = 0 forces a single nonzero coordinate of absolute value 1.
      for (int i = 1; i <= k; ++i) {
        if (x(i) == 1) return word;
      }
      return std::nullopt;
    }
    if (d < 0) return std::nullopt;
    const Integer m1 = -x(1), m2 = -x(2), m3 = -x(3);
    if (m1 + m2 + m3 <= d) return std::nullopt;
    const CremonaMove move{1, 2, 3};
    x = reflect(padded, x, root_of(padded, move));
    word.push_back(move);
  }
  throw ConsistencyError("exceptional-class reduction did not terminate");
}

// ---------------------------------------------------------------------------

AreaForm::AreaForm(const SurfaceModel& surface, const SymplecticClass& u) : areas_(areas(surface, u)) {
  using mpz_int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
  mpz_int den = 1;
  for (Eigen::Index i = 0; i < areas_.size(); ++i) {
    den = boost::multiprecision::lcm(den, mpz_int(boost::multiprecision::denominator(areas_(i))));
  }
  const mpz_int limit = mpz_int(1) << 60;
  fast_ = true;
  scaled_.resize(static_cast<std::size_t>(areas_.size()));
  for (Eigen::Index i = 0; i < areas_.size(); ++i) {
    const mpz_int v = mpz_int(boost::multiprecision::numerator(areas_(i))) *
                      (den / mpz_int(boost::multiprecision::denominator(areas_(i))));
    if (abs(v) >= limit) {
      fast_ = false;
      break;
    }
    scaled_[static_cast<std::size_t>(i)] = v.convert_to<std::int64_t>();
  }
}

Rational AreaForm::operator()(const LatticeClass& a) const {
  Rational total = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != 0) total += areas_(i) * a(i);
  }
  return total;
}

int AreaForm::sign(const LatticeClass& a) const {
  // |a_i| stays far below 2^31 for every enumerated class, so the sum fits in 128 bits.
  if (fast_ && a.cwiseAbs().maxCoeff() < (Integer(1) << 31)) {
    __int128 total = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      total += static_cast<__int128>(scaled_[static_cast<std::size_t>(i)]) * a(i);
    }
    return (total > 0) - (total < 0);
  }
  return (*this)(a).sign();
}

}  // namespace sympstab
