#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "sympstab/errors.hpp"
#include "sympstab/rational.hpp"

namespace sympstab {

template <typename Scalar>
using ClassVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Integral class in H_2(M;Z), coordinates in the standard basis (B,F) or (H,E_1..E_k).
using LatticeClass = ClassVector<Integer>;

/// Cohomology class u = [omega], identified with H_2 via Poincare duality.
using SymplecticClass = ClassVector<Rational>;

using GramMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

enum class SurfaceKind { Product, BlowUp };

/// S^2 x S^2 in the basis (B,F), or CP^2 # k(-CP^2) in the basis (H,E_1..E_k), 0 <= k <= 9.
class SurfaceModel {
 public:
  /// CP^2.
  SurfaceModel() : SurfaceModel(SurfaceKind::BlowUp, 0) {}

  static SurfaceModel product();
  static SurfaceModel blowup(int k);

  SurfaceKind kind() const noexcept { return kind_; }
  bool is_product() const noexcept { return kind_ == SurfaceKind::Product; }
  /// Number of blown-up points; zero for the product.
  int points() const noexcept { return points_; }
  Eigen::Index rank() const noexcept { return gram_.rows(); }
  int euler_characteristic() const noexcept { return static_cast<int>(rank()) + 2; }
  const GramMatrix& gram() const noexcept { return gram_; }
  const LatticeClass& canonical() const noexcept { return canonical_; }
  Integer canonical_square() const;

  LatticeClass zero() const { return LatticeClass::Zero(rank()); }
  LatticeClass unit(Eigen::Index i) const;

  /// "product" or "blowup:k".
  std::string spec_string() const;

  friend bool operator==(const SurfaceModel& a, const SurfaceModel& b) {
    return a.kind_ == b.kind_ && a.points_ == b.points_;
  }

 private:
  SurfaceModel(SurfaceKind kind, int points);

  SurfaceKind kind_;
  int points_;
  GramMatrix gram_;
  LatticeClass canonical_;
};

/// Parse "product" or "blowup:k".
SurfaceModel parse_surface(const std::string& text);

/// Build a class from coordinates; throws when the length is not the rank.
LatticeClass make_class(const SurfaceModel& surface, std::initializer_list<Integer> coords);

namespace detail {

template <typename A, typename B>
using PairingScalar =
    std::conditional_t<std::is_same_v<A, Integer> && std::is_same_v<B, Integer>, Integer, Rational>;

void check_rank(const SurfaceModel& surface, Eigen::Index size);

}  // namespace detail

/// a^T G b, exact. Integer when both arguments are integral, Rational otherwise.
template <typename DerivedA, typename DerivedB>
auto pairing(const SurfaceModel& surface, const Eigen::MatrixBase<DerivedA>& a,
             const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = detail::PairingScalar<typename DerivedA::Scalar, typename DerivedB::Scalar>;
  detail::check_rank(surface, a.size());
  detail::check_rank(surface, b.size());
  const ClassVector<Scalar> gb = surface.gram().template cast<Scalar>() * b.template cast<Scalar>();
  return Scalar(a.template cast<Scalar>().dot(gb));
}

template <typename Derived>
auto square(const SurfaceModel& surface, const Eigen::MatrixBase<Derived>& a) {
  return pairing(surface, a, a);
}

/// K.A + A.A + 2; zero exactly when A satisfies the embedded-sphere adjunction constraint.
Integer adjunction_defect(const SurfaceModel& surface, const LatticeClass& a);

/// Codimension 2(-A.A - 1) of the stratum labelled by a negative class.
int cod(const SurfaceModel& surface, const LatticeClass& a);

/// Symplectic areas of the basis classes: (u.B, u.F) or (nu, c_1..c_k) where u = nu H - sum c_i E_i.
SymplecticClass areas(const SurfaceModel& surface, const SymplecticClass& u);

/// Inverse of areas(); the Gram matrix is an involution for both models.
SymplecticClass from_areas(const SurfaceModel& surface, const SymplecticClass& area_vector);

/// u.u > 0 and u.K < 0.
bool is_forward(const SurfaceModel& surface, const SymplecticClass& u);

/// Throws ValidationError naming `label` when u is not forward.
void require_forward(const SurfaceModel& surface, const SymplecticClass& u, const std::string& label);

/// Lexicographic order on coordinates; used for every set serialization and tie-break.
struct CanonicalOrder {
  template <typename DerivedA, typename DerivedB>
  bool operator()(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) const {
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
      if (a(i) < b(i)) return true;
      if (b(i) < a(i)) return false;
    }
    return a.size() < b.size();
  }
};

bool same_class(const LatticeClass& a, const LatticeClass& b);

/// Sort canonically and drop duplicates.
void canonicalize(std::vector<LatticeClass>& classes);

/// Human-readable class in the usual notation, e.g. "2H-E_1-E_2" or "B-3F".
std::string notation(const SurfaceModel& surface, const LatticeClass& a);

// ---------------------------------------------------------------------------
// Weyl group

/// Reflection in H - E_i - E_j - E_l (1-based indices).
struct CremonaMove {
  int i, j, l;
};

/// Reflection in E_i - E_j (1-based indices).
struct Transposition {
  int i, j;
};

/// Reflection in B - F on the product.
struct FactorSwap {};

using Reflection = std::variant<CremonaMove, Transposition, FactorSwap>;

/// Reflections applied left to right.
using WeylWord = std::vector<Reflection>;

/// The (-2)-root whose reflection the descriptor denotes; validates indices.
LatticeClass root_of(const SurfaceModel& surface, const Reflection& step);

std::string describe(const Reflection& step);

/// Throws unless root.root = -2 and K.root = 0.
void require_root(const SurfaceModel& surface, const LatticeClass& root);

/// Reflection x -> x + (x.r) r in a root r. Isometry, involution, fixes K.
template <typename Derived>
ClassVector<typename Derived::Scalar> reflect(const SurfaceModel& surface,
                                              const Eigen::MatrixBase<Derived>& x,
                                              const LatticeClass& root) {
  using Scalar = typename Derived::Scalar;
  require_root(surface, root);
  const Scalar coeff = pairing(surface, x, root);
  return x + coeff * root.template cast<Scalar>();
}

template <typename Derived>
ClassVector<typename Derived::Scalar> apply(const SurfaceModel& surface, const WeylWord& word,
                                            const Eigen::MatrixBase<Derived>& x) {
  ClassVector<typename Derived::Scalar> out = x;
  for (const auto& step : word) out = reflect(surface, out, root_of(surface, step));
  return out;
}

/// Each reflection is an involution, so the inverse is the reversed word.
WeylWord inverse(const WeylWord& word);

struct Reduction {
  SymplecticClass reduced;
  WeylWord word;  ///< apply(word, u) == reduced
};

/// Weyl-reduce a forward class. BlowUp: nu >= c_1+c_2+c_3 and c_1 >= ... >= c_k > 0.
/// Product: B-area >= F-area. Throws when u is not in the open symplectic cone.
Reduction reduce(const SurfaceModel& surface, const SymplecticClass& u);

/// Reduced-form inequalities of the reduce() post-condition.
bool is_reduced(const SurfaceModel& surface, const SymplecticClass& u);

/// Cremona-reduce an integral class; returns the word mapping it to some E_i, if one exists.
std::optional<WeylWord> exceptional_reduction(const SurfaceModel& surface, const LatticeClass& a);

// ---------------------------------------------------------------------------

/// Evaluates u.A for many lattice classes; integer fast path for signs.
class AreaForm {
 public:
  AreaForm(const SurfaceModel& surface, const SymplecticClass& u);

  Rational operator()(const LatticeClass& a) const;
  int sign(const LatticeClass& a) const;

 private:
  SymplecticClass areas_;
  std::vector<std::int64_t> scaled_;
  bool fast_ = false;
};

}  // namespace sympstab
