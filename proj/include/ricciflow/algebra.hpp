#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "ricciflow/errors.hpp"

namespace ricciflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense element of V = Λ²(ℝⁿ)* ⊗ ℝⁿ, i.e. a bilinear map μ : ℝⁿ × ℝⁿ → ℝⁿ
/// stored as the n³ array of components ⟨μ(e_i, e_j), e_k⟩.
///
/// Skew-symmetry is not enforced here; `LieAlgebra::tensor()` always produces
/// a skew tensor and every operation in this library preserves it.
template <typename Scalar>
class BracketTensorT {
public:
  using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using SliceType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BracketTensorT() = default;
  explicit BracketTensorT(int dim)
      : dim_(dim), values_(Storage::Zero(static_cast<Eigen::Index>(dim) * dim * dim)) {}

  int dim() const { return dim_; }

  Scalar& operator()(int i, int j, int k) { return values_[index(i, j, k)]; }
  Scalar operator()(int i, int j, int k) const { return values_[index(i, j, k)]; }

  /// Flat view, handy for norms and inner products.
  const Storage& values() const { return values_; }
  Storage& values() { return values_; }

  /// The n×n matrix (i, j) ↦ ⟨μ(e_i, e_j), e_k⟩.
  SliceType slice(int k) const {
    SliceType s(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) s(i, j) = (*this)(i, j, k);
    return s;
  }

  void set_slice(int k, const SliceType& s) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) (*this)(i, j, k) = s(i, j);
  }

  BracketTensorT& operator+=(const BracketTensorT& o) { values_ += o.values_; return *this; }
  BracketTensorT& operator-=(const BracketTensorT& o) { values_ -= o.values_; return *this; }
  BracketTensorT& operator*=(Scalar s) { values_ *= s; return *this; }

  friend BracketTensorT operator+(BracketTensorT a, const BracketTensorT& b) { return a += b; }
  friend BracketTensorT operator-(BracketTensorT a, const BracketTensorT& b) { return a -= b; }
  friend BracketTensorT operator*(Scalar s, BracketTensorT a) { return a *= s; }

private:
  Eigen::Index index(int i, int j, int k) const {
    return (static_cast<Eigen::Index>(i) * dim_ + j) * dim_ + k;
  }

  int dim_ = 0;
  Storage values_;
};

using BracketTensor = BracketTensorT<double>;

/// One stored structure constant c_{ij}^k with i < j (0-based).
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;

  friend bool operator==(const StructureConstant&, const StructureConstant&) = default;
};

/// A skew-symmetric algebra on ℝⁿ given by its structure constants in the
/// canonical basis: [e_i, e_j] = Σ_k c_{ij}^k e_k.
///
/// Entries are kept sparse, sorted lexicographically by (i, j, k), with i < j.
/// Access with i > j flips the sign. The constructor does not check Jacobi;
/// use `jacobi_defect` for that.
class LieAlgebra {
public:
  LieAlgebra() = default;
  /// Abelian algebra of dimension `dim`.
  explicit LieAlgebra(int dim);
  /// Throws InvalidInput on out-of-range indices, i >= j, or duplicate (i, j, k).
  /// Exact zeros are discarded.
  LieAlgebra(int dim, std::vector<StructureConstant> entries);

  /// Reads the skew part of `t` (entries with i < j); drops components with
  /// |c| <= drop_tolerance.
  static LieAlgebra from_tensor(const BracketTensor& t, double drop_tolerance = 0.0);

  int dim() const { return dim_; }
  std::span<const StructureConstant> entries() const { return entries_; }
  bool is_abelian() const { return entries_.empty(); }

  /// c_{ij}^k with the antisymmetric convention, any i, j.
  double operator()(int i, int j, int k) const;

  BracketTensor tensor() const;
  /// Matrix of ad e_i: column m holds the coordinates of [e_i, e_m].
  Matrix ad(int i) const;
  Vector bracket(const Vector& x, const Vector& y) const;
  /// max |c_{ij}^k| (0 for the abelian algebra).
  double scale() const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

private:
  int dim_ = 0;
  std::vector<StructureConstant> entries_;
};

/// Invertible A ∈ GL_n(ℝ), together with its inverse.
class BasisChange {
public:
  /// Throws InvalidInput if |det A| is below `singularity_floor` times the
  /// Hadamard bound Π‖a_j‖.
  explicit BasisChange(Matrix a, double singularity_floor = 1e-12);

  const Matrix& matrix() const { return a_; }
  const Matrix& inverse() const { return a_inv_; }
  int dim() const { return static_cast<int>(a_.rows()); }

private:
  Matrix a_;
  Matrix a_inv_;
};

/// α ∈ gl_n(ℝ) with cached shape flags.
class GlElement {
public:
  explicit GlElement(Matrix alpha);
  /// E_rs: the matrix with a single 1 at (r, s).
  static GlElement unit(int dim, int r, int s);
  static GlElement diagonal(const Vector& d);

  const Matrix& matrix() const { return alpha_; }
  int dim() const { return static_cast<int>(alpha_.rows()); }
  bool is_symmetric() const { return symmetric_; }
  bool is_diagonal() const { return diagonal_; }

private:
  Matrix alpha_;
  bool symmetric_ = false;
  bool diagonal_ = false;
};

/// Max over i < j < k of ‖[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]‖.
double jacobi_defect(const LieAlgebra& algebra);

/// The action A·μ(X, Y) = Aμ(A⁻¹X, A⁻¹Y) on a dense tensor.
BracketTensor change_basis(const BracketTensor& mu, const BasisChange& a);
/// Same action; components below 1e-14·scale are treated as rounding noise.
LieAlgebra change_basis(const LieAlgebra& algebra, const BasisChange& a);

/// π(α)μ = αμ(·,·) − μ(α·,·) − μ(·,α·).
BracketTensor pi_action(const GlElement& alpha, const BracketTensor& mu);
BracketTensor pi_action(const GlElement& alpha, const LieAlgebra& algebra);

/// Σ over all ordered (i, j) and k; a single v_{ijk} has squared norm 2.
double inner_v(const BracketTensor& mu, const BracketTensor& lambda);

/// The weight vector v_{ijk} = (e'_i ∧ e'_j) ⊗ e_k, i < j.
BracketTensor weight_vector(int dim, int i, int j, int k);

struct CentralSeries {
  /// dim C⁰, dim C¹, ... up to the first repeat or zero.
  std::vector<int> dims;
  bool nilpotent = false;
  /// (n₁, …, n_r) when nilpotent, empty otherwise.
  std::vector<int> type;
};

CentralSeries lower_central_series(const LieAlgebra& algebra);
/// Type of a nilpotent algebra; nullopt when not nilpotent.
std::optional<std::vector<int>> type_of(const LieAlgebra& algebra);
bool is_nilpotent(const LieAlgebra& algebra);
bool is_solvable(const LieAlgebra& algebra);
bool is_unimodular(const LieAlgebra& algebra);

/// Basis of Der(𝔤): the kernel of D ↦ D[e_i,e_j] − [De_i,e_j] − [e_i,De_j].
std::vector<Matrix> derivation_algebra(const LieAlgebra& algebra);

/// Stacked derivation defect of D over all i < j (length n·n(n−1)/2).
Vector derivation_defect(const LieAlgebra& algebra, const Matrix& d);

} // namespace ricciflow
