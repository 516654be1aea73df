#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ricciflow/algebra.hpp"
#include "ricciflow/nice.hpp"

namespace ricciflow {

/// Inner product ⟨P·,·⟩ on ℝⁿ relative to the canonical basis.
class Metric {
public:
  /// Throws InvalidInput unless P is symmetric (to 1e-12 relative) and
  /// positive definite.
  explicit Metric(Matrix p);

  static Metric canonical(int dim);
  /// Diagonal metric with ⟨e_i, e_i⟩ = entries[i].
  static Metric diagonal(const Vector& entries);

  const Matrix& matrix() const { return p_; }
  int dim() const { return static_cast<int>(p_.rows()); }
  bool is_diagonal() const { return diagonal_; }

  /// Symmetric square root P^{1/2} and its inverse.
  const Matrix& sqrt() const { return sqrt_; }
  const Matrix& inv_sqrt() const { return inv_sqrt_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  double condition_number() const { return eigenvalues_.maxCoeff() / eigenvalues_.minCoeff(); }

private:
  Matrix p_;
  bool diagonal_ = false;
  Matrix sqrt_;
  Matrix inv_sqrt_;
  Vector eigenvalues_;
};

/// Everything in the fixed (canonical) basis of the algebra. Operators are
/// self-adjoint for ⟨P·,·⟩; Rc = P·Ric is the symmetric tensor.
struct RicciReport {
  Matrix rc;
  Matrix ric;
  Matrix m;
  Matrix b;
  Matrix sad_h;
  Vector h;
};

/// H = P⁻¹h with h_i = tr ad e_i, so ⟨H, X⟩_P = tr ad X.
Vector mean_curvature_vector(const LieAlgebra& algebra, const Metric& metric);
/// B = P⁻¹·[tr(ad e_i ad e_j)].
Matrix killing_operator(const LieAlgebra& algebra, const Metric& metric);

/// Ric = M − ½B − S(ad H), evaluated in a P-orthonormal frame built from the
/// symmetric square root and mapped back to the fixed basis.
RicciReport ricci(const LieAlgebra& algebra, const Metric& metric);
/// The same for a raw tensor in the canonical metric (no Jacobi requirement).
RicciReport ricci_canonical(const BracketTensor& mu);

/// Largest off-diagonal |Rc_rs| divided by ‖Rc‖_F (0 when Rc = 0).
double offdiagonal_ratio(const Matrix& rc);

struct MomentMapFit {
  double kappa = 0.0;
  double residual = 0.0;
};

/// Fits κ in ⟨Ric_μ, α⟩ = κ⟨π(α)μ, μ⟩ over α ∈ {E_ii} ∪ {E_ij + E_ji}.
/// Throws InvalidInput for non-nilpotent or abelian input.
MomentMapFit moment_map_check(const LieAlgebra& algebra);

struct SamplingOptions {
  int samples = 50;
  std::uint64_t seed = 1;
  double offdiag_threshold = 1e-6;
  /// Diagonal entries a_i² are drawn log-uniformly in [10^-range, 10^range].
  double log10_range = 2.0;
};

struct NumericDiagonalVerdict {
  bool stably_diagonal = true;
  int samples_checked = 0;
  double max_offdiag_ratio = 0.0;
  std::optional<Metric> witness;
};

/// Canonical metric first, then `samples` random diagonal metrics; stops at
/// the first one with off-diagonal Ricci above threshold.
NumericDiagonalVerdict stably_ricci_diagonal_numeric(const LieAlgebra& algebra,
                                                     const SamplingOptions& options = {});

/// The i-th random diagonal metric used by the sampler (i >= 1; 0 is canonical).
Metric sampled_diagonal_metric(int dim, std::uint64_t seed, int index, double log10_range = 2.0);

struct WeightPairTerm {
  StructureConstant first;
  StructureConstant second;
  double product = 0.0;
};

struct RootGroup {
  PositiveRoot root;
  std::vector<WeightPairTerm> terms;
};

struct ExactDiagonalVerdict {
  bool stably_diagonal = true;
  /// For every root hit by some weight difference α_first − α_second, the
  /// pairs involved and their coefficient products. Empty iff nice.
  std::vector<RootGroup> diagnostic;
};

/// Exact decision for nilpotent algebras: stably Ricci-diagonal iff nice.
/// Throws InvalidInput when not nilpotent or when some c_{ij}^k ≠ 0 has
/// k ∈ {i, j}.
ExactDiagonalVerdict stably_ricci_diagonal_exact(const LieAlgebra& algebra);

} // namespace ricciflow
