#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ricciflow/algebra.hpp"

namespace ricciflow {

/// |c| above this counts as a nonzero structure constant.
inline constexpr double kNonzeroStructureConstant = 1e-12;

/// Weight α_{ij}^k = E_kk − E_ii − E_jj of the basis vector v_{ijk}, as an
/// integer diagonal.
struct Weight {
  int i = 0;
  int j = 0;
  int k = 0;
  Eigen::VectorXi vec;

  /// True when k ∈ {i, j}; such weights coincide for different (i, j, k).
  bool degenerate() const { return k == i || k == j; }
};

Weight make_weight(int dim, int i, int j, int k);

/// Positive root E_ll − E_mm with l > m.
struct PositiveRoot {
  int l = 0;
  int m = 0;
  Eigen::VectorXi vec;
};

PositiveRoot make_root(int dim, int l, int m);
/// The root E_ll − E_mm if `v` is one, nullopt otherwise.
std::optional<PositiveRoot> as_positive_root(const Eigen::VectorXi& v);
std::vector<PositiveRoot> positive_roots(int dim);

struct NiceWitness {
  StructureConstant first;
  StructureConstant second;
  /// Set by the root criterion: weight(first) − weight(second).
  std::optional<PositiveRoot> root;
};

struct NiceVerdict {
  bool nice = true;
  std::optional<NiceWitness> witness;
};

/// The combinatorial test: every [e_i, e_j] is a multiple of one basis
/// vector, and two brackets landing on the same e_k have disjoint index pairs.
/// The witness is the first conflicting pair of stored entries.
NiceVerdict is_nice_basis(const LieAlgebra& algebra);

/// One weight per nonzero structure constant, in (i, j, k) order.
std::vector<Weight> weights(const LieAlgebra& algebra);

/// Whether every nonzero c_{ij}^k has k ∉ {i, j} and the algebra is nilpotent,
/// which is what the root criterion needs.
bool root_criterion_applicable(const LieAlgebra& algebra);

/// Nice iff no difference of two weights of nonzero constants is a positive
/// root. nullopt when the criterion is not applicable.
std::optional<NiceVerdict> nice_via_roots(const LieAlgebra& algebra);

/// Whether w2 − w1 equals the root, i.e. ⟨π(E_lm) v_{w1}, v_{w2}⟩ ≠ 0 for
/// non-degenerate weights.
bool pairing_nonzero(const PositiveRoot& root, const Weight& w1, const Weight& w2);

struct SimpleDerivationOptions {
  int attempts = 64;
  std::uint64_t seed = 1;
  /// Minimum pairwise eigenvalue gap relative to the spectral radius.
  double distinct_gap = 1e-6;
};

/// Searches Der(𝔫) for a diagonalizable derivation with n distinct real
/// eigenvalues. On success returns the basis change to its eigenbasis, in
/// which the algebra is nice. An empty result does not prove that no nice
/// basis exists.
std::optional<BasisChange> simple_derivation_nice_basis(const LieAlgebra& algebra,
                                                        const SimpleDerivationOptions& options = {});

/// ½ min{q(q−1), pq} + q² + p² − 1 < ½ pq(q−1): a dimension count showing
/// 2-step algebras of type (p, q) without nice basis exist.
bool nikolayevsky_no_nice_type(int p, int q);

} // namespace ricciflow
