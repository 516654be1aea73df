#include "ricciflow/nice.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ricciflow {

namespace {

std::vector<StructureConstant> nonzero_entries(const LieAlgebra& algebra) {
  std::vector<StructureConstant> out;
  for (const auto& e : algebra.entries())
    if (std::abs(e.value) > kNonzeroStructureConstant) out.push_back(e);
  return out;
}

// Exactly one shared index between {a.i, a.j} and {b.i, b.j}.
bool share_one_index(const StructureConstant& a, const StructureConstant& b) {
  const int shared = (a.i == b.i) + (a.i == b.j) + (a.j == b.i) + (a.j == b.j);
  return shared == 1;
}

} // namespace

Weight make_weight(int dim, int i, int j, int k) {
  Weight w{i, j, k, Eigen::VectorXi::Zero(dim)};
  w.vec[k] += 1;
  w.vec[i] -= 1;
  w.vec[j] -= 1;
  return w;
}

PositiveRoot make_root(int dim, int l, int m) {
  if (!(l > m && m >= 0 && l < dim)) throw InvalidInput("positive root requires n > l > m >= 0");
  PositiveRoot r{l, m, Eigen::VectorXi::Zero(dim)};
  r.vec[l] = 1;
  r.vec[m] = -1;
  return r;
}

std::optional<PositiveRoot> as_positive_root(const Eigen::VectorXi& v) {
  int l = -1, m = -1;
  for (Eigen::Index p = 0; p < v.size(); ++p) {
    if (v[p] == 0) continue;
    if (v[p] == 1 && l < 0) l = static_cast<int>(p);
    else if (v[p] == -1 && m < 0) m = static_cast<int>(p);
    else return std::nullopt;
  }
  if (l < 0 || m < 0 || l <= m) return std::nullopt;
  return make_root(static_cast<int>(v.size()), l, m);
}

std::vector<PositiveRoot> positive_roots(int dim) {
  std::vector<PositiveRoot> roots;
  for (int l = 0; l < dim; ++l)
    for (int m = 0; m < l; ++m) roots.push_back(make_root(dim, l, m));
  return roots;
}

NiceVerdict is_nice_basis(const LieAlgebra& algebra) {
  const auto entries = nonzero_entries(algebra);
  for (std::size_t a = 0; a < entries.size(); ++a)
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      const auto& x = entries[a];
      const auto& y = entries[b];
      const bool same_pair = x.i == y.i && x.j == y.j;
      const bool same_target = x.k == y.k && share_one_index(x, y);
      if (same_pair || same_target) return {false, NiceWitness{x, y, std::nullopt}};
    }
  return {};
}

std::vector<Weight> weights(const LieAlgebra& algebra) {
  std::vector<Weight> out;
  for (const auto& e : nonzero_entries(algebra))
    out.push_back(make_weight(algebra.dim(), e.i, e.j, e.k));
  return out;
}

bool root_criterion_applicable(const LieAlgebra& algebra) {
  for (const auto& e : nonzero_entries(algebra))
    if (e.k == e.i || e.k == e.j) return false;
  return is_nilpotent(algebra);
}

std::optional<NiceVerdict> nice_via_roots(const LieAlgebra& algebra) {
  if (!root_criterion_applicable(algebra)) return std::nullopt;
  const auto entries = nonzero_entries(algebra);
  const auto ws = weights(algebra);
  for (std::size_t a = 0; a < ws.size(); ++a)
    for (std::size_t b = 0; b < ws.size(); ++b) {
      if (a == b) continue;
      if (auto root = as_positive_root(ws[a].vec - ws[b].vec))
        return NiceVerdict{false, NiceWitness{entries[a], entries[b], std::move(root)}};
    }
  return NiceVerdict{};
}

bool pairing_nonzero(const PositiveRoot& root, const Weight& w1, const Weight& w2) {
  if (root.vec.size() != w1.vec.size() || w1.vec.size() != w2.vec.size())
    throw InvalidInput("pairing_nonzero: dimension mismatch");
  return (w2.vec - w1.vec) == root.vec;
}

std::optional<BasisChange> simple_derivation_nice_basis(const LieAlgebra& algebra,
                                                        const SimpleDerivationOptions& options) {
  const int n = algebra.dim();
  const auto der = derivation_algebra(algebra);
  if (der.empty()) return std::nullopt;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> coeff(0.0, 1.0);
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    Matrix d = Matrix::Zero(n, n);
    for (const auto& basis_element : der) d += coeff(rng) * basis_element;

    Eigen::EigenSolver<Matrix> eig(d);
    if (eig.info() != Eigen::Success) continue;
    const Eigen::VectorXcd lambda = eig.eigenvalues();
    const double radius = lambda.cwiseAbs().maxCoeff();
    if (!(radius > 0.0)) continue;

    bool simple = true;
    for (Eigen::Index p = 0; p < n && simple; ++p) {
      if (std::abs(lambda[p].imag()) > options.distinct_gap * radius) simple = false;
      for (Eigen::Index q = p + 1; q < n && simple; ++q)
        if (std::abs(lambda[p] - lambda[q]) <= options.distinct_gap * radius) simple = false;
    }
    if (!simple) continue;

    // Columns of V are the new basis vectors; structure constants in that
    // basis are those of V⁻¹·μ.
    Matrix v = eig.eigenvectors().real();
    for (Eigen::Index c = 0; c < n; ++c) v.col(c).normalize();
    try {
      BasisChange to_eigenbasis(v.inverse());
      if (is_nice_basis(change_basis(algebra, to_eigenbasis)).nice) return to_eigenbasis;
    } catch (const InvalidInput&) {
      continue;
    }
  }
  return std::nullopt;
}

bool nikolayevsky_no_nice_type(int p, int q) {
  if (p < 1 || q < 1) throw InvalidInput("type (p, q) requires p, q >= 1");
  // Both sides doubled to stay in integers.
  const long long P = p, Q = q;
  const long long lhs = std::min(Q * (Q - 1), P * Q) + 2 * Q * Q + 2 * P * P - 2;
  const long long rhs = P * Q * (Q - 1);
  return lhs < rhs;
}

} // namespace ricciflow
