#include "ricciflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace ricciflow {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

// ad matrices of a dense tensor: ad_a(k, i) = μ(e_a, e_i)_k.
std::vector<Matrix> ad_matrices(const BracketTensor& mu) {
  const int n = mu.dim();
  std::vector<Matrix> ad(n, Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) ad[a](k, i) = mu(a, i, k);
  return ad;
}

Vector ad_traces(const std::vector<Matrix>& ad) {
  Vector h(static_cast<Eigen::Index>(ad.size()));
  for (std::size_t a = 0; a < ad.size(); ++a) h[static_cast<Eigen::Index>(a)] = ad[a].trace();
  return h;
}

Matrix killing_form(const std::vector<Matrix>& ad) {
  const auto n = static_cast<Eigen::Index>(ad.size());
  Matrix b(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index c = a; c < n; ++c) b(a, c) = b(c, a) = (ad[a] * ad[c]).trace();
  return b;
}

void require_metric_dim(const LieAlgebra& algebra, const Metric& metric) {
  if (algebra.dim() != metric.dim()) throw InvalidInput("metric dimension does not match algebra");
}

} // namespace

Metric::Metric(Matrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) throw InvalidInput("metric must be a non-empty square matrix");
  if (!p_.allFinite()) throw InvalidInput("metric has non-finite entries");
  const double scale = p_.cwiseAbs().maxCoeff();
  if ((p_ - p_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale)
    throw InvalidInput("metric is not symmetric");
  p_ = 0.5 * (p_ + p_.transpose());

  const Matrix off = p_ - Matrix(p_.diagonal().asDiagonal());
  diagonal_ = (off.array() == 0.0).all();
  if (diagonal_) {
    eigenvalues_ = p_.diagonal();
    if (!(eigenvalues_.minCoeff() > 0.0)) throw InvalidInput("metric is not positive definite");
    sqrt_ = eigenvalues_.cwiseSqrt().asDiagonal();
    inv_sqrt_ = eigenvalues_.cwiseSqrt().cwiseInverse().asDiagonal();
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(p_);
  if (eig.info() != Eigen::Success) throw InvalidInput("metric eigendecomposition failed");
  eigenvalues_ = eig.eigenvalues();
  if (!(eigenvalues_.minCoeff() > 0.0)) throw InvalidInput("metric is not positive definite");
  const Matrix& q = eig.eigenvectors();
  sqrt_ = q * eigenvalues_.cwiseSqrt().asDiagonal() * q.transpose();
  inv_sqrt_ = q * eigenvalues_.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();
}

Metric Metric::canonical(int dim) {
  if (dim <= 0) throw InvalidInput("dimension must be positive");
  return Metric(Matrix::Identity(dim, dim));
}

Metric Metric::diagonal(const Vector& entries) { return Metric(Matrix(entries.asDiagonal())); }

Vector mean_curvature_vector(const LieAlgebra& algebra, const Metric& metric) {
  require_metric_dim(algebra, metric);
  Vector h(algebra.dim());
  for (int a = 0; a < algebra.dim(); ++a) h[a] = algebra.ad(a).trace();
  return metric.matrix().ldlt().solve(h);
}

Matrix killing_operator(const LieAlgebra& algebra, const Metric& metric) {
  require_metric_dim(algebra, metric);
  const auto ad = ad_matrices(algebra.tensor());
  return metric.matrix().ldlt().solve(killing_form(ad));
}

RicciReport ricci_canonical(const BracketTensor& mu) {
  const int n = mu.dim();
  const auto ad = ad_matrices(mu);
  std::vector<Matrix> slices(n);
  for (int a = 0; a < n; ++a) slices[a] = mu.slice(a);

  RicciReport r;
  r.m = Matrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      r.m(a, b) = r.m(b, a) = -0.5 * ad[a].cwiseProduct(ad[b]).sum() +
                              0.25 * slices[a].cwiseProduct(slices[b]).sum();
  r.b = killing_form(ad);
  r.h = ad_traces(ad);
  Matrix ad_h = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    if (r.h[a] != 0.0) ad_h += r.h[a] * ad[a];
  r.sad_h = 0.5 * (ad_h + ad_h.transpose());
  r.ric = r.m - 0.5 * r.b - r.sad_h;
  r.rc = r.ric;
  return r;
}

RicciReport ricci(const LieAlgebra& algebra, const Metric& metric) {
  require_metric_dim(algebra, metric);
  // (μ, ⟨P·,·⟩) is isometric to (A·μ, canonical) with A = P^{1/2}.
  const BasisChange a(metric.sqrt());
  const RicciReport frame = ricci_canonical(change_basis(algebra.tensor(), a));
  const Matrix& fwd = metric.sqrt();
  const Matrix& back = metric.inv_sqrt();

  RicciReport r;
  r.m = back * frame.m * fwd;
  r.b = back * frame.b * fwd;
  r.sad_h = back * frame.sad_h * fwd;
  r.ric = back * frame.ric * fwd;
  r.h = back * frame.h;
  r.rc = metric.matrix() * r.ric;
  return r;
}

double offdiagonal_ratio(const Matrix& rc) {
  const double total = rc.norm();
  if (total == 0.0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index r = 0; r < rc.rows(); ++r)
    for (Eigen::Index s = 0; s < rc.cols(); ++s)
      if (r != s) worst = std::max(worst, std::abs(rc(r, s)));
  return worst / total;
}

MomentMapFit moment_map_check(const LieAlgebra& algebra) {
  if (algebra.is_abelian()) throw InvalidInput("moment map check needs a nonzero bracket");
  if (!is_nilpotent(algebra)) throw InvalidInput("moment map check needs a nilpotent algebra");
  const int n = algebra.dim();
  const BracketTensor mu = algebra.tensor();
  const Matrix ric = ricci_canonical(mu).ric;

  std::vector<double> lhs, rhs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Matrix alpha = Matrix::Zero(n, n);
      alpha(i, j) = 1.0;
      alpha(j, i) = 1.0;
      lhs.push_back((ric * alpha.transpose()).trace());
      rhs.push_back(inner_v(pi_action(GlElement(alpha), mu), mu));
    }
  const Eigen::Map<const Vector> l(lhs.data(), static_cast<Eigen::Index>(lhs.size()));
  const Eigen::Map<const Vector> p(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  MomentMapFit fit;
  fit.kappa = l.dot(p) / p.squaredNorm();
  fit.residual = (l - fit.kappa * p).norm() / l.norm();
  return fit;
}

Metric sampled_diagonal_metric(int dim, std::uint64_t seed, int index, double log10_range) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> exponent(-log10_range, log10_range);
  Vector d(dim);
  for (int i = 0; i < dim; ++i) d[i] = std::pow(10.0, exponent(rng));
  return Metric::diagonal(d);
}

NumericDiagonalVerdict stably_ricci_diagonal_numeric(const LieAlgebra& algebra,
                                                     const SamplingOptions& options) {
  NumericDiagonalVerdict verdict;
  for (int index = 0; index <= options.samples; ++index) {
    Metric metric = index == 0 ? Metric::canonical(algebra.dim())
                               : sampled_diagonal_metric(algebra.dim(), options.seed, index,
                                                         options.log10_range);
    const double ratio = offdiagonal_ratio(ricci(algebra, metric).rc);
    ++verdict.samples_checked;
    verdict.max_offdiag_ratio = std::max(verdict.max_offdiag_ratio, ratio);
    if (ratio > options.offdiag_threshold) {
      verdict.stably_diagonal = false;
      verdict.witness = std::move(metric);
      break;
    }
  }
  return verdict;
}

ExactDiagonalVerdict stably_ricci_diagonal_exact(const LieAlgebra& algebra) {
  if (!is_nilpotent(algebra))
    throw InvalidInput("exact stably-diagonal criterion only holds for nilpotent algebras");
  if (!root_criterion_applicable(algebra))
    throw InvalidInput("criterion not applicable: some nonzero c_ij^k has k in {i, j}");

  std::vector<StructureConstant> entries;
  for (const auto& e : algebra.entries())
    if (std::abs(e.value) > kNonzeroStructureConstant) entries.push_back(e);
  const auto ws = weights(algebra);

  std::map<std::pair<int, int>, RootGroup> groups;
  for (std::size_t a = 0; a < ws.size(); ++a)
    for (std::size_t b = 0; b < ws.size(); ++b) {
      if (a == b) continue;
      auto root = as_positive_root(ws[a].vec - ws[b].vec);
      if (!root) continue;
      auto& group = groups[{root->l, root->m}];
      group.root = *root;
      group.terms.push_back({entries[a], entries[b], entries[a].value * entries[b].value});
    }

  ExactDiagonalVerdict verdict;
  verdict.stably_diagonal = is_nice_basis(algebra).nice;
  for (auto& [key, group] : groups) verdict.diagnostic.push_back(std::move(group));
  return verdict;
}

} // namespace ricciflow
