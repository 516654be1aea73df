#include "ricciflow/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace ricciflow {

namespace {

constexpr double kRankTolerance = 1e-9;
constexpr double kNoiseFloor = 1e-14;

void require_dim(int dim) {
  if (dim <= 0) throw InvalidInput("dimension must be positive, got " + std::to_string(dim));
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b)
    throw InvalidInput(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                       " vs " + std::to_string(b) + ")");
}

// Orthonormal basis (as columns) of the span of `generators`, keeping
// directions whose singular value exceeds `tolerance`.
Matrix span_basis(const Matrix& generators, double tolerance) {
  if (generators.cols() == 0) return Matrix(generators.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(generators, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > tolerance && sigma[rank] > 0.0) ++rank;
  return svd.matrixU().leftCols(rank);
}

} // namespace

LieAlgebra::LieAlgebra(int dim) : dim_(dim) { require_dim(dim); }

LieAlgebra::LieAlgebra(int dim, std::vector<StructureConstant> entries) : dim_(dim) {
  require_dim(dim);
  for (const auto& e : entries) {
    auto in_range = [dim](int x) { return x >= 0 && x < dim; };
    if (!in_range(e.i) || !in_range(e.j) || !in_range(e.k))
      throw InvalidInput("structure constant index out of range: (" + std::to_string(e.i + 1) +
                         "," + std::to_string(e.j + 1) + "," + std::to_string(e.k + 1) + ")");
    if (e.i >= e.j)
      throw InvalidInput("structure constants must be stored with i < j: (" +
                         std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")");
    if (!std::isfinite(e.value)) throw InvalidInput("structure constant is not finite");
  }
  auto key = [](const StructureConstant& e) { return std::tie(e.i, e.j, e.k); };
  std::sort(entries.begin(), entries.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  for (std::size_t p = 1; p < entries.size(); ++p)
    if (key(entries[p - 1]) == key(entries[p]))
      throw InvalidInput("duplicate structure constant (" + std::to_string(entries[p].i + 1) +
                         "," + std::to_string(entries[p].j + 1) + "," +
                         std::to_string(entries[p].k + 1) + ")");
  std::erase_if(entries, [](const StructureConstant& e) { return e.value == 0.0; });
  entries_ = std::move(entries);
}

LieAlgebra LieAlgebra::from_tensor(const BracketTensor& t, double drop_tolerance) {
  std::vector<StructureConstant> entries;
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = t(i, j, k);
        if (std::abs(c) > drop_tolerance && c != 0.0) entries.push_back({i, j, k, c});
      }
  return LieAlgebra(n, std::move(entries));
}

double LieAlgebra::operator()(int i, int j, int k) const {
  if (i == j) return 0.0;
  const double sign = i < j ? 1.0 : -1.0;
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::tuple{i, j, k},
                             [](const StructureConstant& e, const std::tuple<int, int, int>& key) {
                               return std::tie(e.i, e.j, e.k) < key;
                             });
  if (it != entries_.end() && it->i == i && it->j == j && it->k == k) return sign * it->value;
  return 0.0;
}

BracketTensor LieAlgebra::tensor() const {
  BracketTensor t(dim_);
  for (const auto& e : entries_) {
    t(e.i, e.j, e.k) = e.value;
    t(e.j, e.i, e.k) = -e.value;
  }
  return t;
}

Matrix LieAlgebra::ad(int i) const {
  Matrix m = Matrix::Zero(dim_, dim_);
  for (const auto& e : entries_) {
    if (e.i == i) m(e.k, e.j) += e.value;
    if (e.j == i) m(e.k, e.i) -= e.value;
  }
  return m;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  require_same_dim(static_cast<int>(x.size()), dim_, "bracket");
  require_same_dim(static_cast<int>(y.size()), dim_, "bracket");
  Vector r = Vector::Zero(dim_);
  for (const auto& e : entries_) r[e.k] += e.value * (x[e.i] * y[e.j] - x[e.j] * y[e.i]);
  return r;
}

double LieAlgebra::scale() const {
  double s = 0.0;
  for (const auto& e : entries_) s = std::max(s, std::abs(e.value));
  return s;
}

BasisChange::BasisChange(Matrix a, double singularity_floor) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0)
    throw InvalidInput("basis change must be a non-empty square matrix");
  double hadamard = 1.0;
  for (Eigen::Index c = 0; c < a_.cols(); ++c) hadamard *= a_.col(c).norm();
  Eigen::FullPivLU<Matrix> lu(a_);
  const double det = lu.determinant();
  if (!(hadamard > 0.0) || !(std::abs(det) > singularity_floor * hadamard))
    throw InvalidInput("basis change is singular (|det A| = " + std::to_string(std::abs(det)) + ")");
  a_inv_ = lu.inverse();
}

GlElement::GlElement(Matrix alpha) : alpha_(std::move(alpha)) {
  if (alpha_.rows() != alpha_.cols()) throw InvalidInput("gl_n element must be square");
  symmetric_ = alpha_ == alpha_.transpose();
  diagonal_ = alpha_ == Matrix(alpha_.diagonal().asDiagonal());
}

GlElement GlElement::unit(int dim, int r, int s) {
  require_dim(dim);
  if (r < 0 || r >= dim || s < 0 || s >= dim) throw InvalidInput("E_rs index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(r, s) = 1.0;
  return GlElement(std::move(m));
}

GlElement GlElement::diagonal(const Vector& d) { return GlElement(Matrix(d.asDiagonal())); }

double jacobi_defect(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  std::vector<Matrix> ad(n);
  for (int a = 0; a < n; ++a) ad[a] = algebra.ad(a);
  auto e = [n](int a) { return Vector::Unit(n, a); };
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vector jac = ad[i] * (ad[j] * e(k)) + ad[j] * (ad[k] * e(i)) + ad[k] * (ad[i] * e(j));
        worst = std::max(worst, jac.norm());
      }
  return worst;
}

BracketTensor change_basis(const BracketTensor& mu, const BasisChange& a) {
  const int n = mu.dim();
  require_same_dim(n, a.dim(), "change_basis");
  const Matrix& A = a.matrix();
  const Matrix& B = a.inverse();
  // (A·μ)(e_i, e_j) = A μ(B e_i, B e_j): transform each output slice, then mix.
  std::vector<Matrix> pulled(n);
  for (int m = 0; m < n; ++m) pulled[m] = B.transpose() * mu.slice(m) * B;
  BracketTensor out(n);
  for (int k = 0; k < n; ++k) {
    Matrix s = Matrix::Zero(n, n);
    for (int m = 0; m < n; ++m)
      if (A(k, m) != 0.0) s += A(k, m) * pulled[m];
    out.set_slice(k, s);
  }
  return out;
}

LieAlgebra change_basis(const LieAlgebra& algebra, const BasisChange& a) {
  const BracketTensor t = change_basis(algebra.tensor(), a);
  const double scale = t.values().cwiseAbs().maxCoeff();
  return LieAlgebra::from_tensor(t, kNoiseFloor * scale);
}

BracketTensor pi_action(const GlElement& alpha, const BracketTensor& mu) {
  const int n = mu.dim();
  require_same_dim(n, alpha.dim(), "pi_action");
  const Matrix& a = alpha.matrix();
  std::vector<Matrix> slices(n);
  for (int m = 0; m < n; ++m) slices[m] = mu.slice(m);
  BracketTensor out(n);
  for (int k = 0; k < n; ++k) {
    Matrix s = -(a.transpose() * slices[k] + slices[k] * a);
    for (int m = 0; m < n; ++m)
      if (a(k, m) != 0.0) s += a(k, m) * slices[m];
    out.set_slice(k, s);
  }
  return out;
}

BracketTensor pi_action(const GlElement& alpha, const LieAlgebra& algebra) {
  return pi_action(alpha, algebra.tensor());
}

double inner_v(const BracketTensor& mu, const BracketTensor& lambda) {
  require_same_dim(mu.dim(), lambda.dim(), "inner_v");
  return mu.values().dot(lambda.values());
}

BracketTensor weight_vector(int dim, int i, int j, int k) {
  require_dim(dim);
  if (!(0 <= i && i < j && j < dim && 0 <= k && k < dim))
    throw InvalidInput("weight vector requires 0 <= i < j < n and 0 <= k < n");
  BracketTensor t(dim);
  t(i, j, k) = 1.0;
  t(j, i, k) = -1.0;
  return t;
}

CentralSeries lower_central_series(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  const double tol = kRankTolerance * algebra.scale();
  std::vector<Matrix> ad(n);
  for (int a = 0; a < n; ++a) ad[a] = algebra.ad(a);

  CentralSeries series;
  Matrix basis = Matrix::Identity(n, n);
  series.dims.push_back(n);
  while (basis.cols() > 0) {
    Matrix gens(n, n * basis.cols());
    for (int a = 0; a < n; ++a) gens.middleCols(a * basis.cols(), basis.cols()) = ad[a] * basis;
    Matrix next = span_basis(gens, tol);
    if (next.cols() == basis.cols()) break;
    series.dims.push_back(static_cast<int>(next.cols()));
    basis = std::move(next);
  }
  series.nilpotent = series.dims.back() == 0;
  if (series.nilpotent)
    for (std::size_t p = 1; p < series.dims.size(); ++p)
      series.type.push_back(series.dims[p - 1] - series.dims[p]);
  return series;
}

std::optional<std::vector<int>> type_of(const LieAlgebra& algebra) {
  auto series = lower_central_series(algebra);
  if (!series.nilpotent) return std::nullopt;
  return series.type;
}

bool is_nilpotent(const LieAlgebra& algebra) { return lower_central_series(algebra).nilpotent; }

bool is_solvable(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  const double tol = kRankTolerance * algebra.scale();
  Matrix basis = Matrix::Identity(n, n);
  while (basis.cols() > 0) {
    const auto m = basis.cols();
    Matrix gens(n, m * (m - 1) / 2);
    Eigen::Index col = 0;
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = a + 1; b < m; ++b)
        gens.col(col++) = algebra.bracket(basis.col(a), basis.col(b));
    Matrix next = span_basis(gens, tol);
    if (next.cols() == m) return false;
    basis = std::move(next);
  }
  return true;
}

bool is_unimodular(const LieAlgebra& algebra) {
  const double tol = kRankTolerance * std::max(1.0, algebra.scale());
  for (int a = 0; a < algebra.dim(); ++a)
    if (std::abs(algebra.ad(a).trace()) > tol) return false;
  return true;
}

namespace {

// Rows: (pair p = (i<j), component k). Columns: D(r, s) at r + s·n.
Matrix derivation_constraints(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  const BracketTensor t = algebra.tensor();
  const int pairs = n * (n - 1) / 2;
  Matrix k_mat = Matrix::Zero(static_cast<Eigen::Index>(pairs) * n, n * n);
  auto col = [n](int r, int s) { return r + s * n; };
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p)
      for (int k = 0; k < n; ++k) {
        const Eigen::Index row = static_cast<Eigen::Index>(p) * n + k;
        for (int m = 0; m < n; ++m) {
          k_mat(row, col(k, m)) += t(i, j, m);  // D[e_i, e_j]
          k_mat(row, col(m, i)) -= t(m, j, k);  // [D e_i, e_j]
          k_mat(row, col(m, j)) -= t(i, m, k);  // [e_i, D e_j]
        }
      }
  return k_mat;
}

} // namespace

std::vector<Matrix> derivation_algebra(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  const Matrix k_mat = derivation_constraints(algebra);
  Eigen::Index rank = 0;
  Matrix v = Matrix::Identity(n * n, n * n);
  if (k_mat.rows() > 0) {
    Eigen::JacobiSVD<Matrix> svd(k_mat, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double tol = sigma.size() > 0 ? kRankTolerance * sigma[0] : 0.0;
    while (rank < sigma.size() && sigma[rank] > tol && sigma[rank] > 0.0) ++rank;
    v = svd.matrixV();
  }
  std::vector<Matrix> basis;
  for (Eigen::Index c = rank; c < n * n; ++c)
    basis.push_back(Eigen::Map<const Matrix>(v.col(c).data(), n, n));
  return basis;
}

Vector derivation_defect(const LieAlgebra& algebra, const Matrix& d) {
  const int n = algebra.dim();
  if (d.rows() != n || d.cols() != n) throw InvalidInput("derivation_defect: dimension mismatch");
  Vector out(static_cast<Eigen::Index>(n) * n * (n - 1) / 2);
  Eigen::Index row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j);
      out.segment(row, n) =
          d * algebra.bracket(ei, ej) - algebra.bracket(d * ei, ej) - algebra.bracket(ei, d * ej);
      row += n;
    }
  return out;
}

} // namespace ricciflow
