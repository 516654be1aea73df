#include "ricciflow/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace ricciflow {

const char* to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::completed: return "completed";
    case FlowStatus::singularity_detected: return "singularity-detected";
    case FlowStatus::step_underflow: return "step-underflow";
  }
  return "unknown";
}

const char* to_string(FlowDiagonality verdict) {
  switch (verdict) {
    case FlowDiagonality::diagonal: return "diagonal";
    case FlowDiagonality::not_diagonal: return "not-diagonal";
    case FlowDiagonality::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Dormand–Prince 5(4) tableau; the right-hand side is autonomous so the nodes are unused.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal the last row of kA (FSAL); these are the differences
// to the embedded 4th-order solution.
constexpr std::array<double, 7> kE{71.0 / 57600,      0.0, -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

struct Evaluation {
  Matrix derivative;
  Matrix ric;
};

std::optional<Evaluation> evaluate(const LieAlgebra& algebra, const Matrix& p) {
  try {
    const Metric metric(0.5 * (p + p.transpose()));
    Matrix ric = ricci(algebra, metric).ric;
    Matrix derivative = -2.0 * metric.matrix() * ric;
    return Evaluation{std::move(derivative), std::move(ric)};
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

double normalized_commutator(const Matrix& a, const Matrix& b) {
  const double scale = a.norm() * b.norm();
  if (scale == 0.0) return 0.0;
  return (a * b - b * a).norm() / scale;
}

// Symmetric representatives S_t = P0^{-1/2} P(t) P0^{-1/2}; these commute
// pairwise iff the operators P0⁻¹P(t) do.
std::vector<Matrix> operator_forms(const FlowTrajectory& trajectory) {
  const Metric p0(trajectory.samples.front().p);
  std::vector<Matrix> forms;
  forms.reserve(trajectory.samples.size());
  for (const auto& s : trajectory.samples) forms.push_back(p0.inv_sqrt() * s.p * p0.inv_sqrt());
  return forms;
}

} // namespace

FlowTrajectory integrate_flow(const LieAlgebra& algebra, const Metric& p0, double t_max,
                              const FlowOptions& options) {
  if (algebra.dim() != p0.dim()) throw InvalidInput("metric dimension does not match algebra");
  if (t_max == 0.0 || !std::isfinite(t_max)) throw InvalidInput("t_max must be finite and nonzero");

  FlowTrajectory traj;
  const double direction = t_max > 0 ? 1.0 : -1.0;
  double t = 0.0;
  Matrix p = p0.matrix();
  auto first = evaluate(algebra, p);
  if (!first) throw InvalidInput("initial metric is not positive definite");
  traj.samples.push_back({t, p, first->ric});
  Matrix k_first = first->derivative;

  double h = options.dt_init > 0 ? options.dt_init : 1e-3 * std::abs(t_max);
  h = std::min(h, std::abs(t_max));
  double previous_error = 1e-4;

  std::array<Matrix, 7> k;
  for (long step = 0; step < options.max_steps; ++step) {
    const double remaining = std::abs(t_max - t);
    if (remaining <= 0.0) return traj;
    if (h >= remaining) h = remaining;
    if (h < options.min_step && h < remaining) {
      traj.status = FlowStatus::step_underflow;
      traj.message = "step size fell below minimum at t = " + std::to_string(t);
      return traj;
    }
    const double dt = direction * h;

    k[0] = k_first;
    bool stage_failed = false;
    for (int s = 1; s < 7 && !stage_failed; ++s) {
      Matrix stage = p;
      for (int r = 0; r < s; ++r)
        if (kA[s][r] != 0.0) stage += dt * kA[s][r] * k[r];
      auto e = evaluate(algebra, stage);
      if (!e) {
        stage_failed = true;
        break;
      }
      k[s] = std::move(e->derivative);
    }

    double error = 0.0;
    Matrix p_new;
    if (!stage_failed) {
      p_new = p;
      for (int r = 0; r < 6; ++r)
        if (kA[6][r] != 0.0) p_new += dt * kA[6][r] * k[r];
      Matrix err = Matrix::Zero(p.rows(), p.cols());
      for (int r = 0; r < 7; ++r)
        if (kE[r] != 0.0) err += dt * kE[r] * k[r];
      const Matrix scale =
          (options.atol + options.rtol * p.cwiseAbs().cwiseMax(p_new.cwiseAbs()).array()).matrix();
      error = err.cwiseQuotient(scale).cwiseAbs().maxCoeff();
    }

    if (stage_failed || !(error <= 1.0)) {
      const double shrink = stage_failed ? 0.25 : std::max(0.2, 0.9 * std::pow(error, -0.2));
      h *= shrink;
      if (h < options.min_step) {
        traj.status = FlowStatus::step_underflow;
        traj.message = "step size fell below minimum at t = " + std::to_string(t);
        return traj;
      }
      continue;
    }

    t = (h == remaining) ? t_max : t + dt;
    p = 0.5 * (p_new + p_new.transpose());
    // Re-evaluated after symmetrization so the stored Ric matches the stored P.
    auto now = evaluate(algebra, p);
    if (!now) {
      traj.status = FlowStatus::singularity_detected;
      traj.message = "metric lost positive definiteness at t = " + std::to_string(t);
      return traj;
    }
    k_first = now->derivative;
    traj.samples.push_back({t, p, now->ric});

    const Metric metric(p);
    if (metric.condition_number() > options.max_condition ||
        metric.eigenvalues().minCoeff() < options.min_eigenvalue ||
        now->ric.norm() > options.max_ricci) {
      traj.status = FlowStatus::singularity_detected;
      traj.message = "metric degenerating at t = " + std::to_string(t);
      return traj;
    }
    if (t == t_max) return traj;

    const double safe_error = std::max(error, 1e-10);
    double factor = 0.9 * std::pow(safe_error, -0.7 / 5.0) * std::pow(previous_error, 0.4 / 5.0);
    factor = std::clamp(factor, 0.2, 5.0);
    previous_error = safe_error;
    h *= factor;
  }
  traj.status = FlowStatus::step_underflow;
  traj.message = "maximum number of steps exceeded";
  return traj;
}

SolitonData detect_algebraic_soliton(const LieAlgebra& algebra, const Metric& metric,
                                     double relative_tolerance) {
  const int n = algebra.dim();
  const Matrix ric = ricci(algebra, metric).ric;
  SolitonData sol;
  if (algebra.is_abelian()) {
    sol.d = Matrix::Zero(n, n);
    sol.is_soliton = true;
    return sol;
  }
  // defect(Ric − cI) = defect(Ric) + c·brackets
  const Vector base = derivation_defect(algebra, ric);
  const Vector brackets = -derivation_defect(algebra, Matrix::Identity(n, n));
  sol.c = -base.dot(brackets) / brackets.squaredNorm();
  sol.d = ric - sol.c * Matrix::Identity(n, n);
  sol.derivation_residual = (base + sol.c * brackets).norm();
  const BracketTensor mu = algebra.tensor();
  sol.is_soliton = sol.derivation_residual <= relative_tolerance * inner_v(mu, mu);
  return sol;
}

Metric closed_form_soliton_flow(const SolitonData& soliton, const Matrix& ric0, double t) {
  return closed_form_soliton_flow(soliton, ric0, t, Metric::canonical(static_cast<int>(ric0.rows())));
}

Metric closed_form_soliton_flow(const SolitonData& soliton, const Matrix& ric0, double t,
                                const Metric& p0) {
  if (!soliton.is_soliton) throw InvalidInput("closed-form flow requires an algebraic soliton");
  if (ric0.rows() != p0.dim() || ric0.cols() != p0.dim())
    throw InvalidInput("Ricci operator dimension does not match metric");
  const double c = soliton.c;
  double exponent = -2.0 * t;
  if (c != 0.0) {
    const double base = 1.0 - 2.0 * c * t;
    if (!(base > 0.0))
      throw DomainError("t = " + std::to_string(t) + " is outside the soliton flow domain 1 - 2ct > 0");
    exponent = std::log(base) / c;
  }
  // Ric0 is P0-self-adjoint: S = P0^{1/2} Ric0 P0^{-1/2} is symmetric and
  // P0·exp(s·Ric0) = P0^{1/2} exp(s·S) P0^{1/2}.
  Matrix s = p0.sqrt() * ric0 * p0.inv_sqrt();
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Vector scaled = (exponent * eig.eigenvalues()).array().exp();
  const Matrix exp_s = eig.eigenvectors() * scaled.asDiagonal() * eig.eigenvectors().transpose();
  return Metric(p0.sqrt() * exp_s * p0.sqrt());
}

std::vector<double> commutator_profile(const FlowTrajectory& trajectory) {
  std::vector<double> profile;
  if (trajectory.samples.empty()) return profile;
  const auto forms = operator_forms(trajectory);
  double running = 0.0;
  for (std::size_t a = 0; a < forms.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b)
      running = std::max(running, normalized_commutator(forms[a], forms[b]));
    profile.push_back(running);
  }
  return profile;
}

DiagonalityReport diagonality_report(const FlowTrajectory& trajectory) {
  if (trajectory.samples.size() < 3)
    throw InvalidInput("diagonality report needs at least three samples");
  DiagonalityReport report;
  report.max_commutator = commutator_profile(trajectory).back();

  const Metric p0(trajectory.samples.front().p);
  const Matrix& ric0 = trajectory.samples.front().ric;
  Matrix s0 = p0.sqrt() * ric0 * p0.inv_sqrt();
  s0 = 0.5 * (s0 + s0.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s0);
  const Vector& lambda = eig.eigenvalues();
  const double spread = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 1; i < lambda.size(); ++i)
    if (lambda[i] - lambda[i - 1] <= 1e-8 * spread) report.degenerate_spectrum = true;

  const Matrix y = p0.inv_sqrt() * eig.eigenvectors();
  const Matrix y_inv = eig.eigenvectors().transpose() * p0.sqrt();
  for (const auto& s : trajectory.samples) {
    const Matrix in_basis = y_inv * s.ric * y;
    const double total = in_basis.norm();
    if (total == 0.0) continue;
    const Matrix off = in_basis - Matrix(in_basis.diagonal().asDiagonal());
    report.eigenbasis_offdiag = std::max(report.eigenbasis_offdiag, off.norm() / total);
  }

  if (report.max_commutator <= kDiagonalCommutator)
    report.verdict = FlowDiagonality::diagonal;
  else if (report.max_commutator > kNonDiagonalCommutator)
    report.verdict = FlowDiagonality::not_diagonal;
  return report;
}

} // namespace ricciflow
