#pragma once

#include <string>
#include <vector>

#include "ricciflow/algebra.hpp"
#include "ricciflow/curvature.hpp"

namespace ricciflow {

enum class FlowStatus { completed, singularity_detected, step_underflow };

const char* to_string(FlowStatus status);

struct FlowSample {
  double t = 0.0;
  /// Metric matrix in the fixed basis: ⟨·,·⟩_t = ⟨P(t)·,·⟩ when P(0) = I.
  Matrix p;
  Matrix ric;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  FlowStatus status = FlowStatus::completed;
  /// Human-readable reason when status is not `completed`.
  std::string message;
};

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Initial step; <= 0 picks 1e-3·|t_max|.
  double dt_init = 0.0;
  double min_step = 1e-14;
  long max_steps = 1'000'000;
  double max_condition = 1e12;
  double min_eigenvalue = 1e-12;
  double max_ricci = 1e12;
};

/// Integrates dP/dt = −2·P·Ric(P) with Dormand–Prince 5(4) and PI step
/// control, recomputing the Ricci operator at every stage. A negative t_max
/// runs the flow backward. Every accepted step is recorded.
FlowTrajectory integrate_flow(const LieAlgebra& algebra, const Metric& p0, double t_max,
                              const FlowOptions& options = {});

struct SolitonData {
  double c = 0.0;
  Matrix d;
  double derivation_residual = 0.0;
  bool is_soliton = false;
};

/// Writes Ric = cI + D and picks c minimising the derivation defect of D,
/// which is affine in c. Abelian algebras get c = 0, D = 0.
SolitonData detect_algebraic_soliton(const LieAlgebra& algebra, const Metric& metric,
                                     double relative_tolerance = 1e-9);

/// P(t) = P0·exp((log(1 − 2ct)/c)·Ric0), with the c → 0 limit exp(−2t·Ric0).
/// Throws DomainError when 1 − 2ct <= 0 and InvalidInput for a non-soliton.
Metric closed_form_soliton_flow(const SolitonData& soliton, const Matrix& ric0, double t);
Metric closed_form_soliton_flow(const SolitonData& soliton, const Matrix& ric0, double t,
                                const Metric& p0);

enum class FlowDiagonality { diagonal, not_diagonal, inconclusive };

const char* to_string(FlowDiagonality verdict);

struct DiagonalityReport {
  /// max over sample pairs of ‖[P(s), P(t)]‖_F / (‖P(s)‖_F‖P(t)‖_F).
  double max_commutator = 0.0;
  /// max over t of the relative off-diagonal mass of Ric_t in an eigenbasis
  /// of Ric_0.
  double eigenbasis_offdiag = 0.0;
  bool degenerate_spectrum = false;
  FlowDiagonality verdict = FlowDiagonality::inconclusive;
};

inline constexpr double kDiagonalCommutator = 1e-8;
inline constexpr double kNonDiagonalCommutator = 1e-3;

/// Needs at least three samples.
DiagonalityReport diagonality_report(const FlowTrajectory& trajectory);

/// Running maximum of the normalized commutator of P(t_i) with every earlier
/// sample; the last value equals `max_commutator`.
std::vector<double> commutator_profile(const FlowTrajectory& trajectory);

} // namespace ricciflow
