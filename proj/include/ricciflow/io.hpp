#pragma once

#include <iosfwd>
#include <json.hpp>

#include "ricciflow/algebra.hpp"
#include "ricciflow/curvature.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/nice.hpp"

namespace ricciflow::io {

using nlohmann::json;

/// {"dim": n, "brackets": [{"i": 1, "j": 2, "k": 3, "c": 1.0}, ...]}, 1-based.
json to_json(const LieAlgebra& algebra);
/// Throws InvalidInput naming the offending field.
LieAlgebra algebra_from_json(const json& j);

/// Throws InvalidInput when the Jacobi defect exceeds tolerance·max(1, scale²).
void require_lie_algebra(const LieAlgebra& algebra, double tolerance = 1e-9);

/// Accepts {"P": [[...], ...]} or {"diagonal": [...]}.
Metric metric_from_json(const json& j);
json to_json(const Metric& metric);

json to_json(const Matrix& m);
json to_json(const Vector& v);
json to_json(const StructureConstant& c);
json to_json(const NiceVerdict& verdict);
json to_json(const RicciReport& report);
json to_json(const MomentMapFit& fit);
json to_json(const NumericDiagonalVerdict& verdict, const SamplingOptions& options);
json to_json(const ExactDiagonalVerdict& verdict);
json to_json(const SolitonData& soliton);
json to_json(const DiagonalityReport& report);

/// Header `t,p_11,p_12,...,p_nn,offdiag,commutator`: upper triangle of P row
/// by row, off-diagonal ratio of P, running commutator maximum; %.17g.
void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory);

} // namespace ricciflow::io
