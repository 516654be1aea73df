#include "ricciflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace ricciflow::io {

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw InvalidInput(field + ": " + what);
}

int require_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) schema_error(field, "expected an integer");
  return j.get<int>();
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) schema_error(field, "expected a number");
  return j.get<double>();
}

json triple(const StructureConstant& c) { return json::array({c.i + 1, c.j + 1, c.k + 1}); }

} // namespace

json to_json(const LieAlgebra& algebra) {
  json brackets = json::array();
  for (const auto& e : algebra.entries())
    brackets.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"c", e.value}});
  return {{"dim", algebra.dim()}, {"brackets", std::move(brackets)}};
}

LieAlgebra algebra_from_json(const json& j) {
  if (!j.is_object()) schema_error("algebra", "expected an object");
  if (!j.contains("dim")) schema_error("dim", "missing");
  const int n = require_int(j.at("dim"), "dim");
  if (n <= 0) schema_error("dim", "must be positive");
  std::vector<StructureConstant> entries;
  if (j.contains("brackets")) {
    const json& list = j.at("brackets");
    if (!list.is_array()) schema_error("brackets", "expected an array");
    for (std::size_t p = 0; p < list.size(); ++p) {
      const std::string where = "brackets[" + std::to_string(p) + "]";
      const json& b = list[p];
      if (!b.is_object()) schema_error(where, "expected an object");
      for (const char* key : {"i", "j", "k", "c"})
        if (!b.contains(key)) schema_error(where + "." + key, "missing");
      const int i = require_int(b.at("i"), where + ".i");
      const int jj = require_int(b.at("j"), where + ".j");
      const int k = require_int(b.at("k"), where + ".k");
      const double c = require_number(b.at("c"), where + ".c");
      for (auto [value, key] : {std::pair{i, "i"}, {jj, "j"}, {k, "k"}})
        if (value < 1 || value > n) schema_error(where + "." + key, "index out of range 1.." + std::to_string(n));
      if (i >= jj) schema_error(where, "requires i < j");
      for (const auto& prev : entries)
        if (prev.i == i - 1 && prev.j == jj - 1 && prev.k == k - 1) schema_error(where, "duplicate (i, j, k)");
      entries.push_back({i - 1, jj - 1, k - 1, c});
    }
  }
  return LieAlgebra(n, std::move(entries));
}

void require_lie_algebra(const LieAlgebra& algebra, double tolerance) {
  const double scale = std::max(1.0, algebra.scale() * algebra.scale());
  const double defect = jacobi_defect(algebra);
  if (defect > tolerance * scale)
    throw InvalidInput("brackets: Jacobi identity fails (defect " + std::to_string(defect) + ")");
}

Metric metric_from_json(const json& j) {
  if (!j.is_object()) schema_error("metric", "expected an object");
  if (j.contains("diagonal")) {
    const json& d = j.at("diagonal");
    if (!d.is_array() || d.empty()) schema_error("diagonal", "expected a non-empty array");
    Vector v(static_cast<Eigen::Index>(d.size()));
    for (std::size_t p = 0; p < d.size(); ++p)
      v[static_cast<Eigen::Index>(p)] = require_number(d[p], "diagonal[" + std::to_string(p) + "]");
    return Metric::diagonal(v);
  }
  if (!j.contains("P")) schema_error("P", "missing (or give \"diagonal\")");
  const json& rows = j.at("P");
  if (!rows.is_array() || rows.empty()) schema_error("P", "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix p(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    const std::string where = "P[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) schema_error(where, "row length must equal the number of rows");
    for (Eigen::Index c = 0; c < n; ++c)
      p(r, c) = require_number(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(c) + "]");
  }
  return Metric(std::move(p));
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Metric& metric) { return {{"P", to_json(metric.matrix())}}; }

json to_json(const StructureConstant& c) {
  return {{"i", c.i + 1}, {"j", c.j + 1}, {"k", c.k + 1}, {"c", c.value}};
}

json to_json(const NiceVerdict& verdict) {
  json out{{"nice", verdict.nice}, {"witness", nullptr}};
  if (verdict.witness) {
    out["witness"] = json::array({triple(verdict.witness->first), triple(verdict.witness->second)});
    if (verdict.witness->root)
      out["root"] = json::array({verdict.witness->root->l + 1, verdict.witness->root->m + 1});
  }
  return out;
}

json to_json(const RicciReport& report) {
  return {{"Rc", to_json(report.rc)}, {"Ric", to_json(report.ric)}, {"M", to_json(report.m)},
          {"B", to_json(report.b)},   {"SadH", to_json(report.sad_h)}, {"H", to_json(report.h)}};
}

json to_json(const MomentMapFit& fit) { return {{"kappa", fit.kappa}, {"residual", fit.residual}}; }

json to_json(const NumericDiagonalVerdict& verdict, const SamplingOptions& options) {
  json out{{"stably_diagonal", verdict.stably_diagonal},
           {"samples_requested", options.samples},
           {"samples_checked", verdict.samples_checked},
           {"seed", options.seed},
           {"offdiag_threshold", options.offdiag_threshold},
           {"max_offdiag_ratio", verdict.max_offdiag_ratio},
           {"witness", nullptr}};
  if (verdict.witness) out["witness"] = to_json(*verdict.witness);
  return out;
}

json to_json(const ExactDiagonalVerdict& verdict) {
  json groups = json::array();
  for (const auto& g : verdict.diagnostic) {
    json terms = json::array();
    for (const auto& t : g.terms)
      terms.push_back({{"first", triple(t.first)}, {"second", triple(t.second)}, {"product", t.product}});
    groups.push_back({{"root", json::array({g.root.l + 1, g.root.m + 1})}, {"terms", std::move(terms)}});
  }
  return {{"stably_diagonal", verdict.stably_diagonal}, {"diagnostic", std::move(groups)}};
}

json to_json(const SolitonData& soliton) {
  return {{"c", soliton.c},
          {"D", to_json(soliton.d)},
          {"derivation_residual", soliton.derivation_residual},
          {"is_soliton", soliton.is_soliton}};
}

json to_json(const DiagonalityReport& report) {
  return {{"max_commutator", report.max_commutator},
          {"eigenbasis_offdiag", report.eigenbasis_offdiag},
          {"degenerate_spectrum", report.degenerate_spectrum},
          {"verdict", to_string(report.verdict)}};
}

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory) {
  if (trajectory.samples.empty()) return;
  const auto n = trajectory.samples.front().p.rows();
  out << 't';
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = r; c < n; ++c) out << ",p_" << r + 1 << '_' << c + 1;
  out << ",offdiag,commutator\n";

  const auto profile = commutator_profile(trajectory);
  char buf[40];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
  };
  for (std::size_t s = 0; s < trajectory.samples.size(); ++s) {
    const auto& sample = trajectory.samples[s];
    put(sample.t);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = r; c < n; ++c) {
        out << ',';
        put(sample.p(r, c));
      }
    out << ',';
    put(offdiagonal_ratio(sample.p));
    out << ',';
    put(profile[s]);
    out << '\n';
  }
}

} // namespace ricciflow::io
