// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ricciflow/catalog.hpp"
#include "ricciflow/curvature.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/nice.hpp"
#include "support/random_algebra.hpp"

using namespace ricciflow;

namespace {

constexpr std::uint64_t kSuiteSeed = 20110601;
constexpr int kSuiteSize = 500;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Matrix rows(int n, std::initializer_list<double> values) {
  Matrix m(n, n);
  auto it = values.begin();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = *it++;
  return m;
}

const std::vector<LieAlgebra>& suite() {
  static const auto s = testing_support::random_nilpotent_suite(kSuiteSize, kSuiteSeed);
  return s;
}

std::vector<LieAlgebra> nilpotent_catalog() {
  std::vector<LieAlgebra> out;
  for (const auto& name : catalog::names())
    if (auto e = catalog::get(name); e.expected.nilpotent) out.push_back(e.algebra);
  return out;
}

Vector random_diagonal(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = std::pow(10.0, u(rng));
  return d;
}

// 1
Outcome published_ricci_matrices() {
  Outcome o;
  const std::vector<std::pair<std::string, Matrix>> published{
      {"s4", rows(4, {-5.5, 0, 0, 0, 0, -1.5, -1.5, 0, 0, -1.5, 1.5, 0, 0, 0, 0, -1})},
      {"sl2", rows(3, {-1.5, 0, 0, 0, -1, -1, 0, -1, -0.5})},
      {"n4", rows(4, {-3, 0, 0, 0, 0, -2, -1, 0, 0, -1, 0, 1, 0, 0, 1, 2})},
  };
  for (const auto& [name, expected] : published) {
    const auto l = catalog::get(name).algebra;
    const Metric g = Metric::canonical(l.dim());
    constexpr int reps = 200;
    Matrix ric;
    const auto start = Clock::now();
    for (int r = 0; r < reps; ++r) ric = ricci(l, g).ric;
    const double per_call = ms_since(start) / reps;
    Eigen::Index row = 0, col = 0;
    const double err = (ric - expected).cwiseAbs().maxCoeff(&row, &col);
    std::string what = name + " max|dRic| " + fmt("%.2e", err);
    if (err > 1e-12) what += " at (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + "): computed " +
                             fmt("%.17g", ric(row, col)) + ", published " + fmt("%g", expected(row, col));
    note(o, err <= 1e-12, what);
    note(o, per_call < 1.0, name + " " + fmt("%.4f ms/call", per_call));
  }
  return o;
}

// 2
Outcome n4_spectrum() {
  Outcome o;
  const auto r = ricci(catalog::get("n4").algebra, Metric::canonical(4));
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(r.rc).eigenvalues();
  const Vector expected = Vector(Eigen::Vector4d(-3.0, -std::sqrt(6.0), 0.0, std::sqrt(6.0)));
  const double err = (ev - expected).cwiseAbs().maxCoeff();
  note(o, err <= 1e-9, "max eigenvalue error " + fmt("%.2e", err));
  return o;
}

// 3
Outcome nice_iff_stably_diagonal() {
  Outcome o;
  const auto start = Clock::now();
  int disagreements = 0, nice = 0, bad_witness = 0;
  double weakest_witness = INFINITY;
  for (const auto& l : suite()) {
    const bool is_nice = is_nice_basis(l).nice;
    const auto numeric = stably_ricci_diagonal_numeric(l);
    nice += is_nice;
    if (is_nice != numeric.stably_diagonal) ++disagreements;
    if (!is_nice) {
      if (!numeric.witness) {
        ++bad_witness;
        continue;
      }
      const double ratio = offdiagonal_ratio(ricci(l, *numeric.witness).rc);
      weakest_witness = std::min(weakest_witness, ratio);
      if (!(ratio > 1e-6)) ++bad_witness;
    }
  }
  const double elapsed = ms_since(start);
  note(o, disagreements == 0, std::to_string(disagreements) + " disagreements");
  note(o, bad_witness == 0, std::to_string(kSuiteSize - nice) + " not nice, " + std::to_string(bad_witness) +
                                " without witness, weakest witness " + fmt("%.2e", weakest_witness));
  note(o, elapsed < 30000.0, fmt("%.0f ms", elapsed));
  return o;
}

// 4
Outcome root_criterion() {
  Outcome o;
  auto instances = suite();
  for (const auto& l : nilpotent_catalog()) instances.push_back(l);
  int mismatches = 0, not_applicable = 0;
  for (const auto& l : instances) {
    const auto v = nice_via_roots(l);
    if (!v) {
      ++not_applicable;
      continue;
    }
    if (v->nice != is_nice_basis(l).nice) ++mismatches;
  }
  note(o, mismatches == 0 && not_applicable == 0,
       std::to_string(instances.size()) + " algebras, " + std::to_string(mismatches) + " mismatches, " +
           std::to_string(not_applicable) + " not applicable");

  long checked = 0, pairing_mismatches = 0, implication_failures = 0;
  for (int n = 2; n <= 4; ++n) {
    std::vector<Weight> all;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) all.push_back(make_weight(n, i, j, k));
    for (const auto& root : positive_roots(n))
      for (const auto& w1 : all) {
        const auto moved = pi_action(GlElement::unit(n, root.l, root.m), weight_vector(n, w1.i, w1.j, w1.k));
        for (const auto& w2 : all) {
          const bool exact = inner_v(moved, weight_vector(n, w2.i, w2.j, w2.k)) != 0.0;
          const bool predicted = pairing_nonzero(root, w1, w2);
          if (exact && !predicted) ++implication_failures;
          if (w1.degenerate() || w2.degenerate()) continue;
          ++checked;
          if (exact != predicted) ++pairing_mismatches;
        }
      }
  }
  note(o, pairing_mismatches == 0 && implication_failures == 0,
       "pairing: " + std::to_string(checked) + " non-degenerate triples, " + std::to_string(pairing_mismatches) +
           " mismatches, " + std::to_string(implication_failures) + " missed nonzero pairings");
  return o;
}

// 5
Outcome non_nilpotent_controls() {
  Outcome o;
  const auto s3 = catalog::get("s3").algebra;
  SamplingOptions opts;
  opts.samples = 200;
  const auto v = stably_ricci_diagonal_numeric(s3, opts);
  note(o, !is_nice_basis(s3).nice && v.stably_diagonal,
       std::string("s3 nice=") + (is_nice_basis(s3).nice ? "true" : "false") + " stably diagonal over " +
           std::to_string(v.samples_checked) + " metrics (max ratio " + fmt("%.1e", v.max_offdiag_ratio) + ")");
  for (const auto& name : {"s4", "sl2"}) {
    const auto l = catalog::get(name).algebra;
    const double ratio = offdiagonal_ratio(ricci(l, Metric::canonical(l.dim())).rc);
    note(o, is_nice_basis(l).nice && ratio > 1e-6,
         std::string(name) + " nice=" + (is_nice_basis(l).nice ? "true" : "false") + " offdiag " + fmt("%.3f", ratio));
  }
  return o;
}

// 6
Outcome moment_map() {
  Outcome o;
  std::vector<LieAlgebra> instances = nilpotent_catalog();
  const auto extra = testing_support::random_nilpotent_suite(100, kSuiteSeed + 6);
  instances.insert(instances.end(), extra.begin(), extra.end());
  double lo = INFINITY, hi = -INFINITY, worst = 0.0;
  for (const auto& l : instances) {
    const auto fit = moment_map_check(l);
    lo = std::min(lo, fit.kappa);
    hi = std::max(hi, fit.kappa);
    worst = std::max(worst, fit.residual);
  }
  note(o, hi - lo < 1e-9, std::to_string(instances.size()) + " algebras, kappa " + fmt("%.15f", lo) + ", spread " +
                              fmt("%.1e", hi - lo));
  note(o, worst < 1e-9, "max residual " + fmt("%.1e", worst));
  return o;
}

// 7
Outcome heisenberg_soliton() {
  Outcome o;
  const auto start = Clock::now();
  const auto l = catalog::get("heis3").algebra;
  const Metric p0 = Metric::canonical(3);
  const auto sol = detect_algebraic_soliton(l, p0);
  const double d_err = (sol.d - Matrix(Vector(Eigen::Vector3d(1, 1, 2)).asDiagonal())).norm();
  note(o, sol.is_soliton && std::abs(sol.c + 1.5) < 1e-12 && d_err < 1e-12 && sol.derivation_residual < 1e-12,
       "c " + fmt("%.15g", sol.c) + ", |D - Diag(1,1,2)| " + fmt("%.1e", d_err) + ", residual " +
           fmt("%.1e", sol.derivation_residual));

  const Matrix ric0 = ricci(l, p0).ric;
  const auto traj = integrate_flow(l, p0, 1.0);
  double worst = 0.0, worst_exp = 0.0;
  for (const auto& s : traj.samples) {
    const Matrix exact = closed_form_soliton_flow(sol, ric0, s.t).matrix();
    worst = std::max(worst, (s.p - exact).norm() / exact.norm());
    const double e = std::cbrt(3.0 * s.t + 1.0);
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(s.p).eigenvalues();
    const Vector expected = Vector(Eigen::Vector3d(1.0 / e, e, e));
    worst_exp = std::max(worst_exp, ((ev - expected).array() / expected.array()).abs().maxCoeff());
  }
  const double elapsed = ms_since(start);
  note(o, traj.status == FlowStatus::completed && traj.samples.back().t == 1.0 && worst < 1e-6,
       std::to_string(traj.samples.size()) + " steps, max rel error vs closed form " + fmt("%.1e", worst));
  note(o, worst_exp < 1e-6, "eigenvalues vs (3t+1)^(+-1/3) " + fmt("%.1e", worst_exp));
  note(o, elapsed < 1000.0, fmt("%.1f ms", elapsed));
  return o;
}

// 8
Outcome n4_not_diagonal() {
  Outcome o;
  const auto traj = integrate_flow(catalog::get("n4").algebra, Metric::canonical(4), 0.2);
  const double n4 = diagonality_report(traj).max_commutator;
  note(o, traj.status == FlowStatus::completed && n4 > kNonDiagonalCommutator,
       "n4 commutator " + fmt("%.6e", n4));

  std::mt19937_64 rng(kSuiteSeed + 8);
  std::vector<std::pair<std::string, std::pair<LieAlgebra, Metric>>> solitons{
      {"heis3", {catalog::get("heis3").algebra, Metric::canonical(3)}},
      {"su2", {catalog::milnor(1, 1, 1).algebra, Metric::canonical(3)}},
  };
  for (int r = 0; r < 3; ++r)
    solitons.push_back({"heis3/diag", {catalog::get("heis3").algebra, Metric::diagonal(random_diagonal(3, rng))}});
  double worst = 0.0;
  int count = 0;
  for (const auto& [name, data] : solitons) {
    const auto& [l, p0] = data;
    if (!detect_algebraic_soliton(l, p0).is_soliton) {
      note(o, false, name + " is not a soliton");
      continue;
    }
    ++count;
    worst = std::max(worst, diagonality_report(integrate_flow(l, p0, 0.2)).max_commutator);
  }
  note(o, worst < kDiagonalCommutator, std::to_string(count) + " soliton flows, max commutator " + fmt("%.1e", worst));
  return o;
}

// 9
Outcome nice_diagonal_invariance() {
  Outcome o;
  std::mt19937_64 rng(kSuiteSeed + 9);
  for (const auto& name : {"heis3", "L6_13"}) {
    const auto l = catalog::get(name).algebra;
    double worst = 0.0;
    bool completed = true;
    for (int rep = 0; rep < 5; ++rep) {
      const auto traj = integrate_flow(l, Metric::diagonal(random_diagonal(l.dim(), rng)), 1.0);
      completed = completed && traj.status == FlowStatus::completed;
      for (const auto& s : traj.samples)
        worst = std::max(worst, (s.p - Matrix(s.p.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
    }
    note(o, completed && worst < 1e-9, std::string(name) + " max |P_offdiag| " + fmt("%.1e", worst));
  }
  return o;
}

// 10
Outcome nikolayevsky() {
  Outcome o;
  note(o, nikolayevsky_no_nice_type(6, 7), "(6,7) true");
  note(o, !nikolayevsky_no_nice_type(5, 6), "(5,6) false");
  int below = 0, hits = 0;
  const auto start = Clock::now();
  for (int p = 1; p <= 20; ++p)
    for (int q = 1; q <= 20; ++q) {
      const bool v = nikolayevsky_no_nice_type(p, q);
      hits += v;
      if (p + q < 13 && v) ++below;
    }
  const double elapsed = ms_since(start);
  note(o, below == 0, std::to_string(below) + " hits with p+q < 13, " + std::to_string(hits) + " in 20x20");
  note(o, elapsed < 1.0, fmt("scan %.4f ms", elapsed));
  return o;
}

// 11
Outcome l6_11_negative_control() {
  Outcome o;
  const auto l = catalog::get("L6_11").algebra;
  SimpleDerivationOptions opts;
  opts.attempts = 64;
  const bool found = simple_derivation_nice_basis(l, opts).has_value();
  note(o, !found, std::string("simple derivation ") + (found ? "found" : "not found") + " in 64 attempts");
  note(o, !is_nice_basis(l).nice, "is_nice_basis false");
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"published Ricci matrices", published_ricci_matrices},
      {"n4 spectrum", n4_spectrum},
      {"nice <=> stably Ricci-diagonal (500 random)", nice_iff_stably_diagonal},
      {"root criterion and pairing", root_criterion},
      {"non-nilpotent controls", non_nilpotent_controls},
      {"moment-map identity", moment_map},
      {"Heisenberg soliton closed form", heisenberg_soliton},
      {"n4 flow not diagonal", n4_not_diagonal},
      {"nice-basis diagonal invariance", nice_diagonal_invariance},
      {"Nikolayevsky inequality", nikolayevsky},
      {"L6_11 negative control", l6_11_negative_control},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.1f ms]\n", o.pass ? "PASS" : "FAIL", c + 1, criteria[c].first.c_str(),
                o.detail.c_str(), ms_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
