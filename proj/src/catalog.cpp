#include "ricciflow/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

namespace ricciflow::catalog {

namespace {

// Brackets are written 1-based here to read like the usual tables.
struct Bracket1 {
  int i, j, k;
  double c;
};

LieAlgebra algebra(int dim, std::initializer_list<Bracket1> brackets) {
  std::vector<StructureConstant> entries;
  for (const auto& b : brackets) entries.push_back({b.i - 1, b.j - 1, b.k - 1, b.c});
  return LieAlgebra(dim, std::move(entries));
}

Matrix rows(int n, std::initializer_list<double> values) {
  Matrix m(n, n);
  auto it = values.begin();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = *it++;
  return m;
}

Entry heis3() {
  Entry e{"heis3", "3-dimensional Heisenberg algebra", algebra(3, {{1, 2, 3, 1.0}}), {}};
  e.expected.nice = true;
  e.expected.stably_diagonal = true;
  e.expected.nilpotent = true;
  e.expected.type = std::vector<int>{2, 1};
  e.expected.ricci_canonical = Vector(Eigen::Vector3d(-0.5, -0.5, 0.5)).asDiagonal();
  e.expected.soliton_c = -1.5;
  e.expected.soliton_d = Vector(Eigen::Vector3d(1.0, 1.0, 2.0)).asDiagonal();
  e.expected.flow_diagonal = true;
  return e;
}

Entry l6_11() {
  Entry e{"L6_11",
          "6-dimensional 4-step nilpotent algebra of type (3,1,1,1) with no nice basis",
          algebra(6, {{1, 2, 4, 1.0}, {1, 4, 5, 1.0}, {1, 5, 6, 1.0}, {2, 3, 6, 1.0}, {2, 4, 6, 1.0}}),
          {}};
  e.expected.nice = false;
  e.expected.stably_diagonal = false;
  e.expected.nilpotent = true;
  e.expected.type = std::vector<int>{3, 1, 1, 1};
  return e;
}

Entry l6_13() {
  Entry e{"L6_13", "6-dimensional 4-step nilpotent algebra of type (3,1,1,1), nice basis (b = 1)",
          algebra(6, {{1, 2, 4, 1.0}, {2, 3, 5, 1.0}, {3, 4, 6, 1.0}, {1, 4, 5, 1.0}, {1, 5, 6, -1.0}}),
          {}};
  e.expected.nice = true;
  e.expected.stably_diagonal = true;
  e.expected.nilpotent = true;
  e.expected.type = std::vector<int>{3, 1, 1, 1};
  return e;
}

Entry s3() {
  Entry e{"s3", "3-dimensional solvable algebra, [X1,X3] = X2 + X3",
          algebra(3, {{1, 3, 2, 1.0}, {1, 3, 3, 1.0}}), {}};
  e.expected.nice = false;
  e.expected.stably_diagonal = true;
  e.expected.nilpotent = false;
  return e;
}

Entry s4() {
  Entry e{"s4", "4-dimensional solvable algebra with a nice basis that is not stably Ricci-diagonal",
          algebra(4, {{1, 2, 3, 2.0}, {1, 3, 2, 1.0}, {1, 4, 4, 1.0}}), {}};
  e.expected.nice = true;
  e.expected.stably_diagonal = false;
  e.expected.nilpotent = false;
  e.expected.ricci_canonical = rows(4, {-5.5, 0.0, 0.0, 0.0,   //
                                        0.0, -1.5, -1.5, 0.0,  //
                                        0.0, -1.5, 1.5, 0.0,   //
                                        0.0, 0.0, 0.0, -1.0});
  return e;
}

Entry sl2() {
  Entry e{"sl2", "sl(2,R) in a nice basis that is not stably Ricci-diagonal",
          algebra(3, {{1, 2, 2, 1.0}, {1, 3, 3, -1.0}, {2, 3, 1, 1.0}}), {}};
  e.expected.nice = true;
  e.expected.stably_diagonal = false;
  e.expected.nilpotent = false;
  // X1 -> -X1, X2 <-> X3 is an isometric automorphism, so Ric_22 = Ric_33.
  e.expected.ricci_canonical = rows(3, {-1.5, 0.0, 0.0,  //
                                        0.0, -0.5, -1.0,  //
                                        0.0, -1.0, -0.5});
  return e;
}

Entry n4() {
  const double r2 = std::sqrt(2.0);
  Entry e{"n4", "4-dimensional 3-step nilpotent algebra whose Ricci flow is not diagonal",
          algebra(4, {{1, 2, 3, r2}, {1, 2, 4, r2}, {1, 3, 4, r2}}), {}};
  e.expected.nice = false;
  e.expected.stably_diagonal = false;
  e.expected.nilpotent = true;
  e.expected.type = std::vector<int>{2, 1, 1};
  e.expected.ricci_canonical = rows(4, {-3.0, 0.0, 0.0, 0.0,   //
                                        0.0, -2.0, -1.0, 0.0,  //
                                        0.0, -1.0, 0.0, 1.0,   //
                                        0.0, 0.0, 1.0, 2.0});
  e.expected.ricci_eigenvalues = Vector(Eigen::Vector4d(-3.0, -std::sqrt(6.0), 0.0, std::sqrt(6.0)));
  e.expected.flow_diagonal = false;
  return e;
}

const std::map<std::string, std::function<Entry()>, std::less<>>& registry() {
  static const std::map<std::string, std::function<Entry()>, std::less<>> table{
      {"heis3", heis3}, {"L6_11", l6_11}, {"L6_13", l6_13},
      {"s3", s3},       {"s4", s4},       {"sl2", sl2},
      {"n4", n4},       {"milnor", [] { return milnor(1.0, 1.0, 1.0); }},
  };
  return table;
}

} // namespace

std::vector<std::string> names() {
  return {"heis3", "L6_11", "L6_13", "s3", "s4", "sl2", "n4", "milnor"};
}

Entry milnor(double l1, double l2, double l3) {
  // [X3,X1] = λ2 X2 is stored as c_13^2 = −λ2.
  std::vector<StructureConstant> entries{{0, 1, 2, l3}, {0, 2, 1, -l2}, {1, 2, 0, l1}};
  char name[96];
  std::snprintf(name, sizeof name, "milnor(%g,%g,%g)", l1, l2, l3);
  Entry e{name, "3-dimensional unimodular algebra in a Milnor frame", LieAlgebra(3, std::move(entries)), {}};
  e.expected.nice = true;
  e.expected.stably_diagonal = true;
  const int nonzero = (l1 != 0.0) + (l2 != 0.0) + (l3 != 0.0);
  e.expected.nilpotent = nonzero <= 1;
  if (nonzero == 0) e.expected.type = std::vector<int>{3};
  if (nonzero == 1) e.expected.type = std::vector<int>{2, 1};
  return e;
}

Entry get(std::string_view name) {
  const auto& table = registry();
  if (auto it = table.find(name); it != table.end()) return it->second();
  double l1 = 0, l2 = 0, l3 = 0;
  char tail = 0;
  const std::string s(name);
  if (std::sscanf(s.c_str(), "milnor(%lf,%lf,%lf%c", &l1, &l2, &l3, &tail) == 4 && tail == ')' &&
      s.back() == ')')
    return milnor(l1, l2, l3);
  throw NotFound("unknown catalog entry '" + s + "'");
}

} // namespace ricciflow::catalog
