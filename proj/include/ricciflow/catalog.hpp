#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ricciflow/algebra.hpp"

namespace ricciflow::catalog {

/// Properties the test suite recomputes from scratch for each entry.
struct Expected {
  bool nice = false;
  /// nullopt when not known.
  std::optional<bool> stably_diagonal;
  bool nilpotent = false;
  std::optional<std::vector<int>> type;
  /// Ricci operator for the metric making the basis orthonormal.
  std::optional<Matrix> ricci_canonical;
  std::optional<Vector> ricci_eigenvalues;
  /// Soliton constant and derivation for the canonical metric.
  std::optional<double> soliton_c;
  std::optional<Matrix> soliton_d;
  /// Whether the Ricci flow from the canonical metric is diagonal.
  std::optional<bool> flow_diagonal;
};

struct Entry {
  std::string name;
  std::string description;
  LieAlgebra algebra;
  Expected expected;
};

/// Known names, in a fixed order. `milnor` is the λ = (1, 1, 1) member of
/// the Milnor family; `get` also accepts `milnor(l1,l2,l3)`.
std::vector<std::string> names();

/// Throws NotFound for an unknown name.
Entry get(std::string_view name);

/// [X2,X3] = λ1 X1, [X3,X1] = λ2 X2, [X1,X2] = λ3 X3.
Entry milnor(double l1, double l2, double l3);

} // namespace ricciflow::catalog
