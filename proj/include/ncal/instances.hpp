// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncal/problem.hpp"

namespace ncal {

/// A problem instance bundled with its initial point and multiplier.
struct Instance {
  Problem problem;
  Vec x0;
  Vec y0;
  std::string name;
};

/// Names of the built-in instances:
///   sparse-quad   - 2-D quadratic with l0 composite, M-stationary at the origin
///   box-nlp       - min x^2 s.t. x in [1,3]
///   mpcc-toy      - distance-to-(1,1) objective over the complementarity set
///   infeasible-eq - inconsistent pair of equality constraints
///   neg-square    - concave regularizer with finite prox threshold
std::vector<std::string> registry_names();

/// Build a registry instance by tag.
Instance make_instance(const std::string& name);

/// Build an instance from its JSON spec: either {"name": "<registry tag>"} or
/// an inline spec with quadratic f (matrix Q, vector q, constant c0), affine
/// or componentwise-polynomial c, and a regularizer tag with parameters.
/// Optional "x0" / "y0" entries override the initial point.
Instance instance_from_json(const nlohmann::json& spec);

}  // namespace ncal
