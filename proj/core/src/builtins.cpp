#include "coderiv/builtins.hpp"

#include <cmath>
#include <map>

#include "coderiv/error.hpp"

namespace coderiv {

namespace {

const std::map<std::string, BuiltinObjective, std::less<>>& objectives() {
  static const std::map<std::string, BuiltinObjective, std::less<>> table = [] {
    std::map<std::string, BuiltinObjective, std::less<>> t;
    // f(p,x) = (exp(x1 - p1), (x2 - p1)^2)
    BuiltinObjective eq;
    eq.name = "exp_quad";
    eq.min_p = 1;
    eq.min_x = 2;
    eq.n_y = 2;
    eq.value = [](std::span<const double> p, std::span<const double> x) {
      return DVec{std::exp(x[0] - p[0]), (x[1] - p[0]) * (x[1] - p[0])};
    };
    eq.jacobian = [](std::span<const double> p, std::span<const double> x) {
      const std::size_t np = p.size(), nx = x.size();
      DMatrix j(2, DVec(np + nx, 0.0));
      double e = std::exp(x[0] - p[0]);
      j[0][0] = -e;
      j[0][np] = e;
      j[1][0] = -2 * (x[1] - p[0]);
      j[1][np + 1] = 2 * (x[1] - p[0]);
      return j;
    };
    t.emplace(eq.name, eq);
    return t;
  }();
  return table;
}

const std::map<std::string, BuiltinConstraint, std::less<>>& constraints() {
  static const std::map<std::string, BuiltinConstraint, std::less<>> table = [] {
    std::map<std::string, BuiltinConstraint, std::less<>> t;
    // g = x1^2 <= 0: C(p) = {x1 = 0}, gradient vanishes on it.
    BuiltinConstraint sq;
    sq.name = "square_zero";
    sq.min_x = 1;
    sq.value = [](std::span<const double>, std::span<const double> x) { return x[0] * x[0]; };
    sq.gradient = [](std::span<const double> p, std::span<const double> x) {
      DVec g(p.size() + x.size(), 0.0);
      g[p.size()] = 2 * x[0];
      return g;
    };
    sq.feasible_point = [](std::span<const double>, std::size_t nx) { return DVec(nx, 0.0); };
    t.emplace(sq.name, sq);

    // g = |x|^2 - 1 - p1 <= 0
    BuiltinConstraint disk;
    disk.name = "shifted_disk";
    disk.min_p = 1;
    disk.min_x = 1;
    disk.value = [](std::span<const double> p, std::span<const double> x) {
      double s = 0;
      for (double v : x) s += v * v;
      return s - 1 - p[0];
    };
    disk.gradient = [](std::span<const double> p, std::span<const double> x) {
      DVec g(p.size() + x.size(), 0.0);
      g[0] = -1;
      for (std::size_t i = 0; i < x.size(); ++i) g[p.size() + i] = 2 * x[i];
      return g;
    };
    disk.feasible_point = [](std::span<const double> p, std::size_t nx) {
      return 1 + p[0] >= 0 ? DVec(nx, 0.0) : DVec{};
    };
    t.emplace(disk.name, disk);
    return t;
  }();
  return table;
}

}  // namespace

bool BuiltinConstraint::feasible_at(std::span<const double> p) const {
  return !feasible_point(p, min_x).empty();
}

const BuiltinObjective& builtin_objective(std::string_view name) {
  auto it = objectives().find(name);
  if (it == objectives().end())
    throw Error(ErrorCode::UnknownBuiltin, "objective '" + std::string(name) + "'");
  return it->second;
}

const BuiltinConstraint& builtin_constraint(std::string_view name) {
  auto it = constraints().find(name);
  if (it == constraints().end())
    throw Error(ErrorCode::UnknownBuiltin, "constraint '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> builtin_objective_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : objectives()) out.push_back(k);
  return out;
}

std::vector<std::string> builtin_constraint_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : constraints()) out.push_back(k);
  return out;
}

}  // namespace coderiv
