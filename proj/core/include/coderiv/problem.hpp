#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coderiv/builtins.hpp"
#include "coderiv/cone.hpp"

namespace coderiv {

enum class Relation { Le, Eq };

/// f(p,x) = Fp p + Fx x + c.
struct AffineObjective {
  Matrix fp;
  Matrix fx;
  Vec c;
};

/// f_i(z) = ½ zᵀ Q_i z + L_i z + c_i with z = (p, x).
struct QuadraticObjective {
  std::vector<Matrix> q;
  Matrix l;
  Vec c;
};

struct NamedObjective {
  std::string name;
};

using ObjectiveSpec = std::variant<AffineObjective, QuadraticObjective, NamedObjective>;

/// ⟨ap,p⟩ + ⟨ax,x⟩ + b  rel  0.
struct AffineRow {
  Vec ap;
  Vec ax;
  Scalar b;
  Relation rel = Relation::Le;
};

struct AffineSystem {
  std::vector<AffineRow> rows;
};

/// g_t(p,x) = ⟨ap(t),p⟩ + ⟨ax(t),x⟩ + b(t) ≤ 0 for t ∈ [t_lo, t_hi].
/// Coefficient lists are indexed by the power of t.
struct SemiInfiniteFamily {
  std::vector<Vec> ap;
  std::vector<Vec> ax;
  Vec b;
  Scalar t_lo;
  Scalar t_hi;

  std::size_t degree() const;
  AffineRow at(const Scalar& t) const;
  /// The finitely many t whose rows describe the same set.
  /// Throws UnsupportedConstraintKind when no such finite set exists.
  std::vector<Scalar> reduction_points() const;
};

struct SemiInfiniteSystem {
  std::vector<SemiInfiniteFamily> families;
  std::vector<AffineRow> rows;
};

struct SmoothSystem {
  std::vector<std::string> names;
};

using ConstraintSpec = std::variant<AffineSystem, SemiInfiniteSystem, SmoothSystem>;

struct Dims {
  std::size_t p = 0, x = 0, y = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
};

struct ParametricProblem {
  std::string name;
  Dims dims;
  OrderCone cone;
  std::optional<OrderCone> cone_tilde;
  ObjectiveSpec objective;
  ConstraintSpec constraints;
  std::optional<Vec> base_p;
  std::optional<Vec> base_x;

  bool affine_objective() const { return std::holds_alternative<AffineObjective>(objective); }
  bool polyhedral_constraints() const { return !std::holds_alternative<SmoothSystem>(constraints); }
  /// Affine objective and polyhedral constraints: everything is exact.
  bool exact_path() const { return affine_objective() && polyhedral_constraints(); }
};

/// Structural checks (dimensions, cone pointedness, K̃ ⊆ int K ∪ {0}).
/// Throws DimensionMismatch or ConeNotPointed.
void check_structure(const ParametricProblem& problem);

struct BasePoint {
  Vec p;
  Vec x;
  Vec y;
  bool exact = true;
};

/// f(p,x); exact for affine and quadratic objectives, rounded-to-rational otherwise.
Vec evaluate_objective(const ParametricProblem& problem, const Vec& p, const Vec& x);
DVec evaluate_objective(const ParametricProblem& problem, std::span<const double> p,
                        std::span<const double> x);

/// Jacobian blocks ∇_p f and ∇_x f at (p,x).
struct Jacobian {
  Matrix jp;
  Matrix jx;
  bool exact = true;
};
Jacobian objective_jacobian(const ParametricProblem& problem, const Vec& p, const Vec& x);
DMatrix objective_jacobian(const ParametricProblem& problem, std::span<const double> p,
                           std::span<const double> x);

/// Finite row list of gph C (semi-infinite families reduced).
/// Throws UnsupportedConstraintKind for smooth systems.
std::vector<AffineRow> polyhedral_rows(const ParametricProblem& problem);

/// gph C ⊆ P × X, coordinates (p, x).
HPolyhedron graph_polyhedron(const ParametricProblem& problem);
/// C(p) ⊆ X.
HPolyhedron feasible_polyhedron(const ParametricProblem& problem, const Vec& p);

/// Float feasibility test; exact rows are evaluated exactly after conversion.
bool is_feasible(const ParametricProblem& problem, std::span<const double> p,
                 std::span<const double> x, double tol = 1e-12);
/// A point of C(p), if one is found.
std::optional<DVec> feasible_point(const ParametricProblem& problem, std::span<const double> p);

enum class Variant { Min, Weak, Proper };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Verifies x̄ ∈ C(p̄) and efficiency of f(p̄,x̄) in F(p̄) for the variant.
/// Throws InfeasiblePoint or NotEfficient (message carries the witness x).
BasePoint check_solution_point(const ParametricProblem& problem, const Vec& p, const Vec& x,
                               Variant variant = Variant::Min);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  /// Extreme ray w of K* with ⟨w,f⟩ not convex, when found.
  std::optional<Vec> convexity_witness;
  bool ok() const;
};

ValidationReport validate(const ParametricProblem& problem);

/// Exact PSD test by symmetric elimination.
bool is_psd(Matrix m);

/// ½y₁ + ½y₂ ∈ F(½p₁ + ½p₂) + K for y_i = f(p_i, x_i).
bool midpoint_convexity_holds(const ParametricProblem& problem, const Vec& p1, const Vec& x1,
                              const Vec& p2, const Vec& x2);

}  // namespace coderiv
