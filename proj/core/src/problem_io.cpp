#include "coderiv/problem_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coderiv/error.hpp"

namespace coderiv {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(path + "." + key, "missing");
  return *it;
}

Scalar scalar_at(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_scalar(v.get<std::string>());
    if (v.is_number_integer()) return parse_scalar(v.dump());
    if (v.is_number_float()) return parse_scalar(v.dump());
  } catch (const Error& e) {
    schema(path, e.what());
  }
  schema(path, "expected a number or numeric string");
}

std::size_t count_at(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    schema(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

Vec vec_at(const json& v, const std::string& path, std::optional<std::size_t> len = {}) {
  if (!v.is_array()) schema(path, "expected an array");
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(scalar_at(v[i], path + "[" + std::to_string(i) + "]"));
  if (len && out.size() != *len)
    throw Error(ErrorCode::DimensionMismatch,
                path + ": expected length " + std::to_string(*len) + ", got " + std::to_string(out.size()));
  return out;
}

std::vector<Vec> vec_list(const json& v, const std::string& path, std::optional<std::size_t> len = {}) {
  if (!v.is_array()) schema(path, "expected an array of arrays");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vec_at(v[i], path + "[" + std::to_string(i) + "]", len));
  return out;
}

Matrix matrix_at(const json& v, const std::string& path, std::size_t rows, std::size_t cols) {
  auto list = vec_list(v, path, cols);
  if (list.size() != rows)
    throw Error(ErrorCode::DimensionMismatch,
                path + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(list.size()));
  return Matrix(cols, std::move(list));
}

OrderCone cone_at(const json& v, const std::string& path, std::size_t dim) {
  if (!v.is_object()) schema(path, "expected an object");
  PolyCone c;
  if (v.contains("generators")) {
    c = PolyCone::from_generators(dim, vec_list(v["generators"], path + ".generators", dim));
  } else if (v.contains("halfspaces")) {
    // rows a mean ⟨a,y⟩ ≥ 0
    Matrix a(dim);
    for (auto& r : vec_list(v["halfspaces"], path + ".halfspaces", dim)) a.push_row(neg(r));
    c = PolyCone::from_halfspaces(a, Matrix(dim));
  } else {
    schema(path, "needs 'generators' or 'halfspaces'");
  }
  if (c.dim() != dim) c = PolyCone::origin(dim);
  try {
    return OrderCone(std::move(c));
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

Relation relation_at(const json& v, const std::string& path) {
  if (!v.is_string()) schema(path, "expected \"<=\" or \"=\"");
  auto s = v.get<std::string>();
  if (s == "<=" || s == "le") return Relation::Le;
  if (s == "=" || s == "==" || s == "eq") return Relation::Eq;
  schema(path, "unknown relation '" + s + "'");
}

AffineRow row_at(const json& v, const std::string& path, const Dims& d) {
  AffineRow r;
  r.ap = vec_at(field(v, "ap", path), path + ".ap", d.p);
  r.ax = vec_at(field(v, "ax", path), path + ".ax", d.x);
  r.b = v.contains("b") ? scalar_at(v["b"], path + ".b") : Scalar(0);
  r.rel = v.contains("rel") ? relation_at(v["rel"], path + ".rel") : Relation::Le;
  return r;
}

std::vector<AffineRow> rows_at(const json& v, const std::string& path, const Dims& d) {
  if (!v.is_array()) schema(path, "expected an array");
  std::vector<AffineRow> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(row_at(v[i], path + "[" + std::to_string(i) + "]", d));
  return out;
}

json str(const Scalar& s) { return format_scalar(s); }

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(str(s));
  return a;
}

json list_json(const std::vector<Vec>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(vec_json(r));
  return a;
}

json matrix_json(const Matrix& m) { return list_json(m.row_list()); }

json cone_json(const OrderCone& k) { return json{{"generators", list_json(k.extreme_rays())}}; }

json row_json(const AffineRow& r) {
  return json{{"ap", vec_json(r.ap)}, {"ax", vec_json(r.ax)}, {"b", str(r.b)},
              {"rel", r.rel == Relation::Le ? "<=" : "="}};
}

}  // namespace

ParametricProblem parse_problem(const json& doc) {
  if (!doc.is_object()) schema("$", "expected an object");
  ParametricProblem pr;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema("$.name", "expected a string");
    pr.name = doc["name"].get<std::string>();
  }
  const json& dims = field(doc, "dims", "$");
  pr.dims.p = count_at(field(dims, "p", "$.dims"), "$.dims.p");
  pr.dims.x = count_at(field(dims, "x", "$.dims"), "$.dims.x");
  pr.dims.y = count_at(field(dims, "y", "$.dims"), "$.dims.y");
  const Dims& d = pr.dims;

  pr.cone = cone_at(field(doc, "cone", "$"), "$.cone", d.y);
  if (doc.contains("cone_tilde") && !doc["cone_tilde"].is_null())
    pr.cone_tilde = cone_at(doc["cone_tilde"], "$.cone_tilde", d.y);

  const json& obj = field(doc, "objective", "$");
  const json& okind = field(obj, "kind", "$.objective");
  if (!okind.is_string()) schema("$.objective.kind", "expected a string");
  std::string kind = okind.get<std::string>();
  if (kind == "affine") {
    AffineObjective a;
    a.fp = obj.contains("Fp") ? matrix_at(obj["Fp"], "$.objective.Fp", d.y, d.p) : Matrix(d.y, d.p);
    a.fx = matrix_at(field(obj, "Fx", "$.objective"), "$.objective.Fx", d.y, d.x);
    a.c = obj.contains("c") ? vec_at(obj["c"], "$.objective.c", d.y) : zeros(d.y);
    pr.objective = std::move(a);
  } else if (kind == "quadratic") {
    QuadraticObjective q;
    const std::size_t n = d.p + d.x;
    const json& qs = field(obj, "Q", "$.objective");
    if (!qs.is_array() || qs.size() != d.y)
      throw Error(ErrorCode::DimensionMismatch, "$.objective.Q: expected one matrix per output");
    for (std::size_t i = 0; i < qs.size(); ++i)
      q.q.push_back(matrix_at(qs[i], "$.objective.Q[" + std::to_string(i) + "]", n, n));
    q.l = obj.contains("L") ? matrix_at(obj["L"], "$.objective.L", d.y, n) : Matrix(d.y, n);
    q.c = obj.contains("c") ? vec_at(obj["c"], "$.objective.c", d.y) : zeros(d.y);
    pr.objective = std::move(q);
  } else if (kind == "builtin") {
    const json& n = field(obj, "name", "$.objective");
    if (!n.is_string()) schema("$.objective.name", "expected a string");
    pr.objective = NamedObjective{n.get<std::string>()};
  } else {
    schema("$.objective.kind", "unknown kind '" + kind + "'");
  }

  const json& con = field(doc, "constraints", "$");
  const json& ckind = field(con, "kind", "$.constraints");
  if (!ckind.is_string()) schema("$.constraints.kind", "expected a string");
  kind = ckind.get<std::string>();
  if (kind == "affine") {
    AffineSystem s;
    if (con.contains("rows")) s.rows = rows_at(con["rows"], "$.constraints.rows", d);
    pr.constraints = std::move(s);
  } else if (kind == "semi_infinite") {
    SemiInfiniteSystem s;
    if (con.contains("rows")) s.rows = rows_at(con["rows"], "$.constraints.rows", d);
    const json& fams = field(con, "families", "$.constraints");
    if (!fams.is_array()) schema("$.constraints.families", "expected an array");
    for (std::size_t i = 0; i < fams.size(); ++i) {
      std::string path = "$.constraints.families[" + std::to_string(i) + "]";
      const json& f = fams[i];
      SemiInfiniteFamily fam;
      fam.ap = f.contains("ap") ? vec_list(f["ap"], path + ".ap", d.p) : std::vector<Vec>{};
      fam.ax = vec_list(field(f, "ax", path), path + ".ax", d.x);
      fam.b = f.contains("b") ? vec_at(f["b"], path + ".b") : Vec{};
      Vec range = vec_at(field(f, "t_range", path), path + ".t_range", 2);
      fam.t_lo = range[0];
      fam.t_hi = range[1];
      if (!(fam.t_lo < fam.t_hi)) schema(path + ".t_range", "needs t_lo < t_hi");
      s.families.push_back(std::move(fam));
    }
    pr.constraints = std::move(s);
  } else if (kind == "builtin") {
    SmoothSystem s;
    const json& names = field(con, "names", "$.constraints");
    if (!names.is_array()) schema("$.constraints.names", "expected an array of strings");
    for (const auto& n : names) {
      if (!n.is_string()) schema("$.constraints.names", "expected an array of strings");
      s.names.push_back(n.get<std::string>());
    }
    pr.constraints = std::move(s);
  } else {
    schema("$.constraints.kind", "unknown kind '" + kind + "'");
  }

  if (doc.contains("base_point") && !doc["base_point"].is_null()) {
    const json& bp = doc["base_point"];
    pr.base_p = vec_at(field(bp, "p", "$.base_point"), "$.base_point.p", d.p);
    pr.base_x = vec_at(field(bp, "x", "$.base_point"), "$.base_point.x", d.x);
  }
  check_structure(pr);
  return pr;
}

ParametricProblem parse_problem_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("$: not valid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

ParametricProblem load_problem(const std::string& path_or_name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(path_or_name, ec)) {
    std::ifstream in(path_or_name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
  }
  auto names = example_names();
  if (std::find(names.begin(), names.end(), path_or_name) != names.end())
    return builtin_example(path_or_name);
  throw Error(ErrorCode::SchemaError, "no such problem file or example: '" + path_or_name + "'");
}

json serialize_problem(const ParametricProblem& pr) {
  json doc;
  doc["name"] = pr.name;
  doc["dims"] = json{{"p", pr.dims.p}, {"x", pr.dims.x}, {"y", pr.dims.y}};
  doc["cone"] = cone_json(pr.cone);
  if (pr.cone_tilde) doc["cone_tilde"] = cone_json(*pr.cone_tilde);
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, AffineObjective>) {
          doc["objective"] = json{{"kind", "affine"}, {"Fp", matrix_json(o.fp)},
                                  {"Fx", matrix_json(o.fx)}, {"c", vec_json(o.c)}};
        } else if constexpr (std::is_same_v<T, QuadraticObjective>) {
          json qs = json::array();
          for (const auto& q : o.q) qs.push_back(matrix_json(q));
          doc["objective"] = json{{"kind", "quadratic"}, {"Q", qs}, {"L", matrix_json(o.l)},
                                  {"c", vec_json(o.c)}};
        } else {
          doc["objective"] = json{{"kind", "builtin"}, {"name", o.name}};
        }
      },
      pr.objective);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        json rows = json::array();
        if constexpr (std::is_same_v<T, AffineSystem>) {
          for (const auto& r : c.rows) rows.push_back(row_json(r));
          doc["constraints"] = json{{"kind", "affine"}, {"rows", rows}};
        } else if constexpr (std::is_same_v<T, SemiInfiniteSystem>) {
          for (const auto& r : c.rows) rows.push_back(row_json(r));
          json fams = json::array();
          for (const auto& f : c.families)
            fams.push_back(json{{"ap", list_json(f.ap)}, {"ax", list_json(f.ax)}, {"b", vec_json(f.b)},
                                {"t_range", json::array({str(f.t_lo), str(f.t_hi)})}});
          doc["constraints"] = json{{"kind", "semi_infinite"}, {"rows", rows}, {"families", fams}};
        } else {
          doc["constraints"] = json{{"kind", "builtin"}, {"names", c.names}};
        }
      },
      pr.constraints);
  if (pr.base_p && pr.base_x) doc["base_point"] = json{{"p", vec_json(*pr.base_p)}, {"x", vec_json(*pr.base_x)}};
  return doc;
}

std::string problem_digest(const ParametricProblem& pr) {
  std::string text = serialize_problem(pr).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- shipped examples ----

std::vector<std::string> example_names() {
  return {"example_2_1", "example_2_2", "example_4_1", "example_5_1", "ray_counterexample", "smooth_disk"};
}

namespace {

Matrix ints(std::size_t cols, std::initializer_list<std::initializer_list<long>> rows) {
  return Matrix::from_ints(cols, rows);
}

AffineRow le_row(Vec ap, Vec ax, Scalar b = 0) { return {std::move(ap), std::move(ax), std::move(b), Relation::Le}; }

ParametricProblem example_4_1(std::string name) {
  ParametricProblem pr;
  pr.name = std::move(name);
  pr.dims = {3, 1, 2};
  pr.cone = OrderCone::orthant(2);
  pr.cone_tilde = OrderCone(PolyCone::from_generators(2, {from_ints({2, 1}), from_ints({1, 2})}));
  pr.objective = AffineObjective{Matrix(2, 3), ints(1, {{1}, {2}}), zeros(2)};
  // p1 + 2 p2 + p3 − x ≤ 0
  pr.constraints = AffineSystem{{le_row(from_ints({1, 2, 1}), from_ints({-1}))}};
  pr.base_p = zeros(3);
  pr.base_x = zeros(1);
  return pr;
}

}  // namespace

ParametricProblem builtin_example(std::string_view name) {
  if (name == "example_2_1") {
    // f = (|x|,|x|) with C(p) = {x ≥ |p|}; on C(p), |x| = x.
    ParametricProblem pr;
    pr.name = "example_2_1";
    pr.dims = {1, 1, 2};
    pr.cone = OrderCone::orthant(2);
    pr.objective = AffineObjective{Matrix(2, 1), ints(1, {{1}, {1}}), zeros(2)};
    pr.constraints = AffineSystem{{le_row(from_ints({1}), from_ints({-1})),
                                   le_row(from_ints({-1}), from_ints({-1}))}};
    pr.base_p = from_ints({1});
    pr.base_x = from_ints({1});
    return pr;
  }
  if (name == "example_2_2") return example_4_1("example_2_2");
  if (name == "example_4_1") return example_4_1("example_4_1");
  if (name == "example_5_1") {
    ParametricProblem pr;
    pr.name = "example_5_1";
    pr.dims = {1, 2, 2};
    pr.cone = OrderCone::orthant(2);
    pr.objective = AffineObjective{Matrix(2, 1), Matrix::identity(2), from_ints({2, 3})};
    // g_t = −t x1 − (1 − t) x2 = (−x2) + t (−x1 + x2)
    SemiInfiniteFamily fam;
    fam.ap = {zeros(1), zeros(1)};
    fam.ax = {from_ints({0, -1}), from_ints({-1, 1})};
    fam.b = {Scalar(0)};
    fam.t_lo = 0;
    fam.t_hi = 1;
    pr.constraints = SemiInfiniteSystem{{fam}, {}};
    pr.base_p = zeros(1);
    pr.base_x = zeros(2);
    return pr;
  }
  if (name == "ray_counterexample") {
    ParametricProblem pr;
    pr.name = "ray_counterexample";
    pr.dims = {1, 1, 2};
    pr.cone = OrderCone::orthant(2);
    pr.objective = AffineObjective{Matrix(2, 1), ints(1, {{-1}, {0}}), zeros(2)};
    pr.constraints = AffineSystem{{le_row(zeros(1), from_ints({-1}))}};
    return pr;
  }
  if (name == "smooth_disk") {
    ParametricProblem pr;
    pr.name = "smooth_disk";
    pr.dims = {1, 2, 2};
    pr.cone = OrderCone::orthant(2);
    pr.objective = NamedObjective{"exp_quad"};
    pr.constraints = SmoothSystem{{"shifted_disk"}};
    // f(0, ·) attains its ideal point (1/e, 0) at x = (−1, 0)
    pr.base_p = zeros(1);
    pr.base_x = from_ints({-1, 0});
    return pr;
  }
  throw Error(ErrorCode::UnknownBuiltin, "example '" + std::string(name) + "'");
}

}  // namespace coderiv
