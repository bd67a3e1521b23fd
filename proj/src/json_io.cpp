#include "lsa/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace lsa::io {

namespace {

const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) throw Error(fmt::format("{}: expected an object", path.empty() ? "document" : path));
  const auto it = j.find(name);
  if (it == j.end()) throw Error(fmt::format("{}: missing field '{}'", path.empty() ? "document" : path, name));
  return *it;
}

std::string join(const std::string& path, const std::string& part) { return path.empty() ? part : path + "." + part; }

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw Error(fmt::format("{}: expected an integer", path));
  return j.get<int>();
}

std::vector<int> one_based(const std::vector<int>& idx) {
  std::vector<int> out;
  for (int i : idx) out.push_back(i + 1);
  return out;
}

std::string branch_or_default(const std::string& b) { return b.empty() ? "default" : b; }

}  // namespace

// Adding 0.0 folds -0.0 into 0.0 so reports do not depend on sign of zero.
Json to_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(fmt::format("{}: expected [re, im] pair", path));
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw Error(fmt::format("{}: expected a non-empty array of rows", path));
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw Error(fmt::format("{}[0]: expected a row array", path));
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string rp = fmt::format("{}[{}]", path, i);
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw Error(fmt::format("{}: expected a row of length {}", rp, cols));
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k], fmt::format("{}[{}]", rp, k));
  }
  return m;
}

Json algebra_to_json(const Algebra& a) {
  const int n = a.dim();
  Json products = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool nonzero = false;
      Json coeffs = Json::array();
      for (int k = 0; k < n; ++k) {
        nonzero = nonzero || a(i, j, k) != Complex{};
        coeffs.push_back(to_json(a(i, j, k)));
      }
      if (nonzero) products.push_back(Json{{"left", i + 1}, {"right", j + 1}, {"coeffs", std::move(coeffs)}});
    }
  return Json{{"dim", n}, {"basis", a.basis_labels()}, {"products", std::move(products)}};
}

namespace {

Tensor3 products_from_json(const Json& j, int n, const std::string& path) {
  if (!j.is_array()) throw Error(fmt::format("{}: expected an array", path));
  Tensor3 c(n);
  for (std::size_t p = 0; p < j.size(); ++p) {
    const std::string pp = fmt::format("{}[{}]", path, p);
    const int left = int_from_json(field(j[p], "left", pp), pp + ".left");
    const int right = int_from_json(field(j[p], "right", pp), pp + ".right");
    if (left < 1 || left > n) throw Error(fmt::format("{}.left: index {} out of range 1..{}", pp, left, n));
    if (right < 1 || right > n) throw Error(fmt::format("{}.right: index {} out of range 1..{}", pp, right, n));
    const Json& coeffs = field(j[p], "coeffs", pp);
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n) {
      throw Error(fmt::format("{}.coeffs: expected {} coefficients", pp, n));
    }
    for (int k = 0; k < n; ++k) c(left - 1, right - 1, k) = complex_from_json(coeffs[k], fmt::format("{}.coeffs[{}]", pp, k));
  }
  return c;
}

}  // namespace

Algebra algebra_from_json(const Json& j) {
  const int n = int_from_json(field(j, "dim", ""), "dim");
  if (n < 1 || n > kMaxDim) throw Error(fmt::format("dim: {} outside 1..{}", n, kMaxDim));
  std::vector<std::string> labels;
  if (j.contains("basis")) {
    const Json& b = j["basis"];
    if (!b.is_array() || static_cast<int>(b.size()) != n) throw Error(fmt::format("basis: expected {} labels", n));
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_string()) throw Error(fmt::format("basis[{}]: expected a string", i));
      labels.push_back(b[i].get<std::string>());
    }
  }
  return Algebra(products_from_json(field(j, "products", ""), n, "products"), std::move(labels));
}

Json symmetric_to_json(const SymmetricTensor& r) { return Json{{"dim", r.dim()}, {"r", matrix_to_json(r.matrix())}}; }

SymmetricTensor symmetric_from_json(const Json& j, double tol) {
  if (j.is_array()) return SymmetricTensor(matrix_from_json(j, "r"), tol);
  const int n = int_from_json(field(j, "dim", ""), "dim");
  Matrix m = matrix_from_json(field(j, "r", ""), "r");
  if (m.rows() != n || m.cols() != n) throw Error(fmt::format("r: expected a {}x{} matrix", n, n));
  return SymmetricTensor(std::move(m), tol);
}

Json residual_to_json(const Residual& r, double tol) {
  return Json{{"norm", r.norm}, {"tolerance", tol}, {"verified", r.norm < tol}, {"worst_indices", one_based(r.worst)}};
}

Json residual_to_json(const SResidual& r, double tol) {
  return Json{{"norm", r.norm}, {"tolerance", tol}, {"verified", r.norm < tol}, {"worst_indices", one_based(r.worst)}};
}

Json lie_to_json(const LieAlgebra& l, const std::vector<std::string>& basis) {
  const int m = l.dim();
  Json brackets = Json::array();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      bool nonzero = false;
      Json coeffs = Json::array();
      for (int k = 0; k < m; ++k) {
        nonzero = nonzero || l(i, j, k) != Complex{};
        coeffs.push_back(to_json(l(i, j, k)));
      }
      if (nonzero) brackets.push_back(Json{{"left", i + 1}, {"right", j + 1}, {"coeffs", std::move(coeffs)}});
    }
  return Json{{"dim", m}, {"basis", basis}, {"brackets", std::move(brackets)}};
}

Json phase_space_to_json(const PhaseSpace& p) {
  const auto labels = phase_space_labels(p.base());
  Json lie = lie_to_json(p.lie(), labels);
  Json out{{"n", p.n()},
           {"basis", labels},
           {"basis_order", "e_1..e_n, e_1^*..e_n^*"},
           {"brackets", std::move(lie["brackets"])},
           {"omega", matrix_to_json(p.omega().matrix())}};
  Json prov{{"algebra", p.algebra_id().empty() ? Json(nullptr) : Json(p.algebra_id())},
            {"algebra_products", algebra_to_json(p.base())},
            {"r", matrix_to_json(p.r().matrix())}};
  out["provenance"] = std::move(prov);
  out["s_residual"] = p.s_residual();
  out["verified"] = p.verified();
  return out;
}

SymplecticData symplectic_from_json(const Json& j, double tol) {
  const int n = int_from_json(field(j, "n", ""), "n");
  if (n < 1 || n > kMaxDim) throw Error(fmt::format("n: {} outside 1..{}", n, kMaxDim));
  Tensor3 half = products_from_json(field(j, "brackets", ""), 2 * n, "brackets");
  // Brackets are listed once per unordered pair; complete antisymmetrically.
  Tensor3 f(2 * n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b)
      for (int k = 0; k < 2 * n; ++k) {
        const Complex v = half(a, b, k);
        if (v == Complex{}) continue;
        f(a, b, k) = v;
        if (a != b) f(b, a, k) = -v;
      }
  Matrix w = matrix_from_json(field(j, "omega", ""), "omega");
  if (w.rows() != 2 * n || w.cols() != 2 * n) throw Error(fmt::format("omega: expected {}x{} matrix", 2 * n, 2 * n));
  return SymplecticData{n, LieAlgebra(std::move(f), tol), BilinearForm(std::move(w), FormRole::Symplectic, tol)};
}

LinearMap linear_map_from_json(const Json& j) {
  if (j.is_array()) return LinearMap(matrix_from_json(j, "matrix"));
  const int m = int_from_json(field(j, "dim", ""), "dim");
  Matrix mat = matrix_from_json(field(j, "matrix", ""), "matrix");
  if (mat.rows() != m || mat.cols() != m) throw Error(fmt::format("matrix: expected {}x{}", m, m));
  return LinearMap(std::move(mat));
}

Json linear_map_to_json(const LinearMap& m) { return Json{{"dim", m.dim_in()}, {"matrix", matrix_to_json(m.matrix())}}; }

Json parakahler_to_json(const ParakahlerReport& r, double tol) {
  return Json{{"jacobi", r.jacobi},
              {"omega_antisymmetry", r.omega_antisymmetry},
              {"omega_abs_det", r.omega_abs_det},
              {"two_cocycle", r.two_cocycle},
              {"plus_closure", r.plus_closure},
              {"minus_closure", r.minus_closure},
              {"plus_isotropy", r.plus_isotropy},
              {"minus_isotropy", r.minus_isotropy},
              {"plus_dim", r.plus_dim},
              {"minus_dim", r.minus_dim},
              {"tolerance", tol},
              {"verified", r.verified(tol)}};
}

Json symplectomorphism_to_json(const SymplectomorphismReport& r, double tol) {
  return Json{{"lie_residual", r.lie},
              {"pullback_residual", r.pullback},
              {"plus_escape", r.plus_escape},
              {"minus_escape", r.minus_escape},
              {"preserves_plus", r.preserves_plus},
              {"preserves_minus", r.preserves_minus},
              {"tolerance", tol},
              {"symplectic_isomorphism", r.symplectic(tol)},
              {"parakahler_isomorphism", r.parakahler(tol)}};
}

Json bialgebra_to_json(const BialgebraReport& r, double tol) {
  return Json{{"left_symmetry", residual_to_json(r.left_symmetry, tol)},
              {"dual_left_symmetry", residual_to_json(r.dual_left_symmetry, tol)},
              {"alpha_cocycle", residual_to_json(r.alpha_cocycle, tol)},
              {"beta_cocycle", residual_to_json(r.beta_cocycle, tol)},
              {"verified", r.verified(tol)}};
}

SolveConfig solve_config_from_json(const Json& j, SolveConfig c) {
  if (!j.is_object()) throw Error("solve config: expected an object");
  auto num = [&](const char* name, auto& dst) {
    if (!j.contains(name)) return;
    const Json& v = j[name];
    using T = std::decay_t<decltype(dst)>;
    if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw Error(fmt::format("{}: expected a number", name));
    } else {
      if (!v.is_number_integer()) throw Error(fmt::format("{}: expected an integer", name));
    }
    dst = v.get<T>();
  };
  num("starts", c.starts);
  num("seed", c.seed);
  num("max_iters", c.max_iters);
  num("newton_tol", c.newton_tol);
  num("cluster_tol", c.cluster_tol);
  num("sample_radius", c.sample_radius);
  c.validate();
  return c;
}

Json solve_config_to_json(const SolveConfig& c) {
  return Json{{"starts", c.starts},         {"seed", c.seed},
              {"max_iters", c.max_iters},   {"newton_tol", c.newton_tol},
              {"cluster_tol", c.cluster_tol}, {"sample_radius", c.sample_radius}};
}

Json params_to_json(const ParamMap& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = to_json(v);
  return out;
}

Json solution_set_to_json(const SolutionSet& s, const SolveConfig& cfg, const std::string& algebra_id,
                          const ParamMap& algebra_params) {
  Json clusters = Json::array();
  for (const auto& sol : s.solutions) {
    Json c{{"r", matrix_to_json(sol.r.matrix())},
           {"multiplicity", sol.multiplicity},
           {"abs_det", sol.abs_det},
           {"residual", sol.residual}};
    if (!algebra_id.empty()) {
      Json matched = Json::array();
      for (const auto* fam : catalog().families_for(algebra_id)) {
        bool applies = true;
        for (const auto& [k, v] : fam->fixed_algebra_params) {
          const auto it = algebra_params.find(k);
          applies = applies && it != algebra_params.end() && std::abs(it->second - v) < 1e-12;
        }
        ParamMap free_params;
        for (const auto& spec : fam->algebra_params) {
          const auto it = algebra_params.find(spec.name);
          if (it == algebra_params.end()) {
            applies = false;
          } else {
            // A family whose constraints exclude this algebra (SE(NIV_k) at k = 2) is skipped.
            for (const Complex& bad : spec.excluded) applies = applies && std::abs(it->second - bad) >= 1e-12;
            free_params[spec.name] = it->second;
          }
        }
        if (!applies) continue;
        const FamilyFit fit = family_membership(sol.r, fam->id, free_params, cfg.cluster_tol);
        if (fit.member) {
          matched.push_back(Json{{"family", fam->id},
                                 {"branch", branch_or_default(fit.branch)},
                                 {"params", params_to_json(fit.params)},
                                 {"fit_residual", fit.residual}});
        }
      }
      c["families"] = std::move(matched);
    }
    clusters.push_back(std::move(c));
  }
  const InvertibilityReport inv = invertibility_report(s, cfg.cluster_tol);
  return Json{{"config", solve_config_to_json(cfg)},
              {"starts", s.starts},
              {"converged", s.converged},
              {"identically_zero", s.identically_zero},
              {"clusters", std::move(clusters)},
              {"invertibility",
               Json{{"threshold", inv.threshold},
                    {"invertible_found", inv.invertible_found},
                    {"summary", inv.invertible_found
                                    ? std::string("invertible solution found")
                                    : fmt::format("no invertible solution found in {} starts", inv.starts)}}}};
}

namespace {

Json specs_to_json(const std::vector<ParamSpec>& specs) {
  Json out = Json::array();
  for (const auto& s : specs) {
    Json ex = Json::array();
    for (const auto& v : s.excluded) ex.push_back(to_json(v));
    out.push_back(Json{{"name", s.name}, {"excluded", std::move(ex)}});
  }
  return out;
}

}  // namespace

Json catalog_to_json() {
  Json algebras = Json::array();
  for (const auto& a : catalog().algebras()) {
    Json e{{"id", a.id}, {"presentation", a.presentation}, {"params", specs_to_json(a.params)}};
    if (!a.soft_range.empty()) e["soft_range"] = a.soft_range;
    if (a.params.empty()) e["algebra"] = algebra_to_json(instantiate_algebra(a.id));
    algebras.push_back(std::move(e));
  }
  Json families = Json::array();
  for (const auto& f : catalog().families()) {
    Json branches = Json::array();
    for (const auto& b : f.branches) branches.push_back(branch_or_default(b));
    families.push_back(Json{{"id", f.id},
                            {"algebra", f.algebra_id},
                            {"fixed_algebra_params", params_to_json(f.fixed_algebra_params)},
                            {"algebra_params", specs_to_json(f.algebra_params)},
                            {"params", specs_to_json(f.params)},
                            {"branches", std::move(branches)},
                            {"formula", f.formula}});
  }
  return Json{{"algebras", std::move(algebras)}, {"families", std::move(families)}};
}

Json sweep_to_json(const SweepReport& r) {
  Json fams = Json::array();
  for (const auto& f : r.families) {
    Json e{{"family", f.family_id},
           {"samples", f.samples},
           {"passed", f.passed},
           {"worst_s_norm", f.worst_s_norm},
           {"discrepancy", f.discrepancy}};
    if (f.discrepancy) {
      // Attach the first corrected tensor as the suggested fix.
      for (const auto& s : r.samples) {
        if (s.family_id != f.family_id || s.passed || !s.corrected) continue;
        e["example"] = Json{{"branch", branch_or_default(s.branch)},
                            {"params", params_to_json(s.params)},
                            {"r", matrix_to_json(s.r.matrix())},
                            {"s_norm", s.s_norm},
                            {"corrected_r", matrix_to_json(s.corrected->matrix())},
                            {"corrected_s_norm", s.corrected_norm}};
        break;
      }
    }
    double worst_pk = 0.0, worst_lie = 0.0, worst_pull = 0.0;
    for (const auto& s : r.samples) {
      if (s.family_id != f.family_id || !s.parakahler) continue;
      const auto& p = *s.parakahler;
      worst_pk = std::max({worst_pk, p.jacobi, p.two_cocycle, p.plus_closure, p.minus_closure, p.plus_isotropy,
                           p.minus_isotropy});
      worst_lie = std::max(worst_lie, s.isomorphism->lie);
      worst_pull = std::max(worst_pull, s.isomorphism->pullback);
    }
    e["worst_parakahler_residual"] = worst_pk;
    e["worst_isomorphism_lie_residual"] = worst_lie;
    e["worst_isomorphism_pullback_residual"] = worst_pull;
    fams.push_back(std::move(e));
  }
  Json disc = Json::array();
  for (const auto& d : r.discrepancies()) disc.push_back(d);
  return Json{{"tolerance", r.tolerance},
              {"samples", r.samples.size()},
              {"families", std::move(fams)},
              {"discrepancies", std::move(disc)},
              {"ok", r.ok()}};
}

Json load(const std::string& text_or_path) {
  std::string text;
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[')) {
    text = text_or_path;
  } else {
    std::ifstream in(text_or_path);
    if (!in) throw Error(fmt::format("cannot open '{}'", text_or_path));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(fmt::format("invalid JSON in '{}': {}", text_or_path.size() > 60 ? "input" : text_or_path, e.what()));
  }
}

}  // namespace lsa::io
