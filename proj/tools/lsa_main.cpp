// lsa: batch front end over the library. Every verb prints one JSON report.
// Exit codes: 0 checks passed, 1 a check failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lsa/json_io.hpp"

namespace {

using lsa::io::Json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Inputs {
  std::string algebra_file;
  std::string catalog_id;
  std::string algebra_params;
  std::string r_file;
  std::string family_id;
  std::string params;
  std::string branch;
};

struct Globals {
  double tolerance = lsa::kDefaultTolerance;
  std::string output;
};

struct Loaded {
  lsa::Algebra algebra;
  std::string algebra_id;
  lsa::ParamMap algebra_params;
};

void add_algebra_options(CLI::App* cmd, Inputs& in) {
  auto* file = cmd->add_option("--algebra", in.algebra_file, "Algebra JSON file (or inline JSON)");
  auto* cat = cmd->add_option("--catalog", in.catalog_id, "Catalog algebra id, e.g. NV");
  file->excludes(cat);
  cmd->add_option("--algebra-params", in.algebra_params, "Algebra parameters, e.g. k=2 or lambda=0.5");
}

void add_tensor_options(CLI::App* cmd, Inputs& in) {
  auto* file = cmd->add_option("--r", in.r_file, "Symmetric tensor JSON file (or inline JSON)");
  auto* fam = cmd->add_option("--family", in.family_id, "Catalog solution family id");
  file->excludes(fam);
  cmd->add_option("--params", in.params, "Family parameters, e.g. r11=1,r22=2");
  cmd->add_option("--branch", in.branch, "Family branch (sign or root choice)");
}

lsa::ParamMap params_of(const std::string& text) { return text.empty() ? lsa::ParamMap{} : lsa::parse_params(text); }

Loaded load_algebra(const Inputs& in) {
  const lsa::ParamMap ap = params_of(in.algebra_params);
  if (!in.algebra_file.empty()) return {lsa::io::algebra_from_json(lsa::io::load(in.algebra_file)), {}, ap};
  if (!in.catalog_id.empty()) {
    for (const auto& w : lsa::range_warnings(in.catalog_id, ap)) std::cerr << "warning: " << w << "\n";
    return {lsa::instantiate_algebra(in.catalog_id, ap), in.catalog_id, ap};
  }
  if (!in.family_id.empty()) {
    const auto& fam = lsa::catalog().family(in.family_id);
    lsa::ParamMap merged = ap;
    for (const auto& [k, v] : fam.fixed_algebra_params) merged[k] = v;
    return {lsa::family_algebra(in.family_id, ap), fam.algebra_id, merged};
  }
  throw lsa::Error("one of --algebra, --catalog or --family is required");
}

lsa::SymmetricTensor load_tensor(const Inputs& in, const Loaded& alg, double tol) {
  if (!in.r_file.empty()) return lsa::io::symmetric_from_json(lsa::io::load(in.r_file), tol);
  if (in.family_id.empty()) throw lsa::Error("one of --r or --family is required");
  const auto& fam = lsa::catalog().family(in.family_id);
  if (!alg.algebra_id.empty() && fam.algebra_id != alg.algebra_id) {
    throw lsa::Error(fmt::format("family {} belongs to {}, not {}", fam.id, fam.algebra_id, alg.algebra_id));
  }
  lsa::ParamMap p = params_of(in.params);
  for (const auto& [k, v] : params_of(in.algebra_params)) p.emplace(k, v);
  return lsa::instantiate_family(in.family_id, p, in.branch);
}

void check_dims(const lsa::Algebra& a, const lsa::SymmetricTensor& r) {
  if (a.dim() != r.dim()) throw lsa::Error(fmt::format("r: dimension {} does not match algebra dimension {}", r.dim(), a.dim()));
}

void emit(const Json& j, const Globals& g) {
  const std::string text = j.dump(2) + "\n";
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw lsa::Error(fmt::format("cannot write '{}'", g.output));
  out << text;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LSA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw lsa::Error(fmt::format("LSA_SEED: '{}' is not an unsigned integer", env));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Left-symmetric algebras, the S-equation and their phase spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tolerance", g.tolerance, "Residual tolerance for every check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--output", g.output, "Write the JSON report here instead of stdout");

  Inputs in;
  std::optional<std::uint64_t> seed;
  std::optional<int> starts;
  std::string config_file;
  std::string phase1, phase2, map_file;
  int sweep_samples = 20;
  std::vector<std::string> sweep_only;

  auto* verify = app.add_subcommand("verify", "Left-symmetry residual of an algebra");
  auto* sub = app.add_subcommand("sub-adjacent", "Commutator Lie algebra");
  auto* sres = app.add_subcommand("s-residual", "S-equation residual of a symmetric tensor");
  auto* dual = app.add_subcommand("dual-product", "Induced product on the dual and the bialgebra checks");
  auto* build = app.add_subcommand("build-phase", "Phase space of a solution");
  auto* para = app.add_subcommand("check-parakahler", "Para-Kähler checks on a phase space");
  auto* iso = app.add_subcommand("check-iso", "Symplectic / para-Kähler isomorphism between two phase spaces");
  auto* thm = app.add_subcommand("theorem39", "Phase space of r against the semidirect phase space");
  auto* solve = app.add_subcommand("solve", "Multi-start search for solutions of the S-equation");
  auto* cat = app.add_subcommand("catalog", "Built-in algebras and solution families");

  for (auto* c : {verify, sub, sres, dual, build, para, thm, solve}) add_algebra_options(c, in);
  for (auto* c : {sres, dual, build, para, thm}) add_tensor_options(c, in);

  iso->add_option("--phase1", phase1, "Source phase-space JSON")->required();
  iso->add_option("--phase2", phase2, "Target phase-space JSON")->required();
  iso->add_option("--map", map_file, "Linear map JSON")->required();

  solve->add_option("--seed", seed, "Random seed (default: $LSA_SEED or 0)");
  solve->add_option("--starts", starts, "Number of starting points")->check(CLI::PositiveNumber);
  solve->add_option("--config", config_file, "Solver configuration JSON");

  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List algebra and family ids");
  auto* cat_export = cat->add_subcommand("export", "Full catalog as JSON");
  auto* cat_sweep = cat->add_subcommand("sweep", "Regression sweep over every family");
  cat_sweep->add_option("--samples", sweep_samples, "Draws per family branch")->check(CLI::PositiveNumber);
  cat_sweep->add_option("--seed", seed, "Random seed (default: $LSA_SEED or 0)");
  cat_sweep->add_option("--only", sweep_only, "Restrict to these family ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const double tol = g.tolerance;
  try {
    if (verify->parsed()) {
      const Loaded a = load_algebra(in);
      const lsa::Residual res = lsa::left_symmetry_residual(a.algebra);
      Json j = lsa::io::residual_to_json(res, tol);
      j["algebra"] = lsa::io::algebra_to_json(a.algebra);
      emit(j, g);
      return res.below(tol) ? kPass : kFail;
    }
    if (sub->parsed()) {
      const Loaded a = load_algebra(in);
      const lsa::Residual ls = lsa::left_symmetry_residual(a.algebra);
      Json j{{"left_symmetry", lsa::io::residual_to_json(ls, tol)}};
      if (!ls.below(tol)) {
        j["lie"] = nullptr;
        j["verified"] = false;
        emit(j, g);
        return kFail;
      }
      const lsa::LieAlgebra lie = lsa::sub_adjacent(a.algebra, tol);
      const lsa::Residual jac = lsa::jacobi_residual(lie);
      j["lie"] = lsa::io::lie_to_json(lie, a.algebra.basis_labels());
      j["jacobi"] = lsa::io::residual_to_json(jac, tol);
      j["verified"] = jac.below(tol);
      emit(j, g);
      return jac.below(tol) ? kPass : kFail;
    }
    if (sres->parsed()) {
      const Loaded a = load_algebra(in);
      const lsa::SymmetricTensor r = load_tensor(in, a, tol);
      check_dims(a.algebra, r);
      const lsa::SResidual t = lsa::s_residual_tensor(a.algebra, r);
      Json j = lsa::io::residual_to_json(t, tol);
      j["operator_form"] = lsa::io::residual_to_json(lsa::s_residual_operator(a.algebra, r), tol);
      j["r"] = lsa::io::symmetric_to_json(r);
      emit(j, g);
      return t.verified(tol) ? kPass : kFail;
    }
    if (dual->parsed()) {
      const Loaded a = load_algebra(in);
      const lsa::SymmetricTensor r = load_tensor(in, a, tol);
      check_dims(a.algebra, r);
      const lsa::Algebra d = lsa::dual_product(a.algebra, r);
      const lsa::BialgebraReport rep = lsa::check_bialgebra(a.algebra, d);
      Json j{{"dual", lsa::io::algebra_to_json(d)},
             {"s_residual", lsa::io::residual_to_json(lsa::s_residual_tensor(a.algebra, r), tol)},
             {"bialgebra", lsa::io::bialgebra_to_json(rep, tol)}};
      emit(j, g);
      return rep.verified(tol) ? kPass : kFail;
    }
    if (build->parsed() || para->parsed() || thm->parsed()) {
      const Loaded a = load_algebra(in);
      const lsa::SymmetricTensor r = load_tensor(in, a, tol);
      check_dims(a.algebra, r);
      const lsa::PhaseSpace p = lsa::build_phase_space(a.algebra, r, tol).with_algebra_id(a.algebra_id);
      if (build->parsed()) {
        emit(lsa::io::phase_space_to_json(p), g);
        return p.verified() ? kPass : kFail;
      }
      if (para->parsed()) {
        const lsa::ParakahlerReport rep = lsa::check_parakahler(p, tol);
        Json j = lsa::io::parakahler_to_json(rep, tol);
        j["s_residual"] = p.s_residual();
        emit(j, g);
        return rep.verified(tol) && p.verified() ? kPass : kFail;
      }
      const lsa::PhaseSpace s = lsa::semidirect_phase_space(a.algebra, tol);
      const lsa::LinearMap phi = lsa::phase_space_isomorphism(a.algebra, r);
      const lsa::SymplectomorphismReport rep = lsa::verify_symplectomorphism(s, p, phi, tol);
      Json j = lsa::io::symplectomorphism_to_json(rep, tol);
      j["s_residual"] = p.s_residual();
      j["map"] = lsa::io::linear_map_to_json(phi);
      emit(j, g);
      return rep.symplectic(tol) && p.verified() ? kPass : kFail;
    }
    if (iso->parsed()) {
      const lsa::io::SymplecticData s1 = lsa::io::symplectic_from_json(lsa::io::load(phase1), tol);
      const lsa::io::SymplecticData s2 = lsa::io::symplectic_from_json(lsa::io::load(phase2), tol);
      if (s1.n != s2.n) throw lsa::Error("phase2.n: dimension differs from phase1.n");
      const lsa::LinearMap phi = lsa::io::linear_map_from_json(lsa::io::load(map_file));
      if (phi.dim_in() != 2 * s1.n || phi.dim_out() != 2 * s1.n) {
        throw lsa::Error(fmt::format("map.matrix: expected {}x{}", 2 * s1.n, 2 * s1.n));
      }
      const lsa::SymplectomorphismReport rep =
          lsa::verify_symplectomorphism(s1.lie, s1.omega, s2.lie, s2.omega, s1.n, phi, tol);
      emit(lsa::io::symplectomorphism_to_json(rep, tol), g);
      return rep.symplectic(tol) ? kPass : kFail;
    }
    if (solve->parsed()) {
      const Loaded a = load_algebra(in);
      lsa::SolveConfig cfg;
      cfg.seed = default_seed();
      if (!config_file.empty()) cfg = lsa::io::solve_config_from_json(lsa::io::load(config_file), cfg);
      if (seed) cfg.seed = *seed;
      if (starts) cfg.starts = *starts;
      cfg.validate();
      const lsa::SolutionSet set = lsa::solve(a.algebra, cfg, tol);
      emit(lsa::io::solution_set_to_json(set, cfg, a.algebra_id, a.algebra_params), g);
      return kPass;
    }
    if (cat_list->parsed()) {
      const lsa::CatalogListing l = lsa::list_entries();
      emit(Json{{"algebras", l.algebra_ids}, {"families", l.family_ids}}, g);
      return kPass;
    }
    if (cat_export->parsed()) {
      emit(lsa::io::catalog_to_json(), g);
      return kPass;
    }
    if (cat_sweep->parsed()) {
      for (const auto& id : sweep_only) (void)lsa::catalog().family(id);
      const lsa::SweepReport rep = lsa::regression_sweep(sweep_samples, seed.value_or(default_seed()), tol, sweep_only);
      emit(lsa::io::sweep_to_json(rep), g);
      return rep.ok() ? kPass : kFail;
    }
  } catch (const lsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
