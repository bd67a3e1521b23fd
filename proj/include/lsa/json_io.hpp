#pragma once

#include <string>

#include <json.hpp>

#include "lsa/phase_space.hpp"
#include "lsa/solver.hpp"
#include "lsa/sweep.hpp"

namespace lsa::io {

using Json = nlohmann::ordered_json;

// Complex numbers are always [re, im].
Json to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& path);
Json matrix_to_json(const Matrix& m);
/// Accepts entries as [re, im] pairs or plain real numbers.
Matrix matrix_from_json(const Json& j, const std::string& path);

/// {"dim": n, "basis": [...], "products": [{"left": i, "right": j, "coeffs": [[re,im],...]}]}, 1-based.
Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

/// {"dim": n, "r": [[[re,im],...],...]}; a bare matrix is accepted as well.
Json symmetric_to_json(const SymmetricTensor& r);
SymmetricTensor symmetric_from_json(const Json& j, double tol = kDefaultTolerance);

/// {"norm", "tolerance", "verified", "worst_indices"} with 1-based indices.
Json residual_to_json(const Residual& r, double tol);
Json residual_to_json(const SResidual& r, double tol);

Json lie_to_json(const LieAlgebra& l, const std::vector<std::string>& basis);

/// {"n", "basis", "basis_order", "brackets", "omega", "provenance", "verified"}.
Json phase_space_to_json(const PhaseSpace& p);

/// The Lie algebra and form of a phase-space document.
struct SymplecticData {
  int n = 0;
  LieAlgebra lie;
  BilinearForm omega;
};
SymplecticData symplectic_from_json(const Json& j, double tol = kDefaultTolerance);

/// {"dim": m, "matrix": [[...]]} or a bare square matrix.
LinearMap linear_map_from_json(const Json& j);
Json linear_map_to_json(const LinearMap& m);

Json parakahler_to_json(const ParakahlerReport& r, double tol);
Json symplectomorphism_to_json(const SymplectomorphismReport& r, double tol);
Json bialgebra_to_json(const BialgebraReport& r, double tol);

SolveConfig solve_config_from_json(const Json& j, SolveConfig base = {});
Json solve_config_to_json(const SolveConfig& c);
/// `algebra_id` (optional) enables family matching of each cluster.
Json solution_set_to_json(const SolutionSet& s, const SolveConfig& cfg, const std::string& algebra_id = {},
                          const ParamMap& algebra_params = {});

Json params_to_json(const ParamMap& p);
Json catalog_to_json();
Json sweep_to_json(const SweepReport& r);

/// Reads a file, or parses `text` directly when it starts with '{' or '['.
Json load(const std::string& text_or_path);

}  // namespace lsa::io
