#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lsa/catalog.hpp"

namespace lsa {

struct SolveConfig {
  int starts = 500;
  std::uint64_t seed = 0;
  int max_iters = 100;
  double newton_tol = 1e-12;
  double cluster_tol = 1e-6;
  double sample_radius = 2.0;  // random entries are uniform in this complex disc

  void validate() const;
};

struct Solution {
  SymmetricTensor r;
  int multiplicity = 0;
  double abs_det = 0.0;
  double residual = 0.0;
};

struct SolutionSet {
  std::vector<Solution> solutions;
  int starts = 0;
  int converged = 0;
  /// Every symmetric r solves the system (all quadratic coefficients vanish).
  bool identically_zero = false;
};

/// Multi-start Gauss-Newton on the symmetric S-equation. The first start is the
/// origin; the rest are drawn from `cfg.seed`. Clusters are formed greedily in
/// start order, so the result is deterministic for fixed (a, cfg).
SolutionSet solve(const Algebra& a, const SolveConfig& cfg = {}, double tol = kDefaultTolerance);

struct RefineResult {
  Matrix r;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Gauss-Newton from a single symmetric starting matrix.
RefineResult refine(const Algebra& a, const Matrix& start, const SolveConfig& cfg = {});

/// Max-entry residual of the coordinate S-equation at r (the solver's own evaluation).
double s_equation_norm(const Algebra& a, const Matrix& r);

struct FamilyFit {
  bool member = false;
  double residual = 0.0;
  ParamMap params;
  std::string branch;
};

/// Least-squares fit of a family's free parameters to r. `algebra_params`
/// supplies the algebra parameters the family leaves free (k, lambda).
FamilyFit family_membership(const SymmetricTensor& r, std::string_view family_id,
                            const ParamMap& algebra_params = {}, double tol = 1e-6);

struct InvertibilityReport {
  std::vector<double> abs_det;
  bool invertible_found = false;
  double threshold = 0.0;
  int starts = 0;
};

InvertibilityReport invertibility_report(const SolutionSet& s, double threshold = 1e-6);

}  // namespace lsa
