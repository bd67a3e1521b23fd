#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsa/phase_space.hpp"
#include "lsa/solver.hpp"

namespace lsa {

struct SweepSample {
  std::string family_id;
  std::string branch;
  ParamMap params;
  Algebra algebra;
  SymmetricTensor r;
  double s_norm = 0.0;
  bool passed = false;
  /// Nearest solution found by Gauss-Newton from r, when r itself fails.
  std::optional<SymmetricTensor> corrected;
  double corrected_norm = 0.0;
  /// Checks on the tensor that solves the S-equation (r, or its correction).
  std::optional<ParakahlerReport> parakahler;
  std::optional<SymplectomorphismReport> isomorphism;

  /// The solving tensor the phase-space checks were run on, if any.
  const SymmetricTensor* solution() const;
};

struct FamilySummary {
  std::string family_id;
  int samples = 0;
  int passed = 0;
  double worst_s_norm = 0.0;
  bool discrepancy = false;
};

struct SweepReport {
  double tolerance = kDefaultTolerance;
  std::vector<SweepSample> samples;
  std::vector<FamilySummary> families;

  std::vector<std::string> discrepancies() const;
  /// Every sample passes or is corrected, and every phase-space check holds.
  bool ok() const;
};

/// Draws `samples_per_branch` in-constraint parameter sets for every branch of
/// every family (or only those listed in `only`) and runs the S-equation,
/// phase-space and isomorphism checks on each.
SweepReport regression_sweep(int samples_per_branch, std::uint64_t seed, double tol = kDefaultTolerance,
                             const std::vector<std::string>& only = {});

}  // namespace lsa
