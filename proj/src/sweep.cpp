#include "lsa/sweep.hpp"

#include <algorithm>
#include <random>

namespace lsa {

const SymmetricTensor* SweepSample::solution() const {
  if (passed) return &r;
  if (corrected && parakahler) return &*corrected;
  return nullptr;
}

std::vector<std::string> SweepReport::discrepancies() const {
  std::vector<std::string> out;
  for (const auto& f : families)
    if (f.discrepancy) out.push_back(f.family_id);
  return out;
}

bool SweepReport::ok() const {
  return std::all_of(samples.begin(), samples.end(), [&](const SweepSample& s) {
    const SymmetricTensor* sol = s.solution();
    if (sol == nullptr || !s.parakahler || !s.isomorphism) return false;
    if (!s.passed && !(s.corrected_norm < tolerance)) return false;
    if (!s.parakahler->verified(tolerance) || !s.isomorphism->symplectic(tolerance)) return false;
    // A nonzero r moves A* off itself.
    return sol->is_zero() ? s.isomorphism->preserves_minus : !s.isomorphism->preserves_minus;
  });
}

SweepReport regression_sweep(int samples_per_branch, std::uint64_t seed, double tol,
                             const std::vector<std::string>& only) {
  if (samples_per_branch < 1) throw Error("samples per branch must be positive");
  SweepReport report;
  report.tolerance = tol;
  std::mt19937_64 rng(seed);
  SolveConfig refine_cfg;

  for (const auto& fam : catalog().families()) {
    if (!only.empty() && std::find(only.begin(), only.end(), fam.id) == only.end()) continue;
    FamilySummary summary{fam.id};
    for (const auto& branch : fam.branches) {
      for (int s = 0; s < samples_per_branch; ++s) {
        const ParamMap params = sample_family_params(fam, rng);
        Algebra alg = family_algebra(fam.id, params);
        SymmetricTensor r = instantiate_family(fam.id, params, branch);
        SweepSample sample{fam.id, branch, params, alg, r};
        sample.s_norm = s_residual_tensor(alg, r).norm;
        sample.passed = sample.s_norm < tol;

        std::optional<SymmetricTensor> solved;
        if (sample.passed) {
          solved = r;
        } else {
          const RefineResult fix = refine(alg, r.matrix(), refine_cfg);
          if (fix.converged) {
            sample.corrected = SymmetricTensor(fix.r);
            sample.corrected_norm = s_residual_tensor(alg, *sample.corrected).norm;
            if (sample.corrected_norm < tol) solved = sample.corrected;
          }
        }
        if (solved) {
          const PhaseSpace phase = build_phase_space(alg, *solved, tol);
          sample.parakahler = check_parakahler(phase, tol);
          sample.isomorphism = verify_symplectomorphism(semidirect_phase_space(alg, tol), phase,
                                                        phase_space_isomorphism(alg, *solved), tol);
        }

        ++summary.samples;
        if (sample.passed) ++summary.passed;
        summary.worst_s_norm = std::max(summary.worst_s_norm, sample.s_norm);
        report.samples.push_back(std::move(sample));
      }
    }
    summary.discrepancy = summary.passed < summary.samples;
    report.families.push_back(summary);
  }
  return report;
}

}  // namespace lsa
