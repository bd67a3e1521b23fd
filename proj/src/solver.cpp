#include "lsa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace lsa {

namespace {

struct Unknowns {
  explicit Unknowns(int n) : n(n) {
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) pairs.emplace_back(p, q);
  }

  Matrix to_matrix(const Vector& x) const {
    Matrix r(n, n);
    for (std::size_t u = 0; u < pairs.size(); ++u) {
      const auto [p, q] = pairs[u];
      r(p, q) = x(u);
      r(q, p) = x(u);
    }
    return r;
  }

  Vector to_vector(const Matrix& r) const {
    Vector x(static_cast<Eigen::Index>(pairs.size()));
    for (std::size_t u = 0; u < pairs.size(); ++u) x(u) = r(pairs[u].first, pairs[u].second);
    return x;
  }

  Matrix unit(std::size_t u) const {
    Matrix e = Matrix::Zero(n, n);
    e(pairs[u].first, pairs[u].second) = 1.0;
    e(pairs[u].second, pairs[u].first) = 1.0;
    return e;
  }

  int n;
  std::vector<std::pair<int, int>> pairs;
};

// The system is Q(r, r) with Q bilinear:
// Q(s, t)_{ijk} = sum_{t,l} -c_tl^i s_tj t_lk + c_tl^j s_it t_lk + (c_tl^k - c_lt^k) s_it t_lj.
Vector quadratic(const Algebra& a, const Matrix& s, const Matrix& t) {
  const int n = a.dim();
  Vector out(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex v{};
        for (int p = 0; p < n; ++p)
          for (int l = 0; l < n; ++l) {
            v += -a(p, l, i) * s(p, j) * t(l, k) + a(p, l, j) * s(i, p) * t(l, k) +
                 (a(p, l, k) - a(l, p, k)) * s(i, p) * t(l, j);
          }
        out((i * n + j) * n + k) = v;
      }
  return out;
}

Matrix jacobian(const Algebra& a, const Unknowns& unk, const Matrix& r) {
  const int n = a.dim();
  Matrix jac(n * n * n, static_cast<Eigen::Index>(unk.pairs.size()));
  for (std::size_t u = 0; u < unk.pairs.size(); ++u) {
    const Matrix e = unk.unit(u);
    jac.col(u) = quadratic(a, e, r) + quadratic(a, r, e);
  }
  return jac;
}

bool converged(double fnorm, const Matrix& r, double tol) { return fnorm < tol * (1.0 + r.squaredNorm()); }

Complex random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(rho, theta);
}

// Gauss-Newton step with a rank choice. Near a component cut out by products
// such as u*r22 = u*r12 = 0 the weak Jacobian direction has sigma far below
// sqrt(|f|); following it makes Newton halve every coordinate and slide into
// the singular point. Far from the variety the full step is better. Both come
// from one SVD.
Vector newton_step(const Algebra& a, const Unknowns& unk, const Vector& x, const Matrix& r, const Vector& f) {
  const Eigen::JacobiSVD<Matrix> svd(jacobian(a, unk, r), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  Vector full = Vector::Zero(x.size());
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) return full;
  const double cut = std::min(std::sqrt(f.norm()), sigma(0));
  Vector truncated = full;
  for (Eigen::Index i = 0; i < sigma.size() && sigma(i) > 1e-13 * sigma(0); ++i) {
    const Vector d = svd.matrixV().col(i) * (svd.matrixU().col(i).dot(f) / sigma(i));
    full += d;
    if (sigma(i) >= cut) truncated += d;
  }
  auto after = [&](const Vector& step) {
    const Matrix next = unk.to_matrix(x - step);
    return max_abs(quadratic(a, next, next));
  };
  // The truncated step must at least halve the residual; when it stalls, plain
  // Newton (linear at non-reduced roots, and not monotone) takes over.
  const double t = after(truncated);
  return t < 0.5 * max_abs(f) && t <= after(full) ? truncated : full;
}

bool coin(std::mt19937_64& rng) { return (rng() >> 63) != 0; }

bool identically_zero(const Algebra& a, const Unknowns& unk) {
  // Q(x, x) is quadratic, so it vanishes identically iff its Jacobian vanishes at every unit point.
  for (std::size_t u = 0; u < unk.pairs.size(); ++u)
    if (max_abs(jacobian(a, unk, unk.unit(u))) != 0.0) return false;
  return true;
}

}  // namespace

void SolveConfig::validate() const {
  if (starts < 1) throw Error("starts must be positive");
  if (max_iters < 1) throw Error("max_iters must be positive");
  if (!(newton_tol > 0.0)) throw Error("newton_tol must be positive");
  if (!(cluster_tol > newton_tol)) throw Error("cluster_tol must exceed newton_tol");
  if (!(sample_radius > 0.0)) throw Error("sample_radius must be positive");
}

double s_equation_norm(const Algebra& a, const Matrix& r) { return max_abs(quadratic(a, r, r)); }

namespace {

// Singular roots (r12^2 = 0, or r22^2 = 0 with r12^2 ~ r22) converge only
// linearly, so a point that passes the scale-aware test can sit 1e-6 to 1e-3
// off the variety. Keep stepping down to a floor of tol^2 * 1e-6 (about 1e-7
// from a quartic root) and return the best point seen. Newton is not monotone
// there, so only five steps without a new best end the polish, as does moving
// more than 1e-2 (1 + |r|) from where it converged.
void polish(const Algebra& a, const Unknowns& unk, Vector x, RefineResult& out, double tol, int budget) {
  const Vector x0 = x;
  const double reach = 1e-2 * (1.0 + out.r.norm());
  Matrix r = out.r;
  double res = out.residual;
  for (int k = 0, stale = 0; k < budget && stale < 5 && !converged(out.residual, out.r, 1e-6 * tol * tol); ++k) {
    x -= newton_step(a, unk, x, r, quadratic(a, r, r));
    if (max_abs(Vector(x - x0)) > reach) return;
    r = unk.to_matrix(x);
    res = max_abs(quadratic(a, r, r));
    if (!std::isfinite(res)) return;
    if (res < out.residual) {
      out.r = r;
      out.residual = res;
      out.iterations += stale + 1;
      stale = 0;
    } else {
      ++stale;
    }
  }
}

}  // namespace

RefineResult refine(const Algebra& a, const Matrix& start, const SolveConfig& cfg) {
  const int n = a.dim();
  if (start.rows() != n || start.cols() != n) throw Error("start matrix has wrong size");
  const Unknowns unk(n);
  Vector x = unk.to_vector((start + start.transpose()) / 2.0);
  RefineResult out;
  for (int it = 0;; ++it) {
    const Matrix r = unk.to_matrix(x);
    const Vector f = quadratic(a, r, r);
    out.r = r;
    out.residual = max_abs(f);
    out.iterations = it;
    if (converged(out.residual, r, cfg.newton_tol)) {
      out.converged = true;
      polish(a, unk, x, out, cfg.newton_tol, cfg.max_iters);
      return out;
    }
    if (it >= cfg.max_iters || !std::isfinite(out.residual) || r.norm() > 1e8) return out;
    x -= newton_step(a, unk, x, r, f);
  }
}

SolutionSet solve(const Algebra& a, const SolveConfig& cfg, double tol) {
  cfg.validate();
  if (!a.verified(tol)) {
    throw Error(fmt::format("algebra is not left-symmetric (residual {:.3e})", a.left_symmetry_residual()));
  }
  const int n = a.dim();
  const Unknowns unk(n);
  SolutionSet out;
  out.starts = cfg.starts;
  out.identically_zero = identically_zero(a, unk);

  std::mt19937_64 rng(cfg.seed);
  std::vector<RefineResult> found;
  for (int s = 0; s < cfg.starts; ++s) {
    Matrix start = Matrix::Zero(n, n);
    if (s > 0) {
      // Even starts are dense. Odd ones zero each entry with probability 1/2:
      // Newton is drawn toward singular strata (on AIII it halves r11 and r12
      // together), so families living on coordinate subspaces need starts there.
      const bool sparse = s % 2 == 1;
      for (const auto& [p, q] : unk.pairs) {
        const Complex z = random_in_disc(rng, cfg.sample_radius);
        start(p, q) = sparse && coin(rng) ? Complex(0.0) : z;
        start(q, p) = start(p, q);
      }
    }
    RefineResult res = refine(a, start, cfg);
    if (res.converged) found.push_back(std::move(res));
  }
  out.converged = static_cast<int>(found.size());

  for (const auto& res : found) {
    auto it = std::find_if(out.solutions.begin(), out.solutions.end(),
                           [&](const Solution& sol) { return max_abs(Matrix(sol.r.matrix() - res.r)) < cfg.cluster_tol; });
    if (it != out.solutions.end()) {
      ++it->multiplicity;
      continue;
    }
    out.solutions.push_back({SymmetricTensor(res.r), 1, std::abs(res.r.fullPivLu().determinant()), res.residual});
  }
  return out;
}

namespace {

Complex entry_for(const Matrix& r, const std::string& name) {
  // Names are "rij" with 1-based digits.
  if (name.size() == 3 && name[0] == 'r') {
    const int i = name[1] - '1', j = name[2] - '1';
    if (i >= 0 && j >= 0 && i < r.rows() && j < r.cols()) return r(i, j);
  }
  return 1.0;
}

double fit_error(const Matrix& model, const Matrix& target) {
  if (!model.allFinite()) return std::numeric_limits<double>::infinity();
  return max_abs(Matrix(model - target));
}

}  // namespace

FamilyFit family_membership(const SymmetricTensor& r, std::string_view family_id, const ParamMap& algebra_params,
                            double tol) {
  const SolutionFamily& fam = catalog().family(family_id);
  const Algebra alg = family_algebra(family_id, algebra_params);
  if (alg.dim() != r.dim()) throw Error(fmt::format("{}: dimension mismatch", family_id));

  ParamMap fixed = fam.fixed_algebra_params;
  for (const auto& spec : fam.algebra_params) {
    const auto it = algebra_params.find(spec.name);
    if (it == algebra_params.end()) throw Error(fmt::format("{}: missing algebra parameter '{}'", family_id, spec.name));
    fixed[spec.name] = it->second;
  }

  const Matrix& target = r.matrix();
  const int np = static_cast<int>(fam.params.size());
  auto model = [&](const Vector& x, std::string_view branch) {
    ParamMap p = fixed;
    for (int i = 0; i < np; ++i) p[fam.params[i].name] = x(i);
    return fam.generator(p, branch);
  };
  auto flatten = [](const Matrix& m) {
    Vector v(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) v(i) = m.data()[i];
    return v;
  };

  FamilyFit best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const auto& branch : fam.branches) {
    Vector x(np);
    for (int i = 0; i < np; ++i) x(i) = entry_for(target, fam.params[i].name);
    double err = fit_error(model(x, branch), target);
    for (int it = 0; it < 20 && err > 0.0 && std::isfinite(err); ++it) {
      const Vector f = flatten(model(x, branch) - target);
      Matrix jac(f.size(), np);
      for (int i = 0; i < np; ++i) {
        Vector xh = x;
        const double h = 1e-7 * (1.0 + std::abs(x(i)));
        xh(i) += h;
        jac.col(i) = (flatten(model(xh, branch) - target) - f) / h;
      }
      const Vector step = Eigen::CompleteOrthogonalDecomposition<Matrix>(jac).solve(f);
      const Vector candidate = x - step;
      const double cand_err = fit_error(model(candidate, branch), target);
      if (!(cand_err < err)) break;
      x = candidate;
      err = cand_err;
    }
    if (err < best.residual) {
      best.residual = err;
      best.branch = branch;
      best.params.clear();
      for (int i = 0; i < np; ++i) best.params[fam.params[i].name] = x(i);
    }
  }
  best.member = best.residual < tol;
  return best;
}

InvertibilityReport invertibility_report(const SolutionSet& s, double threshold) {
  InvertibilityReport rep;
  rep.threshold = threshold;
  rep.starts = s.starts;
  for (const auto& sol : s.solutions) {
    rep.abs_det.push_back(sol.abs_det);
    if (sol.abs_det > threshold) rep.invertible_found = true;
  }
  return rep;
}

}  // namespace lsa
