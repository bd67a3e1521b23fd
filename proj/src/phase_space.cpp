#include "lsa/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lsa {

namespace {

// Writes a 2n-vector (A part, A* part) into bracket slot (i, j) and (j, i).
void set_bracket(Tensor3& f, int i, int j, const Vector& primal, const Vector& dual) {
  const int n = static_cast<int>(primal.size());
  for (int k = 0; k < n; ++k) {
    f(i, j, k) = primal(k);
    f(j, i, k) = -primal(k);
    f(i, j, n + k) = dual(k);
    f(j, i, n + k) = -dual(k);
  }
}

void set_product(Tensor3& c, int i, int j, const Vector& primal, const Vector& dual) {
  const int n = static_cast<int>(primal.size());
  for (int k = 0; k < n; ++k) {
    c(i, j, k) = primal(k);
    c(i, j, n + k) = dual(k);
  }
}

Matrix lstar(const Algebra& a, const Vector& x) { return dual_matrix(left_mult_matrix(a, x)); }
Matrix rstar(const Algebra& a, const Vector& x) { return dual_matrix(right_mult_matrix(a, x)); }
Matrix adstar(const Algebra& a, const Vector& x) { return dual_matrix(ad_matrix(a, x)); }

void require_left_symmetric(const Algebra& a, double tol) {
  if (!a.verified(tol)) {
    throw Error(fmt::format("algebra is not left-symmetric (residual {:.3e})", a.left_symmetry_residual()));
  }
}

}  // namespace

PhaseSpace::PhaseSpace(Algebra base, SymmetricTensor r, LieAlgebra lie, BilinearForm omega,
                       std::optional<Algebra> lsa, double s_residual, bool verified, std::string algebra_id)
    : base_(std::move(base)),
      r_(std::move(r)),
      lie_(std::move(lie)),
      omega_(std::move(omega)),
      lsa_(std::move(lsa)),
      s_residual_(s_residual),
      verified_(verified),
      algebra_id_(std::move(algebra_id)) {
  const int n = base_.dim();
  if (r_.dim() != n || lie_.dim() != 2 * n || omega_.dim() != 2 * n) throw Error("phase space parts have wrong sizes");
  if (lsa_ && lsa_->dim() != 2 * n) throw Error("phase space product has wrong size");
}

PhaseSpace PhaseSpace::with_algebra_id(std::string id) const {
  PhaseSpace copy = *this;
  copy.algebra_id_ = std::move(id);
  return copy;
}

std::vector<std::string> phase_space_labels(const Algebra& a) {
  std::vector<std::string> labels = a.basis_labels();
  for (const auto& l : a.basis_labels()) labels.push_back(l + "*");
  return labels;
}

BilinearForm canonical_omega(int n) {
  if (n < 1) throw Error("phase space dimension must be at least 1");
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w(i, n + i) = -1.0;
    w(n + i, i) = 1.0;
  }
  return BilinearForm(std::move(w), FormRole::Symplectic);
}

Residual two_cocycle_residual(const LieAlgebra& l, const BilinearForm& omega) {
  const int m = l.dim();
  if (omega.dim() != m) throw Error(fmt::format("dimension mismatch in 2-cocycle: {} vs {}", m, omega.dim()));
  // omega([x_i, x_j], x_k) = sum_p f(i,j,p) W(p,k)
  const Matrix& w = omega.matrix();
  auto term = [&](int i, int j, int k) {
    Complex s{};
    for (int p = 0; p < m; ++p) s += l(i, j, p) * w(p, k);
    return s;
  };
  Residual res;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) res.update(std::abs(term(i, j, k) + term(j, k, i) + term(k, i, j)), {i, j, k});
  return res;
}

PhaseSpace build_phase_space(const Algebra& a, const SymmetricTensor& r, double tol) {
  require_left_symmetric(a, tol);
  const int n = a.dim();
  if (r.dim() != n) throw Error(fmt::format("dimension mismatch: algebra {} vs r {}", n, r.dim()));
  const int m = 2 * n;
  const Vector zero = Vector::Zero(n);

  Tensor3 f(m);
  Tensor3 prod(m);
  for (int i = 0; i < n; ++i) {
    const Vector x = basis_vector(n, i);
    for (int j = 0; j < n; ++j) {
      const Vector y = basis_vector(n, j);
      if (i < j) set_bracket(f, i, j, a.commutator(x, y), zero);
      set_product(prod, i, j, a.multiply(x, y), zero);
    }
  }
  // [x, a*] and the mixed products x*a*, a*x
  for (int i = 0; i < n; ++i) {
    const Vector x = basis_vector(n, i);
    for (int j = 0; j < n; ++j) {
      const Vector as = basis_vector(n, j);
      const Vector ra = r.apply(as);
      const Vector ls = lstar(a, x) * as;
      set_bracket(f, i, n + j, a.commutator(x, ra) - r.apply(ls), ls);

      const Vector ads = adstar(a, x) * as;
      set_product(prod, i, n + j, a.multiply(x, ra) - r.apply(ads), ads);
      const Vector rs = rstar(a, x) * as;
      set_product(prod, n + j, i, a.multiply(ra, x) + r.apply(rs), -rs);
    }
  }
  // [a*, b*] and a* ∘ b*
  const Algebra dual = dual_product(a, r);
  for (int i = 0; i < n; ++i) {
    const Vector as = basis_vector(n, i);
    for (int j = 0; j < n; ++j) {
      const Vector bs = basis_vector(n, j);
      if (i < j) set_bracket(f, n + i, n + j, zero, lstar(a, r.apply(as)) * bs - lstar(a, r.apply(bs)) * as);
      Vector dv(n);
      for (int k = 0; k < n; ++k) dv(k) = dual(i, j, k);
      set_product(prod, n + i, n + j, zero, dv);
    }
  }

  const double s = s_residual_tensor(a, r).norm;
  return PhaseSpace(a, r, LieAlgebra(std::move(f), tol), canonical_omega(n),
                    Algebra(std::move(prod), phase_space_labels(a)), s, s < tol);
}

PhaseSpace semidirect_phase_space(const Algebra& a, double tol) {
  require_left_symmetric(a, tol);
  const int n = a.dim();
  const int m = 2 * n;
  const Vector zero = Vector::Zero(n);
  // [x1 + v1, x2 + v2] = [x1, x2] + L*(x1) v2 - L*(x2) v1
  Tensor3 f(m);
  Tensor3 prod(m);
  for (int i = 0; i < n; ++i) {
    const Vector x = basis_vector(n, i);
    for (int j = 0; j < n; ++j) {
      const Vector y = basis_vector(n, j);
      if (i < j) set_bracket(f, i, j, a.commutator(x, y), zero);
      set_bracket(f, i, n + j, zero, lstar(a, x) * y);
      set_product(prod, i, j, a.multiply(x, y), zero);
      set_product(prod, i, n + j, zero, adstar(a, x) * y);
      set_product(prod, n + j, i, zero, -(rstar(a, x) * y));
    }
  }
  return PhaseSpace(a, SymmetricTensor::zero(n), LieAlgebra(std::move(f), tol), canonical_omega(n),
                    Algebra(std::move(prod), phase_space_labels(a)), 0.0, true);
}

Algebra lsa_from_symplectic(const LieAlgebra& l, const BilinearForm& omega, double tol) {
  const int m = l.dim();
  if (omega.dim() != m) throw Error("dimension mismatch between Lie algebra and form");
  if (max_abs(Matrix(omega.matrix() + omega.matrix().transpose())) > tol) throw Error("form is not antisymmetric");
  const Matrix wt = omega.matrix().transpose();
  const auto lu = wt.fullPivLu();
  if (!lu.isInvertible() || std::abs(lu.determinant()) <= tol) throw Error("form is degenerate");
  const double cocycle = two_cocycle_residual(l, omega).norm;
  if (cocycle >= tol) throw Error(fmt::format("form is not a 2-cocycle (residual {:.3e})", cocycle));

  // omega(p, z) = (W^T p)_z and -omega(y, [x, z]) = -(ad_x^T W^T y)_z
  Tensor3 c(m);
  for (int x = 0; x < m; ++x) {
    const Matrix rhs = -l.ad(basis_vector(m, x)).transpose() * wt;
    const Matrix p = lu.solve(rhs);
    for (int y = 0; y < m; ++y)
      for (int k = 0; k < m; ++k) c(x, y, k) = p(k, y);
  }
  return Algebra(std::move(c));
}

bool ParakahlerReport::verified(double tol) const {
  return jacobi < tol && omega_antisymmetry < tol && omega_abs_det > tol && two_cocycle < tol && plus_closure < tol &&
         minus_closure < tol && plus_isotropy < tol && minus_isotropy < tol && plus_dim == half_dim && minus_dim == half_dim;
}

ParakahlerReport check_parakahler(const PhaseSpace& p, double tol) {
  const int n = p.n();
  const LieAlgebra& l = p.lie();
  const Matrix& w = p.omega().matrix();
  ParakahlerReport rep;
  rep.half_dim = n;
  rep.jacobi = jacobi_residual(l).norm;
  rep.omega_antisymmetry = max_abs(Matrix(w + w.transpose()));
  rep.omega_abs_det = std::abs(w.fullPivLu().determinant());
  rep.two_cocycle = two_cocycle_residual(l, p.omega()).norm;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        rep.plus_closure = std::max(rep.plus_closure, std::abs(l(i, j, n + k)));
        rep.minus_closure = std::max(rep.minus_closure, std::abs(l(n + i, n + j, k)));
      }
  rep.plus_isotropy = max_abs(Matrix(w.topLeftCorner(n, n)));
  rep.minus_isotropy = max_abs(Matrix(w.bottomRightCorner(n, n)));
  // The spans are coordinate blocks; their dimension is the rank of the block embedding.
  Matrix plus = Matrix::Zero(2 * n, n), minus = Matrix::Zero(2 * n, n);
  plus.topRows(n).setIdentity();
  minus.bottomRows(n).setIdentity();
  auto lu_plus = plus.fullPivLu();
  lu_plus.setThreshold(tol);
  auto lu_minus = minus.fullPivLu();
  lu_minus.setThreshold(tol);
  rep.plus_dim = static_cast<int>(lu_plus.rank());
  rep.minus_dim = static_cast<int>(lu_minus.rank());
  return rep;
}

Residual verify_lie_isomorphism(const LieAlgebra& l1, const LieAlgebra& l2, const LinearMap& phi, double tol) {
  const int m = l1.dim();
  if (l2.dim() != m || phi.dim_in() != m || phi.dim_out() != m) throw Error("dimension mismatch in isomorphism check");
  if (std::abs(phi.matrix().fullPivLu().determinant()) <= tol) throw Error("map is singular");
  const Matrix& p = phi.matrix();
  Residual res;
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y) {
      const Vector lhs = p * l1.bracket(basis_vector(m, x), basis_vector(m, y));
      const Vector rhs = l2.bracket(p.col(x), p.col(y));
      res.update(max_abs(Vector(lhs - rhs)), {x, y});
    }
  return res;
}

SymplectomorphismReport verify_symplectomorphism(const LieAlgebra& l1, const BilinearForm& omega1,
                                                 const LieAlgebra& l2, const BilinearForm& omega2, int n,
                                                 const LinearMap& phi, double tol) {
  if (omega1.dim() != 2 * n || omega2.dim() != 2 * n) throw Error("form dimension does not match 2n");
  SymplectomorphismReport rep;
  rep.lie = verify_lie_isomorphism(l1, l2, phi, tol).norm;
  const Matrix& p = phi.matrix();
  rep.pullback = max_abs(Matrix(omega1.matrix() - p.transpose() * omega2.matrix() * p));
  rep.plus_escape = max_abs(Matrix(p.bottomLeftCorner(n, n)));
  rep.minus_escape = max_abs(Matrix(p.topRightCorner(n, n)));
  rep.preserves_plus = rep.plus_escape < tol;
  rep.preserves_minus = rep.minus_escape < tol;
  return rep;
}

SymplectomorphismReport verify_symplectomorphism(const PhaseSpace& p1, const PhaseSpace& p2, const LinearMap& phi,
                                                 double tol) {
  if (p1.n() != p2.n()) throw Error("phase spaces have different dimensions");
  return verify_symplectomorphism(p1.lie(), p1.omega(), p2.lie(), p2.omega(), p1.n(), phi, tol);
}

LinearMap phase_space_isomorphism(const Algebra& a, const SymmetricTensor& r) {
  const int n = a.dim();
  if (r.dim() != n) throw Error(fmt::format("dimension mismatch: algebra {} vs r {}", n, r.dim()));
  Matrix phi = Matrix::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi(j, n + i) = -r(i, j);
  return LinearMap(std::move(phi));
}

}  // namespace lsa
