#include "lsa/s_equation.hpp"

#include <cmath>

#include <fmt/format.h>

namespace lsa {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw Error(fmt::format("dimension mismatch in {}: {} vs {}", what, a, b));
}

// T_x(M) = L_x M + M ad_x^T for the representation L ⊗ 1 + 1 ⊗ ad.
Matrix tensor_action(const Algebra& a, const Vector& x, const Matrix& m) {
  return left_mult_matrix(a, x) * m + m * ad_matrix(a, x).transpose();
}

}  // namespace

SymmetricTensor::SymmetricTensor(Matrix r, double tol) : r_(std::move(r)) {
  if (r_.rows() != r_.cols() || r_.rows() < 1) throw Error("r must be a square matrix");
  if (r_.rows() > kMaxDim) throw Error("r dimension exceeds supported size");
  if (!r_.allFinite()) throw Error("r has non-finite entries");
  const double asym = max_abs(Matrix(r_ - r_.transpose()));
  if (asym > tol) throw Error(fmt::format("r is not symmetric (asymmetry {:.3e})", asym));
  const Matrix sym = (r_ + r_.transpose()) / 2.0;
  r_ = sym;
}

BilinearForm::BilinearForm(Matrix b, FormRole role, double tol) : b_(std::move(b)), role_(role) {
  if (b_.rows() != b_.cols() || b_.rows() < 1) throw Error("bilinear form must be square");
  if (!b_.allFinite()) throw Error("bilinear form has non-finite entries");
  if (role_ == FormRole::Symplectic) {
    if (max_abs(Matrix(b_ + b_.transpose())) > tol) throw Error("symplectic form must be antisymmetric");
    if (std::abs(b_.fullPivLu().determinant()) <= tol) throw Error("symplectic form is degenerate");
  }
}

Coproduct::Coproduct(std::vector<Matrix> images) : images_(std::move(images)) {
  const int n = dim();
  if (n < 1) throw Error("coproduct needs at least one basis image");
  for (const auto& m : images_) {
    if (m.rows() != n || m.cols() != n) throw Error("coproduct image has wrong shape");
  }
}

Matrix Coproduct::apply(const Vector& x) const {
  const int n = dim();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (x(i) != Complex{}) out += x(i) * images_[i];
  return out;
}

SResidual s_residual_tensor(const Algebra& a, const SymmetricTensor& r) {
  const int n = a.dim();
  require_same_dim(n, r.dim(), "S-equation");
  SResidual out{Tensor3(n), 0.0, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex s{};
        for (int t = 0; t < n; ++t)
          for (int l = 0; l < n; ++l) {
            s += -a(t, l, i) * r(t, j) * r(l, k) + a(t, l, j) * r(i, t) * r(l, k) +
                 (a(t, l, k) - a(l, t, k)) * r(i, t) * r(l, j);
          }
        out.t(i, j, k) = s;
        if (std::abs(s) > out.norm) {
          out.norm = std::abs(s);
          out.worst = {i, j, k};
        }
      }
  return out;
}

Residual s_residual_operator(const Algebra& a, const SymmetricTensor& r) {
  const int n = a.dim();
  require_same_dim(n, r.dim(), "S-equation");
  std::vector<Vector> images;
  for (int i = 0; i < n; ++i) images.push_back(r.apply(basis_vector(n, i)));
  Residual res;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const Vector lhs = a.commutator(images[p], images[q]);
      const Vector inner = dual_matrix(left_mult_matrix(a, images[p])) * basis_vector(n, q) -
                           dual_matrix(left_mult_matrix(a, images[q])) * basis_vector(n, p);
      res.update(max_abs(Vector(lhs - r.apply(inner))), {p, q});
    }
  return res;
}

Algebra dual_product(const Algebra& a, const SymmetricTensor& r) {
  const int n = a.dim();
  require_same_dim(n, r.dim(), "dual product");
  Tensor3 c(n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(a.basis_labels()[i] + "*");
  for (int i = 0; i < n; ++i) {
    const Vector ei = basis_vector(n, i);
    const Vector ri = r.apply(ei);
    for (int j = 0; j < n; ++j) {
      const Vector ej = basis_vector(n, j);
      const Vector rj = r.apply(ej);
      const Vector v = -dual_matrix(right_mult_matrix(a, rj)) * ei + dual_matrix(ad_matrix(a, ri)) * ej;
      for (int k = 0; k < n; ++k) c(i, j, k) = v(k);
    }
  }
  return Algebra(std::move(c), std::move(labels));
}

Coproduct coboundary_alpha(const Algebra& a, const SymmetricTensor& r) {
  const int n = a.dim();
  require_same_dim(n, r.dim(), "coboundary");
  std::vector<Matrix> images;
  for (int x = 0; x < n; ++x) images.push_back(tensor_action(a, basis_vector(n, x), r.matrix()));
  return Coproduct(std::move(images));
}

Coproduct coproduct_dual_to(const Algebra& product) {
  const int n = product.dim();
  std::vector<Matrix> images(n, Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int x = 0; x < n; ++x) images[x](i, j) = product(i, j, x);
  return Coproduct(std::move(images));
}

Residual one_cocycle_residual(const Algebra& a, const Coproduct& alpha) {
  const int n = a.dim();
  require_same_dim(n, alpha.dim(), "1-cocycle");
  Residual res;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Vector ex = basis_vector(n, x);
      const Vector ey = basis_vector(n, y);
      const Matrix v = alpha.apply(a.commutator(ex, ey)) - tensor_action(a, ex, alpha.image(y)) +
                       tensor_action(a, ey, alpha.image(x));
      res.update(max_abs(v), {x, y});
    }
  return res;
}

Residual lsa_two_cocycle_residual(const Algebra& a, const BilinearForm& b) {
  const int n = a.dim();
  require_same_dim(n, b.dim(), "2-cocycle");
  Residual res;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const Vector ex = basis_vector(n, x), ey = basis_vector(n, y), ez = basis_vector(n, z);
        const Complex v = b(a.multiply(ex, ey), ez) - b(ex, a.multiply(ey, ez)) - b(a.multiply(ey, ex), ez) +
                          b(ey, a.multiply(ex, ez));
        res.update(std::abs(v), {x, y, z});
      }
  return res;
}

BialgebraReport check_bialgebra(const Algebra& a, const Algebra& dual) {
  require_same_dim(a.dim(), dual.dim(), "bialgebra");
  BialgebraReport rep;
  rep.left_symmetry = left_symmetry_residual(a);
  rep.dual_left_symmetry = left_symmetry_residual(dual);
  rep.alpha_cocycle = one_cocycle_residual(a, coproduct_dual_to(dual));
  rep.beta_cocycle = one_cocycle_residual(dual, coproduct_dual_to(a));
  return rep;
}

FormAgreement check_s_equation_forms(const Algebra& a, const SymmetricTensor& r, double tol, double gap) {
  FormAgreement out;
  out.tensor_norm = s_residual_tensor(a, r).norm;
  out.operator_norm = s_residual_operator(a, r).norm;
  const bool both_small = out.tensor_norm < tol && out.operator_norm < tol;
  const bool both_large = out.tensor_norm > gap * tol && out.operator_norm > gap * tol;
  out.consistent = both_small || both_large;
  return out;
}

InverseCocycleAgreement check_inverse_cocycle(const Algebra& a, const SymmetricTensor& r, double tol, double gap) {
  const auto lu = r.matrix().fullPivLu();
  if (!lu.isInvertible() || std::abs(lu.determinant()) <= tol) throw Error("r is not invertible");
  InverseCocycleAgreement out;
  out.s_norm = s_residual_tensor(a, r).norm;
  out.cocycle_norm = lsa_two_cocycle_residual(a, BilinearForm(lu.inverse(), FormRole::LsaTwoCocycle)).norm;
  const bool both_small = out.s_norm < tol && out.cocycle_norm < tol;
  const bool both_large = out.s_norm > gap * tol && out.cocycle_norm > gap * tol;
  out.consistent = both_small || both_large;
  return out;
}

}  // namespace lsa
