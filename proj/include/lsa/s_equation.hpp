#pragma once

#include <vector>

#include "lsa/algebra.hpp"

namespace lsa {

/// Symmetric r in A ⊗ A, r = sum r(i,j) e_i ⊗ e_j. As a map A* -> A,
/// r(e_i*) = sum_j r(i,j) e_j. Accepted with asymmetry up to `tol`, then
/// averaged to exact symmetry.
class SymmetricTensor {
 public:
  explicit SymmetricTensor(Matrix r, double tol = kDefaultTolerance);

  static SymmetricTensor zero(int n) { return SymmetricTensor(Matrix::Zero(n, n)); }

  int dim() const { return static_cast<int>(r_.rows()); }
  const Matrix& matrix() const { return r_; }
  const Complex& operator()(int i, int j) const { return r_(i, j); }

  /// Image r(a*) of a dual coefficient vector.
  Vector apply(const Vector& dual) const { return r_.transpose() * dual; }

  bool is_zero() const { return max_abs(r_) == 0.0; }

 private:
  Matrix r_;
};

/// Coefficients of [[r,r]] in the basis e_i ⊗ e_j ⊗ e_k.
struct SResidual {
  Tensor3 t;
  double norm = 0.0;
  std::vector<int> worst;

  bool verified(double tol = kDefaultTolerance) const { return norm < tol; }
};

enum class FormRole { Symplectic, LsaTwoCocycle, Generic };

/// B(u, v) = u^T B v in coefficient coordinates.
class BilinearForm {
 public:
  BilinearForm(Matrix b, FormRole role, double tol = kDefaultTolerance);

  int dim() const { return static_cast<int>(b_.rows()); }
  const Matrix& matrix() const { return b_; }
  FormRole role() const { return role_; }
  Complex operator()(const Vector& u, const Vector& v) const { return u.transpose() * b_ * v; }

 private:
  Matrix b_;
  FormRole role_;
};

/// Linear map A -> A ⊗ A; image(x)(i, j) is the coefficient of e_i ⊗ e_j in alpha(e_x).
class Coproduct {
 public:
  explicit Coproduct(std::vector<Matrix> images);

  int dim() const { return static_cast<int>(images_.size()); }
  const Matrix& image(int x) const { return images_[x]; }
  /// alpha applied to an arbitrary coefficient vector.
  Matrix apply(const Vector& x) const;

 private:
  std::vector<Matrix> images_;
};

/// Coordinate form of the S-equation:
/// t(i,j,k) = sum_{t,l} -c_tl^i r_tj r_lk + c_tl^j r_it r_lk + (c_tl^k - c_lt^k) r_it r_lj.
SResidual s_residual_tensor(const Algebra& a, const SymmetricTensor& r);

/// Operator form: max over (a*, b*) of |[r(a*), r(b*)] - r(L*(r(a*))b* - L*(r(b*))a*)|.
Residual s_residual_operator(const Algebra& a, const SymmetricTensor& r);

/// Product on A*: a* ∘ b* = -R*(r(b*)) a* + ad*(r(a*)) b*.
/// Computed for any symmetric r; left-symmetric when r solves the S-equation.
Algebra dual_product(const Algebra& a, const SymmetricTensor& r);

/// alpha(x) = (L_x ⊗ 1 + 1 ⊗ ad x) r.
Coproduct coboundary_alpha(const Algebra& a, const SymmetricTensor& r);

/// The coproduct whose transpose is the product of `product`
/// (coefficient of e_i ⊗ e_j in alpha(e_x) is c(i, j, x)).
Coproduct coproduct_dual_to(const Algebra& product);

/// max over basis x, y of |alpha([x,y]) - T_x alpha(y) + T_y alpha(x)| with
/// T_x = L_x ⊗ 1 + 1 ⊗ ad x.
Residual one_cocycle_residual(const Algebra& a, const Coproduct& alpha);

/// max over triples of |B(xy,z) - B(x,yz) - B(yx,z) + B(y,xz)|.
Residual lsa_two_cocycle_residual(const Algebra& a, const BilinearForm& b);

struct BialgebraReport {
  Residual left_symmetry;       // A
  Residual dual_left_symmetry;  // A*
  Residual alpha_cocycle;       // coproduct dual to A*'s product, over G(A)
  Residual beta_cocycle;        // coproduct dual to A's product, over G(A*)

  bool verified(double tol = kDefaultTolerance) const {
    return left_symmetry.below(tol) && dual_left_symmetry.below(tol) && alpha_cocycle.below(tol) &&
           beta_cocycle.below(tol);
  }
};

BialgebraReport check_bialgebra(const Algebra& a, const Algebra& dual);

/// Tensor and operator forms of the S-equation evaluated side by side.
struct FormAgreement {
  double tensor_norm = 0.0;
  double operator_norm = 0.0;
  /// Both below tol, or both above gap * tol.
  bool consistent = false;
};

FormAgreement check_s_equation_forms(const Algebra& a, const SymmetricTensor& r, double tol = kDefaultTolerance,
                                     double gap = 10.0);

/// For invertible r: S-residual next to the LSA 2-cocycle residual of B = r^{-1}.
struct InverseCocycleAgreement {
  double s_norm = 0.0;
  double cocycle_norm = 0.0;
  bool consistent = false;
};

InverseCocycleAgreement check_inverse_cocycle(const Algebra& a, const SymmetricTensor& r,
                                              double tol = kDefaultTolerance, double gap = 10.0);

}  // namespace lsa
