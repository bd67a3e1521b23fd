#pragma once

#include <string>
#include <vector>

#include "lsa/types.hpp"

namespace lsa {

/// A finite-dimensional complex algebra given by structure constants:
/// e_i · e_j = sum_k c(i, j, k) e_k.
///
/// The left-symmetry residual is computed once at construction; raw data that
/// fails the axiom is still representable and reports `verified() == false`.
class Algebra {
 public:
  explicit Algebra(Tensor3 c, std::vector<std::string> labels = {});

  static Algebra zero(int n);

  int dim() const { return c_.dim(0); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const Tensor3& constants() const { return c_; }
  const Complex& operator()(int i, int j, int k) const { return c_(i, j, k); }

  /// Product of two coefficient vectors.
  Vector multiply(const Vector& x, const Vector& y) const;
  /// Commutator xy - yx of two coefficient vectors.
  Vector commutator(const Vector& x, const Vector& y) const;

  double left_symmetry_residual() const { return residual_; }
  bool verified(double tol = kDefaultTolerance) const { return residual_ < tol; }

  bool is_zero() const { return c_.max_abs() == 0.0; }

 private:
  Tensor3 c_;
  std::vector<std::string> labels_;
  double residual_ = 0.0;
};

/// Lie algebra by bracket constants [x_i, x_j] = sum_k f(i, j, k) x_k.
/// Antisymmetry is checked within `tol` and then imposed exactly.
class LieAlgebra {
 public:
  explicit LieAlgebra(Tensor3 f, double tol = kDefaultTolerance);

  static LieAlgebra abelian(int m);

  int dim() const { return f_.dim(0); }
  const Tensor3& constants() const { return f_; }
  const Complex& operator()(int i, int j, int k) const { return f_(i, j, k); }

  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad_x for a coefficient vector x.
  Matrix ad(const Vector& x) const;

  double jacobi_residual() const { return jacobi_; }

 private:
  Tensor3 f_;
  double jacobi_ = 0.0;
};

class LinearOperator {
 public:
  explicit LinearOperator(Matrix m);

  int dim_in() const { return static_cast<int>(m_.cols()); }
  int dim_out() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Vector apply(const Vector& v) const { return m_ * v; }

  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() && a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

using LinearMap = LinearOperator;

/// max over basis triples of |(e_i e_j)e_k - e_i(e_j e_k) - (e_j e_i)e_k + e_j(e_i e_k)|.
Residual left_symmetry_residual(const Algebra& a);

/// Commutator Lie algebra. Throws if `a` is not left-symmetric within `tol`.
LieAlgebra sub_adjacent(const Algebra& a, double tol = kDefaultTolerance);

/// max over basis triples of the cyclic sum [[x_i,x_j],x_k] + cyclic.
Residual jacobi_residual(const LieAlgebra& l);

LinearOperator left_mult(const Algebra& a, int i);
LinearOperator right_mult(const Algebra& a, int i);
LinearOperator ad(const Algebra& a, int i);

// Operators for arbitrary coefficient vectors (linear in x).
Matrix left_mult_matrix(const Algebra& a, const Vector& x);
Matrix right_mult_matrix(const Algebra& a, const Vector& x);
Matrix ad_matrix(const Algebra& a, const Vector& x);

/// Dual operator under <phi*(x) a*, y> = -<a*, phi(x) y>, i.e. -M^T.
LinearOperator dual_op(const LinearOperator& m);
Matrix dual_matrix(const Matrix& m);

/// max over basis x, y of |[L_x, L_y] - L_[x,y]| (regular representation).
double representation_residual(const Algebra& a);

/// Relabels the basis by `perm` (new e_i = old e_perm[i]).
Algebra permute_basis(const Algebra& a, const std::vector<int>& perm);

/// Default labels "e1".."en".
std::vector<std::string> default_labels(int n);

Vector basis_vector(int n, int i);

}  // namespace lsa
