#include "lsa/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace lsa {

namespace {

void check_index(int n, int i) {
  if (i < 0 || i >= n) {
    throw Error(fmt::format("basis index {} out of range for dimension {}", i + 1, n));
  }
}

void check_shape(const Tensor3& c, const char* what) {
  if (!c.is_cube() || c.dim(0) < 1) throw Error(fmt::format("{} tensor must be n x n x n with n >= 1", what));
  if (c.dim(0) > 2 * kMaxDim) throw Error(fmt::format("{} dimension {} exceeds supported size", what, c.dim(0)));
  if (!c.all_finite()) throw Error(fmt::format("{} tensor has non-finite entries", what));
}

// Coefficients of e_i e_j as a vector.
Vector product_of_basis(const Tensor3& c, int i, int j) {
  const int n = c.dim(0);
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = c(i, j, k);
  return v;
}

}  // namespace

Vector basis_vector(int n, int i) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  return labels;
}

Algebra::Algebra(Tensor3 c, std::vector<std::string> labels) : c_(std::move(c)), labels_(std::move(labels)) {
  check_shape(c_, "structure-constant");
  if (c_.dim(0) > kMaxDim) throw Error(fmt::format("algebra dimension {} exceeds {}", c_.dim(0), kMaxDim));
  if (labels_.empty()) labels_ = default_labels(dim());
  if (static_cast<int>(labels_.size()) != dim()) {
    throw Error(fmt::format("expected {} basis labels, got {}", dim(), labels_.size()));
  }
  residual_ = lsa::left_symmetry_residual(*this).norm;
}

Algebra Algebra::zero(int n) { return Algebra(Tensor3(n)); }

Vector Algebra::multiply(const Vector& x, const Vector& y) const {
  const int n = dim();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == Complex{}) continue;
    for (int j = 0; j < n; ++j) {
      const Complex w = x(i) * y(j);
      if (w == Complex{}) continue;
      for (int k = 0; k < n; ++k) out(k) += w * c_(i, j, k);
    }
  }
  return out;
}

Vector Algebra::commutator(const Vector& x, const Vector& y) const {
  return multiply(x, y) - multiply(y, x);
}

Residual left_symmetry_residual(const Algebra& a) {
  const int n = a.dim();
  const Tensor3& c = a.constants();
  Residual res;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector ij = product_of_basis(c, i, j);
      const Vector ji = product_of_basis(c, j, i);
      for (int k = 0; k < n; ++k) {
        const Vector ek = basis_vector(n, k);
        const Vector v = a.multiply(ij, ek) - a.multiply(basis_vector(n, i), product_of_basis(c, j, k)) -
                         a.multiply(ji, ek) + a.multiply(basis_vector(n, j), product_of_basis(c, i, k));
        res.update(max_abs(v), {i, j, k});
      }
    }
  }
  return res;
}

LieAlgebra::LieAlgebra(Tensor3 f, double tol) : f_(std::move(f)) {
  check_shape(f_, "bracket");
  const int m = dim();
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const Complex a = f_(i, j, k);
        const Complex b = f_(j, i, k);
        if (std::abs(a + b) > tol) {
          throw Error(fmt::format("bracket not antisymmetric at ({}, {}, {})", i + 1, j + 1, k + 1));
        }
        const Complex s = (a - b) / 2.0;
        f_(i, j, k) = s;
        f_(j, i, k) = -s;
      }
    }
  }
  jacobi_ = lsa::jacobi_residual(*this).norm;
}

LieAlgebra LieAlgebra::abelian(int m) { return LieAlgebra(Tensor3(m)); }

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  const int m = dim();
  Vector out = Vector::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (x(i) == Complex{}) continue;
    for (int j = 0; j < m; ++j) {
      const Complex w = x(i) * y(j);
      if (w == Complex{}) continue;
      for (int k = 0; k < m; ++k) out(k) += w * f_(i, j, k);
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  const int m = dim();
  Matrix out(m, m);
  for (int j = 0; j < m; ++j) out.col(j) = bracket(x, basis_vector(m, j));
  return out;
}

LieAlgebra sub_adjacent(const Algebra& a, double tol) {
  if (!a.verified(tol)) {
    throw Error(fmt::format("algebra is not left-symmetric (residual {:.3e})", a.left_symmetry_residual()));
  }
  const int n = a.dim();
  Tensor3 f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) f(i, j, k) = a(i, j, k) - a(j, i, k);
  return LieAlgebra(std::move(f), tol);
}

Residual jacobi_residual(const LieAlgebra& l) {
  const int m = l.dim();
  std::vector<Vector> brackets;
  brackets.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vector v(m);
      for (int k = 0; k < m; ++k) v(k) = l(i, j, k);
      brackets.push_back(std::move(v));
    }
  auto br = [&](int i, int j) -> const Vector& { return brackets[static_cast<std::size_t>(i) * m + j]; };
  Residual res;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const Vector v = l.bracket(br(i, j), basis_vector(m, k)) + l.bracket(br(j, k), basis_vector(m, i)) +
                         l.bracket(br(k, i), basis_vector(m, j));
        res.update(max_abs(v), {i, j, k});
      }
  return res;
}

Matrix left_mult_matrix(const Algebra& a, const Vector& x) {
  const int n = a.dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == Complex{}) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, j) += x(i) * a(i, j, k);
  }
  return m;
}

Matrix right_mult_matrix(const Algebra& a, const Vector& x) {
  const int n = a.dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == Complex{}) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, j) += x(i) * a(j, i, k);
  }
  return m;
}

Matrix ad_matrix(const Algebra& a, const Vector& x) { return left_mult_matrix(a, x) - right_mult_matrix(a, x); }

LinearOperator::LinearOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.cols() < 1) throw Error("operator dimensions must be positive");
  if (!m_.allFinite()) throw Error("operator has non-finite entries");
}

LinearOperator left_mult(const Algebra& a, int i) {
  check_index(a.dim(), i);
  return LinearOperator(left_mult_matrix(a, basis_vector(a.dim(), i)));
}

LinearOperator right_mult(const Algebra& a, int i) {
  check_index(a.dim(), i);
  return LinearOperator(right_mult_matrix(a, basis_vector(a.dim(), i)));
}

LinearOperator ad(const Algebra& a, int i) {
  check_index(a.dim(), i);
  return LinearOperator(ad_matrix(a, basis_vector(a.dim(), i)));
}

Matrix dual_matrix(const Matrix& m) { return -m.transpose(); }

LinearOperator dual_op(const LinearOperator& m) {
  if (m.dim_in() != m.dim_out()) throw Error("dual operator requires a square operator");
  return LinearOperator(dual_matrix(m.matrix()));
}

double representation_residual(const Algebra& a) {
  const int n = a.dim();
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    const Matrix lx = left_mult_matrix(a, basis_vector(n, x));
    for (int y = 0; y < n; ++y) {
      const Matrix ly = left_mult_matrix(a, basis_vector(n, y));
      const Vector xy = a.commutator(basis_vector(n, x), basis_vector(n, y));
      worst = std::max(worst, max_abs(Matrix(lx * ly - ly * lx - left_mult_matrix(a, xy))));
    }
  }
  return worst;
}

Algebra permute_basis(const Algebra& a, const std::vector<int>& perm) {
  const int n = a.dim();
  if (static_cast<int>(perm.size()) != n) throw Error("permutation size mismatch");
  std::vector<int> inv(n, -1);
  for (int i = 0; i < n; ++i) {
    check_index(n, perm[i]);
    if (inv[perm[i]] != -1) throw Error("not a permutation");
    inv[perm[i]] = i;
  }
  Tensor3 c(n);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = a.basis_labels()[perm[i]];
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c(i, j, inv[k]) = a(perm[i], perm[j], k);
  }
  return Algebra(std::move(c), std::move(labels));
}

}  // namespace lsa
