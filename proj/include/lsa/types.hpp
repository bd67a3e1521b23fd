#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lsa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default threshold for deciding that a residual vanishes.
inline constexpr double kDefaultTolerance = 1e-9;

/// Largest supported algebra dimension (phase spaces go up to twice this).
inline constexpr int kMaxDim = 16;

/// Raised for malformed input and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense rank-3 complex tensor, row-major in (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2);
  explicit Tensor3(int n) : Tensor3(n, n, n) {}

  Complex& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Complex& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  int dim(int axis) const { return axis == 0 ? d0_ : axis == 1 ? d1_ : d2_; }
  bool is_cube() const { return d0_ == d1_ && d1_ == d2_; }

  std::span<const Complex> data() const { return data_; }

  double max_abs() const;
  bool all_finite() const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * d1_ + j) * d2_ + k;
  }

  int d0_ = 0;
  int d1_ = 0;
  int d2_ = 0;
  std::vector<Complex> data_;
};

/// A residual norm together with the basis indices where it is attained.
struct Residual {
  double norm = 0.0;
  std::vector<int> worst;  // 0-based; empty when norm is zero

  bool below(double tol) const { return norm < tol; }

  /// Keep the larger of the current value and `value` found at `where`.
  void update(double value, std::vector<int> where) {
    if (value > norm) {
      norm = value;
      worst = std::move(where);
    }
  }
};

double max_abs(const Matrix& m);
double max_abs(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace lsa
