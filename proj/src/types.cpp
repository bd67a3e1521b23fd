#include "lsa/types.hpp"

#include <algorithm>
#include <cmath>

namespace lsa {

Tensor3::Tensor3(int d0, int d1, int d2) : d0_(d0), d1_(d1), d2_(d2) {
  if (d0 < 0 || d1 < 0 || d2 < 0) throw Error("tensor dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(d0) * d1 * d2, Complex{});
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool Tensor3::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace lsa
