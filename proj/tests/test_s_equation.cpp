#include <random>

#include <gtest/gtest.h>

#include "lsa/catalog.hpp"
#include "lsa/s_equation.hpp"
#include "oracle.hpp"
#include "samples.hpp"

namespace {

using lsa::Algebra;
using lsa::Complex;
using lsa::Matrix;
using lsa::SymmetricTensor;
using lsa::Tensor3;

constexpr double kTol = 1e-9;

Algebra ai() {
  Tensor3 c(2);
  c(0, 0, 0) = 1.0;
  c(1, 1, 1) = 1.0;
  return Algebra(c);
}

Algebra nv() {
  Tensor3 c(2);
  c(0, 0, 0) = 2.0;
  c(0, 1, 1) = 1.0;
  c(1, 1, 0) = 1.0;
  return Algebra(c);
}

SymmetricTensor diag(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return SymmetricTensor(m);
}

oracle::Mat coeffs(const Matrix& m) { return oracle::from_matrix(m); }

// (L_x ⊗ 1 + 1 ⊗ ad x) applied to sum M_ij e_i ⊗ e_j, expanded with the product oracle.
oracle::Mat act(const oracle::Cube& c, int x, const oracle::Mat& m) {
  const int n = static_cast<int>(c.size());
  oracle::Mat out(n, oracle::Vec(n));
  const oracle::Vec ex = oracle::unit(n, x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m[i][j] == Complex{}) continue;
      const oracle::Vec left = oracle::mul(c, ex, oracle::unit(n, i));
      const oracle::Vec right = oracle::commutator(c, ex, oracle::unit(n, j));
      for (int k = 0; k < n; ++k) {
        out[k][j] += m[i][j] * left[k];
        out[i][k] += m[i][j] * right[k];
      }
    }
  return out;
}

double cocycle_oracle(const oracle::Cube& c, const std::vector<oracle::Mat>& alpha) {
  const int n = static_cast<int>(c.size());
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const oracle::Vec xy = oracle::commutator(c, oracle::unit(n, x), oracle::unit(n, y));
      const oracle::Mat tx = act(c, x, alpha[y]), ty = act(c, y, alpha[x]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex s = -tx[i][j] + ty[i][j];
          for (int k = 0; k < n; ++k) s += xy[k] * alpha[k][i][j];
          worst = std::max(worst, std::abs(s));
        }
    }
  return worst;
}

double two_cocycle_oracle(const oracle::Cube& c, const oracle::Mat& b) {
  const int n = static_cast<int>(c.size());
  auto form = [&](const oracle::Vec& u, const oracle::Vec& v) {
    Complex s{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += u[i] * b[i][j] * v[j];
    return s;
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const oracle::Vec x = oracle::unit(n, i), y = oracle::unit(n, j), z = oracle::unit(n, k);
        const Complex s = form(oracle::mul(c, x, y), z) - form(x, oracle::mul(c, y, z)) -
                          form(oracle::mul(c, y, x), z) + form(y, oracle::mul(c, x, z));
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

TEST(SymmetricTensor, SymmetrizesWithinTolerance) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0 + 1e-12, 3.0;
  const SymmetricTensor r(m);
  EXPECT_EQ(r(0, 1), r(1, 0));
  m(1, 0) = 2.5;
  EXPECT_THROW(SymmetricTensor{m}, lsa::Error);
  EXPECT_THROW(SymmetricTensor(Matrix::Zero(2, 3)), lsa::Error);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SymmetricTensor{nan}, lsa::Error);
}

TEST(SymmetricTensor, ActsAsMapFromDual) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0, 5.0;
  const SymmetricTensor r(m);
  // r(e1*) = r11 e1 + r12 e2
  const lsa::Vector img = r.apply(lsa::basis_vector(2, 0));
  EXPECT_EQ(img(0), Complex(1.0));
  EXPECT_EQ(img(1), Complex(2.0));
}

TEST(SResidual, ZeroTensorSolvesEverything) {
  for (const auto& [id, a] : samples::algebras(3, 1)) {
    const SymmetricTensor zero = SymmetricTensor::zero(a.dim());
    EXPECT_EQ(lsa::s_residual_tensor(a, zero).norm, 0.0) << id;
    EXPECT_EQ(lsa::s_residual_operator(a, zero).norm, 0.0) << id;
  }
}

TEST(SResidual, AIDiagonal) {
  const SymmetricTensor r = diag(1.0, 2.0);
  EXPECT_EQ(oracle::s_coordinates(oracle::from_tensor(ai().constants()), coeffs(r.matrix())), 0.0);
  EXPECT_EQ(oracle::s_operator(oracle::from_tensor(ai().constants()), coeffs(r.matrix())), 0.0);
  EXPECT_EQ(lsa::s_residual_tensor(ai(), r).norm, 0.0);
  EXPECT_EQ(lsa::s_residual_operator(ai(), r).norm, 0.0);
}

TEST(SResidual, NVIdentityFails) {
  const SymmetricTensor r = diag(1.0, 1.0);
  const double tensor_expected = oracle::s_coordinates(oracle::from_tensor(nv().constants()), coeffs(r.matrix()));
  const double operator_expected = oracle::s_operator(oracle::from_tensor(nv().constants()), coeffs(r.matrix()));
  EXPECT_GT(tensor_expected, 0.1);
  EXPECT_GT(operator_expected, 0.1);
  const lsa::SResidual t = lsa::s_residual_tensor(nv(), r);
  EXPECT_DOUBLE_EQ(t.norm, tensor_expected);
  EXPECT_FALSE(t.verified());
  EXPECT_EQ(t.worst.size(), 3u);
  EXPECT_DOUBLE_EQ(lsa::s_residual_operator(nv(), r).norm, operator_expected);
}

TEST(SResidual, TensorEntriesMatchCoordinateOracle) {
  std::mt19937_64 rng(2);
  for (const auto& [id, a] : samples::algebras(2, 2)) {
    const oracle::Mat r = oracle::random_symmetric(a.dim(), rng);
    const lsa::SResidual t = lsa::s_residual_tensor(a, SymmetricTensor(oracle::to_matrix(r)));
    EXPECT_NEAR(t.norm, oracle::s_coordinates(oracle::from_tensor(a.constants()), r), 1e-12) << id;
    EXPECT_DOUBLE_EQ(t.norm, t.t.max_abs());
  }
}

TEST(SResidual, DimensionMismatch) {
  EXPECT_THROW(lsa::s_residual_tensor(ai(), SymmetricTensor::zero(3)), lsa::Error);
  EXPECT_THROW(lsa::s_residual_operator(ai(), SymmetricTensor::zero(3)), lsa::Error);
  EXPECT_THROW(lsa::dual_product(ai(), SymmetricTensor::zero(3)), lsa::Error);
  EXPECT_THROW(lsa::coboundary_alpha(ai(), SymmetricTensor::zero(1)), lsa::Error);
}

// Both forms must agree on which tensors solve the equation.
TEST(SResidual, FormsAgreeOn200RandomSamples) {
  std::mt19937_64 rng(42);
  const auto algs = samples::algebras(4, 42);
  int disagreements = 0;
  for (int s = 0; s < 200; ++s) {
    const auto& [id, a] = algs[s % algs.size()];
    const SymmetricTensor r(oracle::to_matrix(oracle::random_symmetric(a.dim(), rng)));
    const lsa::FormAgreement f = lsa::check_s_equation_forms(a, r, kTol);
    EXPECT_NEAR(f.operator_norm,
                oracle::s_operator(oracle::from_tensor(a.constants()), coeffs(r.matrix())), 1e-12);
    if (!f.consistent) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(SResidual, FormsAgreeOnCatalogSolutions) {
  for (const auto& s : samples::solutions(3, 7)) {
    const lsa::FormAgreement f = lsa::check_s_equation_forms(s.algebra, s.r, kTol);
    EXPECT_LT(f.tensor_norm, kTol) << s.family;
    EXPECT_LT(f.operator_norm, kTol) << s.family;
    EXPECT_TRUE(f.consistent);
  }
}

TEST(DualProduct, ZeroTensorGivesZeroProduct) {
  EXPECT_TRUE(lsa::dual_product(nv(), SymmetricTensor::zero(2)).is_zero());
}

TEST(DualProduct, AIAllEqualEntries) {
  Matrix m = Matrix::Constant(2, 2, 1.0);
  const Algebra d = lsa::dual_product(ai(), SymmetricTensor(m));
  const lsa::Vector br = d.commutator(lsa::basis_vector(2, 0), lsa::basis_vector(2, 1));
  EXPECT_NEAR(std::abs(br(0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(br(1) + 1.0), 0.0, 1e-15);
  EXPECT_EQ(d.basis_labels()[0], "e1*");
}

TEST(DualProduct, AbelianGivesZeroProduct) {
  Matrix m(2, 2);
  m << 1.0, Complex(0, 2), Complex(0, 2), -3.0;
  EXPECT_TRUE(lsa::dual_product(Algebra::zero(2), SymmetricTensor(m)).is_zero());
}

TEST(DualProduct, MatchesPairingOracle) {
  std::mt19937_64 rng(4);
  for (const auto& [id, a] : samples::algebras(2, 4)) {
    const oracle::Mat r = oracle::random_symmetric(a.dim(), rng);
    const Algebra d = lsa::dual_product(a, SymmetricTensor(oracle::to_matrix(r)));
    EXPECT_LT(oracle::max_diff(d.constants(), oracle::dual_constants(oracle::from_tensor(a.constants()), r)), 1e-12)
        << id;
  }
}

TEST(DualProduct, LeftSymmetricOnCatalogSolutions) {
  for (const auto& s : samples::solutions(5, 8)) {
    const Algebra d = lsa::dual_product(s.algebra, s.r);
    EXPECT_LT(d.left_symmetry_residual(), kTol) << s.family << " " << s.branch;
  }
}

TEST(Coboundary, ZeroTensorAndAbelian) {
  const lsa::Coproduct z = lsa::coboundary_alpha(nv(), SymmetricTensor::zero(2));
  for (int x = 0; x < 2; ++x) EXPECT_EQ(lsa::max_abs(z.image(x)), 0.0);
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0, 3.0;
  const lsa::Coproduct ab = lsa::coboundary_alpha(Algebra::zero(2), SymmetricTensor(m));
  for (int x = 0; x < 2; ++x) EXPECT_EQ(lsa::max_abs(ab.image(x)), 0.0);
}

TEST(Coboundary, AIIdentityAtE1) {
  const lsa::Coproduct alpha = lsa::coboundary_alpha(ai(), diag(1.0, 1.0));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_EQ(alpha.image(0), expected);
}

TEST(Coboundary, MatchesTensorActionOracle) {
  std::mt19937_64 rng(6);
  for (const auto& [id, a] : samples::algebras(1, 6)) {
    const oracle::Mat r = oracle::random_symmetric(a.dim(), rng);
    const lsa::Coproduct alpha = lsa::coboundary_alpha(a, SymmetricTensor(oracle::to_matrix(r)));
    const oracle::Cube c = oracle::from_tensor(a.constants());
    for (int x = 0; x < a.dim(); ++x) {
      const oracle::Mat expected = act(c, x, r);
      for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) EXPECT_NEAR(std::abs(alpha.image(x)(i, j) - expected[i][j]), 0.0, 1e-12);
    }
  }
}

TEST(Coboundary, IsAlwaysACocycle) {
  std::mt19937_64 rng(10);
  for (const auto& [id, a] : samples::algebras(3, 10)) {
    const SymmetricTensor r(oracle::to_matrix(oracle::random_symmetric(a.dim(), rng, 2.0)));
    EXPECT_LT(lsa::one_cocycle_residual(a, lsa::coboundary_alpha(a, r)).norm, kTol) << id;
  }
}

// The coefficient of e_i ⊗ e_j in alpha(e_x) is the e_x* component of e_i* ∘ e_j*.
TEST(Coboundary, DualizesTheDualProduct) {
  std::mt19937_64 rng(12);
  for (const auto& [id, a] : samples::algebras(2, 12)) {
    const SymmetricTensor r(oracle::to_matrix(oracle::random_symmetric(a.dim(), rng)));
    const lsa::Coproduct alpha = lsa::coboundary_alpha(a, r);
    const Algebra d = lsa::dual_product(a, r);
    for (int x = 0; x < a.dim(); ++x)
      for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) EXPECT_NEAR(std::abs(alpha.image(x)(i, j) - d(i, j, x)), 0.0, 1e-12) << id;
  }
}

TEST(OneCocycle, ZeroCoproduct) {
  const lsa::Coproduct zero(std::vector<Matrix>(2, Matrix::Zero(2, 2)));
  EXPECT_EQ(lsa::one_cocycle_residual(nv(), zero).norm, 0.0);
}

TEST(OneCocycle, HandCraftedNonCocycle) {
  // Needs a non-commutative algebra for ad to contribute; on (AI) only L acts.
  std::vector<Matrix> images(2, Matrix::Zero(2, 2));
  images[0](1, 1) = 1.0;  // alpha(e1) = e2 ⊗ e2
  const lsa::Coproduct alpha(images);
  const oracle::Cube c = oracle::from_tensor(ai().constants());
  const double expected = cocycle_oracle(c, {oracle::from_matrix(images[0]), oracle::from_matrix(images[1])});
  EXPECT_GT(expected, 0.5);
  EXPECT_DOUBLE_EQ(lsa::one_cocycle_residual(ai(), alpha).norm, expected);
}

TEST(OneCocycle, MatchesOracleOnRandomCoproducts) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  const Algebra a = nv();
  std::vector<Matrix> images(2, Matrix(2, 2));
  std::vector<oracle::Mat> raw;
  for (auto& m : images) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = Complex(g(rng), g(rng));
    raw.push_back(oracle::from_matrix(m));
  }
  EXPECT_NEAR(lsa::one_cocycle_residual(a, lsa::Coproduct(images)).norm,
              cocycle_oracle(oracle::from_tensor(a.constants()), raw), 1e-12);
}

TEST(TwoCocycle, AbelianVanishes) {
  Matrix b(2, 2);
  b << 1.0, 2.0, -3.0, 4.0;
  EXPECT_EQ(lsa::lsa_two_cocycle_residual(Algebra::zero(2), lsa::BilinearForm(b, lsa::FormRole::Generic)).norm, 0.0);
}

TEST(TwoCocycle, AIInverseOfSolution) {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 0.5;
  const lsa::BilinearForm form(b, lsa::FormRole::LsaTwoCocycle);
  EXPECT_EQ(two_cocycle_oracle(oracle::from_tensor(ai().constants()), oracle::from_matrix(b)), 0.0);
  EXPECT_EQ(lsa::lsa_two_cocycle_residual(ai(), form).norm, 0.0);
}

TEST(TwoCocycle, NVIdentityFails) {
  const Matrix b = Matrix::Identity(2, 2);
  const double expected = two_cocycle_oracle(oracle::from_tensor(nv().constants()), oracle::from_matrix(b));
  EXPECT_GT(expected, 0.5);
  EXPECT_DOUBLE_EQ(lsa::lsa_two_cocycle_residual(nv(), lsa::BilinearForm(b, lsa::FormRole::Generic)).norm, expected);
}

TEST(InverseCocycle, HoldsForInvertibleCatalogSolutions) {
  int checked = 0;
  for (const auto& s : samples::solutions(5, 21)) {
    if (std::abs(s.r.matrix().determinant()) < 1e-6) continue;
    const lsa::InverseCocycleAgreement ag = lsa::check_inverse_cocycle(s.algebra, s.r, kTol);
    EXPECT_LT(ag.cocycle_norm, kTol) << s.family;
    EXPECT_TRUE(ag.consistent) << s.family;
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(InverseCocycle, FailsForRandomNonSolutions) {
  std::mt19937_64 rng(22);
  const auto algs = samples::algebras(3, 22);
  int checked = 0;
  for (std::size_t s = 0; checked < 50; ++s) {
    const Algebra& a = algs[s % algs.size()].second;
    if (a.is_zero()) continue;  // every form is a cocycle of the zero algebra
    const SymmetricTensor r(oracle::to_matrix(oracle::random_symmetric(a.dim(), rng)));
    if (std::abs(r.matrix().determinant()) < 1e-3) continue;
    const lsa::InverseCocycleAgreement ag = lsa::check_inverse_cocycle(a, r, kTol);
    EXPECT_GT(ag.s_norm, 10 * kTol);
    EXPECT_GT(ag.cocycle_norm, 10 * kTol) << algs[s % algs.size()].first;
    ++checked;
  }
}

TEST(InverseCocycle, RejectsSingularTensor) {
  EXPECT_THROW(lsa::check_inverse_cocycle(ai(), diag(1.0, 0.0)), lsa::Error);
}

TEST(BilinearForm, SymplecticRoleIsChecked) {
  Matrix w(2, 2);
  w << 0.0, -1.0, 1.0, 0.0;
  EXPECT_NO_THROW(lsa::BilinearForm(w, lsa::FormRole::Symplectic));
  Matrix sym(2, 2);
  sym << 0.0, 1.0, 1.0, 0.0;
  EXPECT_THROW(lsa::BilinearForm(sym, lsa::FormRole::Symplectic), lsa::Error);
  EXPECT_THROW(lsa::BilinearForm(Matrix::Zero(2, 2), lsa::FormRole::Symplectic), lsa::Error);
  EXPECT_NO_THROW(lsa::BilinearForm(sym, lsa::FormRole::LsaTwoCocycle));
}

TEST(Bialgebra, CatalogSolutions) {
  for (const auto& s : samples::solutions(3, 31)) {
    const lsa::BialgebraReport rep = lsa::check_bialgebra(s.algebra, lsa::dual_product(s.algebra, s.r));
    EXPECT_TRUE(rep.verified(kTol)) << s.family << " " << rep.alpha_cocycle.norm << " " << rep.beta_cocycle.norm;
  }
}

TEST(Bialgebra, ZeroAlgebras) {
  const lsa::BialgebraReport rep = lsa::check_bialgebra(Algebra::zero(2), Algebra::zero(2));
  EXPECT_EQ(rep.left_symmetry.norm, 0.0);
  EXPECT_EQ(rep.dual_left_symmetry.norm, 0.0);
  EXPECT_EQ(rep.alpha_cocycle.norm, 0.0);
  EXPECT_EQ(rep.beta_cocycle.norm, 0.0);
}

TEST(Bialgebra, MismatchedDualFails) {
  Tensor3 c(2);
  c(0, 0, 1) = 1.0;  // e1* ∘ e1* = e2*
  const Algebra dual(c);
  const lsa::BialgebraReport rep = lsa::check_bialgebra(ai(), dual);
  EXPECT_EQ(rep.left_symmetry.norm, 0.0);
  EXPECT_EQ(rep.dual_left_symmetry.norm, 0.0);
  // alpha(e_x)(i, j) = c(i, j, x): only alpha(e2) = e1 ⊗ e1.
  std::vector<oracle::Mat> alpha(2, oracle::Mat(2, oracle::Vec(2)));
  alpha[1][0][0] = 1.0;
  const double expected = cocycle_oracle(oracle::from_tensor(ai().constants()), alpha);
  EXPECT_GT(expected, 0.5);
  EXPECT_DOUBLE_EQ(rep.alpha_cocycle.norm, expected);
  EXPECT_FALSE(rep.verified(kTol));
  EXPECT_THROW(lsa::check_bialgebra(ai(), Algebra::zero(3)), lsa::Error);
}

}  // namespace
