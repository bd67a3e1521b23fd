#pragma once

#include <optional>
#include <string>

#include "lsa/s_equation.hpp"

namespace lsa {

/// A 2n-dimensional Lie algebra on A ⊕ A* with basis ordered
/// (e_1..e_n, e_1*..e_n*), the canonical form omega_p and its provenance.
class PhaseSpace {
 public:
  PhaseSpace(Algebra base, SymmetricTensor r, LieAlgebra lie, BilinearForm omega, std::optional<Algebra> lsa,
             double s_residual, bool verified, std::string algebra_id = {});

  int n() const { return base_.dim(); }
  const Algebra& base() const { return base_; }
  const SymmetricTensor& r() const { return r_; }
  const LieAlgebra& lie() const { return lie_; }
  const BilinearForm& omega() const { return omega_; }
  /// Compatible left-symmetric product on the 2n-dimensional space, when known.
  const std::optional<Algebra>& lsa() const { return lsa_; }
  double s_residual() const { return s_residual_; }
  /// False when r does not solve the S-equation within tolerance.
  bool verified() const { return verified_; }
  const std::string& algebra_id() const { return algebra_id_; }

  PhaseSpace with_algebra_id(std::string id) const;

 private:
  Algebra base_;
  SymmetricTensor r_;
  LieAlgebra lie_;
  BilinearForm omega_;
  std::optional<Algebra> lsa_;
  double s_residual_ = 0.0;
  bool verified_ = false;
  std::string algebra_id_;
};

/// omega_p(x + a*, y + b*) = <a*, y> - <b*, x>, i.e. [[0, -I], [I, 0]].
BilinearForm canonical_omega(int n);

/// max over triples of |omega([x,y],z) + omega([y,z],x) + omega([z,x],y)|.
Residual two_cocycle_residual(const LieAlgebra& l, const BilinearForm& omega);

/// Phase space generated by the operator formulas:
///   [x, a*]   = [x, r(a*)] - r(L*(x)a*) + L*(x)a*
///   [a*, b*]  = L*(r(a*))b* - L*(r(b*))a*
/// together with the compatible left-symmetric product on A ⊕ A*.
/// Throws if `a` is not left-symmetric; flags unverified when r is not a solution.
PhaseSpace build_phase_space(const Algebra& a, const SymmetricTensor& r, double tol = kDefaultTolerance);

/// G(A) ⋉_{L*} G(A)*, the r = 0 phase space, built directly from the semidirect bracket.
PhaseSpace semidirect_phase_space(const Algebra& a, double tol = kDefaultTolerance);

/// Solves omega(x*y, z) = -omega(y, [x,z]) for the product x*y.
Algebra lsa_from_symplectic(const LieAlgebra& l, const BilinearForm& omega, double tol = kDefaultTolerance);

struct ParakahlerReport {
  double jacobi = 0.0;
  double omega_antisymmetry = 0.0;
  double omega_abs_det = 0.0;
  double two_cocycle = 0.0;
  double plus_closure = 0.0;   // components of [G+, G+] outside G+
  double minus_closure = 0.0;  // components of [G-, G-] outside G-
  double plus_isotropy = 0.0;  // max |omega(G+, G+)|
  double minus_isotropy = 0.0;
  int half_dim = 0;  // n, half of the phase-space dimension
  int plus_dim = 0;
  int minus_dim = 0;

  bool verified(double tol = kDefaultTolerance) const;
};

ParakahlerReport check_parakahler(const PhaseSpace& p, double tol = kDefaultTolerance);

/// max over basis pairs of |phi([x,y]_1) - [phi x, phi y]_2|. Throws for singular phi.
Residual verify_lie_isomorphism(const LieAlgebra& l1, const LieAlgebra& l2, const LinearMap& phi,
                                double tol = kDefaultTolerance);

struct SymplectomorphismReport {
  double lie = 0.0;
  double pullback = 0.0;      // max |omega_1(x,y) - omega_2(phi x, phi y)|
  double plus_escape = 0.0;   // components of phi(G1+) outside G2+
  double minus_escape = 0.0;  // components of phi(G1-) outside G2-
  bool preserves_plus = false;
  bool preserves_minus = false;

  bool symplectic(double tol = kDefaultTolerance) const { return lie < tol && pullback < tol; }
  bool parakahler(double tol = kDefaultTolerance) const {
    return symplectic(tol) && preserves_plus && preserves_minus;
  }
};

/// `n` is the size of the G+ block; both forms live on dimension 2n.
SymplectomorphismReport verify_symplectomorphism(const LieAlgebra& l1, const BilinearForm& omega1,
                                                 const LieAlgebra& l2, const BilinearForm& omega2, int n,
                                                 const LinearMap& phi, double tol = kDefaultTolerance);

SymplectomorphismReport verify_symplectomorphism(const PhaseSpace& p1, const PhaseSpace& p2, const LinearMap& phi,
                                                 double tol = kDefaultTolerance);

/// x -> x, a* -> -r(a*) + a*: from the semidirect phase space onto the one built from r.
LinearMap phase_space_isomorphism(const Algebra& a, const SymmetricTensor& r);

/// Labels (e1..en, e1*..en*) for the phase-space basis.
std::vector<std::string> phase_space_labels(const Algebra& a);

}  // namespace lsa
