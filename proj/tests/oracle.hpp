#pragma once
// Brute-force reference computations for the tests. Everything here works on
// plain nested vectors and goes straight from the defining identities (the
// dual pairing, the triple-product expansions), sharing no code with the
// library beyond reading the raw structure constants.

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <random>
#include <vector>

#include "lsa/types.hpp"

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<Vec>;  // Mat[i][j]
using Cube = std::vector<Mat>;  // Cube[i][j][k]

inline Cube cube(int n) { return Cube(n, Mat(n, Vec(n))); }

inline Cube from_tensor(const lsa::Tensor3& t) {
  Cube c = cube(t.dim(0));
  for (int i = 0; i < t.dim(0); ++i)
    for (int j = 0; j < t.dim(1); ++j)
      for (int k = 0; k < t.dim(2); ++k) c[i][j][k] = t(i, j, k);
  return c;
}

inline Mat from_matrix(const lsa::Matrix& m) {
  Mat out(m.rows(), Vec(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline Vec unit(int n, int i) {
  Vec v(n);
  v[i] = 1.0;
  return v;
}

inline Vec add(Vec a, const Vec& b, C s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

inline double norm(const Vec& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

/// x·y for the product with constants c.
inline Vec mul(const Cube& c, const Vec& x, const Vec& y) {
  const int n = static_cast<int>(c.size());
  Vec out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x[i] == C{} || y[j] == C{}) continue;
      for (int k = 0; k < n; ++k) out[k] += x[i] * y[j] * c[i][j][k];
    }
  return out;
}

inline Vec commutator(const Cube& c, const Vec& x, const Vec& y) { return add(mul(c, x, y), mul(c, y, x), -1.0); }

/// Expands (xy)z - x(yz) - (yx)z + y(xz) over all basis triples.
inline double left_symmetry(const Cube& c) {
  const int n = static_cast<int>(c.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec x = unit(n, i), y = unit(n, j), z = unit(n, k);
        Vec t = mul(c, mul(c, x, y), z);
        t = add(t, mul(c, x, mul(c, y, z)), -1.0);
        t = add(t, mul(c, mul(c, y, x), z), -1.0);
        t = add(t, mul(c, y, mul(c, x, z)));
        worst = std::max(worst, norm(t));
      }
  return worst;
}

/// Cyclic sum [[x,y],z] + [[y,z],x] + [[z,x],y] for bracket constants f.
inline double jacobi(const Cube& f) {
  const int n = static_cast<int>(f.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec x = unit(n, i), y = unit(n, j), z = unit(n, k);
        Vec t = mul(f, mul(f, x, y), z);
        t = add(t, mul(f, mul(f, y, z), x));
        t = add(t, mul(f, mul(f, z, x), y));
        worst = std::max(worst, norm(t));
      }
  return worst;
}

/// r(a*) = sum_{i,j} a_i r_ij e_j.
inline Vec r_map(const Mat& r, const Vec& a) {
  const int n = static_cast<int>(r.size());
  Vec out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[j] += a[i] * r[i][j];
  return out;
}

/// Dual action defined by the pairing: <phi*(x) a*, e_y> = -<a*, phi(x) e_y>,
/// with phi(x)y given as a callable.
template <class Action>
Vec dual_action(int n, const Vec& a, Action phi) {
  Vec out(n);
  for (int y = 0; y < n; ++y) {
    const Vec img = phi(unit(n, y));
    C s{};
    for (int k = 0; k < n; ++k) s += a[k] * img[k];
    out[y] = -s;
  }
  return out;
}

inline Vec L_star(const Cube& c, const Vec& x, const Vec& a) {
  return dual_action(static_cast<int>(c.size()), a, [&](const Vec& y) { return mul(c, x, y); });
}
inline Vec R_star(const Cube& c, const Vec& x, const Vec& a) {
  return dual_action(static_cast<int>(c.size()), a, [&](const Vec& y) { return mul(c, y, x); });
}
inline Vec ad_star(const Cube& c, const Vec& x, const Vec& a) {
  return dual_action(static_cast<int>(c.size()), a, [&](const Vec& y) { return commutator(c, x, y); });
}

/// Operator form: [r a*, r b*] - r(L*(r a*) b* - L*(r b*) a*) over basis pairs.
inline double s_operator(const Cube& c, const Mat& r) {
  const int n = static_cast<int>(c.size());
  double worst = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const Vec a = unit(n, p), b = unit(n, q);
      const Vec ra = r_map(r, a), rb = r_map(r, b);
      const Vec inner = add(L_star(c, ra, b), L_star(c, rb, a), -1.0);
      worst = std::max(worst, norm(add(commutator(c, ra, rb), r_map(r, inner), -1.0)));
    }
  return worst;
}

/// Coordinate polynomial system written out term by term.
inline double s_coordinates(const Cube& c, const Mat& r) {
  const int n = static_cast<int>(c.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        C t{};
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            t -= c[a][b][i] * r[a][j] * r[b][k];
            t += c[a][b][j] * r[i][a] * r[b][k];
            t += (c[a][b][k] - c[b][a][k]) * r[i][a] * r[b][j];
          }
        worst = std::max(worst, std::abs(t));
      }
  return worst;
}

/// a* ∘ b* = -R*(r b*) a* + ad*(r a*) b*.
inline Vec dual_product(const Cube& c, const Mat& r, const Vec& a, const Vec& b) {
  return add(ad_star(c, r_map(r, a), b), R_star(c, r_map(r, b), a), -1.0);
}

inline Cube dual_constants(const Cube& c, const Mat& r) {
  const int n = static_cast<int>(c.size());
  Cube d = cube(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = dual_product(c, r, unit(n, i), unit(n, j));
  return d;
}

/// Phase-space bracket on coefficient vectors of length 2n, (x | a*).
inline Vec phase_bracket(const Cube& c, const Mat& r, const Vec& u, const Vec& v) {
  const int n = static_cast<int>(c.size());
  const Vec x(u.begin(), u.begin() + n), a(u.begin() + n, u.end());
  const Vec y(v.begin(), v.begin() + n), b(v.begin() + n, v.end());
  // [x + a*, y + b*] = [x,y] + [x,b*] - [y,a*] + [a*,b*]
  auto mixed = [&](const Vec& z, const Vec& d) {
    Vec head = add(commutator(c, z, r_map(r, d)), r_map(r, L_star(c, z, d)), -1.0);
    Vec tail = L_star(c, z, d);
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  Vec out(2 * n);
  const Vec xy = commutator(c, x, y);
  for (int k = 0; k < n; ++k) out[k] += xy[k];
  out = add(out, mixed(x, b));
  out = add(out, mixed(y, a), -1.0);
  const Vec ab = add(L_star(c, r_map(r, a), b), L_star(c, r_map(r, b), a), -1.0);
  for (int k = 0; k < n; ++k) out[n + k] += ab[k];
  return out;
}

inline Cube phase_constants(const Cube& c, const Mat& r) {
  const int m = 2 * static_cast<int>(c.size());
  Cube f = cube(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) f[i][j] = phase_bracket(c, r, unit(m, i), unit(m, j));
  return f;
}

/// omega(x + a*, y + b*) = <a*, y> - <b*, x>.
inline C canonical_pairing(int n, const Vec& u, const Vec& v) {
  C s{};
  for (int i = 0; i < n; ++i) s += u[n + i] * v[i] - v[n + i] * u[i];
  return s;
}

inline double max_diff(const Cube& a, const Cube& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      for (std::size_t k = 0; k < a[i][j].size(); ++k) m = std::max(m, std::abs(a[i][j][k] - b[i][j][k]));
  return m;
}

inline double max_diff(const lsa::Tensor3& a, const Cube& b) { return max_diff(from_tensor(a), b); }

inline Mat random_symmetric(int n, std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat r(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      C z;
      do z = {u(rng), u(rng)};
      while (std::abs(z) > 1.0);
      r[i][j] = r[j][i] = radius * z;
    }
  return r;
}

inline lsa::Matrix to_matrix(const Mat& m) {
  lsa::Matrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

inline lsa::Tensor3 to_tensor(const Cube& c) {
  const int n = static_cast<int>(c.size());
  lsa::Tensor3 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t(i, j, k) = c[i][j][k];
  return t;
}

}  // namespace oracle
