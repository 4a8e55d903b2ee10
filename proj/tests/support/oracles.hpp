#pragma once

// Independent checks for the engine. Nothing here calls into charnum beyond the
// Rational typedef; each function is a separate classical argument.

#include <gmpxx.h>

#include <array>
#include <map>
#include <random>
#include <vector>

namespace oracle {

// Kontsevich's recursion for rational plane curves of degree d through 3d-1 points.
inline mpz_class plane_rational(int d) {
  std::vector<mpz_class> n(d + 1, 0);
  if (d >= 1) n[1] = 1;
  auto choose = [](int a, int b) {
    mpz_class c;
    if (b < 0 || b > a) return mpz_class(0);
    mpz_bin_uiui(c.get_mpz_t(), a, b);
    return c;
  };
  for (int e = 2; e <= d; ++e) {
    mpz_class s = 0;
    for (int a = 1; a < e; ++a) {
      int b = e - a;
      s += n[a] * n[b] *
           (mpz_class(a * a) * b * b * choose(3 * e - 4, 3 * a - 2) -
            mpz_class(a) * a * a * b * choose(3 * e - 4, 3 * a - 1));
    }
    n[e] = s;
  }
  return n[d];
}

// Euler characteristic of a pencil of plane cubics: the blow-up of P^2 at the
// 9 base points has chi = 3 + 9, a smooth elliptic fibre has chi = 0 and a
// nodal fibre chi = 1, so the number of singular fibres is chi(total) - chi(P^1)*0.
inline int cubic_pencil_singular_fibres() {
  const int chi_plane = 3, base_points = 9, chi_smooth_fibre = 0, chi_base = 2;
  return chi_plane + base_points - chi_base * chi_smooth_fibre;
}

// The j-map of the pencil has a simple pole at each nodal fibre and nowhere else.
inline int cubic_pencil_j_degree() { return cubic_pencil_singular_fibres(); }

// Nodes of members of a general net of degree-d plane curves sweep out the
// Jacobian curve, of degree 3(d-1); a line meets it that many times.
inline int net_nodes_on_line(int d) { return 3 * (d - 1); }

// Cuspidal members of a general net of degree-d plane curves.
inline int net_cuspidal_members(int d) { return 12 * (d - 1) * (d - 2); }

// Degree of sigma_1^dim in G(k, n) by Pieri: count chains of Young diagrams
// inside the k x (n-k) box, adding one box at a time.
inline long schubert_sigma1_power(int k, int n) {
  int cols = n - k;
  std::map<std::vector<int>, long> layer{{std::vector<int>(k, 0), 1}};
  for (int step = 0; step < k * cols; ++step) {
    std::map<std::vector<int>, long> next;
    for (const auto& [shape, ways] : layer) {
      for (int row = 0; row < k; ++row) {
        if (shape[row] == cols) continue;
        if (row > 0 && shape[row - 1] == shape[row]) continue;
        auto grown = shape;
        ++grown[row];
        next[grown] += ways;
      }
    }
    layer = std::move(next);
  }
  return layer.empty() ? 0 : layer.begin()->second;
}

// Exact Gaussian elimination; returns the dimension of the kernel.
inline int kernel_dimension(std::vector<std::vector<mpq_class>> m, std::vector<std::vector<mpq_class>>* basis = nullptr) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    mpq_class inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  if (basis) {
    basis->clear();
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
      if (is_pivot[free]) continue;
      std::vector<mpq_class> v(cols, 0);
      v[free] = 1;
      for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][free];
      basis->push_back(std::move(v));
    }
  }
  return static_cast<int>(cols - pivot_col.size());
}

// Conic coefficients ordered x^2, xy, y^2, xz, yz, z^2.
inline std::vector<mpq_class> conic_row(long x, long y, long z) {
  return {mpq_class(x * x), mpq_class(x * y), mpq_class(y * y), mpq_class(x * z), mpq_class(y * z), mpq_class(z * z)};
}

inline std::vector<std::array<long, 3>> random_points(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<long> dist(-40, 40);
  std::vector<std::array<long, 3>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({dist(gen), dist(gen), 1});
  return pts;
}

// Conics through five random rational points: the solution space is a single
// projective point exactly when the kernel is one-dimensional.
inline int conics_through_five_points(unsigned seed = 7) {
  std::vector<std::vector<mpq_class>> m;
  for (auto& p : random_points(5, seed)) m.push_back(conic_row(p[0], p[1], p[2]));
  return kernel_dimension(m) == 1 ? 1 : -1;
}

// Conics through four points tangent to the line y = 0. Restricting the pencil
// F + sG to the line gives a binary quadratic in (x, z) whose discriminant is a
// quadratic in s; its distinct roots are the tangent members.
inline int conics_through_four_tangent_to_line(unsigned seed = 11) {
  std::vector<std::vector<mpq_class>> m;
  for (auto& p : random_points(4, seed)) m.push_back(conic_row(p[0], p[1], p[2]));
  std::vector<std::vector<mpq_class>> basis;
  if (kernel_dimension(m, &basis) != 2) return -1;
  const auto& f = basis[0];
  const auto& g = basis[1];
  // On y = 0 the conic is a x^2 + b xz + c z^2 with a = [0], b = [3], c = [5].
  // disc(s) = (b_f + s b_g)^2 - 4 (a_f + s a_g)(c_f + s c_g) = A s^2 + B s + C.
  mpq_class A = g[3] * g[3] - 4 * g[0] * g[5];
  mpq_class B = 2 * f[3] * g[3] - 4 * (f[0] * g[5] + g[0] * f[5]);
  mpq_class C = f[3] * f[3] - 4 * f[0] * f[5];
  if (A == 0) return -1;
  return B * B - 4 * A * C != 0 ? 2 : 1;
}

// Projective duality swaps "tangent to a line" and "through a point" for smooth conics.
inline int conics_tangent_to_five_lines() { return conics_through_five_points(23); }

// In the plane two curves of degrees d1, d2 meet in d1*d2 points; choosing an
// ordered pair of them as the two glued nodes gives the reducible two-nodal count.
inline mpq_class plane_two_nodal_pairs(const mpq_class& first, const mpq_class& second, int d1, int d2) {
  long meet = static_cast<long>(d1) * d2;
  return first * second * mpq_class(meet * (meet - 1));
}

}  // namespace oracle
