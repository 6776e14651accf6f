#pragma once

#include <complex>
#include <vector>

#include "gsim/scaled.hpp"

namespace gsim {

// Dense complex skew-symmetric matrix of even dimension.
struct SkewMatrix {
  int dim = 0;
  std::vector<std::complex<double>> a;  // row-major dim*dim

  SkewMatrix() = default;
  explicit SkewMatrix(int n) : dim(n), a((size_t)n * n) {}
  std::complex<double>& at(int i, int j) { return a[(size_t)i * dim + j]; }
  std::complex<double> at(int i, int j) const { return a[(size_t)i * dim + j]; }
  void set_pair(int i, int j, std::complex<double> v) {
    at(i, j) = v;
    at(j, i) = -v;
  }
  // max |a_ij + a_ji| relative to max |a_ij|
  double antisymmetry_defect() const;
};

// Skew-symmetric matrix with entries confined to |i-j| <= width, stored by
// upper diagonals. Writes outside the allocated width throw (the caller
// must leave enough fill margin).
struct BandedSkew {
  int dim = 0;
  int width = 0;
  std::vector<std::complex<double>> s;  // s[i*width + (j-i-1)], j > i

  BandedSkew() = default;
  BandedSkew(int n, int w) : dim(n), width(w), s((size_t)n * w) {}
  std::complex<double> get(int i, int j) const {
    if (i == j) return 0.0;
    if (i > j) return -get(j, i);
    if (j - i > width) return 0.0;
    return s[(size_t)i * width + (j - i - 1)];
  }
  void set(int i, int j, std::complex<double> v);
};

// Pfaffian by skew-symmetric elimination with partial pivoting, O(dim^3).
// Throws on odd dimension or on antisymmetry defect above tol.
// Pf of a 0x0 matrix is 1.
ScaledComplex pfaffian(SkewMatrix m, double tol = 1e-12);

// Determinant via LU with partial pivoting (independent elimination path,
// used for Pf(m)^2 = det(m) self-checks).
ScaledComplex determinant(SkewMatrix m);

// Banded variant; the matrix must carry a fill margin of at least 4x the
// structural bandwidth. Destroys its argument.
ScaledComplex pfaffian_banded(BandedSkew m, double tol = 1e-12);

}  // namespace gsim
