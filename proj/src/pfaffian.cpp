#include "gsim/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsim {

double SkewMatrix::antisymmetry_defect() const {
  double mx = 0, defect = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      mx = std::max(mx, std::abs(at(i, j)));
      defect = std::max(defect, std::abs(at(i, j) + at(j, i)));
    }
  return mx > 0 ? defect / mx : defect;
}

void BandedSkew::set(int i, int j, std::complex<double> v) {
  if (i == j) {
    if (std::abs(v) != 0.0) throw std::logic_error("BandedSkew: nonzero diagonal");
    return;
  }
  if (i > j) {
    set(j, i, -v);
    return;
  }
  if (j - i > width) {
    if (std::abs(v) != 0.0)
      throw std::logic_error("BandedSkew: write outside band (fill margin too small)");
    return;
  }
  s[(size_t)i * width + (j - i - 1)] = v;
}

ScaledComplex pfaffian(SkewMatrix m, double tol) {
  int n = m.dim;
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
  if (n == 0) return ScaledComplex::one();
  if (m.antisymmetry_defect() > tol)
    throw std::invalid_argument("pfaffian: matrix not antisymmetric");

  ScaledComplex pf = ScaledComplex::one();
  auto a = [&](int i, int j) -> std::complex<double>& { return m.at(i, j); };

  for (int k = 0; k + 1 < n; k += 2) {
    // Partial pivoting: bring the largest entry of row k to column k+1.
    int jmax = k + 1;
    double best = std::abs(a(k, jmax));
    for (int j = k + 2; j < n; ++j) {
      double v = std::abs(a(k, j));
      if (v > best) {
        best = v;
        jmax = j;
      }
    }
    if (best == 0.0) return ScaledComplex::zero();
    if (jmax != k + 1) {
      for (int t = 0; t < n; ++t) std::swap(a(t, k + 1), a(t, jmax));
      for (int t = 0; t < n; ++t) std::swap(a(k + 1, t), a(jmax, t));
      pf = -pf;
    }
    std::complex<double> p = a(k, k + 1);
    pf *= ScaledComplex::from(p);
    for (int i = k + 2; i < n; ++i) {
      std::complex<double> rki = a(k, i) / p;
      std::complex<double> rk1i = a(k + 1, i);
      if (rki == 0.0 && rk1i == 0.0) continue;
      for (int j = i + 1; j < n; ++j) {
        std::complex<double> upd = rki * a(k + 1, j) - rk1i * (a(k, j) / p);
        if (upd != 0.0) {
          a(i, j) -= upd;
          a(j, i) = -a(i, j);
        }
      }
    }
  }
  return pf;
}

ScaledComplex determinant(SkewMatrix m) {
  int n = m.dim;
  if (n == 0) return ScaledComplex::one();
  ScaledComplex det = ScaledComplex::one();
  auto a = [&](int i, int j) -> std::complex<double>& { return m.at(i, j); };
  for (int k = 0; k < n; ++k) {
    int imax = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        imax = i;
      }
    }
    if (best == 0.0) return ScaledComplex::zero();
    if (imax != k) {
      for (int t = 0; t < n; ++t) std::swap(a(k, t), a(imax, t));
      det = -det;
    }
    std::complex<double> p = a(k, k);
    det *= ScaledComplex::from(p);
    for (int i = k + 1; i < n; ++i) {
      std::complex<double> f = a(i, k) / p;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

ScaledComplex pfaffian_banded(BandedSkew m, double tol) {
  (void)tol;
  int n = m.dim, w = m.width;
  if (n % 2 != 0) throw std::invalid_argument("pfaffian_banded: odd dimension");
  if (n == 0) return ScaledComplex::one();

  ScaledComplex pf = ScaledComplex::one();
  for (int k = 0; k + 1 < n; k += 2) {
    int hi = std::min(n - 1, k + w);
    // Prefer the adjacent pivot when it is not much smaller than the best
    // candidate: symmetric swaps widen the working band, adjacency keeps it.
    int jmax = k + 1;
    double best = 0;
    for (int j = k + 1; j <= hi; ++j) {
      double v = std::abs(m.get(k, j));
      if (v > best) {
        best = v;
        jmax = j;
      }
    }
    if (best == 0.0) return ScaledComplex::zero();
    if (std::abs(m.get(k, k + 1)) >= 1e-3 * best) jmax = k + 1;
    if (jmax != k + 1) {
      int p = k + 1, q = jmax;
      int lo = std::max(0, p - w), hh = std::min(n - 1, q + w);
      std::complex<double> apq = m.get(p, q);
      for (int t = lo; t <= hh; ++t) {
        if (t == p || t == q) continue;
        std::complex<double> vp = m.get(t, p), vq = m.get(t, q);
        m.set(t, p, vq);
        m.set(t, q, vp);
      }
      m.set(p, q, -apq);
      pf = -pf;
    }
    std::complex<double> p = m.get(k, k + 1);
    pf *= ScaledComplex::from(p);
    // Work only on the occupied extent of rows k and k+1.
    int reach = k + 1;
    for (int j = std::min(n - 1, k + w); j > k + 1; --j)
      if (m.get(k, j) != 0.0 || m.get(k + 1, j) != 0.0) {
        reach = j;
        break;
      }
    for (int i = k + 2; i <= reach; ++i) {
      std::complex<double> rki = m.get(k, i) / p;
      std::complex<double> rk1i = m.get(k + 1, i);
      if (rki == 0.0 && rk1i == 0.0) continue;
      for (int j = i + 1; j <= reach; ++j) {
        std::complex<double> upd = rki * m.get(k + 1, j) - rk1i * (m.get(k, j) / p);
        if (upd != 0.0) m.set(i, j, m.get(i, j) - upd);
      }
    }
  }
  return pf;
}

}  // namespace gsim
