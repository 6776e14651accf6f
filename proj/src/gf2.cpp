#include "gsim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace gsim {

Gf2Vector Gf2Vector::from_indices(int n, const std::vector<int>& idx) {
  Gf2Vector v(n);
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::out_of_range("Gf2Vector index");
    v.flip(i);
  }
  return v;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& o) {
  if (n_ != o.n_) throw std::invalid_argument("Gf2Vector size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool Gf2Vector::dot(const Gf2Vector& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Gf2Vector size mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

bool Gf2Vector::intersects(const Gf2Vector& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Gf2Vector size mismatch");
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & o.w_[i]) return true;
  return false;
}

int Gf2Vector::count() const {
  int c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool Gf2Vector::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

int Gf2Vector::lowest_set() const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
  return -1;
}

std::vector<int> Gf2Vector::indices() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (get(i)) out.push_back(i);
  return out;
}

std::string Gf2Vector::to_string() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

bool Gf2Solver::insert(const Gf2Vector& v) {
  Gf2Vector r = v;
  std::vector<uint8_t> combo(inserted_ + 1, 0);
  combo[inserted_] = 1;
  ++inserted_;
  for (const Row& row : rows_) {
    if (r.get(row.pivot)) {
      r ^= row.vec;
      for (size_t i = 0; i < row.combo.size(); ++i)
        if (row.combo[i]) combo[i] ^= 1;
    }
  }
  int p = r.lowest_set();
  if (p < 0) return false;
  rows_.push_back(Row{std::move(r), std::move(combo), p});
  return true;
}

bool Gf2Solver::in_span(const Gf2Vector& v) const {
  Gf2Vector r = v;
  for (const Row& row : rows_)
    if (r.get(row.pivot)) r ^= row.vec;
  return !r.any();
}

std::optional<std::vector<uint8_t>> Gf2Solver::express(const Gf2Vector& v) const {
  Gf2Vector r = v;
  std::vector<uint8_t> combo(inserted_, 0);
  for (const Row& row : rows_) {
    if (r.get(row.pivot)) {
      r ^= row.vec;
      for (size_t i = 0; i < row.combo.size(); ++i)
        if (row.combo[i]) combo[i] ^= 1;
    }
  }
  if (r.any()) return std::nullopt;
  return combo;
}

int gf2_rank(const std::vector<Gf2Vector>& rows) {
  if (rows.empty()) return 0;
  Gf2Solver s(rows[0].size());
  for (const auto& r : rows) s.insert(r);
  return s.rank();
}

std::optional<std::vector<uint8_t>> gf2_solve(const std::vector<Gf2Vector>& rows,
                                              const Gf2Vector& target) {
  Gf2Solver s(target.size());
  for (const auto& r : rows) s.insert(r);
  return s.express(target);
}

std::optional<std::vector<Gf2Vector>> gf2_invert(const std::vector<Gf2Vector>& rows) {
  int k = (int)rows.size();
  // Augmented elimination [M | I].
  std::vector<Gf2Vector> m = rows, id;
  for (int i = 0; i < k; ++i) {
    Gf2Vector e(k);
    e.set(i, true);
    id.push_back(e);
  }
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (m[r].get(col)) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(id[col], id[piv]);
    for (int r = 0; r < k; ++r)
      if (r != col && m[r].get(col)) {
        m[r] ^= m[col];
        id[r] ^= id[col];
      }
  }
  return id;
}

std::optional<Gf2Vector> gf2_solve_linear(const std::vector<Gf2Vector>& rows,
                                          const std::vector<uint8_t>& rhs) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("gf2_solve_linear size mismatch");
  int n = rows.empty() ? 0 : rows[0].size();
  std::vector<Gf2Vector> m = rows;
  std::vector<uint8_t> b = rhs;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int col = 0; col < n && r < m.size(); ++col) {
    size_t piv = r;
    while (piv < m.size() && !m[piv].get(col)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    std::swap(b[r], b[piv]);
    for (size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i].get(col)) {
        m[i] ^= m[r];
        b[i] ^= b[r];
      }
    pivot_col.push_back(col);
    ++r;
  }
  for (size_t i = r; i < m.size(); ++i)
    if (b[i]) return std::nullopt;  // inconsistent
  Gf2Vector z(n);
  for (size_t i = 0; i < r; ++i)
    if (b[i]) z.set(pivot_col[i], true);
  return z;
}

Gf2Vector gf2_apply(const std::vector<Gf2Vector>& rows, const Gf2Vector& x) {
  Gf2Vector y((int)rows.size());
  for (size_t i = 0; i < rows.size(); ++i) y.set((int)i, rows[i].dot(x));
  return y;
}

}  // namespace gsim
