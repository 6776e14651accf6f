#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsim {

// Bitvector over an edge (or generic index) set, packed into 64-bit words.
// Addition is symmetric difference; dot() is the mod-2 intersection size.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(int n) : n_(n), w_((n + 63) / 64, 0) {}
  static Gf2Vector from_indices(int n, const std::vector<int>& idx);

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  Gf2Vector& operator^=(const Gf2Vector& o);
  friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) {
    a ^= b;
    return a;
  }
  bool operator==(const Gf2Vector& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator<(const Gf2Vector& o) const { return w_ < o.w_; }

  bool dot(const Gf2Vector& o) const;  // parity of |this ∩ o|
  bool intersects(const Gf2Vector& o) const;
  int count() const;
  bool any() const;
  int lowest_set() const;  // -1 if empty
  std::vector<int> indices() const;
  std::string to_string() const;  // bit i printed at position i

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

// Incremental Gaussian elimination that remembers, for every reduced pivot
// row, which subset of the inserted vectors produced it.
class Gf2Solver {
 public:
  explicit Gf2Solver(int n) : n_(n) {}

  // Returns true if v was independent of the current span (and got added).
  bool insert(const Gf2Vector& v);
  int rank() const { return (int)rows_.size(); }
  int inserted() const { return inserted_; }
  bool in_span(const Gf2Vector& v) const;
  // Combination of the *inserted* vectors equal to v, if v is in the span.
  // Bit i of the result refers to the i-th call to insert().
  std::optional<std::vector<uint8_t>> express(const Gf2Vector& v) const;

 private:
  struct Row {
    Gf2Vector vec;
    std::vector<uint8_t> combo;  // over insertion indices
    int pivot;
  };
  int n_ = 0;
  int inserted_ = 0;
  std::vector<Row> rows_;
};

int gf2_rank(const std::vector<Gf2Vector>& rows);

// Solve sum_i x_i rows[i] = target over GF(2); x returned as one byte per row.
std::optional<std::vector<uint8_t>> gf2_solve(const std::vector<Gf2Vector>& rows,
                                              const Gf2Vector& target);

// Inverse of a k×k bit matrix given as k rows of width k. Empty if singular.
std::optional<std::vector<Gf2Vector>> gf2_invert(const std::vector<Gf2Vector>& rows);

// Solve rows · z = rhs (one parity equation per row) for z.
std::optional<Gf2Vector> gf2_solve_linear(const std::vector<Gf2Vector>& rows,
                                          const std::vector<uint8_t>& rhs);

// y = M x for a row-list matrix (y_i = <rows[i], x>).
Gf2Vector gf2_apply(const std::vector<Gf2Vector>& rows, const Gf2Vector& x);

}  // namespace gsim
