#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "gsim/embedded_graph.hpp"
#include "gsim/homology.hpp"
#include "gsim/pfaffian.hpp"
#include "gsim/scaled.hpp"

namespace gsim {

// Fisher-transformed graph G': cycles of the source graph are in bijection
// with perfect matchings of G'. The transform keeps an embedding on the same
// surface so that a Kasteleyn orientation of the plane-plus-cuts structure
// exists, and records which cut (scheme cocycle) each edge crosses.
struct FisherGraph {
  EmbeddedGraph g;                 // empty when the source had no cycles
  bool empty = false;
  std::vector<int> src_edge;       // per G' edge: source edge id, or -1 (unit weight)
  std::vector<uint32_t> cut_mask;  // per G' edge: at most one bit set
  std::vector<uint8_t> orient;     // base orientation: 1 = ends.first -> ends.second
  int bandwidth = 0;               // max |u - v| over G' edges
};

FisherGraph fisher_transform(const EmbeddedGraph& g, const EncodingScheme& scheme);

using Weights = std::vector<std::complex<double>>;  // per source edge

// Cy(G,w) as the 2^{2g}-term sum of signed Pfaffians over relevant
// orientations. The per-term signs are s0·(−1)^{qa·qb}·(−1)^{α·β+α·qb+β·qa}
// with the characters (qa,qb) and global sign s0 calibrated once per
// (graph, scheme) from probe Pfaffians on tree-cycle supports.
class MatchingEngine {
 public:
  MatchingEngine(const EmbeddedGraph& g, const TreeCotree& tc, const EncodingScheme& scheme);

  int genus() const { return g_; }
  int term_count() const { return 1 << (2 * g_); }
  int pf_dim() const { return fisher_.empty ? 0 : fisher_.g.num_vertices; }
  const FisherGraph& fisher() const { return fisher_; }
  bool banded() const { return use_banded_; }

  // A'(w^{α,β}) for the fixed base orientation (dense; test/debug surface).
  SkewMatrix relevant_matrix(const Weights& w, uint32_t alpha, uint32_t beta) const;

  // σ(α,β) · Pf(A'(w^{α,β})).
  ScaledComplex signed_term(const Weights& w, uint32_t alpha, uint32_t beta) const;

  // Cy(G,w) = 2^{-g} Σ_{α,β} signed_term(w, α, β); lexicographic (α,β)
  // reduction order independent of the thread count.
  ScaledComplex generating_function(const Weights& w, int threads = 0) const;

  // Twist (α*,β*) whose single signed term evaluates <C^{δ,ε}|φ> / N.
  std::pair<uint32_t, uint32_t> c_state_twist(uint32_t delta, uint32_t eps) const {
    return {delta ^ qa_, eps ^ qb_};
  }
  int term_sign(uint32_t alpha, uint32_t beta) const;

  uint64_t pfaffian_count() const { return pf_count_.load(); }

 private:
  int g_ = 0;
  int num_source_edges_ = 0;
  FisherGraph fisher_;
  uint32_t qa_ = 0, qb_ = 0;
  int s0_ = 1;
  int base_sign_ = 1;  // s0 · (−1)^{qa·qb}
  bool use_banded_ = false;
  int band_store_ = 0;
  mutable std::atomic<uint64_t> pf_count_{0};
  mutable std::atomic<uint64_t> check_tick_{0};

  void calibrate(const EmbeddedGraph& g, const TreeCotree& tc, const EncodingScheme& scheme);
  ScaledComplex pf_eval(const Weights& w, uint32_t cut_flips) const;
};

}  // namespace gsim
