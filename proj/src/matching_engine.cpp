#include "gsim/matching_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "gsim/parallel.hpp"

namespace gsim {

namespace {

// Incremental construction of the transformed graph. Rotation entries are
// either final dart ids (>= 0) or placeholder tokens encoded as -(token)-1,
// resolved when the corresponding edge is created.
struct Builder {
  std::vector<std::vector<long long>> rot;
  std::vector<int> vkey;  // band-ordering key (source vertex id)
  std::vector<std::pair<int, int>> ends;
  std::vector<int> src;
  std::vector<uint32_t> cuts;
  std::vector<int> attach;  // token -> vertex

  int add_vertex(int key) {
    rot.emplace_back();
    vkey.push_back(key);
    return (int)rot.size() - 1;
  }
  int add_edge(int u, int v, int s, uint32_t c) {
    ends.push_back({u, v});
    src.push_back(s);
    cuts.push_back(c);
    return (int)ends.size() - 1;
  }
  int new_token() {
    attach.push_back(-1);
    return (int)attach.size() - 1;
  }
  long long ph(int token) { return -(long long)token - 1; }
  int dart_at(int e, int v) const { return ends[e].first == v ? 2 * e : 2 * e + 1; }

  void patch(int token, long long dart) {
    auto& rv = rot[attach[token]];
    auto it = std::find(rv.begin(), rv.end(), ph(token));
    if (it == rv.end()) throw std::logic_error("fisher builder: unplaced token");
    *it = dart;
  }

  // Degree-3 gadget: triangle u0,u1,u2 with pendants a0,a1,a2; the cycle/
  // matching bijection needs exactly one internal matching per even subset
  // of used externals, which this shape provides. External cyclic order at
  // the source vertex is preserved by the pendant order.
  void emit_deg3(int key, int t0, int t1, int t2) {
    int tok[3] = {t0, t1, t2};
    int a[3], u[3];
    for (int i = 0; i < 3; ++i) a[i] = add_vertex(key);
    for (int i = 0; i < 3; ++i) u[i] = add_vertex(key);
    int spoke[3], tri[3];  // tri[i] joins u[i] and u[(i+1)%3]
    for (int i = 0; i < 3; ++i) spoke[i] = add_edge(a[i], u[i], -1, 0);
    for (int i = 0; i < 3; ++i) tri[i] = add_edge(u[i], u[(i + 1) % 3], -1, 0);
    for (int i = 0; i < 3; ++i) {
      attach[tok[i]] = a[i];
      rot[a[i]] = {ph(tok[i]), dart_at(spoke[i], a[i])};
      rot[u[i]] = {dart_at(spoke[i], u[i]), dart_at(tri[(i + 2) % 3], u[i]),
                   dart_at(tri[i], u[i])};
    }
  }

  // Connects two placed tokens, bridge-splitting when the edge crosses more
  // than one cut: an odd chain whose odd-position edges carry the weight and
  // then one cut each.
  void connect(int ta, int tb, int s, uint32_t cutmask, int key) {
    int m = std::popcount(cutmask);
    if (m <= 1) {
      int f = add_edge(attach[ta], attach[tb], s, cutmask);
      patch(ta, 2 * f);
      patch(tb, 2 * f + 1);
      return;
    }
    std::vector<uint32_t> bits;
    for (int k = 0; k < 32; ++k)
      if ((cutmask >> k) & 1) bits.push_back(1u << k);
    // Odd chain of 2m+1 edges: a matching uses all odd positions (edge in a
    // cycle) or all even ones. The weight rides on position 1, the m cuts on
    // positions 3, 5, ..., 2m+1.
    int len = 2 * m + 1;
    std::vector<int> mid(len - 1);
    for (int& v : mid) v = add_vertex(key);
    int prev_v = attach[ta];
    std::vector<int> chain;
    for (int p = 1; p <= len; ++p) {
      int nv = (p == len) ? attach[tb] : mid[p - 1];
      int es = (p == 1) ? s : -1;
      uint32_t ec = (p >= 3 && p % 2 == 1) ? bits[(p - 3) / 2] : 0;
      chain.push_back(add_edge(prev_v, nv, es, ec));
      prev_v = nv;
    }
    patch(ta, 2 * chain.front());
    patch(tb, dart_at(chain.back(), attach[tb]));
    for (int p = 1; p < len; ++p) {
      int x = mid[p - 1];
      rot[x] = {dart_at(chain[p - 1], x), dart_at(chain[p], x)};
    }
  }
};

}  // namespace

FisherGraph fisher_transform(const EmbeddedGraph& g, const EncodingScheme& scheme) {
  int ne = g.num_edges(), nv = g.num_vertices;
  int twog = (int)scheme.cocycles.size();
  if (twog > 30) throw std::invalid_argument("genus too large for cut masks");

  std::vector<uint32_t> emask(ne, 0);
  for (int k = 0; k < twog; ++k)
    for (int e : scheme.cocycles[k].indices()) emask[e] |= 1u << k;

  // Leaf pruning: edges on no cycle disappear together with their vertices.
  std::vector<int> deg(nv, 0);
  std::vector<uint8_t> edge_alive(ne, 1), vert_alive(nv, 1);
  for (int v = 0; v < nv; ++v) deg[v] = (int)g.rotation[v].size();
  std::queue<int> leaves;
  for (int v = 0; v < nv; ++v)
    if (deg[v] <= 1) leaves.push(v);
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop();
    if (!vert_alive[v] || deg[v] > 1) continue;
    vert_alive[v] = 0;
    for (int d : g.rotation[v]) {
      int e = dart_edge(d);
      if (!edge_alive[e]) continue;
      edge_alive[e] = 0;
      int w = g.dart_head(d);
      if (--deg[w] <= 1 && vert_alive[w]) leaves.push(w);
      --deg[v];
    }
  }

  FisherGraph out;
  int alive_edges = 0;
  for (int e = 0; e < ne; ++e) alive_edges += edge_alive[e];
  if (alive_edges == 0) {
    out.empty = true;
    return out;
  }

  Builder b;
  for (int d = 0; d < 2 * ne; ++d) b.new_token();  // token d = source dart d

  for (int v = 0; v < nv; ++v) {
    if (!vert_alive[v]) continue;
    std::vector<int> darts;
    for (int d : g.rotation[v])
      if (edge_alive[dart_edge(d)]) darts.push_back(d);
    int k = (int)darts.size();
    if (k == 0) continue;
    if (k == 1) throw std::logic_error("pruning left a leaf");
    if (k == 2) {
      int v1 = b.add_vertex(v), v2 = b.add_vertex(v);
      int link = b.add_edge(v1, v2, -1, 0);
      b.attach[darts[0]] = v1;
      b.attach[darts[1]] = v2;
      b.rot[v1] = {b.ph(darts[0]), (long long)b.dart_at(link, v1)};
      b.rot[v2] = {(long long)b.dart_at(link, v2), b.ph(darts[1])};
    } else if (k == 3) {
      b.emit_deg3(v, darts[0], darts[1], darts[2]);
    } else {
      // Chain of k-2 degree-3 gadgets; adjacent gadgets joined by unit links.
      std::vector<std::pair<int, int>> link_tokens;  // (out, in)
      int chains = k - 2;
      std::vector<std::array<int, 3>> ext(chains);
      for (int j = 0; j < chains; ++j) {
        if (j == 0) {
          int lo = b.new_token();
          link_tokens.push_back({lo, -1});
          ext[j] = {darts[0], darts[1], lo};
        } else if (j == chains - 1) {
          int li = b.new_token();
          link_tokens.back().second = li;
          ext[j] = {li, darts[j + 1], darts[j + 2]};
        } else {
          int li = b.new_token();
          link_tokens.back().second = li;
          int lo = b.new_token();
          link_tokens.push_back({lo, -1});
          ext[j] = {li, darts[j + 1], lo};
        }
        b.emit_deg3(v, ext[j][0], ext[j][1], ext[j][2]);
      }
      for (auto [lo, li] : link_tokens) b.connect(lo, li, -1, 0, v);
    }
  }

  for (int e = 0; e < ne; ++e) {
    if (!edge_alive[e]) continue;
    int key = std::min(g.edge_ends[e].first, g.edge_ends[e].second);
    b.connect(2 * e, 2 * e + 1, e, emask[e], key);
  }

  // Band-friendly relabel by source vertex key (stable).
  int nnv = (int)b.rot.size();
  std::vector<int> order(nnv);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return b.vkey[x] < b.vkey[y]; });
  std::vector<int> newid(nnv);
  for (int i = 0; i < nnv; ++i) newid[order[i]] = i;

  int nne = (int)b.ends.size();
  std::vector<std::pair<int, int>> fedges(nne);
  for (int e = 0; e < nne; ++e)
    fedges[e] = {newid[b.ends[e].first], newid[b.ends[e].second]};
  std::vector<std::vector<int>> frot(nnv);
  for (int v = 0; v < nnv; ++v) {
    frot[newid[v]].reserve(b.rot[v].size());
    for (long long entry : b.rot[v]) {
      if (entry < 0) throw std::logic_error("fisher builder: unresolved placeholder");
      frot[newid[v]].push_back((int)entry);
    }
  }

  out.g = EmbeddedGraph::build(nnv, std::move(fedges), std::move(frot));
  if (out.g.genus != g.genus)
    throw std::logic_error("fisher transform changed the genus");
  if (out.g.num_vertices % 2 != 0)
    throw std::logic_error("fisher graph has odd vertex count");
  out.src_edge = std::move(b.src);
  out.cut_mask = std::move(b.cuts);

  // No parallel edges: adjacency entries must be per vertex pair.
  {
    std::map<std::pair<int, int>, int> seen;
    for (auto [u, v] : out.g.edge_ends) {
      auto key = std::minmax(u, v);
      if (++seen[{key.first, key.second}] > 1)
        throw std::logic_error("fisher graph has parallel edges");
    }
  }

  for (auto [u, v] : out.g.edge_ends)
    out.bandwidth = std::max(out.bandwidth, std::abs(u - v));

  // Kasteleyn orientation: BFS spanning tree of the dual, then fix each
  // non-root face's parity with its parent edge, leaves inward. Each face
  // must have an odd number of darts traversed along the orientation.
  out.orient.assign(out.g.num_edges(), 1);
  {
    const EmbeddedGraph& fg = out.g;
    int nf = fg.num_faces();
    std::vector<int> parent_edge(nf, -1), bfs_order;
    std::vector<uint8_t> seen(nf, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      bfs_order.push_back(f);
      for (int d : fg.faces[f]) {
        int other = fg.face_of_dart[d ^ 1];
        if (!seen[other]) {
          seen[other] = 1;
          parent_edge[other] = dart_edge(d);
          q.push(other);
        }
      }
    }
    if ((int)bfs_order.size() != nf) throw std::logic_error("dual graph disconnected");
    auto face_parity = [&](int f) {
      int along = 0;
      for (int d : fg.faces[f])
        along ^= (d & 1) ? (out.orient[dart_edge(d)] ^ 1) : out.orient[dart_edge(d)];
      return along;
    };
    for (int i = nf - 1; i >= 1; --i) {
      int f = bfs_order[i];
      if (face_parity(f) == 0) out.orient[parent_edge[f]] ^= 1;
    }
    if (face_parity(0) == 0)
      throw std::logic_error("Kasteleyn orientation infeasible (root face parity)");
  }
  return out;
}

// ---- engine -----------------------------------------------------------------

MatchingEngine::MatchingEngine(const EmbeddedGraph& g, const TreeCotree& tc,
                               const EncodingScheme& scheme) {
  g_ = g.genus;
  if ((int)scheme.cocycles.size() != 2 * g_)
    throw std::invalid_argument("scheme size != 2g");
  if (!scheme.canonical && g_ > 0)
    throw std::invalid_argument("matching engine requires a canonical scheme");
  num_source_edges_ = g.num_edges();
  fisher_ = fisher_transform(g, scheme);
  if (!fisher_.empty) {
    band_store_ = std::min(fisher_.g.num_vertices - 1, 4 * fisher_.bandwidth + 8);
    use_banded_ = band_store_ * 3 < fisher_.g.num_vertices;
  }
  calibrate(g, tc, scheme);
}

ScaledComplex MatchingEngine::pf_eval(const Weights& w, uint32_t cut_flips) const {
  pf_count_.fetch_add(1, std::memory_order_relaxed);
  if (fisher_.empty) return ScaledComplex::one();
  int n = fisher_.g.num_vertices;
  int ne = fisher_.g.num_edges();

  auto edge_val = [&](int i) {
    std::complex<double> val =
        fisher_.src_edge[i] < 0 ? std::complex<double>(1.0) : w[fisher_.src_edge[i]];
    if (std::popcount(fisher_.cut_mask[i] & cut_flips) & 1) val = -val;
    if (!fisher_.orient[i]) val = -val;
    return val;
  };

  if (use_banded_) {
    BandedSkew m(n, band_store_);
    for (int i = 0; i < ne; ++i) {
      auto [u, v] = fisher_.g.edge_ends[i];
      m.set(u, v, u < v ? edge_val(i) : -edge_val(i));
    }
    return pfaffian_banded(std::move(m));
  }

  SkewMatrix m(n);
  for (int i = 0; i < ne; ++i) {
    auto [u, v] = fisher_.g.edge_ends[i];
    m.set_pair(u, v, edge_val(i));
  }
  bool check = (check_tick_.fetch_add(1, std::memory_order_relaxed) % 64 == 0) && n <= 600;
  SkewMatrix copy;
  if (check) copy = m;
  ScaledComplex pf = pfaffian(std::move(m));
  if (check) {
    ScaledComplex det = determinant(std::move(copy));
    ScaledComplex pf2 = pf * pf;
    if (det.is_zero() != pf2.is_zero() ||
        (!det.is_zero() && scaled_rel_err(pf2, det) > 1e-8))
      throw std::logic_error("pfaffian self-check failed: Pf^2 != det");
  }
  return pf;
}

void MatchingEngine::calibrate(const EmbeddedGraph& g, const TreeCotree& tc,
                               const EncodingScheme& scheme) {
  Weights zero(num_source_edges_, 0.0);
  ScaledComplex pf0 = pf_eval(zero, 0);
  double v0 = pf0.to_complex().real();
  int s0 = v0 >= 0 ? 1 : -1;
  if (std::abs(v0 - s0) > 1e-6 || std::abs(pf0.to_complex().imag()) > 1e-6)
    throw std::logic_error("sign calibration: empty-cycle probe not ±1");
  s0_ = s0;

  if (g_ > 0) {
    std::vector<Gf2Vector> rows;
    std::vector<uint8_t> rhs;
    for (int j = 0; j < 2 * g_; ++j) {
      Gf2Vector cyc = tc.tree_cycle(g, tc.leftover[j]);
      Weights w(num_source_edges_, 0.0);
      for (int e : cyc.indices()) w[e] = 1.0;
      double pv = pf_eval(w, 0).to_complex().real();
      int sj = (int)std::lround(pv) - s0;
      if (std::abs(sj) != 1 || std::abs(pv - std::lround(pv)) > 1e-6)
        throw std::logic_error("sign calibration: tree-cycle probe not ±1");
      uint32_t mb = 0, nb = 0;
      for (int i = 0; i < g_; ++i) {
        if (cyc.dot(scheme.cocycles[2 * i])) mb |= 1u << i;
        if (cyc.dot(scheme.cocycles[2 * i + 1])) nb |= 1u << i;
      }
      int expect = s0 * ((std::popcount(mb & nb) & 1) ? -1 : 1);
      Gf2Vector row(2 * g_);
      for (int i = 0; i < g_; ++i) {
        row.set(i, (mb >> i) & 1);
        row.set(g_ + i, (nb >> i) & 1);
      }
      rows.push_back(row);
      rhs.push_back(sj != expect);
    }
    auto z = gf2_solve_linear(rows, rhs);
    if (!z) throw std::logic_error("sign calibration: character solve failed");
    qa_ = qb_ = 0;
    for (int i = 0; i < g_; ++i) {
      if (z->get(i)) qa_ |= 1u << i;
      if (z->get(g_ + i)) qb_ |= 1u << i;
    }
  }
  base_sign_ = s0_ * ((std::popcount(qa_ & qb_) & 1) ? -1 : 1);

  // Weight-independent global check: at small positive uniform weights every
  // cycle term is positive, so Cy must come out positive.
  if (pf_dim() <= 1200 && g_ <= 3) {
    Weights t(num_source_edges_, 0.37);
    std::complex<double> cy = generating_function(t, 1).to_complex();
    if (!(cy.real() > 0) || std::abs(cy.imag()) > 1e-9 * cy.real())
      throw std::logic_error("sign calibration: positivity check failed");
  }
}

SkewMatrix MatchingEngine::relevant_matrix(const Weights& w, uint32_t alpha,
                                           uint32_t beta) const {
  if (fisher_.empty) return SkewMatrix(0);
  uint32_t flips = 0;
  for (int i = 0; i < g_; ++i) {
    if ((alpha >> i) & 1) flips |= 1u << (2 * i);
    if ((beta >> i) & 1) flips |= 1u << (2 * i + 1);
  }
  int n = fisher_.g.num_vertices;
  SkewMatrix m(n);
  for (int i = 0; i < fisher_.g.num_edges(); ++i) {
    auto [u, v] = fisher_.g.edge_ends[i];
    std::complex<double> val =
        fisher_.src_edge[i] < 0 ? std::complex<double>(1.0) : w[fisher_.src_edge[i]];
    if (std::popcount(fisher_.cut_mask[i] & flips) & 1) val = -val;
    if (!fisher_.orient[i]) val = -val;
    m.set_pair(u, v, val);
  }
  return m;
}

int MatchingEngine::term_sign(uint32_t alpha, uint32_t beta) const {
  int par = std::popcount(alpha & beta) + std::popcount(alpha & qb_) +
            std::popcount(beta & qa_);
  return base_sign_ * ((par & 1) ? -1 : 1);
}

ScaledComplex MatchingEngine::signed_term(const Weights& w, uint32_t alpha,
                                          uint32_t beta) const {
  if ((int)w.size() != num_source_edges_)
    throw std::invalid_argument("weight vector size != edge count");
  if (alpha >= (1u << g_) || beta >= (1u << g_))
    throw std::invalid_argument("twist bitstring length != g");
  uint32_t flips = 0;
  for (int i = 0; i < g_; ++i) {
    if ((alpha >> i) & 1) flips |= 1u << (2 * i);
    if ((beta >> i) & 1) flips |= 1u << (2 * i + 1);
  }
  ScaledComplex pf = pf_eval(w, flips);
  return term_sign(alpha, beta) > 0 ? pf : -pf;
}

ScaledComplex MatchingEngine::generating_function(const Weights& w, int threads) const {
  if (fisher_.empty) return ScaledComplex::one();
  int terms = term_count();
  std::vector<ScaledComplex> vals(terms);
  parallel_for(terms, threads, [&](int idx) {
    uint32_t alpha = (uint32_t)idx >> g_;
    uint32_t beta = (uint32_t)idx & ((1u << g_) - 1);
    vals[idx] = signed_term(w, alpha, beta);
  });
  ScaledComplex sum = ScaledComplex::zero();
  for (const auto& v : vals) sum += v;
  sum.exp2 -= g_;
  return sum.normalized();
}

}  // namespace gsim
