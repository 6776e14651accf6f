#include "gsim/embedded_graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace gsim {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Gf2Vector EmbeddedGraph::face_boundary(int f) const {
  Gf2Vector v(num_edges());
  for (int d : faces[f]) v.flip(dart_edge(d));
  return v;
}

Gf2Vector EmbeddedGraph::vertex_star(int v) const {
  Gf2Vector s(num_edges());
  for (int d : rotation[v]) s.flip(dart_edge(d));
  return s;
}

bool EmbeddedGraph::is_cycle(const Gf2Vector& x) const {
  for (int v = 0; v < num_vertices; ++v) {
    int deg = 0;
    for (int d : rotation[v])
      if (x.get(dart_edge(d))) ++deg;
    if (deg & 1) return false;
  }
  return true;
}

EmbeddedGraph EmbeddedGraph::build(int nv, std::vector<std::pair<int, int>> edges,
                                   std::vector<std::vector<int>> rotation,
                                   bool allow_self_loops) {
  EmbeddedGraph g;
  g.num_vertices = nv;
  g.edge_ends = std::move(edges);
  g.rotation = std::move(rotation);

  int ne = g.num_edges();
  require(nv > 0, "graph has no vertices");
  require((int)g.rotation.size() == nv, "rotation list size != vertex count");
  for (auto [u, v] : g.edge_ends) {
    require(u >= 0 && u < nv && v >= 0 && v < nv, "edge endpoint out of range");
    if (!allow_self_loops) require(u != v, "self-loop present");
  }

  g.dart_vertex.assign(2 * ne, -1);
  g.rotation_pos.assign(2 * ne, -1);
  for (int v = 0; v < nv; ++v) {
    for (int i = 0; i < (int)g.rotation[v].size(); ++i) {
      int d = g.rotation[v][i];
      require(d >= 0 && d < 2 * ne, "dangling dart id in rotation");
      require(g.dart_vertex[d] == -1, "dart appears twice in rotations");
      int want = (d & 1) ? g.edge_ends[dart_edge(d)].second : g.edge_ends[dart_edge(d)].first;
      require(want == v, "dart listed at a vertex that is not its tail");
      g.dart_vertex[d] = v;
      g.rotation_pos[d] = i;
    }
  }
  for (int d = 0; d < 2 * ne; ++d) require(g.dart_vertex[d] >= 0, "dart missing from rotations");

  // Connectivity.
  std::vector<uint8_t> seen(nv, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int d : g.rotation[v]) {
      int w = g.dart_vertex[d ^ 1];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  require(reached == nv, "graph is disconnected");

  // Face tracing: every dart consumed exactly once.
  g.face_of_dart.assign(2 * ne, -1);
  for (int d0 = 0; d0 < 2 * ne; ++d0) {
    if (g.face_of_dart[d0] >= 0) continue;
    int f = (int)g.faces.size();
    std::vector<int> walk;
    int d = d0;
    do {
      require(g.face_of_dart[d] == -1, "face tracing revisited a dart");
      g.face_of_dart[d] = f;
      walk.push_back(d);
      d = g.face_next(d);
    } while (d != d0);
    g.faces.push_back(std::move(walk));
  }

  int chi = nv - ne + (int)g.faces.size();
  require((2 - chi) % 2 == 0 && chi <= 2, "Euler characteristic inconsistent");
  g.genus = (2 - chi) / 2;
  return g;
}

EmbeddedGraph EmbeddedGraph::dual() const {
  int ne = num_edges();
  std::vector<std::pair<int, int>> dedges(ne);
  for (int e = 0; e < ne; ++e)
    dedges[e] = {face_of_dart[2 * e], face_of_dart[2 * e + 1]};
  // The dual rotation at a face vertex is the face walk itself; dual dart ids
  // coincide with the primal dart ids they cross.
  std::vector<std::vector<int>> drot(num_faces());
  for (int f = 0; f < num_faces(); ++f) drot[f] = faces[f];
  return build(num_faces(), std::move(dedges), std::move(drot), /*allow_self_loops=*/true);
}

// ---- tree-cotree ----------------------------------------------------------

TreeCotree tree_cotree(const EmbeddedGraph& g) {
  int nv = g.num_vertices, ne = g.num_edges();
  TreeCotree tc;
  tc.edge_class.assign(ne, 2);
  tc.parent_vertex.assign(nv, -1);
  tc.parent_edge.assign(nv, -1);

  // Vertex BFS from 0; incident edges scanned in ascending edge id.
  std::vector<std::vector<std::pair<int, int>>> inc(nv);  // (edge, other端 vertex)
  for (int e = 0; e < ne; ++e) {
    auto [u, v] = g.edge_ends[e];
    inc[u].push_back({e, v});
    inc[v].push_back({e, u});
  }
  for (auto& l : inc) std::sort(l.begin(), l.end());

  std::vector<uint8_t> seen(nv, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [e, w] : inc[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        tc.edge_class[e] = 0;
        tc.tree_edges.push_back(e);
        tc.parent_vertex[w] = v;
        tc.parent_edge[w] = e;
        q.push(w);
      }
    }
  }

  // Cotree: BFS over the dual restricted to non-tree edges.
  EmbeddedGraph d = g.dual();
  int nf = g.num_faces();
  tc.parent_face.assign(nf, -1);
  tc.parent_face_edge.assign(nf, -1);
  std::vector<std::vector<std::pair<int, int>>> dinc(nf);
  for (int e = 0; e < ne; ++e) {
    if (tc.edge_class[e] == 0) continue;
    auto [f1, f2] = d.edge_ends[e];
    if (f1 == f2) continue;  // dual self-loop cannot extend a tree
    dinc[f1].push_back({e, f2});
    dinc[f2].push_back({e, f1});
  }
  for (auto& l : dinc) std::sort(l.begin(), l.end());

  std::vector<uint8_t> fseen(nf, 0);
  std::queue<int> fq;
  fq.push(0);
  fseen[0] = 1;
  while (!fq.empty()) {
    int f = fq.front();
    fq.pop();
    for (auto [e, h] : dinc[f]) {
      if (!fseen[h]) {
        fseen[h] = 1;
        tc.edge_class[e] = 1;
        tc.cotree_edges.push_back(e);
        tc.parent_face[h] = f;
        tc.parent_face_edge[h] = e;
        fq.push(h);
      }
    }
  }
  for (int f = 0; f < nf; ++f)
    require(fseen[f], "dual disconnected: cotree construction failed");

  for (int e = 0; e < ne; ++e)
    if (tc.edge_class[e] == 2) tc.leftover.push_back(e);
  require((int)tc.leftover.size() == 2 * g.genus, "leftover edge count != 2g");
  return tc;
}

Gf2Vector TreeCotree::tree_cycle(const EmbeddedGraph& g, int e) const {
  if (edge_class[e] == 0) throw std::invalid_argument("tree_cycle of a tree edge");
  Gf2Vector x(g.num_edges());
  x.flip(e);
  for (int v : {g.edge_ends[e].first, g.edge_ends[e].second}) {
    while (parent_edge[v] >= 0) {
      x.flip(parent_edge[v]);
      v = parent_vertex[v];
    }
  }
  return x;
}

Gf2Vector TreeCotree::cotree_cocycle(const EmbeddedGraph& g, int e) const {
  if (edge_class[e] != 2 && edge_class[e] != 1)
    throw std::invalid_argument("cotree_cocycle of a tree edge");
  Gf2Vector x(g.num_edges());
  x.flip(e);
  int f1 = g.face_of_dart[2 * e], f2 = g.face_of_dart[2 * e + 1];
  for (int f : {f1, f2}) {
    while (parent_face_edge[f] >= 0) {
      x.flip(parent_face_edge[f]);
      f = parent_face[f];
    }
  }
  return x;
}

// ---- intersection form via tree contraction --------------------------------

std::vector<Gf2Vector> intersection_form(const EmbeddedGraph& g, const TreeCotree& tc) {
  int nd = g.num_darts();
  std::vector<int> nxt(nd), prv(nd);
  std::vector<uint8_t> alive(nd, 1);
  for (int v = 0; v < g.num_vertices; ++v) {
    const auto& rot = g.rotation[v];
    int m = (int)rot.size();
    for (int i = 0; i < m; ++i) {
      nxt[rot[i]] = rot[(i + 1) % m];
      prv[rot[i]] = rot[(i + m - 1) % m];
    }
  }
  auto remove_dart = [&](int d) {
    nxt[prv[d]] = nxt[d];
    prv[nxt[d]] = prv[d];
    alive[d] = 0;
  };
  // Contract tree edges: splice the two vertex circles, dropping both darts.
  for (int e : tc.tree_edges) {
    int a = 2 * e, b = 2 * e + 1;
    bool a_single = nxt[a] == a, b_single = nxt[b] == b;
    if (a_single && b_single) {
      alive[a] = alive[b] = 0;
      continue;
    }
    if (a_single) {
      remove_dart(b);
      alive[a] = 0;
      continue;
    }
    if (b_single) {
      remove_dart(a);
      alive[b] = 0;
      continue;
    }
    int pa = prv[a], na = nxt[a], pb = prv[b], nb = nxt[b];
    nxt[pa] = nb;
    prv[nb] = pa;
    nxt[pb] = na;
    prv[na] = pb;
    alive[a] = alive[b] = 0;
  }
  for (int e : tc.cotree_edges) {
    remove_dart(2 * e);
    remove_dart(2 * e + 1);
  }

  int k = (int)tc.leftover.size();
  std::vector<Gf2Vector> omega(k, Gf2Vector(k));
  if (k == 0) return omega;

  // Read the single remaining circle.
  int start = -1;
  for (int d = 0; d < nd; ++d)
    if (alive[d]) {
      start = d;
      break;
    }
  std::vector<int> word;
  for (int d = start;;) {
    word.push_back(d);
    d = nxt[d];
    if (d == start) break;
  }
  if ((int)word.size() != 2 * k)
    throw std::logic_error("one-vertex reduction left an unexpected dart count");

  std::vector<int> pos1(k, -1), pos2(k, -1);
  std::vector<int> which(g.num_edges(), -1);
  for (int i = 0; i < k; ++i) which[tc.leftover[i]] = i;
  for (int i = 0; i < (int)word.size(); ++i) {
    int loop = which[dart_edge(word[i])];
    if (pos1[loop] < 0)
      pos1[loop] = i;
    else
      pos2[loop] = i;
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      bool in1 = pos1[j] > pos1[i] && pos1[j] < pos2[i];
      bool in2 = pos2[j] > pos1[i] && pos2[j] < pos2[i];
      if (in1 != in2) {
        omega[i].set(j, true);
        omega[j].set(i, true);
      }
    }
  return omega;
}

// ---- punctured cylinders ----------------------------------------------------

void PuncturedCylinderSpec::validate() const {
  require(rows >= 2 && cols >= 2, "punctured cylinder needs rows >= 2, cols >= 2");
  int prev_end = 1;  // slots keep one clear column at each end
  for (const Slot& s : slots) {
    require(s.k >= 1, "slot width must be >= 1");
    require(s.y >= 0 && s.y + 1 <= rows - 1, "slot outside lattice bounds (rows)");
    require(s.x >= 1 && s.x + s.k <= cols - 1, "slot outside lattice bounds (cols)");
    require(s.x >= prev_end, "slots overlap or are stacked");
    prev_end = s.x + s.k;
  }
}

PuncturedCylinder punctured_cylinder(const PuncturedCylinderSpec& spec) {
  spec.validate();
  int n = spec.rows, m = spec.cols;
  PuncturedCylinder pc;
  pc.spec = spec;

  int n_vert = n * m, n_horiz = n * (m - 1);
  std::vector<std::pair<int, int>> edges(n_vert + n_horiz);
  EdgeLayout layout;
  layout.edges.resize(n_vert + n_horiz);

  auto vid = [&](int r, int c) { return c * n + r; };
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) {
      int e = c * n + r;
      edges[e] = {vid(r, c), vid((r + 1) % n, c)};
      layout.edges[e] = {EdgeLayout::Vertical, r, c, -1};
    }
  for (int c = 0; c < m - 1; ++c)
    for (int r = 0; r < n; ++r) {
      int e = n_vert + c * n + r;
      edges[e] = {vid(r, c), vid(r, c + 1)};
      layout.edges[e] = {EdgeLayout::Horizontal, r, c, -1};
    }
  for (int si = 0; si < (int)spec.slots.size(); ++si) {
    const Slot& s = spec.slots[si];
    for (int c = s.x; c < s.x + s.k; ++c) layout.edges[c * n + s.y].slot = si;
  }

  // Rotation (up, right, down, left); darts resolved by matching edge ends.
  auto dart_at = [&](int e, int v) {
    return edges[e].first == v ? 2 * e : 2 * e + 1;
  };
  std::vector<std::vector<int>> rot(n * m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) {
      int v = vid(r, c);
      std::vector<int>& rv = rot[v];
      rv.push_back(dart_at(c * n + (r + n - 1) % n, v));            // up
      if (c < m - 1) rv.push_back(dart_at(n_vert + c * n + r, v));  // right
      rv.push_back(dart_at(c * n + r, v));                          // down
      if (c > 0) rv.push_back(dart_at(n_vert + (c - 1) * n + r, v));  // left
    }

  // Slot surgery. The handle edge V(y, x) is re-routed the long way around
  // the cylinder cross-section: at its top endpoint the dart moves from the
  // "down" slot to just after "up". That merges the two adjacent gap squares
  // with the back strip into one face, raising the genus by exactly one.
  // The remaining footprint columns keep their topology and are only tagged
  // in the layout.
  for (const Slot& s : spec.slots) {
    int e = s.x * n + s.y;
    int v = vid(s.y, s.x);
    int d = dart_at(e, v);
    std::vector<int>& rv = rot[v];
    rv.erase(std::find(rv.begin(), rv.end(), d));
    int up = dart_at(s.x * n + (s.y + n - 1) % n, v);
    auto it = std::find(rv.begin(), rv.end(), up);
    rv.insert(it + 1, d);
  }

  pc.graph = EmbeddedGraph::build(n * m, std::move(edges), std::move(rot));
  if (pc.graph.genus != (int)spec.slots.size())
    throw std::logic_error("punctured cylinder genus != slot count");

  // LtoR: verticals of column c (row ascending), then horizontals c -> c+1.
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < n; ++r) layout.ltor_order.push_back(c * n + r);
    if (c < m - 1)
      for (int r = 0; r < n; ++r) layout.ltor_order.push_back(n_vert + c * n + r);
  }
  pc.layout = std::move(layout);
  return pc;
}

}  // namespace gsim
