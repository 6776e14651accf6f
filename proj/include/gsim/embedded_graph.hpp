#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gsim/gf2.hpp"

namespace gsim {

// Edge e owns darts 2e and 2e+1. Dart 2e is based at edge_ends[e].first,
// dart 2e+1 at edge_ends[e].second.
inline int dart_reverse(int d) { return d ^ 1; }
inline int dart_edge(int d) { return d >> 1; }

// Graph cellularly embedded on a closed orientable surface, encoded purely
// combinatorially: a rotation system (cyclic order of darts at each vertex).
// Faces and genus are derived at construction; the object is immutable after
// build().
struct EmbeddedGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edge_ends;
  std::vector<std::vector<int>> rotation;  // vertex -> cyclic dart list

  // Derived by build():
  std::vector<std::vector<int>> faces;  // face -> dart cycle
  std::vector<int> face_of_dart;
  std::vector<int> dart_vertex;   // tail vertex per dart
  std::vector<int> rotation_pos;  // index of dart within rotation[tail]
  int genus = 0;

  int num_edges() const { return (int)edge_ends.size(); }
  int num_faces() const { return (int)faces.size(); }
  int num_darts() const { return 2 * num_edges(); }
  int dart_tail(int d) const { return dart_vertex[d]; }
  int dart_head(int d) const { return dart_vertex[d ^ 1]; }
  int cycle_rank() const { return num_edges() - num_vertices + 1; }

  // Successor of d in the rotation at its tail vertex.
  int next_at_vertex(int d) const {
    const auto& rot = rotation[dart_vertex[d]];
    return rot[(rotation_pos[d] + 1) % rot.size()];
  }
  // Next dart along the face containing d.
  int face_next(int d) const { return next_at_vertex(d ^ 1); }

  Gf2Vector face_boundary(int f) const;  // mod-2 edge incidence of the face walk
  Gf2Vector vertex_star(int v) const;
  bool is_cycle(const Gf2Vector& x) const;  // even degree at every vertex

  // Validates the rotation system, traces faces, computes the genus.
  // Throws std::invalid_argument on disconnected input, dangling darts, or
  // self-loops (unless allowed, as needed for duals).
  static EmbeddedGraph build(int nv, std::vector<std::pair<int, int>> edges,
                             std::vector<std::vector<int>> rotation,
                             bool allow_self_loops = false);

  // Dual on the same surface: one vertex per face, edge ids shared with the
  // primal. May contain self-loops.
  EmbeddedGraph dual() const;
};

// Partition E = T ∪ C ∪ X with T a spanning tree, C a spanning cotree and
// |X| = 2g, built by breadth-first growth with ascending-edge-id tie-breaks.
struct TreeCotree {
  std::vector<int> tree_edges;
  std::vector<int> cotree_edges;
  std::vector<int> leftover;              // ordered ascending, size 2g
  std::vector<uint8_t> edge_class;        // 0 = tree, 1 = cotree, 2 = leftover
  std::vector<int> parent_vertex;         // tree BFS, root 0
  std::vector<int> parent_edge;           // edge to parent (-1 at root)
  std::vector<int> parent_face;           // cotree BFS in the dual, root 0
  std::vector<int> parent_face_edge;

  // T(e): the unique cycle in T ∪ {e}.
  Gf2Vector tree_cycle(const EmbeddedGraph& g, int e) const;
  // C(e): the unique cocycle in C ∪ {e}.
  Gf2Vector cotree_cocycle(const EmbeddedGraph& g, int e) const;
};

TreeCotree tree_cotree(const EmbeddedGraph& g);

// GF(2) intersection form of the surface in the homology basis
// [T(e_1)], ..., [T(e_2g)] of the leftover edges: contract the spanning tree,
// delete the cotree, and read which of the 2g remaining loops interleave
// around the single resulting vertex. Symmetric with zero diagonal.
std::vector<Gf2Vector> intersection_form(const EmbeddedGraph& g, const TreeCotree& tc);

// ---- punctured cylinder family ----------------------------------------

struct Slot {
  int x = 0;  // leftmost column whose vertical edge runs through the slot
  int y = 0;  // slot sits between rows y and y+1
  int k = 1;  // number of columns spanned
};

struct PuncturedCylinderSpec {
  int rows = 0;  // N, vertically periodic
  int cols = 0;  // M
  std::vector<Slot> slots;
  void validate() const;  // ordering, bounds, non-stacking
};

struct EdgeLayout {
  enum Kind : uint8_t { Vertical, Horizontal };
  struct Entry {
    Kind kind;
    int row;
    int col;       // verticals: own column; horizontals: left column
    int slot;      // slot index for through-slot verticals, else -1
  };
  std::vector<Entry> edges;
  std::vector<int> ltor_order;  // column by column, row by row
};

struct PuncturedCylinder {
  PuncturedCylinderSpec spec;
  EmbeddedGraph graph;
  EdgeLayout layout;
  int vertex_id(int r, int c) const { return c * spec.rows + r; }
  int vertical_edge(int r, int c) const { return c * spec.rows + r; }
  int horizontal_edge(int r, int c) const { return spec.rows * spec.cols + c * spec.rows + r; }
};

PuncturedCylinder punctured_cylinder(const PuncturedCylinderSpec& spec);

}  // namespace gsim
