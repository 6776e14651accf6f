#pragma once

#include <optional>
#include <vector>

#include "gsim/embedded_graph.hpp"
#include "gsim/gf2.hpp"

namespace gsim {

// Encoding cocycles C'_1..C'_2g and paired cycles C_1..C_2g for a surface
// code. Cocycle bit k of a label refers to cocycles[k] (so C'_{2j-1} is
// cocycles[2j-2]). In a canonical scheme consecutive pairs
// (cocycles[2j-2], cocycles[2j-1]) cut the j-th handle: their homology
// classes pair symplectically and all other pairings vanish.
struct EncodingScheme {
  std::vector<Gf2Vector> cocycles;  // size 2g
  std::vector<Gf2Vector> cycles;    // size 2g, |C_j ∩ C'_k| = δ_jk (mod 2)
  bool canonical = false;

  int genus() const { return (int)cocycles.size() / 2; }
  // Z-flip mask of a 2g-bit label: xor of the cocycles selected by its bits.
  Gf2Vector label_mask(int num_edges, uint64_t label) const;
};

// Basis of the cycle space: all face boundaries but the last, plus the 2g
// tree cycles T(e_j). Size |E| - |V| + 1.
std::vector<Gf2Vector> cycle_space_basis(const EmbeddedGraph& g, const TreeCotree& tc);

// All vertex stars but the last: a basis of the trivial cocycles.
std::vector<Gf2Vector> star_basis(const EmbeddedGraph& g);

bool is_cocycle(const EmbeddedGraph& g, const Gf2Vector& c);

// x must be a cycle; true iff x is a sum of face boundaries.
bool homologically_trivial(const EmbeddedGraph& g, const Gf2Vector& x);

// Canonical scheme from the tree-cotree data. `seeds` may supply preferred
// cocycles (e.g. slot cuts) that are used, in order, before the generic
// cotree cocycles. Throws on degenerate input (never silently wrong).
EncodingScheme canonical_encoding_scheme(const EmbeddedGraph& g, const TreeCotree& tc,
                                         const std::vector<Gf2Vector>& seeds = {});

// Encoding cycles for externally supplied independent cocycles, via the GF(2)
// inversion of their expansion over the cotree cocycles. Throws if the
// cocycles are not homologically independent (singular system).
std::vector<Gf2Vector> dual_cycles_for_cocycles(const EmbeddedGraph& g, const TreeCotree& tc,
                                                const std::vector<Gf2Vector>& cocycles);

// Homology-class functional of a cocycle: bit i is ⟨T(e_i), c⟩.
Gf2Vector cocycle_class(const EmbeddedGraph& g, const TreeCotree& tc, const Gf2Vector& c);

}  // namespace gsim
