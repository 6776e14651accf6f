#include "gsim/homology.hpp"

#include <stdexcept>

namespace gsim {

Gf2Vector EncodingScheme::label_mask(int num_edges, uint64_t label) const {
  Gf2Vector m(num_edges);
  for (size_t k = 0; k < cocycles.size(); ++k)
    if ((label >> k) & 1) m ^= cocycles[k];
  return m;
}

std::vector<Gf2Vector> cycle_space_basis(const EmbeddedGraph& g, const TreeCotree& tc) {
  std::vector<Gf2Vector> basis;
  for (int f = 0; f + 1 < g.num_faces(); ++f) basis.push_back(g.face_boundary(f));
  for (int e : tc.leftover) basis.push_back(tc.tree_cycle(g, e));
  return basis;
}

std::vector<Gf2Vector> star_basis(const EmbeddedGraph& g) {
  std::vector<Gf2Vector> basis;
  for (int v = 0; v + 1 < g.num_vertices; ++v) basis.push_back(g.vertex_star(v));
  return basis;
}

bool is_cocycle(const EmbeddedGraph& g, const Gf2Vector& c) {
  for (int f = 0; f < g.num_faces(); ++f)
    if (g.face_boundary(f).dot(c)) return false;
  return true;
}

bool homologically_trivial(const EmbeddedGraph& g, const Gf2Vector& x) {
  if (!g.is_cycle(x)) throw std::invalid_argument("homologically_trivial: not a cycle");
  std::vector<Gf2Vector> faces;
  for (int f = 0; f + 1 < g.num_faces(); ++f) faces.push_back(g.face_boundary(f));
  return gf2_solve(faces, x).has_value();
}

Gf2Vector cocycle_class(const EmbeddedGraph& g, const TreeCotree& tc, const Gf2Vector& c) {
  int k = (int)tc.leftover.size();
  Gf2Vector f(k);
  for (int i = 0; i < k; ++i) f.set(i, tc.tree_cycle(g, tc.leftover[i]).dot(c));
  return f;
}

namespace {

// Pairing of two cocycle classes under the surface intersection form, given
// their functionals f, f' over the [T(e_i)] basis: f^T Ω^{-1} f'.
struct ClassPairing {
  std::vector<Gf2Vector> omega_inv;
  bool pair(const Gf2Vector& f1, const Gf2Vector& f2) const {
    return gf2_apply(omega_inv, f1).dot(f2);
  }
};

}  // namespace

EncodingScheme canonical_encoding_scheme(const EmbeddedGraph& g, const TreeCotree& tc,
                                         const std::vector<Gf2Vector>& seeds) {
  int twog = (int)tc.leftover.size();
  EncodingScheme scheme;
  if (twog == 0) {
    scheme.canonical = true;
    return scheme;
  }

  auto omega = intersection_form(g, tc);
  auto omega_inv = gf2_invert(omega);
  if (!omega_inv) throw std::runtime_error("degenerate intersection form");
  ClassPairing pairing{*omega_inv};

  // Candidate cocycles with independent homology classes: seeds first,
  // then the cotree cocycles of the leftover edges.
  std::vector<Gf2Vector> cand, cand_class;
  Gf2Solver indep(twog);
  auto try_add = [&](const Gf2Vector& c) {
    if ((int)cand.size() == twog) return;
    if (!is_cocycle(g, c)) throw std::runtime_error("scheme candidate is not a cocycle");
    Gf2Vector f = cocycle_class(g, tc, c);
    if (indep.insert(f)) {
      cand.push_back(c);
      cand_class.push_back(f);
    }
  };
  for (const auto& s : seeds) try_add(s);
  for (int e : tc.leftover) try_add(tc.cotree_cocycle(g, e));
  if ((int)cand.size() != twog)
    throw std::runtime_error("could not assemble 2g independent cocycles");

  // Symplectic Gram-Schmidt over GF(2) on the candidate classes. Combos are
  // tracked over candidate indices; pairings evaluated against the original
  // functionals.
  auto combo_class = [&](const Gf2Vector& combo) {
    Gf2Vector f(twog);
    for (int i = 0; i < twog; ++i)
      if (combo.get(i)) f ^= cand_class[i];
    return f;
  };
  auto combo_pair = [&](const Gf2Vector& a, const Gf2Vector& b) {
    return pairing.pair(combo_class(a), combo_class(b));
  };

  std::vector<Gf2Vector> work;
  for (int i = 0; i < twog; ++i) {
    Gf2Vector c(twog);
    c.set(i, true);
    work.push_back(c);
  }
  std::vector<Gf2Vector> paired;
  while (!work.empty()) {
    Gf2Vector a = work.front();
    work.erase(work.begin());
    int bi = -1;
    for (size_t i = 0; i < work.size(); ++i)
      if (combo_pair(a, work[i])) {
        bi = (int)i;
        break;
      }
    if (bi < 0) throw std::runtime_error("symplectic pairing failed (degenerate form)");
    Gf2Vector b = work[bi];
    work.erase(work.begin() + bi);
    for (auto& r : work) {
      if (combo_pair(r, b)) r ^= a;
      if (combo_pair(r, a)) r ^= b;
    }
    paired.push_back(a);
    paired.push_back(b);
  }

  int ne = g.num_edges();
  for (const auto& combo : paired) {
    Gf2Vector c(ne);
    for (int i = 0; i < twog; ++i)
      if (combo.get(i)) c ^= cand[i];
    scheme.cocycles.push_back(std::move(c));
  }

  scheme.cycles = dual_cycles_for_cocycles(g, tc, scheme.cocycles);
  for (int j = 0; j < twog; ++j)
    for (int k = 0; k < twog; ++k)
      if (scheme.cycles[j].dot(scheme.cocycles[k]) != (j == k))
        throw std::logic_error("encoding cycle/cocycle pairing violated");
  scheme.canonical = true;
  return scheme;
}

std::vector<Gf2Vector> dual_cycles_for_cocycles(const EmbeddedGraph& g, const TreeCotree& tc,
                                                const std::vector<Gf2Vector>& cocycles) {
  int twog = (int)tc.leftover.size();
  if ((int)cocycles.size() != twog)
    throw std::invalid_argument("expected 2g cocycles");
  // Rows of F: class functionals; C_j = ⊕_l Y_jl T(e_l) with Y = (F^T)^{-1}.
  std::vector<Gf2Vector> ft(twog, Gf2Vector(twog));
  for (int k = 0; k < twog; ++k) {
    Gf2Vector f = cocycle_class(g, tc, cocycles[k]);
    for (int l = 0; l < twog; ++l) ft[l].set(k, f.get(l));  // F^T
  }
  auto y = gf2_invert(ft);
  if (!y) throw std::runtime_error("cocycles not homologically independent");
  std::vector<Gf2Vector> cycles;
  for (int j = 0; j < twog; ++j) {
    Gf2Vector c(g.num_edges());
    for (int l = 0; l < twog; ++l)
      if ((*y)[j].get(l)) c ^= tc.tree_cycle(g, tc.leftover[l]);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

}  // namespace gsim
