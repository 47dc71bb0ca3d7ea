#pragma once

// Realizing outer automorphisms by graph isometries.
//
// A marking collapses a breadth-first spanning tree of a graph with first
// Betti number m, identifying the fundamental group at the basepoint with
// F_m: the i-th basis generator traverses the i-th non-tree edge
// positively, closed up through the tree.  An isometry s then induces
// phi_c = alpha_c . s_* sending each basis loop g to c s(g) c-bar read off
// in the basis; different connecting paths c change the result by an
// inner automorphism only.
//
// The finite-order catalog enumerates reduced graphs in standard bounds
// (at most 2m-2 vertices and 3m-3 edges, every valence >= 3 except for the
// one-vertex rose), optionally adds one barycentric subdivision pass, and
// collects the induced outer classes of all isometries, deduplicated by
// out_conjugate.  realize_search answers the converse: given a certified
// finite-order class, find a catalog entry conjugate to it.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fbc/automorphism.hpp>
#include <fbc/fingerprint.hpp>
#include <fbc/graph.hpp>
#include <fbc/out_conjugacy.hpp>
#include <fbc/word.hpp>

namespace fbc {

struct Marking {
  int basepoint = 0;
  std::vector<char> in_tree;          // per edge
  std::vector<int> basis_edges;       // non-tree edges, ascending
  std::vector<int> parent_half;       // per vertex: tree half-edge into it
  std::vector<int> edge_basis_index;  // per edge: basis slot or -1
};

// Canonical marking: BFS spanning tree from vertex 0, half-edges scanned
// in index order; basis = non-tree edges ascending.
inline Marking make_marking(const FiniteGraph& x) {
  Marking m;
  m.basepoint = 0;
  m.in_tree.assign(static_cast<std::size_t>(x.edge_count()), 0);
  m.parent_half.assign(static_cast<std::size_t>(x.vertex_count()), -1);
  std::vector<char> seen(static_cast<std::size_t>(x.vertex_count()), 0);
  seen[0] = 1;
  std::vector<int> frontier{0};
  for (std::size_t at = 0; at < frontier.size(); ++at) {
    const int v = frontier[at];
    for (int h = 0; h < x.half_edge_count(); ++h) {
      if (x.origin(h) != v) continue;
      const int w = x.terminus(h);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      m.in_tree[static_cast<std::size_t>(FiniteGraph::edge_of(h))] = 1;
      m.parent_half[static_cast<std::size_t>(w)] = h;
      frontier.push_back(w);
    }
  }
  m.edge_basis_index.assign(static_cast<std::size_t>(x.edge_count()), -1);
  for (int e = 0; e < x.edge_count(); ++e) {
    if (m.in_tree[static_cast<std::size_t>(e)]) continue;
    m.edge_basis_index[static_cast<std::size_t>(e)] =
        static_cast<int>(m.basis_edges.size());
    m.basis_edges.push_back(e);
  }
  return m;
}

inline int marking_rank(const Marking& m) {
  return static_cast<int>(m.basis_edges.size());
}

namespace detail {

inline std::vector<int> root_path(const FiniteGraph& x, const Marking& m,
                                  int v) {
  std::vector<int> path;
  while (v != m.basepoint) {
    const int h = m.parent_half[static_cast<std::size_t>(v)];
    path.push_back(h);
    v = x.origin(h);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::vector<int> reversed_path(const std::vector<int>& path) {
  std::vector<int> out(path.rbegin(), path.rend());
  for (int& h : out) h ^= 1;
  return out;
}

// Reduced tree path from u to v.
inline std::vector<int> tree_path(const FiniteGraph& x, const Marking& m,
                                  int u, int v) {
  auto a = root_path(x, m, u);
  auto b = root_path(x, m, v);
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common])
    ++common;
  std::vector<int> out = reversed_path(
      std::vector<int>(a.begin() + static_cast<long>(common), a.end()));
  out.insert(out.end(), b.begin() + static_cast<long>(common), b.end());
  return out;
}

}  // namespace detail

inline bool is_edge_path(const FiniteGraph& x, const std::vector<int>& path,
                         int from, int to) {
  int at = from;
  for (int h : path) {
    if (h < 0 || h >= x.half_edge_count() || x.origin(h) != at) return false;
    at = x.terminus(h);
  }
  return at == to;
}

// Collapse the spanning tree: read the basis letters off a closed path at
// the basepoint.
inline Word path_word(const FiniteGraph& x, const Marking& m,
                      const std::vector<int>& path) {
  const int rank = marking_rank(m);
  std::vector<Letter> letters;
  for (int h : path) {
    const int idx =
        m.edge_basis_index[static_cast<std::size_t>(FiniteGraph::edge_of(h))];
    if (idx < 0) continue;
    letters.push_back(static_cast<Letter>((h & 1) ? -(idx + 1) : idx + 1));
  }
  return Word::reduce(rank, std::span<const Letter>(letters.data(),
                                                    letters.size()));
}

// The loop representing basis generator i: up the tree, across the basis
// edge positively, back down the tree.
inline std::vector<int> basis_loop(const FiniteGraph& x, const Marking& m,
                                   int i) {
  const int e = m.basis_edges[static_cast<std::size_t>(i)];
  auto path = detail::tree_path(x, m, m.basepoint, x.origin(2 * e));
  path.push_back(2 * e);
  auto back = detail::tree_path(x, m, x.terminus(2 * e), m.basepoint);
  path.insert(path.end(), back.begin(), back.end());
  return path;
}

// phi_c = alpha_c . s_*: each basis loop g maps to c s(g) c-bar, rewritten
// in the basis.  `c` must run from the basepoint to its image under s.
inline FreeAutomorphism induced_outer_automorphism(const FiniteGraph& x,
                                                   const GraphIsometry& s,
                                                   const Marking& m,
                                                   const std::vector<int>& c) {
  if (!is_graph_isometry(x, s)) throw error("not an isometry of this graph");
  const int image_base =
      s.vertex_perm[static_cast<std::size_t>(m.basepoint)];
  if (!is_edge_path(x, c, m.basepoint, image_base))
    throw error("invalid path from basepoint to its image");

  const auto c_bar = detail::reversed_path(c);
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(marking_rank(m)));
  for (int i = 0; i < marking_rank(m); ++i) {
    std::vector<int> path = c;
    for (int h : basis_loop(x, m, i))
      path.push_back(s.half_edge_perm[static_cast<std::size_t>(h)]);
    path.insert(path.end(), c_bar.begin(), c_bar.end());
    images.push_back(path_word(x, m, path));
  }
  return FreeAutomorphism::from_images(std::move(images));
}

// Canonical connecting path: through the spanning tree.
inline FreeAutomorphism induced_outer_automorphism(const FiniteGraph& x,
                                                   const GraphIsometry& s,
                                                   const Marking& m) {
  const int image_base =
      s.vertex_perm[static_cast<std::size_t>(m.basepoint)];
  return induced_outer_automorphism(
      x, s, m, detail::tree_path(x, m, m.basepoint, image_base));
}

// Does s -> [phi_s] respect composition?  Checks that phi_{s t} differs
// from phi_s . phi_t by an inner automorphism and returns the conjugator.
struct OmegaCheck {
  bool holds = false;
  std::optional<Word> discrepancy;  // g: phi_s . phi_t = ad_g . phi_{s t}
};

inline OmegaCheck omega_homomorphism_check(const FiniteGraph& x,
                                           const Marking& m,
                                           const GraphIsometry& s,
                                           const GraphIsometry& t) {
  const auto product =
      induced_outer_automorphism(x, compose_isometry(s, t), m);
  const auto phi_s = induced_outer_automorphism(x, s, m);
  const auto phi_t = induced_outer_automorphism(x, t, m);
  auto g = is_inner(compose(compose(phi_s, phi_t), product.inverse()));
  return OmegaCheck{g.has_value(), std::move(g)};
}

struct CatalogOptions {
  int max_vertices = 0;  // 0: default bound 2m-2 (at least 1)
  int max_edges = 0;     // 0: default bound 3m-3 (at least m)
  bool include_subdivision = true;
  int order_bound = 64;
  std::size_t growth_ceiling = 4096;
  std::size_t dedup_budget = 2500;
};

namespace detail {

// Lexicographically least relabelling of an edge multiset, for graph
// deduplication during enumeration.
inline std::vector<std::pair<int, int>> canonical_edge_list(
    int nv, std::vector<std::pair<int, int>> edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  std::vector<int> perm(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) perm[static_cast<std::size_t>(i)] = i;
  auto best = edges;
  do {
    auto relabeled = edges;
    for (auto& e : relabeled) {
      e.first = perm[static_cast<std::size_t>(e.first)];
      e.second = perm[static_cast<std::size_t>(e.second)];
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(relabeled.begin(), relabeled.end());
    if (relabeled < best) best = relabeled;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Connected multigraphs with b1 = m inside the reduced-graph bounds:
// every vertex has valence >= 3 unless the graph is the one-vertex rose.
inline std::vector<FiniteGraph> catalog_graphs(int m,
                                               const CatalogOptions& opt) {
  const int max_v = opt.max_vertices > 0 ? opt.max_vertices
                                         : std::max(1, 2 * m - 2);
  const int max_e = opt.max_edges > 0 ? opt.max_edges : std::max(m, 3 * m - 3);

  std::vector<FiniteGraph> out;
  std::set<std::vector<std::pair<int, int>>> seen;
  for (int nv = 1; nv <= max_v; ++nv) {
    const int ne = nv + m - 1;
    if (ne > max_e) continue;

    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < nv; ++u)
      for (int v = u; v < nv; ++v) pairs.emplace_back(u, v);

    std::vector<int> choice(static_cast<std::size_t>(ne), 0);
    auto emit = [&] {
      std::vector<std::pair<int, int>> edges;
      edges.reserve(static_cast<std::size_t>(ne));
      for (int c : choice) edges.push_back(pairs[static_cast<std::size_t>(c)]);

      std::vector<int> valence(static_cast<std::size_t>(nv), 0);
      for (const auto& [u, v] : edges) {
        ++valence[static_cast<std::size_t>(u)];
        ++valence[static_cast<std::size_t>(v)];
      }
      if (nv > 1)
        for (int val : valence)
          if (val < 3) return;

      auto canon = canonical_edge_list(nv, edges);
      if (!seen.insert(canon).second) return;
      try {
        out.emplace_back(nv, std::move(edges));
      } catch (const error&) {
        // disconnected; skip
      }
    };

    // Nondecreasing odometer over edge choices (multisets of pairs).
    auto recurse = [&](auto&& self, int slot, int least) -> void {
      if (slot == ne) {
        emit();
        return;
      }
      for (int c = least; c < static_cast<int>(pairs.size()); ++c) {
        choice[static_cast<std::size_t>(slot)] = c;
        self(self, slot + 1, c);
      }
    };
    recurse(recurse, 0, 0);
  }
  return out;
}

}  // namespace detail

struct CatalogEntry {
  FiniteGraph graph;
  GraphIsometry isometry;
  FreeAutomorphism representative;
  OutInvariantFingerprint fingerprint;
  int order = 1;
};

inline std::vector<CatalogEntry> finite_order_catalog(
    int m, const CatalogOptions& opt = {}) {
  check_rank(m);
  auto graphs = detail::catalog_graphs(m, opt);
  if (opt.include_subdivision) {
    const std::size_t base = graphs.size();
    for (std::size_t i = 0; i < base; ++i)
      graphs.push_back(barycentric_subdivision(graphs[i]));
  }

  const FingerprintConfig fp_cfg{opt.order_bound, opt.growth_ceiling};
  OutSearchConfig search_cfg;
  search_cfg.fingerprint = fp_cfg;

  std::vector<CatalogEntry> entries;
  for (const auto& graph : graphs) {
    const auto marking = make_marking(graph);
    for (const auto& s : enumerate_graph_isometries(graph)) {
      auto phi = induced_outer_automorphism(graph, s, marking);
      auto fp = fingerprint(phi, fp_cfg);
      if (fp.finite_order.status != OrderStatus::found)
        throw error("isometry induced a class without certified finite order");

      bool duplicate = false;
      for (const auto& entry : entries) {
        if (compare_fingerprints(entry.fingerprint, fp)) continue;
        if (out_conjugate(entry.representative, phi, opt.dedup_budget,
                          search_cfg)
                .kind == OutConjugacyVerdict::Kind::conjugate) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        const int order = fp.finite_order.value;
        entries.push_back(CatalogEntry{graph, s, std::move(phi), std::move(fp),
                                       order});
      }
    }
  }
  return entries;
}

inline std::vector<int> catalog_orders(const std::vector<CatalogEntry>& c) {
  std::set<int> orders;
  for (const auto& entry : c) orders.insert(entry.order);
  return std::vector<int>(orders.begin(), orders.end());
}

struct Realization {
  FiniteGraph graph;
  GraphIsometry isometry;
  FreeAutomorphism conjugator;  // theta with [theta phi theta^-1] = entry class
  std::size_t catalog_index = 0;
};

inline std::optional<Realization> realize_search(
    const FreeAutomorphism& phi, const std::vector<CatalogEntry>& catalog,
    std::size_t budget = 20000, const OutSearchConfig& cfg = {}) {
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    auto v = out_conjugate(phi, catalog[i].representative, budget, cfg);
    if (v.kind == OutConjugacyVerdict::Kind::conjugate)
      return Realization{catalog[i].graph, catalog[i].isometry,
                         std::move(*v.conjugator), i};
  }
  return std::nullopt;
}

inline std::optional<Realization> realize_search(
    const FreeAutomorphism& phi, const CatalogOptions& opt = {},
    std::size_t budget = 20000) {
  const auto ord = outer_order(phi, opt.order_bound, opt.growth_ceiling);
  if (ord.status != OrderStatus::found)
    throw error("realization search requires a certified finite outer order");
  OutSearchConfig cfg;
  cfg.fingerprint = FingerprintConfig{opt.order_bound, opt.growth_ceiling};
  return realize_search(phi, finite_order_catalog(phi.rank(), opt), budget,
                        cfg);
}

}  // namespace fbc
