#pragma once

// Finite combinatorial graphs and their isometries.
//
// A graph stores undirected edges over indexed vertices; edge e splits
// into half-edges 2e (positive direction) and 2e+1 (its reversal), so the
// reversal involution is `h ^ 1`.  Loops and parallel edges are allowed.
// Construction validates connectivity and first Betti number >= 1.
//
// Text format, line oriented:
//
//   V <vertex count>
//   E <index>: <u> <v>        (edge indices ascending from 0)
//
// An isometry is a pair of permutations (vertices, half-edges) commuting
// with reversal and endpoints; serialized as two labelled permutation
// lines `VP ...` / `HP ...`.

#include <algorithm>
#include <cstddef>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fbc/word.hpp>

namespace fbc {

class FiniteGraph {
 public:
  FiniteGraph(int vertices, std::vector<std::pair<int, int>> edges)
      : vertices_(vertices), edges_(std::move(edges)) {
    if (vertices_ <= 0) throw error("graph needs at least one vertex");
    for (const auto& [u, v] : edges_)
      if (u < 0 || u >= vertices_ || v < 0 || v >= vertices_)
        throw error("graph edge endpoint out of range");
    if (betti() < 1) throw error("graph needs first Betti number >= 1");

    std::vector<char> seen(static_cast<std::size_t>(vertices_), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
      const int at = frontier.front();
      frontier.pop();
      for (const auto& [u, v] : edges_) {
        for (int next : {u == at ? v : -1, v == at ? u : -1}) {
          if (next >= 0 && !seen[static_cast<std::size_t>(next)]) {
            seen[static_cast<std::size_t>(next)] = 1;
            ++reached;
            frontier.push(next);
          }
        }
      }
    }
    if (reached != vertices_) throw error("graph must be connected");
  }

  int vertex_count() const { return vertices_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int half_edge_count() const { return 2 * edge_count(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  static int reverse(int h) { return h ^ 1; }
  static int edge_of(int h) { return h >> 1; }

  int origin(int h) const {
    const auto& e = edges_[static_cast<std::size_t>(h >> 1)];
    return (h & 1) ? e.second : e.first;
  }
  int terminus(int h) const { return origin(h ^ 1); }

  int betti() const { return edge_count() - vertices_ + 1; }

  int valence(int v) const {
    int count = 0;
    for (int h = 0; h < half_edge_count(); ++h)
      if (origin(h) == v) ++count;
    return count;
  }

  std::vector<int> half_edges_at(int v) const {
    std::vector<int> out;
    for (int h = 0; h < half_edge_count(); ++h)
      if (origin(h) == v) out.push_back(h);
    return out;
  }

  bool operator==(const FiniteGraph& o) const {
    return vertices_ == o.vertices_ && edges_ == o.edges_;
  }
  bool operator!=(const FiniteGraph& o) const { return !(*this == o); }

  std::string to_text() const {
    std::ostringstream out;
    out << "V " << vertices_ << "\n";
    for (std::size_t e = 0; e < edges_.size(); ++e)
      out << "E " << e << ": " << edges_[e].first << " " << edges_[e].second
          << "\n";
    return out.str();
  }

  static FiniteGraph parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int vertices = -1;
    std::vector<std::pair<int, int>> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream ls(line);
      std::string tag;
      if (!(ls >> tag)) continue;  // blank line
      if (tag == "V") {
        if (vertices >= 0 || !(ls >> vertices))
          throw parse_error("bad or repeated vertex-count line", line_no);
      } else if (tag == "E") {
        int index = -1, u = -1, v = -1;
        char colon = 0;
        if (vertices < 0 || !(ls >> index >> colon >> u >> v) || colon != ':' ||
            index != static_cast<int>(edges.size()))
          throw parse_error("bad edge line", line_no);
        edges.emplace_back(u, v);
      } else {
        throw parse_error("unknown graph line tag '" + tag + "'", line_no);
      }
    }
    if (vertices < 0) throw parse_error("missing vertex-count line", line_no);
    return FiniteGraph(vertices, std::move(edges));
  }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

// Rose with m petals: one vertex, m loops.
inline FiniteGraph rose_graph(int petals) {
  return FiniteGraph(1, std::vector<std::pair<int, int>>(
                            static_cast<std::size_t>(petals), {0, 0}));
}

// Theta graph: two vertices joined by three parallel edges.
inline FiniteGraph theta_graph() {
  return FiniteGraph(2, {{0, 1}, {0, 1}, {0, 1}});
}

// Each edge gains a midpoint vertex V + e; edge e becomes edges 2e (origin
// half) and 2e+1 (terminal half), both oriented away from the endpoints'
// original labels.
inline FiniteGraph barycentric_subdivision(const FiniteGraph& x) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * x.edges().size());
  for (std::size_t e = 0; e < x.edges().size(); ++e) {
    const int mid = x.vertex_count() + static_cast<int>(e);
    edges.emplace_back(x.edges()[e].first, mid);
    edges.emplace_back(mid, x.edges()[e].second);
  }
  return FiniteGraph(x.vertex_count() + x.edge_count(), std::move(edges));
}

struct GraphIsometry {
  std::vector<int> vertex_perm;
  std::vector<int> half_edge_perm;

  bool operator==(const GraphIsometry& o) const {
    return vertex_perm == o.vertex_perm && half_edge_perm == o.half_edge_perm;
  }
  bool operator!=(const GraphIsometry& o) const { return !(*this == o); }
};

inline bool is_graph_isometry(const FiniteGraph& x, const GraphIsometry& s) {
  const int nv = x.vertex_count();
  const int nh = x.half_edge_count();
  if (static_cast<int>(s.vertex_perm.size()) != nv ||
      static_cast<int>(s.half_edge_perm.size()) != nh)
    return false;
  std::vector<char> hit_v(static_cast<std::size_t>(nv), 0);
  for (int v = 0; v < nv; ++v) {
    const int w = s.vertex_perm[static_cast<std::size_t>(v)];
    if (w < 0 || w >= nv || hit_v[static_cast<std::size_t>(w)]) return false;
    hit_v[static_cast<std::size_t>(w)] = 1;
  }
  std::vector<char> hit_h(static_cast<std::size_t>(nh), 0);
  for (int h = 0; h < nh; ++h) {
    const int f = s.half_edge_perm[static_cast<std::size_t>(h)];
    if (f < 0 || f >= nh || hit_h[static_cast<std::size_t>(f)]) return false;
    hit_h[static_cast<std::size_t>(f)] = 1;
  }
  for (int h = 0; h < nh; ++h) {
    if (s.half_edge_perm[static_cast<std::size_t>(h ^ 1)] !=
        (s.half_edge_perm[static_cast<std::size_t>(h)] ^ 1))
      return false;
    if (x.origin(s.half_edge_perm[static_cast<std::size_t>(h)]) !=
        s.vertex_perm[static_cast<std::size_t>(x.origin(h))])
      return false;
  }
  return true;
}

inline GraphIsometry identity_isometry(const FiniteGraph& x) {
  GraphIsometry s;
  s.vertex_perm.resize(static_cast<std::size_t>(x.vertex_count()));
  s.half_edge_perm.resize(static_cast<std::size_t>(x.half_edge_count()));
  for (int v = 0; v < x.vertex_count(); ++v)
    s.vertex_perm[static_cast<std::size_t>(v)] = v;
  for (int h = 0; h < x.half_edge_count(); ++h)
    s.half_edge_perm[static_cast<std::size_t>(h)] = h;
  return s;
}

// s . t: apply t first, then s.
inline GraphIsometry compose_isometry(const GraphIsometry& s,
                                      const GraphIsometry& t) {
  GraphIsometry out;
  out.vertex_perm.resize(t.vertex_perm.size());
  out.half_edge_perm.resize(t.half_edge_perm.size());
  for (std::size_t v = 0; v < t.vertex_perm.size(); ++v)
    out.vertex_perm[v] =
        s.vertex_perm[static_cast<std::size_t>(t.vertex_perm[v])];
  for (std::size_t h = 0; h < t.half_edge_perm.size(); ++h)
    out.half_edge_perm[h] =
        s.half_edge_perm[static_cast<std::size_t>(t.half_edge_perm[h])];
  return out;
}

inline GraphIsometry inverse_isometry(const GraphIsometry& s) {
  GraphIsometry out;
  out.vertex_perm.resize(s.vertex_perm.size());
  out.half_edge_perm.resize(s.half_edge_perm.size());
  for (std::size_t v = 0; v < s.vertex_perm.size(); ++v)
    out.vertex_perm[static_cast<std::size_t>(s.vertex_perm[v])] =
        static_cast<int>(v);
  for (std::size_t h = 0; h < s.half_edge_perm.size(); ++h)
    out.half_edge_perm[static_cast<std::size_t>(s.half_edge_perm[h])] =
        static_cast<int>(h);
  return out;
}

// Complete deterministic enumeration: backtracking over valence-compatible
// vertex images, then over directed edge images in index order.
inline std::vector<GraphIsometry> enumerate_graph_isometries(
    const FiniteGraph& x) {
  const int nv = x.vertex_count();
  const int ne = x.edge_count();
  std::vector<int> val(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) val[static_cast<std::size_t>(v)] = x.valence(v);

  std::vector<GraphIsometry> out;
  std::vector<int> vperm(static_cast<std::size_t>(nv), -1);
  std::vector<char> vused(static_cast<std::size_t>(nv), 0);
  std::vector<int> hperm(static_cast<std::size_t>(2 * ne), -1);
  std::vector<char> eused(static_cast<std::size_t>(ne), 0);

  auto assign_edges = [&](auto&& self, int e) -> void {
    if (e == ne) {
      out.push_back(GraphIsometry{vperm, hperm});
      return;
    }
    const int iu = vperm[static_cast<std::size_t>(x.edges()[static_cast<std::size_t>(e)].first)];
    const int iv = vperm[static_cast<std::size_t>(x.edges()[static_cast<std::size_t>(e)].second)];
    for (int f = 0; f < ne; ++f) {
      if (eused[static_cast<std::size_t>(f)]) continue;
      for (int dir : {0, 1}) {
        const int fh = 2 * f + dir;
        if (x.origin(fh) != iu || x.terminus(fh) != iv) continue;
        eused[static_cast<std::size_t>(f)] = 1;
        hperm[static_cast<std::size_t>(2 * e)] = fh;
        hperm[static_cast<std::size_t>(2 * e + 1)] = fh ^ 1;
        self(self, e + 1);
        eused[static_cast<std::size_t>(f)] = 0;
      }
    }
  };

  auto assign_vertices = [&](auto&& self, int v) -> void {
    if (v == nv) {
      assign_edges(assign_edges, 0);
      return;
    }
    for (int w = 0; w < nv; ++w) {
      if (vused[static_cast<std::size_t>(w)] ||
          val[static_cast<std::size_t>(w)] != val[static_cast<std::size_t>(v)])
        continue;
      vused[static_cast<std::size_t>(w)] = 1;
      vperm[static_cast<std::size_t>(v)] = w;
      self(self, v + 1);
      vused[static_cast<std::size_t>(w)] = 0;
    }
  };
  assign_vertices(assign_vertices, 0);
  return out;
}

inline std::string isometry_to_text(const GraphIsometry& s) {
  std::ostringstream out;
  out << "VP";
  for (int v : s.vertex_perm) out << " " << v;
  out << "\nHP";
  for (int h : s.half_edge_perm) out << " " << h;
  out << "\n";
  return out.str();
}

inline GraphIsometry parse_isometry(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  GraphIsometry s;
  bool saw_v = false, saw_h = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    std::vector<int>* target = nullptr;
    if (tag == "VP" && !saw_v) {
      target = &s.vertex_perm;
      saw_v = true;
    } else if (tag == "HP" && !saw_h) {
      target = &s.half_edge_perm;
      saw_h = true;
    } else {
      throw parse_error("bad isometry line tag '" + tag + "'", line_no);
    }
    int value = 0;
    while (ls >> value) target->push_back(value);
  }
  if (!saw_v || !saw_h)
    throw parse_error("isometry needs one VP and one HP line", line_no);
  return s;
}

}  // namespace fbc
