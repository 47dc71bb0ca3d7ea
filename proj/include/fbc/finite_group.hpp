#pragma once

// Small finite groups as verified multiplication tables, plus the
// constructions the congruence machinery needs: cyclic, dihedral and
// symmetric groups, direct products, and cyclic-by-automorphism extensions
// G ⋊_ω Z/L. Elements are indices 0..order-1 with 0 the identity.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "word.hpp"

namespace fbc {

class FiniteGroupTable {
 public:
  FiniteGroupTable(std::string name, int order, std::vector<int> table)
      : name_(std::move(name)), order_(order), table_(std::move(table)) {
    verify_axioms();
    inverse_.assign(order_, -1);
    for (int g = 0; g < order_; ++g)
      for (int h = 0; h < order_; ++h)
        if (product(g, h) == 0) inverse_[g] = h;
    for (int g = 0; g < order_; ++g)
      if (inverse_[g] < 0) throw error("group table: missing inverse");
  }

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int identity() const { return 0; }
  int product(int g, int h) const { return table_[g * order_ + h]; }
  int inverse(int g) const { return inverse_[g]; }
  // h⁻¹ g h, matching the conjugation convention on words
  int conjugate(int g, int h) const {
    return product(product(inverse(h), g), h);
  }

  int power(int g, long long n) const {
    int base = n >= 0 ? g : inverse(g);
    long long todo = n >= 0 ? n : -n;
    int acc = 0;
    for (long long i = 0; i < todo; ++i) acc = product(acc, base);
    return acc;
  }

  int element_order(int g) const {
    int acc = g, n = 1;
    while (acc != 0) {
      acc = product(acc, g);
      ++n;
    }
    return n;
  }

  bool is_central(int g) const {
    for (int h = 0; h < order_; ++h)
      if (product(g, h) != product(h, g)) return false;
    return true;
  }

  // evaluate a fibre word under generator images
  int eval_word(const Word& w, const std::vector<int>& images) const {
    int acc = 0;
    for (Letter l : w.letters()) {
      int g = images.at(static_cast<std::size_t>(std::abs(l)) - 1);
      acc = product(acc, l > 0 ? g : inverse(g));
    }
    return acc;
  }

  // the subgroup generated by the given elements, as a sorted list
  std::vector<int> generated_subgroup(const std::vector<int>& gens) const {
    std::set<int> seen{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int g : frontier)
        for (int s : gens)
          for (int h : {product(g, s), product(g, inverse(s))})
            if (seen.insert(h).second) next.push_back(h);
      frontier = std::move(next);
    }
    return std::vector<int>(seen.begin(), seen.end());
  }

  bool generates(const std::vector<int>& gens) const {
    return static_cast<int>(generated_subgroup(gens).size()) == order_;
  }

  std::vector<int> conjugacy_class_of(int g) const {
    std::set<int> cls;
    for (int h = 0; h < order_; ++h) cls.insert(conjugate(g, h));
    return std::vector<int>(cls.begin(), cls.end());
  }

  // classes sorted by least element
  std::vector<std::vector<int>> conjugacy_classes() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> done(order_, false);
    for (int g = 0; g < order_; ++g) {
      if (done[g]) continue;
      auto cls = conjugacy_class_of(g);
      for (int h : cls) done[h] = true;
      out.push_back(std::move(cls));
    }
    return out;
  }

  bool operator==(const FiniteGroupTable& o) const {
    return order_ == o.order_ && table_ == o.table_;
  }

 private:
  void verify_axioms() const {
    if (order_ <= 0 ||
        table_.size() != static_cast<std::size_t>(order_) * order_)
      throw error("group table: bad dimensions");
    for (int v : table_)
      if (v < 0 || v >= order_) throw error("group table: entry out of range");
    for (int g = 0; g < order_; ++g)
      if (product(0, g) != g || product(g, 0) != g)
        throw error("group table: 0 is not an identity");
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (product(product(a, b), c) != product(a, product(b, c)))
            throw error("group table: not associative");
  }

  std::string name_;
  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

inline FiniteGroupTable trivial_group() {
  return FiniteGroupTable("1", 1, {0});
}

inline FiniteGroupTable cyclic_group(int n) {
  if (n <= 0) throw error("cyclic group needs positive order");
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return FiniteGroupTable("C" + std::to_string(n), n, std::move(t));
}

// order 2n: elements r^a s^e encoded a + n*e, with s r s = r^{-1}
inline FiniteGroupTable dihedral_group(int n) {
  if (n <= 0) throw error("dihedral group needs positive n");
  int order = 2 * n;
  auto enc = [n](int a, int e) { return ((a % n + n) % n) + n * e; };
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < 2; ++e)
      for (int b = 0; b < n; ++b)
        for (int f = 0; f < 2; ++f) {
          // (r^a s^e)(r^b s^f) = r^{a + b·(-1)^e} s^{e+f}
          int exp = e ? a - b : a + b;
          t[enc(a, e) * order + enc(b, f)] = enc(exp, (e + f) % 2);
        }
  return FiniteGroupTable("D" + std::to_string(n), order, std::move(t));
}

// permutations of {0..n-1} in lexicographic rank order, identity first
inline FiniteGroupTable symmetric_group(int n) {
  if (n <= 0 || n > 5) throw error("symmetric group supported for n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) index[perms[i]] = i;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  std::vector<int> comp(n);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      // composition acting on the left: (p∘q)(x) = p(q(x))
      for (int x = 0; x < n; ++x) comp[x] = perms[i][perms[j][x]];
      t[i * order + j] = index[comp];
    }
  return FiniteGroupTable("S" + std::to_string(n), order, std::move(t));
}

// (g, h) encoded g*|B| + h
inline FiniteGroupTable direct_product(const FiniteGroupTable& a,
                                       const FiniteGroupTable& b) {
  int order = a.order() * b.order();
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  auto enc = [&](int g, int h) { return g * b.order() + h; };
  for (int g1 = 0; g1 < a.order(); ++g1)
    for (int h1 = 0; h1 < b.order(); ++h1)
      for (int g2 = 0; g2 < a.order(); ++g2)
        for (int h2 = 0; h2 < b.order(); ++h2)
          t[enc(g1, h1) * order + enc(g2, h2)] =
              enc(a.product(g1, g2), b.product(h1, h2));
  return FiniteGroupTable(a.name() + "x" + b.name(), order, std::move(t));
}

inline FiniteGroupTable klein_four_group() {
  std::vector<int> t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.push_back(i ^ j);
  return FiniteGroupTable("V4", 4, std::move(t));
}

// checks that the permutation is an automorphism of G
inline bool is_automorphism_of(const FiniteGroupTable& g,
                               const std::vector<int>& omega) {
  if (omega.size() != static_cast<std::size_t>(g.order())) return false;
  std::vector<bool> hit(g.order(), false);
  for (int v : omega) {
    if (v < 0 || v >= g.order() || hit[v]) return false;
    hit[v] = true;
  }
  if (omega[0] != 0) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (omega[g.product(a, b)] != g.product(omega[a], omega[b]))
        return false;
  return true;
}

inline int automorphism_order(const FiniteGroupTable& g,
                              const std::vector<int>& omega) {
  std::vector<int> acc(omega);
  int n = 1;
  auto is_id = [&] {
    for (int i = 0; i < g.order(); ++i)
      if (acc[i] != i) return false;
    return true;
  };
  while (!is_id()) {
    std::vector<int> next(g.order());
    for (int i = 0; i < g.order(); ++i) next[i] = omega[acc[i]];
    acc = std::move(next);
    if (++n > g.order() + 1) throw error("automorphism order runaway");
  }
  return n;
}

// G ⋊_ω Z/L where ω is an automorphism of G with ω^L = id; elements (u, g)
// encoded u*|G| + g, product (u,g)(v,h) = (u+v, ω^v(g)·h) — so the image of
// t^a·f under a ↦ (a mod L), f ↦ θ(f) is a homomorphism exactly when ω
// intertwines θ with the monodromy.
inline FiniteGroupTable cyclic_extension(const FiniteGroupTable& g,
                                         const std::vector<int>& omega,
                                         int L) {
  if (!is_automorphism_of(g, omega))
    throw error("cyclic extension: ω is not an automorphism");
  if (L <= 0 || L % automorphism_order(g, omega) != 0)
    throw error("cyclic extension: L must be a multiple of ord(ω)");
  std::vector<std::vector<int>> pow(L, std::vector<int>(g.order()));
  for (int i = 0; i < g.order(); ++i) pow[0][i] = i;
  for (int v = 1; v < L; ++v)
    for (int i = 0; i < g.order(); ++i) pow[v][i] = omega[pow[v - 1][i]];
  int order = L * g.order();
  auto enc = [&](int u, int x) { return u * g.order() + x; };
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  for (int u = 0; u < L; ++u)
    for (int x = 0; x < g.order(); ++x)
      for (int v = 0; v < L; ++v)
        for (int y = 0; y < g.order(); ++y)
          t[enc(u, x) * order + enc(v, y)] =
              enc((u + v) % L, g.product(pow[v][x], y));
  return FiniteGroupTable(g.name() + ":C" + std::to_string(L), order,
                          std::move(t));
}

// The graph-closure trick: given generator pairs (aᵢ, bᵢ) in G × H with the
// aᵢ generating G, the subgroup they generate in G × H is the graph of a
// homomorphism G → H iff its size equals |G|; returns that homomorphism's
// value table, or nullopt when the closure is not a function.
inline std::optional<std::vector<int>> homomorphism_by_closure(
    const FiniteGroupTable& g, const FiniteGroupTable& h,
    const std::vector<std::pair<int, int>>& pairs) {
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::vector<std::pair<int, int>> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<std::pair<int, int>> next;
    for (const auto& [x, y] : frontier)
      for (const auto& [a, b] : pairs) {
        std::pair<int, int> fwd{g.product(x, a), h.product(y, b)};
        std::pair<int, int> bwd{g.product(x, g.inverse(a)),
                                h.product(y, h.inverse(b))};
        for (const auto& p : {fwd, bwd})
          if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  std::vector<int> value(g.order(), -1);
  for (const auto& [x, y] : seen) {
    if (value[x] != -1) return std::nullopt;  // two images: not a function
    value[x] = y;
  }
  for (int v : value)
    if (v == -1) return std::nullopt;  // pairs did not generate all of G
  return value;
}

}  // namespace fbc
