#pragma once

// Automorphisms of a free group F_m, given by generator images.
//
// Verification that an image tuple really is an automorphism runs Stallings
// folding on the wedge of image loops; the fold keeps per-edge expression
// words in an auxiliary alphabet, so when the graph folds down to the rose
// the expressions of the surviving loops spell out the inverse automorphism.
// Both compositions are then checked exactly, so a constructed
// FreeAutomorphism always carries a verified inverse.
//
// Composition is left-acting: apply(compose(a, b), w) = apply(a, apply(b, w)).
//
// Text format, one line per generator in alphabet order:
//   a -> ab
//   b -> b

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "word.hpp"

namespace fbc {

struct not_an_automorphism : error {
  using error::error;
};

namespace detail {

// One undirected edge of the folding graph, stored in its positive
// orientation: src --label--> dst carrying expression `expr`.
struct FoldEdge {
  int src, dst;
  Letter label;  // > 0
  Word expr;     // over the auxiliary alphabet, for the stored orientation
  bool alive = true;
};

struct FoldResult {
  bool is_automorphism = false;
  std::vector<Word> inverse_images;
};

// Directed view of edge `e`: dir=+1 follows the stored orientation.
struct Dart {
  int edge;
  int dir;
};

inline FoldResult fold_images(const std::vector<Word>& images) {
  const int m = static_cast<int>(images.size());
  FoldResult out;
  std::vector<FoldEdge> edges;
  int vertex_count = 1;  // vertex 0 is the basepoint
  const int base = 0;
  for (int i = 0; i < m; ++i) {
    const Word& u = images[i];
    if (u.empty()) return out;
    int cur = base;
    for (std::size_t p = 0; p < u.size(); ++p) {
      int next = (p + 1 == u.size()) ? base : vertex_count++;
      Word expr = p == 0 ? Word::generator(m, static_cast<Letter>(i + 1))
                         : Word(m);
      Letter l = u[p];
      if (l > 0)
        edges.push_back({cur, next, l, expr});
      else
        edges.push_back({next, cur, -l, expr.inverse()});
      cur = next;
    }
  }

  auto src_of = [&](const Dart& d) {
    return d.dir > 0 ? edges[d.edge].src : edges[d.edge].dst;
  };
  auto dst_of = [&](const Dart& d) {
    return d.dir > 0 ? edges[d.edge].dst : edges[d.edge].src;
  };
  auto label_of = [&](const Dart& d) {
    return d.dir > 0 ? edges[d.edge].label : -edges[d.edge].label;
  };
  auto expr_of = [&](const Dart& d) {
    return d.dir > 0 ? edges[d.edge].expr : edges[d.edge].expr.inverse();
  };

  // Repeatedly fold the first pair of distinct darts with equal source and
  // label. Each fold deletes one edge, so this terminates.
  for (;;) {
    Dart d1{-1, 0}, d2{-1, 0};
    {
      // find the lowest-indexed foldable pair, deterministically
      bool found = false;
      for (std::size_t a = 0; a < edges.size() && !found; ++a) {
        if (!edges[a].alive) continue;
        for (int da : {1, -1}) {
          Dart A{static_cast<int>(a), da};
          for (std::size_t b = 0; b < edges.size() && !found; ++b) {
            if (!edges[b].alive || b == a) continue;
            for (int db : {1, -1}) {
              Dart B{static_cast<int>(b), db};
              if (src_of(A) == src_of(B) && label_of(A) == label_of(B)) {
                d1 = A;
                d2 = B;
                found = true;
                break;
              }
            }
          }
          if (found) break;
        }
      }
      if (!found) break;
    }

    int w1 = dst_of(d1), w2 = dst_of(d2);
    if (w1 == w2) return out;  // parallel fold: rank drops, not injective
    if (w2 == base) {
      std::swap(d1, d2);
      std::swap(w1, w2);
    }
    // gauge change at w2 so that d2's expression can be replaced by d1's
    Word c = expr_of(d1).inverse() * expr_of(d2);
    for (std::size_t f = 0; f < edges.size(); ++f) {
      if (!edges[f].alive || static_cast<int>(f) == d2.edge) continue;
      bool at_src = edges[f].src == w2;
      bool at_dst = edges[f].dst == w2;
      if (at_src && at_dst)
        edges[f].expr = c * edges[f].expr * c.inverse();
      else if (at_src)
        edges[f].expr = c * edges[f].expr;
      else if (at_dst)
        edges[f].expr = edges[f].expr * c.inverse();
    }
    // merge w2 into w1 and delete d2's edge
    edges[d2.edge].alive = false;
    for (auto& e : edges) {
      if (!e.alive) continue;
      if (e.src == w2) e.src = w1;
      if (e.dst == w2) e.dst = w1;
    }
  }

  // The tuple is a basis iff the folded graph is the rose: every edge a loop
  // at the basepoint with each generator label appearing exactly once.
  std::vector<Word> inv(m, Word(m));
  std::vector<bool> seen(m, false);
  int alive_count = 0;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    ++alive_count;
    if (e.src != base || e.dst != base) return out;
    int idx = e.label - 1;
    if (seen[idx]) return out;
    seen[idx] = true;
    inv[idx] = e.expr;
  }
  if (alive_count != m) return out;
  out.is_automorphism = true;
  out.inverse_images = std::move(inv);
  return out;
}

}  // namespace detail

class FreeAutomorphism {
 public:
  // Verifies that `images` is a basis of F_m (m = images.size()) by Stallings
  // folding and computes the inverse; throws not_an_automorphism otherwise.
  static FreeAutomorphism from_images(std::vector<Word> images) {
    if (images.empty())
      throw not_an_automorphism("automorphism needs at least one image");
    int m = static_cast<int>(images.size());
    for (const Word& w : images)
      if (w.rank() != m)
        throw alphabet_mismatch(
            "image alphabet rank must equal the number of images");
    auto fold = detail::fold_images(images);
    if (!fold.is_automorphism)
      throw not_an_automorphism("images do not generate the free group");
    FreeAutomorphism a;
    a.rank_ = m;
    a.images_ = std::move(images);
    a.inverse_images_ = std::move(fold.inverse_images);
    a.check_inverse();
    return a;
  }

  // Trusted-fast path: both directions supplied, compositions re-checked.
  static FreeAutomorphism from_images_with_inverse(
      std::vector<Word> images, std::vector<Word> inverse_images) {
    FreeAutomorphism a;
    a.rank_ = static_cast<int>(images.size());
    if (a.rank_ == 0 || images.size() != inverse_images.size())
      throw not_an_automorphism("image tuple sizes differ");
    a.images_ = std::move(images);
    a.inverse_images_ = std::move(inverse_images);
    a.check_inverse();
    return a;
  }

  static FreeAutomorphism identity(int rank) {
    check_rank(rank);
    std::vector<Word> im;
    for (int i = 1; i <= rank; ++i)
      im.push_back(Word::generator(rank, static_cast<Letter>(i)));
    FreeAutomorphism a;
    a.rank_ = rank;
    a.images_ = im;
    a.inverse_images_ = im;
    return a;
  }

  // ad_g : w -> g^-1 w g
  static FreeAutomorphism inner(const Word& g) {
    int rank = g.rank();
    check_rank(rank);
    FreeAutomorphism a;
    a.rank_ = rank;
    Word gi = g.inverse();
    for (int i = 1; i <= rank; ++i) {
      Word x = Word::generator(rank, static_cast<Letter>(i));
      a.images_.push_back(conjugated(x, g));
      a.inverse_images_.push_back(conjugated(x, gi));
    }
    return a;
  }

  int rank() const { return rank_; }
  const Word& image(int i) const { return images_.at(i - 1); }
  const std::vector<Word>& images() const { return images_; }
  const std::vector<Word>& inverse_images() const { return inverse_images_; }

  Word apply(const Word& w) const { return substitute(images_, w); }
  Word apply_inverse(const Word& w) const {
    return substitute(inverse_images_, w);
  }

  FreeAutomorphism inverse() const {
    FreeAutomorphism a;
    a.rank_ = rank_;
    a.images_ = inverse_images_;
    a.inverse_images_ = images_;
    return a;
  }

  friend FreeAutomorphism compose(const FreeAutomorphism& a,
                                  const FreeAutomorphism& b) {
    if (a.rank_ != b.rank_)
      throw alphabet_mismatch("composition across different ranks");
    FreeAutomorphism c;
    c.rank_ = a.rank_;
    for (int i = 1; i <= a.rank_; ++i) {
      c.images_.push_back(a.apply(b.image(i)));
      c.inverse_images_.push_back(b.apply_inverse(a.inverse_images_[i - 1]));
    }
    return c;
  }

  bool is_identity() const {
    for (int i = 1; i <= rank_; ++i) {
      const Word& w = images_[i - 1];
      if (w.size() != 1 || w[0] != i) return false;
    }
    return true;
  }

  bool operator==(const FreeAutomorphism& o) const {
    return rank_ == o.rank_ && images_ == o.images_;
  }
  bool operator!=(const FreeAutomorphism& o) const { return !(*this == o); }

  std::size_t max_image_length() const {
    std::size_t n = 0;
    for (const Word& w : images_) n = std::max(n, w.size());
    return n;
  }
  std::size_t total_image_length() const {
    std::size_t n = 0;
    for (const Word& w : images_) n += w.size();
    return n;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const Word& w : images_) h = h * 1099511628211ull ^ w.hash();
    return h;
  }

  static FreeAutomorphism parse(std::string_view text);
  std::string to_text() const;

 private:
  FreeAutomorphism() : rank_(0) {}

  void check_inverse() const {
    for (int i = 1; i <= rank_; ++i) {
      Word x = Word::generator(rank_, static_cast<Letter>(i));
      if (apply(inverse_images_[i - 1]) != x ||
          apply_inverse(images_[i - 1]) != x)
        throw not_an_automorphism("inverse verification failed");
    }
  }

  Word substitute(const std::vector<Word>& imgs, const Word& w) const {
    if (w.rank() != rank_)
      throw alphabet_mismatch("word rank does not match automorphism rank");
    std::vector<Letter> raw;
    for (Letter l : w.letters()) {
      const Word& im = imgs[std::abs(l) - 1];
      if (l > 0)
        raw.insert(raw.end(), im.letters().begin(), im.letters().end());
      else
        for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
          raw.push_back(-*it);
    }
    return Word::reduce(rank_, raw);
  }

  int rank_;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

struct FreeAutomorphismHash {
  std::size_t operator()(const FreeAutomorphism& a) const { return a.hash(); }
};

// If the endomorphism defined by `images` is inner, i.e. equals ad_g for some
// g (so images[i] = g^-1 x_i g), returns g. The candidate is forced by the
// cyclic-reduction conjugator of the first image plus the power of x_1 pinned
// by the second image; the candidate is then verified on every generator.
inline std::optional<Word> solve_inner(std::span<const Word> images) {
  int m = static_cast<int>(images.size());
  if (m == 0) return std::nullopt;
  int rank = images[0].rank();
  if (rank != m) throw alphabet_mismatch("solve_inner expects rank == arity");
  Word x1 = Word::generator(m, 1);
  if (m == 1) {
    // F_1 is abelian: only the identity is inner
    if (images[0] == x1) return Word(1);
    return std::nullopt;
  }
  auto [core, c] = cyclic_reduce(images[0]);
  if (core != x1) return std::nullopt;
  // candidates are g = x1^n c^-1; pin n using the second generator
  Word v = conjugated(images[1], c);  // need x1^-n x2 x1^n == v
  long long n = 0;
  if (!(v.size() == 1 && v[0] == 2)) {
    std::size_t lead = 0, trail = 0;
    if (v.size() >= 3 && v[0] == -1) {
      while (lead < v.size() && v[lead] == -1) ++lead;
      while (trail < v.size() && v[v.size() - 1 - trail] == 1) ++trail;
      n = static_cast<long long>(lead);
    } else if (v.size() >= 3 && v[0] == 1) {
      while (lead < v.size() && v[lead] == 1) ++lead;
      while (trail < v.size() && v[v.size() - 1 - trail] == -1) ++trail;
      n = -static_cast<long long>(lead);
    } else {
      return std::nullopt;
    }
    if (lead != trail || lead + trail + 1 != v.size() ||
        v[lead] != 2)
      return std::nullopt;
  }
  Word g = x1.power(n) * c.inverse();
  for (int i = 1; i <= m; ++i) {
    Word x = Word::generator(m, static_cast<Letter>(i));
    if (conjugated(x, g) != images[i - 1]) return std::nullopt;
  }
  return g;
}

// Returns g with phi = ad_g when phi is inner.
inline std::optional<Word> is_inner(const FreeAutomorphism& phi) {
  return solve_inner(phi.images());
}

// ---- finite outer order ----

struct OuterOrderCertificate {
  int order = 0;  // least k >= 1 with phi^k inner
  Word f0;        // phi^k = ad_{f0^-1}
};

enum class OrderStatus { found, absent, exceeded };

struct OuterOrderResult {
  OrderStatus status = OrderStatus::absent;
  std::optional<OuterOrderCertificate> certificate;
  int stopped_at = 0;  // power at which the ceiling tripped (exceeded only)
};

// Least k <= bound with phi^k inner. `length_ceiling` caps intermediate image
// growth; busting it reports `exceeded` (distinct from a definite `absent`).
inline OuterOrderResult outer_order(const FreeAutomorphism& phi, int bound = 64,
                                    std::size_t length_ceiling = 4096) {
  OuterOrderResult res;
  FreeAutomorphism psi = phi;
  for (int k = 1; k <= bound; ++k) {
    if (k > 1) psi = compose(phi, psi);
    if (psi.max_image_length() > length_ceiling) {
      res.status = OrderStatus::exceeded;
      res.stopped_at = k;
      return res;
    }
    if (auto g = is_inner(psi)) {
      res.status = OrderStatus::found;
      res.certificate = OuterOrderCertificate{k, g->inverse()};
      return res;
    }
  }
  res.status = OrderStatus::absent;
  res.stopped_at = bound;
  return res;
}

// Re-checks an order certificate: phi^k = ad_{f0^-1} with k minimal.
inline bool verify_outer_order(const FreeAutomorphism& phi,
                               const OuterOrderCertificate& cert) {
  if (cert.order < 1) return false;
  FreeAutomorphism psi = phi;
  for (int k = 1; k < cert.order; ++k) {
    if (is_inner(psi)) return false;
    psi = compose(phi, psi);
  }
  Word g = cert.f0.inverse();
  for (int i = 1; i <= phi.rank(); ++i) {
    Word x = Word::generator(phi.rank(), static_cast<Letter>(i));
    if (psi.image(i) != conjugated(x, g)) return false;
  }
  return true;
}

// ---- text format ----

inline FreeAutomorphism FreeAutomorphism::parse(std::string_view text) {
  std::vector<std::string> rhs;
  std::vector<std::string> lhs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw parse_error("automorphism line needs '<generator> -> <word>'");
    std::string_view l = line.substr(0, arrow);
    std::string_view r = line.substr(arrow + 2);
    while (!l.empty() && l.back() == ' ') l.remove_suffix(1);
    while (!r.empty() && r.front() == ' ') r.remove_prefix(1);
    lhs.emplace_back(l);
    rhs.emplace_back(r);
  }
  int m = static_cast<int>(lhs.size());
  if (m == 0) throw parse_error("automorphism file has no generator lines");
  std::vector<Word> images;
  for (int i = 0; i < m; ++i) {
    std::string expect = letter_to_string(static_cast<Letter>(i + 1));
    if (lhs[i] != expect)
      throw parse_error("generator lines must cover the alphabet in order; "
                        "expected '" + expect + "', got '" + lhs[i] + "'");
    images.push_back(Word::parse(rhs[i], m));
  }
  return FreeAutomorphism::from_images(std::move(images));
}

inline std::string FreeAutomorphism::to_text() const {
  std::string out;
  for (int i = 1; i <= rank_; ++i) {
    out += letter_to_string(static_cast<Letter>(i));
    out += " -> ";
    out += fbc::to_string(images_[i - 1]);
    out += "\n";
  }
  return out;
}

}  // namespace fbc
