#pragma once

// The suspension T = F_m ⋊_φ ⟨t⟩ of a monodromy φ with finite outer order.
//
// Elements carry the normal form t^a·f with f a reduced word; the defining
// relation t⁻¹xt = φ(x) gives the multiplication law
//     (t^a f)(t^b g) = t^{a+b}·φ^b(f)·g.
// The order certificate (k, f0) with φ^k = ad_{f0⁻¹} makes every power of φ
// computable exactly: φ^{qk+r} = ad_{f0^{-q}} ∘ φ^r, and x = t^k f0
// generates the center once the fibre rank is at least 2.
//
// Element grammar (bit-exact): `t^<int> <word>`, e.g. `t^-2 abA`; a missing
// `t^<int>` prefix means t^0. Printing always includes the prefix.

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "automorphism.hpp"
#include "word.hpp"

namespace fbc {

struct TorusElement {
  long long t_exp = 0;
  Word fibre;

  TorusElement() = default;
  TorusElement(long long t, Word f) : t_exp(t), fibre(std::move(f)) {}

  bool is_identity() const { return t_exp == 0 && fibre.empty(); }
  bool operator==(const TorusElement& o) const {
    return t_exp == o.t_exp && fibre == o.fibre;
  }
  bool operator!=(const TorusElement& o) const { return !(*this == o); }
  bool operator<(const TorusElement& o) const {
    if (t_exp != o.t_exp) return t_exp < o.t_exp;
    return fibre < o.fibre;
  }
};

inline std::string to_string(const TorusElement& x) {
  return "t^" + std::to_string(x.t_exp) + " " + to_string(x.fibre);
}

inline TorusElement parse_torus_element(std::string_view text, int rank) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  long long t = 0;
  if (s.size() >= 2 && s[0] == 't' && s[1] == '^') {
    s.remove_prefix(2);
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits_from = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == digits_from)
      throw parse_error("expected an integer after 't^'");
    t = std::strtoll(std::string(s.substr(0, i)).c_str(), nullptr, 10);
    s.remove_prefix(i);
    if (s.empty()) throw parse_error("element needs a fibre word ('1' if trivial)");
    if (s.front() != ' ')
      throw parse_error("expected a space between 't^<int>' and the word");
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  }
  return TorusElement(t, Word::parse(s, rank));
}

class MappingTorus {
 public:
  // Certifies φ's finite outer order (throws if none found under the bound)
  // and freezes the certificate; φ(f0) = f0 is re-checked.
  static MappingTorus create(FreeAutomorphism phi, int bound = 64,
                             std::size_t length_ceiling = 4096) {
    auto r = outer_order(phi, bound, length_ceiling);
    if (r.status == OrderStatus::exceeded)
      throw error("monodromy image growth exceeded the ceiling at power " +
                  std::to_string(r.stopped_at) +
                  "; not certified finite-order");
    if (r.status == OrderStatus::absent)
      throw error("monodromy has no inner power up to bound " +
                  std::to_string(bound));
    return MappingTorus(std::move(phi), *r.certificate);
  }

  static MappingTorus with_certificate(FreeAutomorphism phi,
                                       OuterOrderCertificate cert) {
    if (!verify_outer_order(phi, cert))
      throw error("order certificate does not verify against the monodromy");
    return MappingTorus(std::move(phi), std::move(cert));
  }

  int rank() const { return monodromy_.rank(); }
  const FreeAutomorphism& monodromy() const { return monodromy_; }
  int order() const { return certificate_.order; }
  const Word& f0() const { return certificate_.f0; }
  const OuterOrderCertificate& certificate() const { return certificate_; }

  // φ^n for any integer n, as words: φ^{qk+r}(w) = f0^q · φ^r(w) · f0^{-q}
  Word apply_power(long long n, const Word& w) const {
    long long k = certificate_.order;
    long long q = n >= 0 ? n / k : -((-n + k - 1) / k);
    long long r = n - q * k;
    Word out = powers_[static_cast<std::size_t>(r)].apply(w);
    if (q != 0) {
      Word c = certificate_.f0.power(q);
      out = c * out * c.inverse();
    }
    return out;
  }

  // the same power as a FreeAutomorphism
  FreeAutomorphism power_automorphism(long long n) const {
    long long k = certificate_.order;
    long long q = n >= 0 ? n / k : -((-n + k - 1) / k);
    long long r = n - q * k;
    const FreeAutomorphism& base = powers_[static_cast<std::size_t>(r)];
    if (q == 0) return base;
    return compose(FreeAutomorphism::inner(certificate_.f0.power(-q)), base);
  }

  TorusElement multiply(const TorusElement& x, const TorusElement& y) const {
    return TorusElement(x.t_exp + y.t_exp,
                        apply_power(y.t_exp, x.fibre) * y.fibre);
  }

  TorusElement invert(const TorusElement& x) const {
    return TorusElement(-x.t_exp, apply_power(-x.t_exp, x.fibre.inverse()));
  }

  // w⁻¹ x w, closed form: for w = t^s h, x = t^p f:
  //   w⁻¹ x w = t^p · φ^p(h)⁻¹ · φ^s(f) · h
  TorusElement conjugate(const TorusElement& x, const TorusElement& w) const {
    return TorusElement(x.t_exp, apply_power(x.t_exp, w.fibre).inverse() *
                                     apply_power(w.t_exp, x.fibre) * w.fibre);
  }

  TorusElement power(const TorusElement& x, long long n) const {
    TorusElement acc;  // identity
    acc.fibre = Word(rank());
    TorusElement base = n >= 0 ? x : invert(x);
    long long todo = n >= 0 ? n : -n;
    for (long long i = 0; i < todo; ++i) acc = multiply(acc, base);
    return acc;
  }

  TorusElement identity_element() const {
    return TorusElement(0, Word(rank()));
  }
  TorusElement fibre_element(const Word& f) const {
    return TorusElement(0, f);
  }
  TorusElement t_element() const { return TorusElement(1, Word(rank())); }

  // x = t^k f0 generates the center when m ≥ 2; verified on the spot
  TorusElement center() const {
    if (rank() < 2)
      throw error("the center formula t^k f0 requires fibre rank >= 2");
    TorusElement x(certificate_.order, certificate_.f0);
    for (int i = 1; i <= rank(); ++i) {
      TorusElement g = fibre_element(
          Word::generator(rank(), static_cast<Letter>(i)));
      if (multiply(x, g) != multiply(g, x))
        throw error("internal: center candidate fails to commute");
    }
    TorusElement t = t_element();
    if (multiply(x, t) != multiply(t, x))
      throw error("internal: center candidate fails to commute with t");
    return x;
  }

 private:
  MappingTorus(FreeAutomorphism phi, OuterOrderCertificate cert)
      : monodromy_(std::move(phi)), certificate_(std::move(cert)) {
    if (monodromy_.apply(certificate_.f0) != certificate_.f0)
      throw error("internal: f0 is not fixed by the monodromy");
    powers_.push_back(FreeAutomorphism::identity(monodromy_.rank()));
    for (int j = 1; j < certificate_.order; ++j)
      powers_.push_back(compose(monodromy_, powers_.back()));
  }

  FreeAutomorphism monodromy_;
  OuterOrderCertificate certificate_;
  std::vector<FreeAutomorphism> powers_;  // φ^0 .. φ^{k-1}
};

// ---- sub-mapping-torus monodromy ----

struct SubTorusMonodromy {
  FreeAutomorphism psi;  // ad_{a⁻¹} ∘ φ^l, the action of t' = t^l a⁻¹
  Word b;                // ψ^{k/l} = ad_b ∘ φ^k
};

// For l | k and a in the fibre, the subgroup ⟨F_m, t^l a⁻¹⟩ is again a
// suspension with monodromy ψ = ad_{a⁻¹} ∘ φ^l. Expanding (t^l a⁻¹)^{k/l}
// yields t^k · b with b = φ^{(k/l−1)l}(a⁻¹) ··· φ^l(a⁻¹) · a⁻¹, whence
// ψ^{k/l} = ad_b ∘ φ^k; the identity is verified on all generators.
inline SubTorusMonodromy sub_torus_monodromy(const MappingTorus& T, int l,
                                             const Word& a) {
  int k = T.order();
  if (l <= 0 || k % l != 0)
    throw error("sub-torus power must divide the certified order");
  Word ai = a.inverse();
  FreeAutomorphism psi =
      compose(FreeAutomorphism::inner(ai), T.power_automorphism(l));
  int n = k / l;
  Word b = Word(T.rank());
  for (int j = n - 1; j >= 0; --j)
    b = b * T.apply_power(static_cast<long long>(j) * l, ai);
  // verify ψ^{k/l} = ad_b ∘ φ^k on every generator
  FreeAutomorphism lhs = FreeAutomorphism::identity(T.rank());
  for (int j = 0; j < n; ++j) lhs = compose(psi, lhs);
  for (int i = 1; i <= T.rank(); ++i) {
    Word x = Word::generator(T.rank(), static_cast<Letter>(i));
    if (lhs.apply(x) != conjugated(T.apply_power(k, x), b))
      throw error("internal: sub-torus identity failed");
  }
  return {std::move(psi), std::move(b)};
}

// ---- torus endomorphisms given on generators ----

struct TorusAutomorphism {
  std::vector<TorusElement> fibre_images;  // images of x_1..x_m
  TorusElement t_image;
};

inline TorusElement torus_apply_word(const MappingTorus& T,
                                     const TorusAutomorphism& psi,
                                     const Word& w) {
  TorusElement acc = T.identity_element();
  for (Letter l : w.letters()) {
    const TorusElement& im = psi.fibre_images.at(std::abs(l) - 1);
    acc = T.multiply(acc, l > 0 ? im : T.invert(im));
  }
  return acc;
}

inline TorusElement torus_apply(const MappingTorus& T,
                                const TorusAutomorphism& psi,
                                const TorusElement& x) {
  TorusElement acc = T.power(psi.t_image, x.t_exp);
  return T.multiply(acc, torus_apply_word(T, psi, x.fibre));
}

// The defining relations t⁻¹ x_i t = φ(x_i) must map to equalities.
inline bool torus_relations_hold(const MappingTorus& T,
                                 const TorusAutomorphism& psi) {
  if (static_cast<int>(psi.fibre_images.size()) != T.rank()) return false;
  TorusElement ti = T.invert(psi.t_image);
  for (int i = 1; i <= T.rank(); ++i) {
    Word x = Word::generator(T.rank(), static_cast<Letter>(i));
    TorusElement lhs = T.multiply(
        T.multiply(ti, psi.fibre_images[i - 1]), psi.t_image);
    TorusElement rhs = torus_apply_word(T, psi, T.monodromy().apply(x));
    if (lhs != rhs) return false;
  }
  return true;
}

inline TorusAutomorphism identity_torus_automorphism(const MappingTorus& T) {
  TorusAutomorphism psi;
  for (int i = 1; i <= T.rank(); ++i)
    psi.fibre_images.push_back(
        T.fibre_element(Word::generator(T.rank(), static_cast<Letter>(i))));
  psi.t_image = T.t_element();
  return psi;
}

inline TorusAutomorphism conjugation_torus_automorphism(
    const MappingTorus& T, const TorusElement& w) {
  TorusAutomorphism psi;
  for (int i = 1; i <= T.rank(); ++i)
    psi.fibre_images.push_back(T.conjugate(
        T.fibre_element(Word::generator(T.rank(), static_cast<Letter>(i))),
        w));
  psi.t_image = T.conjugate(T.t_element(), w);
  return psi;
}

// Exact innerness decision for a torus endomorphism: conjugation by t^s h
// keeps fibre generators in the fibre and sends t into t·F_m, the fibre
// restriction is ad_h ∘ φ^s, and s only matters mod k because central
// powers of x fold into h. Every candidate is then verified in full.
inline std::optional<TorusElement> torus_is_inner(
    const MappingTorus& T, const TorusAutomorphism& psi) {
  int m = T.rank();
  for (const TorusElement& im : psi.fibre_images)
    if (im.t_exp != 0) return std::nullopt;
  if (psi.t_image.t_exp != 1) return std::nullopt;

  auto verified = [&](const TorusElement& w) {
    for (int i = 1; i <= m; ++i) {
      TorusElement x =
          T.fibre_element(Word::generator(m, static_cast<Letter>(i)));
      if (T.conjugate(x, w) != psi.fibre_images[i - 1]) return false;
    }
    return T.conjugate(T.t_element(), w) == psi.t_image;
  };

  if (m == 1) {
    // abelian fibre: read h straight off the t-image equation
    // t ↦ t·φ(h)⁻¹h; with φ(a) = a^e this is t·a^{n(1-e)} for h = a^n
    Word a = Word::generator(1, 1);
    for (int s = 0; s < T.order(); ++s) {
      if (psi.fibre_images[0].fibre != T.apply_power(s, a)) continue;
      long long d = static_cast<long long>(psi.t_image.fibre.size());
      if (!psi.t_image.fibre.empty() && psi.t_image.fibre[0] < 0) d = -d;
      for (long long n : {d / 2, -d / 2, 0ll}) {
        TorusElement w(s, a.power(n));
        if (verified(w)) return w;
      }
    }
    return std::nullopt;
  }

  std::vector<Word> fibres;
  for (const TorusElement& im : psi.fibre_images) fibres.push_back(im.fibre);
  FreeAutomorphism mu = FreeAutomorphism::identity(m);
  try {
    mu = FreeAutomorphism::from_images(fibres);
  } catch (const not_an_automorphism&) {
    return std::nullopt;
  }
  for (int s = 0; s < T.order(); ++s) {
    auto h = is_inner(compose(mu, T.power_automorphism(-s)));
    if (!h) continue;
    TorusElement w(s, *h);
    if (verified(w)) return w;
  }
  return std::nullopt;
}

// ---- t-exponent precheck for tuple systems in the suspension ----

using TorusTupleSystem = std::vector<std::vector<TorusElement>>;

struct MwhPrecheckVerdict {
  bool pass = false;
  std::string reason;  // "arity" or "exponent" on failure
};

// Necessary conditions only: matching arities and matching t-exponents
// componentwise (conjugation and fibre-preserving maps fix t-exponents).
inline MwhPrecheckVerdict mwh_precheck(const TorusTupleSystem& p,
                                       const TorusTupleSystem& q) {
  if (p.size() != q.size()) return {false, "arity"};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].size() != q[i].size()) return {false, "arity"};
    for (std::size_t j = 0; j < p[i].size(); ++j)
      if (p[i][j].t_exp != q[i][j].t_exp) return {false, "exponent"};
  }
  return {true, ""};
}

}  // namespace fbc
