#pragma once

// Finite quotients of a suspension T = F_m ⋊_φ ⟨t⟩ and torsion-separating
// congruence data:
//   * FiniteQuotient — a verified surjection T → G given by generator images;
//   * a deterministic quotient enumerator (direct search over a built-in
//     group library, plus composites G_f ⋊_ω Z/L from finite fibre
//     quotients intertwining the monodromy);
//   * the explicit Z×Z → Z/4 witness with the inversion automorphism;
//   * exact arithmetic in T/⟨x³⟩ for the central direction x = t^k f0;
//   * detection of center-inverting torus automorphisms and a separation
//     checker certifying that supplied finite-order outer automorphisms
//     stay non-inner in some finite quotient.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "finite_group.hpp"
#include "mapping_torus.hpp"

namespace fbc {

// ---- finite quotients of T ----

struct FiniteQuotient {
  FiniteGroupTable target;
  std::vector<int> fibre_images;  // images of x_1..x_m
  int t_image = 0;
  std::string note;  // provenance within the deterministic enumeration
};

inline int quotient_eval(const FiniteQuotient& q, const TorusElement& x) {
  return q.target.product(q.target.power(q.t_image, x.t_exp),
                          q.target.eval_word(x.fibre, q.fibre_images));
}

inline bool quotient_in_kernel(const FiniteQuotient& q,
                               const TorusElement& x) {
  return quotient_eval(q, x) == q.target.identity();
}

// relations τ⁻¹ g_i τ = images(φ(x_i)) plus surjectivity by closure
inline bool verify_quotient(const MappingTorus& T, const FiniteQuotient& q) {
  if (static_cast<int>(q.fibre_images.size()) != T.rank()) return false;
  for (int i = 1; i <= T.rank(); ++i) {
    Word x = Word::generator(T.rank(), static_cast<Letter>(i));
    int lhs = q.target.conjugate(q.fibre_images[i - 1], q.t_image);
    int rhs = q.target.eval_word(T.monodromy().apply(x), q.fibre_images);
    if (lhs != rhs) return false;
  }
  std::vector<int> gens = q.fibre_images;
  gens.push_back(q.t_image);
  return q.target.generates(gens);
}

namespace detail {

// deterministic element sample used for heuristic kernel identification
inline std::vector<TorusElement> kernel_sample(int rank) {
  std::vector<TorusElement> out;
  std::vector<Word> words{Word(rank)};
  std::size_t from = 0;
  for (int len = 1; len <= 3; ++len) {
    std::size_t upto = words.size();
    for (std::size_t i = from; i < upto; ++i)
      for (int g = 1; g <= rank; ++g)
        for (Letter l : {static_cast<Letter>(g), static_cast<Letter>(-g)}) {
          Word w = words[i] * Word::generator(rank, l);
          if (w.size() == static_cast<std::size_t>(len)) words.push_back(w);
        }
    from = upto;
  }
  for (long long a = 0; a <= 4; ++a)
    for (const Word& w : words) out.emplace_back(a, w);
  return out;
}

inline std::vector<char> kernel_signature(
    const FiniteQuotient& q, const std::vector<TorusElement>& sample) {
  std::vector<char> sig;
  sig.reserve(sample.size());
  for (const TorusElement& x : sample)
    sig.push_back(quotient_in_kernel(q, x) ? 1 : 0);
  return sig;
}

// the built-in table library, ascending order then fixed family order
inline std::vector<FiniteGroupTable> group_library(int max_order) {
  std::vector<FiniteGroupTable> lib;
  lib.push_back(trivial_group());
  for (int n = 2; n <= max_order; ++n) {
    lib.push_back(cyclic_group(n));
    if (n % 2 == 0 && n >= 4 && n / 2 >= 2) lib.push_back(dihedral_group(n / 2));
    if (n == 4 || n == 9 || n == 16) {
      int r = n == 4 ? 2 : n == 9 ? 3 : 4;
      lib.push_back(direct_product(cyclic_group(r), cyclic_group(r)));
    }
    if (n == 6) lib.push_back(symmetric_group(3));
    if (n == 24) lib.push_back(symmetric_group(4));
  }
  std::stable_sort(lib.begin(), lib.end(),
                   [](const FiniteGroupTable& a, const FiniteGroupTable& b) {
                     return a.order() < b.order();
                   });
  return lib;
}

}  // namespace detail

// Deterministic enumeration of surjections T → G, |G| ≤ max_order.
// Phase A: direct search over the library — all generator-image tuples
// satisfying the semidirect relations and generating the target.
// Phase B: composites G_f ⋊_ω Z/L from surjections θ: F_m → G_f that admit
// an intertwiner ω with ω∘θ = θ∘φ; t ↦ (1,0), x_i ↦ (0, θ(x_i)).
// Duplicate kernels are removed by a fixed-sample signature (heuristic,
// documented: equal signatures are treated as equal kernels).
inline std::vector<FiniteQuotient> enumerate_finite_quotients(
    const MappingTorus& T, int max_order) {
  if (max_order < 1) throw error("max_order must be at least 1");
  int m = T.rank();
  std::vector<Word> phi_images;
  for (int i = 1; i <= m; ++i)
    phi_images.push_back(
        T.monodromy().apply(Word::generator(m, static_cast<Letter>(i))));

  std::vector<FiniteQuotient> out;
  std::set<std::vector<char>> kernels;
  auto sample = detail::kernel_sample(m);
  auto emit = [&](FiniteQuotient q) {
    auto sig = detail::kernel_signature(q, sample);
    if (kernels.insert(std::move(sig)).second) out.push_back(std::move(q));
  };

  auto library = detail::group_library(max_order);

  // Phase A
  for (const FiniteGroupTable& g : library) {
    int n = g.order();
    std::vector<int> tuple(m + 1, 0);  // g_1..g_m, τ
    while (true) {
      FiniteQuotient q{g, std::vector<int>(tuple.begin(), tuple.end() - 1),
                       tuple.back(), "direct:" + g.name()};
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        ok = g.conjugate(q.fibre_images[i], q.t_image) ==
             g.eval_word(phi_images[i], q.fibre_images);
      if (ok && verify_quotient(T, q)) emit(std::move(q));
      int pos = m;
      while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
      if (pos < 0) break;
      ++tuple[pos];
    }
  }

  // Phase B
  for (const FiniteGroupTable& gf : library) {
    if (gf.order() < 2 || 2 * gf.order() > max_order) continue;
    std::vector<int> theta(m, 0);
    while (true) {
      if (gf.generates(theta)) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < m; ++i)
          pairs.emplace_back(theta[i], gf.eval_word(phi_images[i], theta));
        auto omega = homomorphism_by_closure(gf, gf, pairs);
        if (omega) {
          std::vector<bool> hit(gf.order(), false);
          bool bij = true;
          for (int v : *omega) {
            if (hit[v]) bij = false;
            hit[v] = true;
          }
          if (bij) {
            int ord = automorphism_order(gf, *omega);
            for (int L = ord; L * gf.order() <= max_order; L += ord) {
              if (L < 2) continue;
              FiniteGroupTable c = cyclic_extension(gf, *omega, L);
              std::vector<int> images;
              for (int i = 0; i < m; ++i) images.push_back(theta[i]);
              FiniteQuotient q{c, images, gf.order(),
                               "composite:" + c.name()};
              if (verify_quotient(T, q)) emit(std::move(q));
            }
          }
        }
      }
      int pos = m - 1;
      while (pos >= 0 && theta[pos] == gf.order() - 1) theta[pos--] = 0;
      if (pos < 0) break;
      ++theta[pos];
    }
  }

  return out;
}

// ---- torus automorphism calculus over a fixed T ----

inline TorusAutomorphism torus_compose(const MappingTorus& T,
                                       const TorusAutomorphism& a,
                                       const TorusAutomorphism& b) {
  TorusAutomorphism out;
  for (const TorusElement& im : b.fibre_images)
    out.fibre_images.push_back(torus_apply(T, a, im));
  out.t_image = torus_apply(T, a, b.t_image);
  return out;
}

inline bool torus_auto_equal(const TorusAutomorphism& a,
                             const TorusAutomorphism& b) {
  return a.fibre_images == b.fibre_images && a.t_image == b.t_image;
}

// minimal n ≥ 1 with ψⁿ inner, up to the bound
inline std::optional<int> torus_outer_order(const MappingTorus& T,
                                            const TorusAutomorphism& psi,
                                            int bound = 16) {
  TorusAutomorphism acc = psi;
  for (int n = 1; n <= bound; ++n) {
    if (torus_is_inner(T, acc)) return n;
    acc = torus_compose(T, psi, acc);
  }
  return std::nullopt;
}

// ---- induced maps on finite targets ----

// The induced endomorphism of the target, when the kernel is preserved:
// built from generator pairs (π(g), π(ψ(g))) by graph closure; a non-
// function closure means the kernel is not preserved.
inline std::optional<std::vector<int>> induced_map(const MappingTorus& T,
                                                   const FiniteQuotient& q,
                                                   const TorusAutomorphism& psi) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= T.rank(); ++i) {
    TorusElement x =
        T.fibre_element(Word::generator(T.rank(), static_cast<Letter>(i)));
    pairs.emplace_back(quotient_eval(q, x),
                       quotient_eval(q, psi.fibre_images[i - 1]));
  }
  pairs.emplace_back(quotient_eval(q, T.t_element()),
                     quotient_eval(q, psi.t_image));
  return homomorphism_by_closure(q.target, q.target, pairs);
}

inline bool table_map_bijective(const std::vector<int>& f) {
  std::vector<bool> hit(f.size(), false);
  for (int v : f) {
    if (v < 0 || static_cast<std::size_t>(v) >= f.size() || hit[v])
      return false;
    hit[v] = true;
  }
  return true;
}

// is δ equal to conjugation by some element of G? exhaustive
inline std::optional<int> table_map_inner(const FiniteGroupTable& g,
                                          const std::vector<int>& delta) {
  for (int c = 0; c < g.order(); ++c) {
    bool match = true;
    for (int a = 0; a < g.order() && match; ++a)
      match = delta[a] == g.conjugate(a, c);
    if (match) return c;
  }
  return std::nullopt;
}

// ---- the explicit Z×Z congruence ----

struct ZCongruence {
  MappingTorus torus;           // F_1 ⋊_id ⟨t⟩ = Z×Z
  FiniteQuotient quotient;      // kill f and t^4: target Z/4
  TorusAutomorphism alpha;      // f → f, t → t^{-1}
  std::vector<int> induced_alpha;  // value table of the induced map on Z/4
};

// The quotient Z×Z → Z/4 killing f and t⁴, with the inversion automorphism
// α: f ↦ f, t ↦ t⁻¹ inducing u ↦ -u — nontrivial on the abelian target.
inline ZCongruence z_rtimes_z_congruence() {
  MappingTorus T = MappingTorus::create(FreeAutomorphism::identity(1));
  FiniteQuotient q{cyclic_group(4), {0}, 1, "explicit:C4"};
  if (!verify_quotient(T, q))
    throw error("internal: Z x Z quotient failed verification");
  TorusAutomorphism alpha = identity_torus_automorphism(T);
  alpha.t_image = T.invert(T.t_element());
  if (!torus_relations_hold(T, alpha))
    throw error("internal: inversion automorphism fails relations");
  auto induced = induced_map(T, q, alpha);
  if (!induced || (*induced)[1] != 3)
    throw error("internal: induced inversion on Z/4 did not map 1 to 3");
  return {std::move(T), std::move(q), std::move(alpha), std::move(*induced)};
}

// ---- exact arithmetic in T/⟨x³⟩ ----

// x = t^k f0 is central, so ⟨x³⟩ is central and every coset has the unique
// normal form (r, f) with r ∈ [0, 3k): (a, f) ≡ (a + 3kn, f0^{3n} f).
class CenterCubedQuotient {
 public:
  struct Element {
    int r = 0;
    Word fibre;
    bool operator==(const Element& o) const {
      return r == o.r && fibre == o.fibre;
    }
    bool operator!=(const Element& o) const { return !(*this == o); }
  };

  explicit CenterCubedQuotient(MappingTorus torus)
      : torus_(std::move(torus)), modulus_(3 * torus_.order()) {
    if (torus_.rank() < 2)
      throw error("central cubed quotient requires fibre rank >= 2");
  }

  const MappingTorus& torus() const { return torus_; }
  int modulus() const { return modulus_; }

  Element project(const TorusElement& x) const {
    long long r = ((x.t_exp % modulus_) + modulus_) % modulus_;
    long long n = (x.t_exp - r) / modulus_;  // x ≡ t^r · f0^{-3n} f
    Word f = torus_.f0().power(-3 * n) * x.fibre;
    return {static_cast<int>(r), std::move(f)};
  }

  TorusElement lift(const Element& e) const {
    return TorusElement(e.r, e.fibre);
  }

  Element multiply(const Element& a, const Element& b) const {
    return project(torus_.multiply(lift(a), lift(b)));
  }

  Element invert(const Element& a) const {
    return project(torus_.invert(lift(a)));
  }

  Element identity() const { return {0, Word(torus_.rank())}; }

  Element x_bar() const {
    return project(TorusElement(torus_.order(), torus_.f0()));
  }

  // order of an element if ≤ cap
  std::optional<int> element_order(const Element& e, int cap = 64) const {
    Element acc = e;
    for (int n = 1; n <= cap; ++n) {
      if (acc == identity()) return n;
      acc = multiply(acc, e);
    }
    return std::nullopt;
  }

 private:
  MappingTorus torus_;
  int modulus_;
};

// ---- center action of a torus automorphism ----

enum class CenterAction { fixing, inverting };

// ψ must satisfy the torus relations; its value on the central generator
// x = t^k f0 is compared against x and x⁻¹.
inline CenterAction detect_center_inverting(const MappingTorus& T,
                                            const TorusAutomorphism& psi) {
  if (!torus_relations_hold(T, psi))
    throw error("automorphism images do not satisfy the torus relations");
  TorusElement x(T.order(), T.f0());
  TorusElement image = torus_apply(T, psi, x);
  if (image == x) return CenterAction::fixing;
  if (image == T.invert(x)) return CenterAction::inverting;
  throw error("central generator mapped outside {x, x^-1}: input is not an "
              "automorphism of the suspension");
}

// ---- separation checker ----

struct SeparationEvidence {
  std::size_t quotient_index = 0;       // into the supplied list
  int outer_order = 0;                  // certified order of [ψ] in Out(T)
  std::vector<int> induced;             // value table of the induced map
};

struct CongruenceWitness {
  FiniteQuotient quotient;
  std::vector<std::pair<std::size_t, SeparationEvidence>> separated;
};

struct SeparationOutcome {
  enum class Kind { separated, not_torsion_nontrivial, unseparated };
  Kind kind = Kind::unseparated;
  std::optional<SeparationEvidence> evidence;
  std::string reason;
};

struct SeparationReport {
  std::vector<SeparationOutcome> outcomes;      // one per supplied ψ
  std::vector<CongruenceWitness> witnesses;     // grouped by quotient used
  std::vector<std::size_t> unseparated;         // indices of unseparated ψ
};

// For each supplied automorphism: certify it is torsion and noninner in
// Out(T) (bounded power-and-innerness check), then scan the quotient list
// in order for one where the induced map is well-defined, bijective, and
// not inner in the finite target. The first separating quotient in list
// order is recorded, so output is stable under recombination of the
// upstream enumeration.
inline SeparationReport verify_separation(
    const std::vector<FiniteQuotient>& quotients,
    const std::vector<TorusAutomorphism>& torsion_autos,
    const MappingTorus& T, int order_bound = 16) {
  SeparationReport report;
  for (std::size_t a = 0; a < torsion_autos.size(); ++a) {
    const TorusAutomorphism& psi = torsion_autos[a];
    SeparationOutcome outcome;
    if (!torus_relations_hold(T, psi)) {
      outcome.kind = SeparationOutcome::Kind::not_torsion_nontrivial;
      outcome.reason = "images do not satisfy the torus relations";
      report.outcomes.push_back(std::move(outcome));
      report.unseparated.push_back(a);
      continue;
    }
    if (torus_is_inner(T, psi)) {
      outcome.kind = SeparationOutcome::Kind::not_torsion_nontrivial;
      outcome.reason = "inner (trivial in the outer group)";
      report.outcomes.push_back(std::move(outcome));
      report.unseparated.push_back(a);
      continue;
    }
    auto order = torus_outer_order(T, psi, order_bound);
    if (!order) {
      outcome.kind = SeparationOutcome::Kind::not_torsion_nontrivial;
      outcome.reason = "not applicable: no finite outer order up to bound " +
                       std::to_string(order_bound);
      report.outcomes.push_back(std::move(outcome));
      report.unseparated.push_back(a);
      continue;
    }
    bool found = false;
    std::vector<std::string> skip_log;
    for (std::size_t qi = 0; qi < quotients.size() && !found; ++qi) {
      const FiniteQuotient& q = quotients[qi];
      auto delta = induced_map(T, q, psi);
      if (!delta) {
        skip_log.push_back("quotient " + std::to_string(qi) +
                           ": kernel not preserved");
        continue;
      }
      if (!table_map_bijective(*delta)) {
        skip_log.push_back("quotient " + std::to_string(qi) +
                           ": induced map not bijective");
        continue;
      }
      if (table_map_inner(q.target, *delta)) continue;  // trivial downstream
      SeparationEvidence ev{qi, *order, *delta};
      outcome.kind = SeparationOutcome::Kind::separated;
      outcome.evidence = ev;
      found = true;
      bool merged = false;
      for (CongruenceWitness& w : report.witnesses)
        if (w.quotient.note == q.note &&
            w.quotient.target.order() == q.target.order() &&
            w.quotient.fibre_images == q.fibre_images &&
            w.quotient.t_image == q.t_image) {
          w.separated.emplace_back(a, ev);
          merged = true;
          break;
        }
      if (!merged) {
        CongruenceWitness w{q, {{a, ev}}};
        report.witnesses.push_back(std::move(w));
      }
    }
    if (!found && outcome.kind == SeparationOutcome::Kind::unseparated) {
      for (const std::string& s : skip_log)
        outcome.reason += (outcome.reason.empty() ? "" : "; ") + s;
      if (outcome.reason.empty())
        outcome.reason = "no quotient in the list separates this class";
      report.unseparated.push_back(a);
    }
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace fbc
