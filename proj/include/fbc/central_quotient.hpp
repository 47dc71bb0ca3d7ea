#pragma once

// The quotient Q = T/⟨x⟩ of a suspension by its central direction
// x = t^k f0, for monodromies of outer order k > 1. Cosets have the unique
// normal form (r, f) with r ∈ [0, k): t^a f ≡ t^{a+nk}·f0^n·f, so the
// residue is reduced by absorbing f0-powers into the fibre on the left.
// Q is virtually free (F_m has index k); conjugacy questions lift to a
// single twisted-conjugacy instance in T because residues pin the central
// power to zero.

#include <optional>
#include <string>
#include <vector>

#include "conjugacy.hpp"
#include "mapping_torus.hpp"

namespace fbc {

struct QElement {
  int residue = 0;  // in [0, k)
  Word fibre;
  bool operator==(const QElement& o) const {
    return residue == o.residue && fibre == o.fibre;
  }
  bool operator!=(const QElement& o) const { return !(*this == o); }
};

inline std::string to_string(const QElement& q) {
  return "[t^" + std::to_string(q.residue) + " " + to_string(q.fibre) + "]";
}

struct QConjugacyVerdict {
  enum class Kind { conjugate, not_conjugate, unresolved };
  Kind kind = Kind::unresolved;
  std::optional<QElement> witness;
  std::optional<TorusConjugacyCertificate> certificate;  // residue → exponent
  unsigned long long units_used = 0;
};

struct QTorsionReport {
  std::vector<std::pair<QElement, int>> torsion;  // element, exact order
  std::size_t elements_scanned = 0;
};

class CentralQuotient {
 public:
  explicit CentralQuotient(MappingTorus torus) : torus_(std::move(torus)) {
    if (torus_.order() <= 1)
      throw error("central quotient requires outer order k > 1");
  }

  const MappingTorus& torus() const { return torus_; }
  int index() const { return torus_.order(); }  // |Q : F_m|

  QElement project(const TorusElement& x) const {
    int k = torus_.order();
    long long r = ((x.t_exp % k) + k) % k;
    long long n = (x.t_exp - r) / k;  // t^a f ≡ t^r · f0^{-n} f
    return {static_cast<int>(r), torus_.f0().power(-n) * x.fibre};
  }

  TorusElement lift(const QElement& q) const {
    return TorusElement(q.residue, q.fibre);
  }

  QElement multiply(const QElement& a, const QElement& b) const {
    return project(torus_.multiply(lift(a), lift(b)));
  }

  QElement invert(const QElement& a) const {
    return project(torus_.invert(lift(a)));
  }

  QElement conjugate_element(const QElement& a, const QElement& w) const {
    return project(torus_.conjugate(lift(a), lift(w)));
  }

  QElement identity() const { return {0, Word(torus_.rank())}; }
  QElement generator_image(int i) const {
    return {0, Word::generator(torus_.rank(), static_cast<Letter>(i))};
  }
  QElement t_bar() const { return project(torus_.t_element()); }

  // conjugacy in Q: residues are a class invariant; with equal residues the
  // canonical lifts must be conjugate in T (the central power is forced to
  // zero by residue arithmetic)
  QConjugacyVerdict conjugate(
      const QElement& a, const QElement& b,
      unsigned long long budget = 5'000'000,
      const std::vector<FiniteQuotient>* quotient_hints = nullptr) const {
    QConjugacyVerdict v;
    if (a.residue != b.residue) {
      v.kind = QConjugacyVerdict::Kind::not_conjugate;
      v.certificate = TorusConjugacyCertificate{
          TorusConjugacyCertificate::Kind::exponent, std::nullopt};
      return v;
    }
    TorusConjugacyVerdict tv =
        torus_conjugate(torus_, lift(a), lift(b), budget, quotient_hints);
    v.units_used = tv.units_used;
    switch (tv.kind) {
      case TorusConjugacyVerdict::Kind::conjugate: {
        v.kind = QConjugacyVerdict::Kind::conjugate;
        QElement w = project(*tv.witness);
        if (conjugate_element(a, w) != b)
          throw error("internal: projected conjugacy witness failed");
        v.witness = std::move(w);
        break;
      }
      case TorusConjugacyVerdict::Kind::not_conjugate:
        v.kind = QConjugacyVerdict::Kind::not_conjugate;
        v.certificate = tv.certificate;
        break;
      case TorusConjugacyVerdict::Kind::unresolved:
        v.kind = QConjugacyVerdict::Kind::unresolved;
        break;
    }
    return v;
  }

  // order of an element: finite iff e^k is the identity (the residue's
  // order divides k, and a nontrivial fibre class has infinite order)
  std::optional<int> element_order(const QElement& e) const {
    int k = torus_.order();
    QElement acc = identity();
    std::vector<QElement> powers{acc};
    for (int d = 1; d <= k; ++d) {
      acc = multiply(acc, e);
      if (acc == identity()) return d;
    }
    return std::nullopt;
  }

  // enumerate elements with fibre length ≤ bound; list torsion, and verify
  // no nontrivial element commutes with every generator (the center must
  // be trivial — a violation is reported as an error)
  QTorsionReport torsion_probe(int length_bound) const {
    QTorsionReport report;
    int m = torus_.rank();
    std::vector<QElement> gens;
    for (int i = 1; i <= m; ++i) gens.push_back(generator_image(i));
    gens.push_back(t_bar());

    std::vector<Word> words{Word(m)};
    std::size_t from = 0;
    for (int len = 1; len <= length_bound; ++len) {
      std::size_t upto = words.size();
      for (std::size_t i = from; i < upto; ++i)
        for (int g = 1; g <= m; ++g)
          for (Letter l : {static_cast<Letter>(g), static_cast<Letter>(-g)}) {
            Word w = words[i] * Word::generator(m, l);
            if (w.size() == static_cast<std::size_t>(len))
              words.push_back(std::move(w));
          }
      from = upto;
    }
    for (int r = 0; r < torus_.order(); ++r)
      for (const Word& f : words) {
        QElement e{r, f};
        if (e == identity()) continue;
        ++report.elements_scanned;
        if (auto d = element_order(e)) report.torsion.emplace_back(e, *d);
        bool central = true;
        for (const QElement& g : gens)
          if (multiply(e, g) != multiply(g, e)) {
            central = false;
            break;
          }
        if (central)
          throw error("falsification: nontrivial central element " +
                      to_string(e) + " found in the central quotient");
      }
    return report;
  }

 private:
  MappingTorus torus_;
};

}  // namespace fbc
