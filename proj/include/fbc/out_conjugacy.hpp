#pragma once

// Two-sided conjugacy testing in the outer automorphism group.
//
// The yes side searches breadth-first over words in the elementary Nielsen
// generators of Aut(F_m), deduplicating candidates by their action on the
// generators up to inner normalization (so each outer class is tested
// once); a hit is certified exactly: theta phi theta^-1 equals ad_g . psi
// for a checked conjugator g.  The no side compares fingerprints, each
// field of which is a sound invariant of the outer class.  When neither
// side lands within budget the verdict is Unresolved.
//
// Enumeration is deterministic: generators are applied in a fixed order
// and the frontier is a FIFO queue, so equal inputs yield equal verdicts.

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <fbc/automorphism.hpp>
#include <fbc/fingerprint.hpp>
#include <fbc/mapping_torus.hpp>
#include <fbc/whitehead.hpp>
#include <fbc/word.hpp>

namespace fbc {

// Elementary Nielsen automorphisms of F_m: generator transpositions,
// generator inversions, and all one-sided transvections x_i -> x_j^e x_i,
// x_i -> x_i x_j^e (i != j, e = +-1).  The set is closed under inverses,
// making the breadth-first search symmetric.
inline std::vector<FreeAutomorphism> nielsen_generators(int rank) {
  check_rank(rank);
  std::vector<FreeAutomorphism> gens;
  auto base = [&] {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(rank));
    for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(rank, i));
    return images;
  };
  for (int i = 1; i <= rank; ++i) {
    for (int j = i + 1; j <= rank; ++j) {
      auto images = base();
      std::swap(images[static_cast<std::size_t>(i - 1)],
                images[static_cast<std::size_t>(j - 1)]);
      gens.push_back(FreeAutomorphism::from_images(std::move(images)));
    }
  }
  for (int i = 1; i <= rank; ++i) {
    auto images = base();
    images[static_cast<std::size_t>(i - 1)] = Word::generator(rank, -i);
    gens.push_back(FreeAutomorphism::from_images(std::move(images)));
  }
  for (int i = 1; i <= rank; ++i) {
    for (int j = 1; j <= rank; ++j) {
      if (i == j) continue;
      for (int e : {1, -1}) {
        const Word xi = Word::generator(rank, i);
        const Word xj = Word::generator(rank, e * j);
        auto left = base();
        left[static_cast<std::size_t>(i - 1)] = xj * xi;
        gens.push_back(FreeAutomorphism::from_images(std::move(left)));
        auto right = base();
        right[static_cast<std::size_t>(i - 1)] = xi * xj;
        gens.push_back(FreeAutomorphism::from_images(std::move(right)));
      }
    }
  }
  return gens;
}

struct OutConjugacyVerdict {
  enum class Kind { conjugate, distinguished, unresolved };
  Kind kind = Kind::unresolved;
  std::optional<FreeAutomorphism> conjugator;  // theta
  std::optional<Word> inner_part;  // g with theta phi theta^-1 = ad_g . psi
  std::string distinguished_field;
  std::size_t units_used = 0;
};

struct OutSearchConfig {
  FingerprintConfig fingerprint;
  // Candidates whose images jointly exceed this many letters are not
  // enqueued; keeps the frontier from exploding on long transvection
  // stacks while leaving small finite-order searches untouched.
  std::size_t max_image_total = 96;
};

namespace detail {

inline std::string tuple_key(const std::vector<Word>& tuple) {
  std::string key;
  for (const auto& w : tuple) {
    key += to_string(w);
    key += '|';
  }
  return key;
}

// Breadth-first search over Aut(F_m) shared by the outer and exact tests.
// `match` inspects delta = theta phi theta^-1 and returns the inner part
// when theta certifies the conjugacy; `key` controls deduplication.
template <typename Match, typename Key>
OutConjugacyVerdict conjugacy_search(const FreeAutomorphism& phi,
                                     std::size_t budget,
                                     const OutSearchConfig& cfg, Match match,
                                     Key key) {
  OutConjugacyVerdict verdict;
  const auto gens = nielsen_generators(phi.rank());
  std::deque<FreeAutomorphism> frontier;
  std::unordered_set<std::string> seen;
  frontier.push_back(FreeAutomorphism::identity(phi.rank()));
  seen.insert(key(frontier.front()));

  while (!frontier.empty() && verdict.units_used < budget) {
    const FreeAutomorphism theta = frontier.front();
    frontier.pop_front();
    ++verdict.units_used;

    const FreeAutomorphism delta =
        compose(compose(theta, phi), theta.inverse());
    if (auto g = match(delta)) {
      verdict.kind = OutConjugacyVerdict::Kind::conjugate;
      verdict.conjugator = theta;
      verdict.inner_part = std::move(*g);
      return verdict;
    }

    for (const auto& n : gens) {
      FreeAutomorphism next = compose(n, theta);
      if (next.total_image_length() > cfg.max_image_total) continue;
      if (seen.insert(key(next)).second) frontier.push_back(std::move(next));
    }
  }
  verdict.kind = OutConjugacyVerdict::Kind::unresolved;
  return verdict;
}

}  // namespace detail

// Decide whether [phi] and [psi] are conjugate in the outer automorphism
// group.  Conjugate(theta) comes with the exactly verified identity
// theta phi theta^-1 = ad_g . psi; Distinguished names a fingerprint
// field separating the classes; otherwise Unresolved once `budget`
// candidate conjugators have been tested.
inline OutConjugacyVerdict out_conjugate(const FreeAutomorphism& phi,
                                         const FreeAutomorphism& psi,
                                         std::size_t budget = 20000,
                                         const OutSearchConfig& cfg = {}) {
  if (phi.rank() != psi.rank())
    throw alphabet_mismatch("outer conjugacy across different ranks");

  if (auto field = compare_fingerprints(fingerprint(phi, cfg.fingerprint),
                                        fingerprint(psi, cfg.fingerprint))) {
    OutConjugacyVerdict verdict;
    verdict.kind = OutConjugacyVerdict::Kind::distinguished;
    verdict.distinguished_field = *field;
    return verdict;
  }

  const FreeAutomorphism psi_inv = psi.inverse();
  auto verdict = detail::conjugacy_search(
      phi, budget, cfg,
      [&](const FreeAutomorphism& delta) {
        return is_inner(compose(delta, psi_inv));
      },
      [&](const FreeAutomorphism& theta) {
        return detail::tuple_key(detail::canonical_inner(theta.images(),
                                                         theta.rank()));
      });

  if (verdict.kind == OutConjugacyVerdict::Kind::conjugate) {
    const FreeAutomorphism delta =
        compose(compose(*verdict.conjugator, phi), verdict.conjugator->inverse());
    if (delta != compose(FreeAutomorphism::inner(*verdict.inner_part), psi))
      throw error("internal: outer conjugacy certificate failed to verify");
  }
  return verdict;
}

// Exact conjugacy in Aut(F_m): theta phi theta^-1 = psi on the nose.  The
// no side still compares fingerprints (exact conjugacy implies outer
// conjugacy, so an outer invariant separating the classes is decisive).
inline OutConjugacyVerdict aut_conjugate(const FreeAutomorphism& phi,
                                         const FreeAutomorphism& psi,
                                         std::size_t budget = 20000,
                                         const OutSearchConfig& cfg = {}) {
  if (phi.rank() != psi.rank())
    throw alphabet_mismatch("automorphism conjugacy across different ranks");

  if (auto field = compare_fingerprints(fingerprint(phi, cfg.fingerprint),
                                        fingerprint(psi, cfg.fingerprint))) {
    OutConjugacyVerdict verdict;
    verdict.kind = OutConjugacyVerdict::Kind::distinguished;
    verdict.distinguished_field = *field;
    return verdict;
  }

  auto verdict = detail::conjugacy_search(
      phi, budget, cfg,
      [&](const FreeAutomorphism& delta) -> std::optional<Word> {
        if (delta == psi) return Word(psi.rank());
        return std::nullopt;
      },
      [&](const FreeAutomorphism& theta) {
        return detail::tuple_key(theta.images());
      });

  if (verdict.kind == OutConjugacyVerdict::Kind::conjugate) {
    const FreeAutomorphism delta =
        compose(compose(*verdict.conjugator, phi), verdict.conjugator->inverse());
    if (delta != psi)
      throw error("internal: exact conjugacy certificate failed to verify");
  }
  return verdict;
}

// Isomorphism test for suspensions along the monodromy: equal fibre ranks,
// then exact Aut(F_m)-conjugacy of the monodromies (the conjugator must
// intertwine them on the nose, not merely up to inner).
inline OutConjugacyVerdict fo_isomorphic(const MappingTorus& t1,
                                         const MappingTorus& t2,
                                         std::size_t budget = 20000,
                                         const OutSearchConfig& cfg = {}) {
  if (t1.rank() != t2.rank()) {
    OutConjugacyVerdict verdict;
    verdict.kind = OutConjugacyVerdict::Kind::distinguished;
    verdict.distinguished_field =
        "rank " + std::to_string(t1.rank()) + " != " + std::to_string(t2.rank());
    return verdict;
  }
  return aut_conjugate(t1.monodromy(), t2.monodromy(), budget, cfg);
}

}  // namespace fbc
