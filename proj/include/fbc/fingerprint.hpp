#pragma once

// Conjugation invariants of outer automorphism classes.
//
// An OutInvariantFingerprint packs several cheap, independently sound
// invariants of the outer class [phi]:
//
//   * the characteristic polynomial of the abelianized action on Z^m
//     (inner automorphisms abelianize to the identity, and conjugating
//     phi conjugates the matrix, so the polynomial only depends on the
//     outer conjugacy class);
//   * the outcome of a bounded outer-order search;
//   * for each target group G in a fixed small family, the cycle type of
//     the permutation rho -> rho . phi induced on conjugacy classes of
//     homomorphisms F_m -> G (precomposition with an inner automorphism
//     conjugates the homomorphism, so the permutation is well defined on
//     classes, and replacing phi by a conjugate transports the action
//     through a bijection of classes);
//   * for each modulus N in {2, 3, 4}, the number of orbits of the
//     mod-N abelianized action on (Z/N)^m (the matrix lies in GL_m(Z),
//     hence stays invertible mod N, and conjugation matches up orbits).
//
// Two conjugate outer classes therefore agree on every field, except that
// the bounded order search can abort on image growth; such an aborted
// search is recorded as `exceeded` and never treated as distinguishing.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fbc/automorphism.hpp>
#include <fbc/finite_group.hpp>
#include <fbc/word.hpp>

namespace fbc {

using IntMatrix = std::vector<std::vector<long long>>;

// Column j holds the exponent vector of phi(x_{j+1}); abelianizing the
// action of phi on column vectors gives v(phi(w)) = A v(w).
inline IntMatrix abelianization_matrix(const FreeAutomorphism& phi) {
  const int m = phi.rank();
  IntMatrix a(m, std::vector<long long>(m, 0));
  for (int j = 0; j < m; ++j) {
    for (Letter l : phi.images()[static_cast<std::size_t>(j)].letters()) {
      const int i = std::abs(l) - 1;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
          (l > 0) ? 1 : -1;
    }
  }
  return a;
}

namespace detail {

inline IntMatrix identity_matrix(int m) {
  IntMatrix e(static_cast<std::size_t>(m), std::vector<long long>(m, 0));
  for (int i = 0; i < m; ++i)
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return e;
}

inline IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t m = a.size();
  IntMatrix c(m, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline long long matrix_trace(const IntMatrix& a) {
  long long t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

}  // namespace detail

// Monic characteristic polynomial det(xI - A), returned as the coefficient
// vector c with c[i] the coefficient of x^i (so c[m] = 1).  Computed by the
// Faddeev-LeVerrier recurrence; every division is exact over the integers.
inline std::vector<long long> characteristic_polynomial(const IntMatrix& a) {
  const int m = static_cast<int>(a.size());
  std::vector<long long> c(static_cast<std::size_t>(m) + 1, 0);
  c[static_cast<std::size_t>(m)] = 1;
  IntMatrix mk = detail::identity_matrix(m);
  for (int k = 1; k <= m; ++k) {
    if (k > 1) {
      mk = detail::matrix_product(a, mk);
      const long long shift = c[static_cast<std::size_t>(m - k + 1)];
      for (int i = 0; i < m; ++i)
        mk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += shift;
    }
    const long long t = detail::matrix_trace(detail::matrix_product(a, mk));
    if (t % k != 0)
      throw error("characteristic polynomial recurrence left a remainder");
    c[static_cast<std::size_t>(m - k)] = -t / k;
  }
  return c;
}

// Outcome of the bounded outer-order search.  `value` is the order when
// found, the searched bound when no inner power exists up to it, and the
// power at which the growth ceiling tripped when the search aborted.
struct FiniteOrderField {
  OrderStatus status = OrderStatus::absent;
  int value = 0;

  bool operator==(const FiniteOrderField& o) const {
    return status == o.status && value == o.value;
  }
  bool operator!=(const FiniteOrderField& o) const { return !(*this == o); }
};

struct QuotientActionSignature {
  std::string group;            // name of the finite target
  std::vector<int> cycle_type;  // ascending cycle lengths of the class action

  bool operator==(const QuotientActionSignature& o) const {
    return group == o.group && cycle_type == o.cycle_type;
  }
  bool operator!=(const QuotientActionSignature& o) const {
    return !(*this == o);
  }
};

namespace detail {

// Lexicographically least diagonal conjugate of a homomorphism tuple.
inline std::vector<int> canonical_hom_tuple(const FiniteGroupTable& g,
                                            const std::vector<int>& t) {
  std::vector<int> best = t;
  std::vector<int> u(t.size());
  for (int c = 0; c < g.order(); ++c) {
    for (std::size_t i = 0; i < t.size(); ++i) u[i] = g.conjugate(t[i], c);
    if (u < best) best = u;
  }
  return best;
}

}  // namespace detail

// Cycle type of the permutation induced by rho -> rho . phi on diagonal
// conjugacy classes of homomorphisms F_m -> g (homomorphisms are just
// m-tuples of images, the group being free).
inline QuotientActionSignature hom_action_signature(
    const FreeAutomorphism& phi, const FiniteGroupTable& g) {
  const int m = phi.rank();
  long long total = 1;
  for (int i = 0; i < m; ++i) {
    total *= g.order();
    if (total > 2'000'000)
      throw error("homomorphism action too large at this rank");
  }

  std::map<std::vector<int>, int> class_index;
  std::vector<std::vector<int>> reps;
  std::vector<int> tuple(static_cast<std::size_t>(m), 0);
  for (long long n = 0; n < total; ++n) {
    long long rest = n;
    for (int i = 0; i < m; ++i) {
      tuple[static_cast<std::size_t>(i)] = static_cast<int>(rest % g.order());
      rest /= g.order();
    }
    auto canon = detail::canonical_hom_tuple(g, tuple);
    if (class_index.emplace(canon, static_cast<int>(reps.size())).second)
      reps.push_back(std::move(canon));
  }

  const std::size_t classes = reps.size();
  std::vector<int> perm(classes);
  std::vector<int> image(static_cast<std::size_t>(m));
  for (std::size_t c = 0; c < classes; ++c) {
    for (int i = 0; i < m; ++i)
      image[static_cast<std::size_t>(i)] =
          g.eval_word(phi.images()[static_cast<std::size_t>(i)], reps[c]);
    perm[c] = class_index.at(detail::canonical_hom_tuple(g, image));
  }

  QuotientActionSignature sig;
  sig.group = g.name();
  std::vector<bool> seen(classes, false);
  for (std::size_t c = 0; c < classes; ++c) {
    if (seen[c]) continue;
    int len = 0;
    for (std::size_t at = c; !seen[at]; at = static_cast<std::size_t>(perm[at]))
      seen[at] = true, ++len;
    sig.cycle_type.push_back(len);
  }
  std::sort(sig.cycle_type.begin(), sig.cycle_type.end());
  return sig;
}

// Number of orbits of the mod-N abelianized action on (Z/N)^m.
inline long long orbit_count_mod(const IntMatrix& a, int n) {
  const int m = static_cast<int>(a.size());
  long long total = 1;
  for (int i = 0; i < m; ++i) {
    total *= n;
    if (total > 4'000'000)
      throw error("mod-N orbit census too large at this rank");
  }

  std::vector<int> v(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
  auto step = [&](long long code) {
    long long rest = code;
    for (int i = 0; i < m; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(rest % n);
      rest /= n;
    }
    for (int i = 0; i < m; ++i) {
      long long s = 0;
      for (int j = 0; j < m; ++j)
        s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = static_cast<int>(((s % n) + n) % n);
    }
    long long out = 0;
    for (int i = m - 1; i >= 0; --i) out = out * n + w[static_cast<std::size_t>(i)];
    return out;
  };

  std::vector<bool> seen(static_cast<std::size_t>(total), false);
  long long orbits = 0;
  for (long long start = 0; start < total; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++orbits;
    long long at = start;
    while (!seen[static_cast<std::size_t>(at)]) {
      seen[static_cast<std::size_t>(at)] = true;
      at = step(at);
    }
  }
  return orbits;
}

struct OutInvariantFingerprint {
  std::vector<long long> abelianization_char_poly;  // c[i] = coeff of x^i
  FiniteOrderField finite_order;
  std::vector<QuotientActionSignature> quotient_action_signatures;
  std::vector<std::pair<int, long long>> short_orbit_counts;  // (N, orbits)

  bool operator==(const OutInvariantFingerprint& o) const {
    return abelianization_char_poly == o.abelianization_char_poly &&
           finite_order == o.finite_order &&
           quotient_action_signatures == o.quotient_action_signatures &&
           short_orbit_counts == o.short_orbit_counts;
  }
  bool operator!=(const OutInvariantFingerprint& o) const {
    return !(*this == o);
  }
};

struct FingerprintConfig {
  int order_bound = 64;
  std::size_t growth_ceiling = 4096;
};

inline OutInvariantFingerprint fingerprint(const FreeAutomorphism& phi,
                                           const FingerprintConfig& cfg = {}) {
  OutInvariantFingerprint f;
  const IntMatrix a = abelianization_matrix(phi);
  f.abelianization_char_poly = characteristic_polynomial(a);

  const auto ord = outer_order(phi, cfg.order_bound, cfg.growth_ceiling);
  f.finite_order.status = ord.status;
  f.finite_order.value = (ord.status == OrderStatus::found)
                             ? ord.certificate->order
                             : ord.stopped_at;

  for (const auto& g : {cyclic_group(2), cyclic_group(3), cyclic_group(4),
                        symmetric_group(3)})
    f.quotient_action_signatures.push_back(hom_action_signature(phi, g));

  for (int n : {2, 3, 4}) f.short_orbit_counts.emplace_back(n, orbit_count_mod(a, n));
  return f;
}

// First decisively different field, if any.  The bounded order search is
// only decisive when both outcomes pin the true order down: two found
// orders may be compared directly, and a found order k contradicts a
// completed search that saw no inner power up to a bound >= k.  An
// `exceeded` outcome says nothing and never distinguishes.
inline std::optional<std::string> compare_fingerprints(
    const OutInvariantFingerprint& a, const OutInvariantFingerprint& b) {
  const auto& fa = a.finite_order;
  const auto& fb = b.finite_order;
  if (fa.status == OrderStatus::found && fb.status == OrderStatus::found &&
      fa.value != fb.value)
    return "finite_order";
  if (fa.status == OrderStatus::found && fb.status == OrderStatus::absent &&
      fa.value <= fb.value)
    return "finite_order";
  if (fb.status == OrderStatus::found && fa.status == OrderStatus::absent &&
      fb.value <= fa.value)
    return "finite_order";

  if (a.abelianization_char_poly != b.abelianization_char_poly)
    return "abelianization_char_poly";

  const std::size_t sigs =
      std::min(a.quotient_action_signatures.size(),
               b.quotient_action_signatures.size());
  for (std::size_t i = 0; i < sigs; ++i) {
    const auto& sa = a.quotient_action_signatures[i];
    const auto& sb = b.quotient_action_signatures[i];
    if (sa.group == sb.group && sa.cycle_type != sb.cycle_type)
      return "quotient_action_signature(" + sa.group + ")";
  }

  const std::size_t moduli =
      std::min(a.short_orbit_counts.size(), b.short_orbit_counts.size());
  for (std::size_t i = 0; i < moduli; ++i) {
    if (a.short_orbit_counts[i].first == b.short_orbit_counts[i].first &&
        a.short_orbit_counts[i].second != b.short_orbit_counts[i].second)
      return "short_orbit_counts(mod " +
             std::to_string(a.short_orbit_counts[i].first) + ")";
  }
  return std::nullopt;
}

}  // namespace fbc
