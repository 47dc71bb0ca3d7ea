// Acceptance gate for the suspension library.
//
// Runs nine end-to-end criteria, each printing exactly one line
//
//   PASS <n> <name> (<time> ms)
//   FAIL <n> <name> (<time> ms) - <reason>
//
// and exits 0 iff every criterion passed.  Each criterion carries its own
// runtime tolerance; blowing the tolerance fails the criterion even when
// the computed values are correct.  The oracles are deliberately
// independent of the library paths they audit: a bounded brute-force
// conjugator search (criterion 4), a Nielsen-ball breadth-first search
// (criterion 5), and torsion orders of integer 2x2 matrices (criterion 6).
//
// An optional argv[1] overrides the run seed (used for the random inputs
// of criteria 8 and 9; two runs with the same seed must produce the same
// artifacts byte for byte).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fbc/automorphism.hpp"
#include "fbc/congruence.hpp"
#include "fbc/conjugacy.hpp"
#include "fbc/graph.hpp"
#include "fbc/mapping_torus.hpp"
#include "fbc/out_conjugacy.hpp"
#include "fbc/realization.hpp"
#include "fbc/whitehead.hpp"
#include "fbc/witness.hpp"
#include "fbc/word.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint32_t run_seed = 20260822u;

// ---- shared small helpers ----

// All freely reduced words of length <= max_len over rank generators,
// shortest first.
std::vector<fbc::Word> reduced_words(int rank, int max_len) {
  std::vector<fbc::Word> out{fbc::Word(rank)};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int g = 1; g <= rank; ++g) {
        for (fbc::Letter l : {static_cast<fbc::Letter>(g),
                              static_cast<fbc::Letter>(-g)}) {
          fbc::Word e = out[i] * fbc::Word::generator(rank, l);
          if (e.size() == out[i].size() + 1) out.push_back(std::move(e));
        }
      }
    }
    level_begin = level_end;
  }
  return out;
}

fbc::Word random_reduced_word(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> letter_dist(0, 2 * rank - 1);
  const int len = len_dist(rng);
  std::vector<fbc::Letter> letters;
  while (static_cast<int>(letters.size()) < len) {
    const int r = letter_dist(rng);
    const fbc::Letter l = r < rank ? static_cast<fbc::Letter>(r + 1)
                                   : static_cast<fbc::Letter>(-(r - rank + 1));
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return fbc::Word::reduce(
      rank, std::span<const fbc::Letter>(letters.data(), letters.size()));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

fbc::FreeAutomorphism make_auto(int rank,
                                const std::vector<const char*>& images) {
  std::vector<fbc::Word> ws;
  ws.reserve(images.size());
  for (const char* s : images) ws.push_back(fbc::Word::parse(s, rank));
  return fbc::FreeAutomorphism::from_images(std::move(ws));
}

// ---- criterion 1: center formula ----

std::string criterion_center() {
  std::vector<std::pair<std::string, fbc::FreeAutomorphism>> cases;
  const auto swap2 = make_auto(2, {"b", "a"});
  const auto rot4 = make_auto(2, {"b", "A"});
  cases.emplace_back("swap", swap2);
  cases.emplace_back("order-4 rotation", rot4);
  cases.emplace_back("theta rotation", make_auto(2, {"bA", "A"}));
  cases.emplace_back(
      "ad-composed swap",
      compose(fbc::FreeAutomorphism::inner(fbc::Word::parse("ab", 2)),
                   swap2));
  cases.emplace_back(
      "ad-composed rotation",
      compose(fbc::FreeAutomorphism::inner(fbc::Word::parse("a", 2)),
                   rot4));
  cases.emplace_back("3-cycle", make_auto(3, {"b", "c", "a"}));
  cases.emplace_back("rank-3 transposition", make_auto(3, {"b", "a", "c"}));

  for (const auto& [name, phi] : cases) {
    const auto t0 = Clock::now();
    const auto ord = fbc::outer_order(phi);
    if (ord.status != fbc::OrderStatus::found)
      return name + ": outer order not certified";
    const auto T = fbc::MappingTorus::create(phi);
    const fbc::TorusElement x = T.center();
    if (x.t_exp != ord.certificate->order)
      return name + ": center exponent " + std::to_string(x.t_exp) +
             " does not match certified order " +
             std::to_string(ord.certificate->order);
    if (x.fibre != T.f0())
      return name + ": center fibre differs from the order certificate";
    for (int i = 1; i <= T.rank(); ++i) {
      const fbc::TorusElement g(0, fbc::Word::generator(T.rank(), i));
      if (T.multiply(x, g) != T.multiply(g, x))
        return name + ": center fails to commute with generator " +
               std::to_string(i);
    }
    const fbc::TorusElement t = T.t_element();
    if (T.multiply(x, t) != T.multiply(t, x))
      return name + ": center fails to commute with t";
    const double ms = ms_since(t0);
    if (ms >= 1000.0)
      return name + ": took " + std::to_string(ms) + " ms (limit 1000)";
  }
  return {};
}

// ---- criterion 2: the Z x Z congruence ----

std::string criterion_zxz() {
  const auto t0 = Clock::now();
  const fbc::ZCongruence z = fbc::z_rtimes_z_congruence();
  const double ms = ms_since(t0);

  if (z.quotient.target.order() != 4) return "target is not Z/4";
  if (z.quotient.fibre_images != std::vector<int>{0})
    return "fibre generator is not killed";
  if (z.quotient.target.element_order(z.quotient.t_image) != 4)
    return "t does not generate Z/4 (kernel is bigger than <f, t^4>)";
  if (z.quotient.target.power(z.quotient.t_image, 4) != 0)
    return "t^4 is not in the kernel";
  if (z.induced_alpha != std::vector<int>{0, 3, 2, 1})
    return "induced map is not the inversion table 0 3 2 1";
  for (int u = 0; u < 4; ++u)
    if (z.induced_alpha[static_cast<std::size_t>(u)] != (4 - u) % 4)
      return "induced map is not u -> -u";
  if (z.induced_alpha == std::vector<int>{0, 1, 2, 3})
    return "induced map is trivial";
  if (ms >= 1.0)
    return "took " + std::to_string(ms) + " ms (limit 1)";
  return {};
}

// ---- criterion 3: center inversion is separated in a finite quotient ----

std::string criterion_center_inversion() {
  const auto T = fbc::MappingTorus::create(make_auto(2, {"b", "a"}));
  fbc::TorusAutomorphism psi = fbc::identity_torus_automorphism(T);
  psi.t_image = T.invert(T.t_element());

  if (fbc::detect_center_inverting(T, psi) != fbc::CenterAction::inverting)
    return "psi was not detected as center-inverting";

  const auto quotients = fbc::enumerate_finite_quotients(T, 48);
  const auto report = fbc::verify_separation(quotients, {psi}, T);
  if (report.outcomes.size() != 1) return "expected exactly one outcome";
  const auto& o = report.outcomes.front();
  if (o.kind != fbc::SeparationOutcome::Kind::separated)
    return "psi was not separated: " + o.reason;
  const auto& q = quotients[o.evidence->quotient_index];
  if (q.target.order() > 48)
    return "separating quotient has order " +
           std::to_string(q.target.order()) + " > 48";
  const std::vector<int> identity_table = [&] {
    std::vector<int> e(static_cast<std::size_t>(q.target.order()));
    std::iota(e.begin(), e.end(), 0);
    return e;
  }();
  if (o.evidence->induced == identity_table)
    return "induced map on the separating quotient is trivial";
  return {};
}

// ---- criterion 4: torus conjugacy vs brute-force oracle ----

std::string criterion_conjugacy_oracle() {
  const auto T = fbc::MappingTorus::create(make_auto(2, {"b", "a"}));
  const int k = T.order();  // 2

  // universe: |t_exp| <= 2, freely reduced fibre of length <= 3
  std::vector<fbc::TorusElement> universe;
  std::map<fbc::TorusElement, int> index;
  for (long long p = -2; p <= 2; ++p)
    for (const fbc::Word& w : reduced_words(2, 3)) {
      fbc::TorusElement e(p, w);
      index.emplace(e, static_cast<int>(universe.size()));
      universe.push_back(std::move(e));
    }

  // oracle: equivalence closure of conjugation by t^s h with |s| <= 2k and
  // |h| <= 6 (single steps already land inside the universe or outside it;
  // the closure only glues universe elements reached by such steps)
  UnionFind classes(universe.size());
  const auto conjugators = reduced_words(2, 6);
  for (int i = 0; i < static_cast<int>(universe.size()); ++i) {
    for (long long s = -2 * k; s <= 2 * k; ++s) {
      for (const fbc::Word& h : conjugators) {
        const fbc::TorusElement y =
            T.conjugate(universe[static_cast<std::size_t>(i)],
                        fbc::TorusElement(s, h));
        const auto it = index.find(y);
        if (it != index.end()) classes.unite(i, it->second);
      }
    }
  }

  const auto hints = fbc::enumerate_finite_quotients(T, 24);
  const unsigned long long budget = 10'000'000;

  std::size_t unresolved = 0;
  std::size_t disagreements = 0;
  std::string first_bad;
  for (int i = 0; i < static_cast<int>(universe.size()); ++i) {
    for (int j = 0; j < static_cast<int>(universe.size()); ++j) {
      const auto v = fbc::torus_conjugate(T, universe[static_cast<std::size_t>(i)],
                                          universe[static_cast<std::size_t>(j)],
                                          budget, &hints);
      if (v.kind == fbc::TorusConjugacyVerdict::Kind::unresolved) {
        ++unresolved;
        if (first_bad.empty())
          first_bad = "unresolved: " +
                      to_string(universe[static_cast<std::size_t>(i)]) +
                      " vs " + to_string(universe[static_cast<std::size_t>(j)]);
        continue;
      }
      const bool decided =
          v.kind == fbc::TorusConjugacyVerdict::Kind::conjugate;
      if (decided) {
        // the witness must actually conjugate x to y
        if (T.conjugate(universe[static_cast<std::size_t>(i)], *v.witness) !=
            universe[static_cast<std::size_t>(j)])
          return "witness failed to conjugate " +
                 to_string(universe[static_cast<std::size_t>(i)]) + " to " +
                 to_string(universe[static_cast<std::size_t>(j)]);
      }
      const bool oracle = classes.find(i) == classes.find(j);
      if (decided != oracle) {
        ++disagreements;
        if (first_bad.empty())
          first_bad = std::string("disagreement (decider ") +
                      (decided ? "yes" : "no") + ", oracle " +
                      (oracle ? "yes" : "no") + "): " +
                      to_string(universe[static_cast<std::size_t>(i)]) +
                      " vs " + to_string(universe[static_cast<std::size_t>(j)]);
      }
    }
  }
  if (unresolved || disagreements)
    return std::to_string(disagreements) + " disagreements, " +
           std::to_string(unresolved) + " unresolved over " +
           std::to_string(universe.size() * universe.size()) +
           " pairs; first: " + first_bad;
  return {};
}

// ---- criterion 5: Whitehead engine vs Nielsen-ball oracle ----

// Classes reachable from [u] by at most `depth` elementary Nielsen moves.
std::set<fbc::Word> nielsen_ball(const fbc::CyclicWord& u, int depth) {
  const auto& gens = fbc::nielsen_generators(u.rank());
  std::set<fbc::Word> seen{u.canonical()};
  std::vector<fbc::Word> frontier{u.canonical()};
  for (int d = 0; d < depth; ++d) {
    std::vector<fbc::Word> next;
    for (const fbc::Word& w : frontier) {
      const fbc::CyclicWord cls(w);
      for (const auto& g : gens) {
        fbc::Word img = fbc::apply_to_class(g, cls).canonical();
        if (seen.insert(img).second) next.push_back(std::move(img));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

std::string criterion_whitehead() {
  const int m = 2;

  // concrete minimal lengths
  const fbc::CyclicWord commutator(fbc::Word::parse("abAB", m));
  if (fbc::whitehead_minimize(commutator).minimal.length() != 4)
    return "commutator class did not minimize to length 4";

  // distinct cyclic classes of length <= 4
  std::vector<fbc::CyclicWord> universe;
  {
    std::set<fbc::Word> seen;
    for (const fbc::Word& w : reduced_words(m, 4)) {
      fbc::CyclicWord c(w);
      if (seen.insert(c.canonical()).second) universe.push_back(std::move(c));
    }
  }

  // Nielsen-ball oracle, radius 6 (the generator set is inverse-closed, so
  // membership is a symmetric relation)
  std::vector<std::set<fbc::Word>> balls;
  balls.reserve(universe.size());
  for (const auto& u : universe) balls.push_back(nielsen_ball(u, 6));

  // primitivity: in the ball of [a] iff minimized length is 1
  const fbc::Word a_canon =
      fbc::CyclicWord(fbc::Word::generator(m, 1)).canonical();
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const bool primitive = balls[i].count(a_canon) != 0;
    const bool min_one =
        fbc::whitehead_minimize(universe[i]).minimal.length() == 1;
    if (primitive != min_one)
      return "primitivity mismatch on [" +
             to_string(universe[i].canonical()) + "]";
  }

  // orbit decision vs oracle on all ordered pairs
  std::size_t unresolved = 0;
  std::size_t disagreements = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = 0; j < universe.size(); ++j) {
      const auto d = fbc::orbit_equivalent(universe[i], universe[j]);
      if (d.verdict == fbc::OrbitVerdict::unresolved) {
        ++unresolved;
        if (first_bad.empty())
          first_bad = "unresolved: [" + to_string(universe[i].canonical()) +
                      "] vs [" + to_string(universe[j].canonical()) + "]";
        continue;
      }
      if (d.equivalent) {
        if (!d.witness ||
            fbc::apply_to_class(*d.witness, universe[i]).canonical() !=
                universe[j].canonical())
          return "equivalence witness failed on [" +
                 to_string(universe[i].canonical()) + "] vs [" +
                 to_string(universe[j].canonical()) + "]";
      }
      const bool oracle = balls[i].count(universe[j].canonical()) != 0;
      if (d.equivalent != oracle) {
        ++disagreements;
        if (first_bad.empty())
          first_bad = std::string("disagreement (decider ") +
                      (d.equivalent ? "yes" : "no") + ", oracle " +
                      (oracle ? "yes" : "no") + "): [" +
                      to_string(universe[i].canonical()) + "] vs [" +
                      to_string(universe[j].canonical()) + "]";
      }
    }
  }
  if (unresolved || disagreements)
    return std::to_string(disagreements) + " disagreements, " +
           std::to_string(unresolved) + " unresolved over " +
           std::to_string(universe.size() * universe.size()) +
           " class pairs; first: " + first_bad;
  return {};
}

// ---- criterion 6: finite-order catalog vs integer matrix torsion ----

std::string criterion_catalog() {
  const auto catalog = fbc::finite_order_catalog(2);
  const auto orders = fbc::catalog_orders(catalog);
  if (orders != std::vector<int>{1, 2, 3, 4, 6}) {
    std::string got;
    for (int o : orders) got += std::to_string(o) + " ";
    return "catalog orders are {" + got + "}, expected {1 2 3 4 6}";
  }

  // oracle: torsion orders of 2x2 integer matrices with entries in [-3,3];
  // every torsion order in the rank-2 setting divides 4 or 6, so checking
  // powers up to 12 finds each minimal order
  std::set<int> matrix_orders;
  for (long long a = -3; a <= 3; ++a)
    for (long long b = -3; b <= 3; ++b)
      for (long long c = -3; c <= 3; ++c)
        for (long long d = -3; d <= 3; ++d) {
          long long pa = a, pb = b, pc = c, pd = d;
          for (int n = 1; n <= 12; ++n) {
            if (pa == 1 && pb == 0 && pc == 0 && pd == 1) {
              matrix_orders.insert(n);
              break;
            }
            const long long na = pa * a + pb * c, nb = pa * b + pb * d;
            const long long nc = pc * a + pd * c, nd = pc * b + pd * d;
            pa = na, pb = nb, pc = nc, pd = nd;
          }
        }
  if (std::vector<int>(matrix_orders.begin(), matrix_orders.end()) != orders)
    return "matrix torsion oracle disagrees with the catalog order set";

  // round-trip the two named classes through realize_search
  for (const auto& [name, phi] :
       {std::pair<const char*, fbc::FreeAutomorphism>{"swap",
                                                      make_auto(2, {"b", "a"})},
        {"theta rotation", make_auto(2, {"bA", "A"})}}) {
    const auto found = fbc::realize_search(phi, catalog);
    if (!found) return std::string(name) + " was not realized";
    const auto& entry = catalog[found->catalog_index];
    const auto transported = compose(
        compose(found->conjugator, phi), found->conjugator.inverse());
    if (!fbc::is_inner(
            compose(transported, entry.representative.inverse())))
      return std::string(name) +
             ": conjugator does not carry the class onto the catalog entry";
  }
  return {};
}

// ---- criterion 7: path independence and the omega homomorphism ----

std::vector<std::vector<int>> edge_paths(const fbc::FiniteGraph& x, int from,
                                         int to, int max_len) {
  std::vector<std::vector<int>> paths;
  std::vector<int> current;
  auto dfs = [&](auto&& self, int at, int depth) -> void {
    if (at == to) paths.push_back(current);
    if (depth == max_len) return;
    for (int h = 0; h < x.half_edge_count(); ++h) {
      if (x.origin(h) != at) continue;
      current.push_back(h);
      self(self, x.terminus(h), depth + 1);
      current.pop_back();
    }
  };
  dfs(dfs, from, 0);
  return paths;
}

std::string criterion_paths() {
  const fbc::CatalogOptions opt;
  std::size_t triples = 0;
  std::size_t omega_pairs = 0;
  for (int m : {1, 2}) {
    auto graphs = fbc::detail::catalog_graphs(m, opt);
    const std::size_t base = graphs.size();
    for (std::size_t i = 0; i < base; ++i)
      graphs.push_back(fbc::barycentric_subdivision(graphs[i]));

    for (const auto& graph : graphs) {
      const auto marking = fbc::make_marking(graph);
      const auto isometries = fbc::enumerate_graph_isometries(graph);

      for (const auto& s : isometries) {
        const int image_base =
            s.vertex_perm[static_cast<std::size_t>(marking.basepoint)];
        const auto paths =
            edge_paths(graph, marking.basepoint, image_base, 4);
        if (paths.empty())
          return "no connecting path of length <= 4 on a catalog graph";
        const auto reference =
            fbc::induced_outer_automorphism(graph, s, marking, paths.front());
        for (const auto& c : paths) {
          ++triples;
          const auto phi_c =
              fbc::induced_outer_automorphism(graph, s, marking, c);
          if (!fbc::is_inner(compose(phi_c, reference.inverse())))
            return "path dependence on a graph with " +
                   std::to_string(graph.vertex_count()) + " vertices, " +
                   std::to_string(graph.edge_count()) + " edges";
        }
      }

      for (const auto& s : isometries)
        for (const auto& t : isometries) {
          ++omega_pairs;
          if (!fbc::omega_homomorphism_check(graph, marking, s, t).holds)
            return "omega failed on a graph with " +
                   std::to_string(graph.vertex_count()) + " vertices, " +
                   std::to_string(graph.edge_count()) + " edges";
        }
    }
  }
  if (triples == 0 || omega_pairs == 0) return "no triples were exercised";
  return {};
}

// ---- criterion 8: sub-torus monodromy identity ----

std::string criterion_subtorus() {
  const auto T = fbc::MappingTorus::create(make_auto(2, {"b", "A"}));
  const int k = T.order();  // 4
  std::mt19937 rng(run_seed);
  for (int trial = 0; trial < 100; ++trial) {
    const fbc::Word a = random_reduced_word(rng, 2, 6);
    for (int l : {1, 2, 4}) {
      const auto sub = fbc::sub_torus_monodromy(T, l, a);
      // re-verify the identity here rather than trusting the constructor
      fbc::FreeAutomorphism lhs = fbc::FreeAutomorphism::identity(2);
      for (int i = 0; i < k / l; ++i) lhs = compose(sub.psi, lhs);
      for (int g = 1; g <= 2; ++g) {
        const fbc::Word x = fbc::Word::generator(2, g);
        if (lhs.apply(x) != fbc::conjugated(T.apply_power(k, x), sub.b))
          return "identity failed for a = " + to_string(a) +
                 ", l = " + std::to_string(l);
      }
    }
  }
  return {};
}

// ---- criterion 9: artifact determinism ----

// One full pass over every witness kind, computed from scratch.  Two
// passes with the same seed must serialize identically.
std::vector<std::pair<std::string, std::string>> witness_pass(
    std::uint32_t seed) {
  std::vector<std::pair<std::string, std::string>> artifacts;
  auto emit = [&](const std::string& name, const fbc::WitnessDoc& doc) {
    artifacts.emplace_back(name, doc.to_text());
  };

  const auto rot = make_auto(2, {"b", "A"});
  emit("order", fbc::make_order_witness(rot, 64, 4096, fbc::outer_order(rot)));

  const auto T = fbc::MappingTorus::create(make_auto(2, {"b", "a"}));
  emit("center", fbc::make_center_witness(T));

  std::mt19937 rng(seed);
  std::uniform_int_distribution<long long> exp_dist(-2, 2);
  const fbc::TorusElement x(exp_dist(rng), random_reduced_word(rng, 2, 3));
  const fbc::TorusElement y(exp_dist(rng), random_reduced_word(rng, 2, 3));
  emit("torus-conj",
       fbc::make_torus_conj_witness(T, x, y, 5'000'000,
                                    fbc::torus_conjugate(T, x, y)));

  const auto swapped = compose(
      fbc::FreeAutomorphism::inner(fbc::Word::parse("ab", 2)),
      make_auto(2, {"b", "a"}));
  const fbc::OutSearchConfig cfg;
  emit("out-conj",
       fbc::make_out_conj_witness(
           make_auto(2, {"b", "a"}), swapped, 20000, cfg,
           fbc::out_conjugate(make_auto(2, {"b", "a"}), swapped, 20000, cfg)));

  const fbc::TupleSystem sys{{fbc::Word::parse("abAB", 2)},
                             {fbc::Word::parse("ab", 2),
                              fbc::Word::parse("Ba", 2)}};
  emit("whitehead-minimize",
       fbc::make_whitehead_minimize_witness(
           sys, fbc::whitehead_minimize_system(sys)));

  const fbc::TupleSystem u{{fbc::Word::parse("aabb", 2)}};
  const fbc::TupleSystem v{{fbc::Word::parse("abAB", 2)}};
  emit("whitehead-compare",
       fbc::make_whitehead_compare_witness(
           u, v, 200000, fbc::orbit_equivalent_systems(u, v, 200000)));

  emit("zxz", fbc::make_zxz_witness(fbc::z_rtimes_z_congruence()));

  fbc::TorusAutomorphism psi = fbc::identity_torus_automorphism(T);
  psi.t_image = T.invert(T.t_element());
  const auto quotients = fbc::enumerate_finite_quotients(T, 48);
  emit("separation",
       fbc::make_separation_witness(
           T, {psi}, quotients, 48, 16,
           fbc::verify_separation(quotients, {psi}, T)));

  const fbc::CatalogOptions opt;
  emit("catalog",
       fbc::make_catalog_witness(2, opt, fbc::finite_order_catalog(2, opt)));

  const fbc::TorusTupleSystem p{{fbc::TorusElement(1, fbc::Word::parse("a", 2))}};
  const fbc::TorusTupleSystem q{{fbc::TorusElement(1, fbc::Word::parse("b", 2))}};
  emit("mwh-precheck",
       fbc::make_mwh_precheck_witness(2, p, q, fbc::mwh_precheck(p, q)));

  return artifacts;
}

std::string criterion_determinism() {
  const auto first = witness_pass(run_seed);
  const auto second = witness_pass(run_seed);
  if (first.size() != second.size()) return "pass sizes differ";
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].first != second[i].first)
      return "artifact order differs at index " + std::to_string(i);
    if (first[i].second != second[i].second)
      return "artifact '" + first[i].first + "' differs between passes";
    const auto check = fbc::verify_witness_text(first[i].second);
    if (!check.ok)
      return "artifact '" + first[i].first +
             "' failed verification: " + check.detail;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) run_seed = static_cast<std::uint32_t>(std::atoll(argv[1]));

  int failures = 0;
  auto run = [&](int n, const char* name, double limit_ms, auto&& fn) {
    const auto t0 = Clock::now();
    std::string why;
    try {
      why = fn();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double ms = ms_since(t0);
    if (why.empty() && ms >= limit_ms)
      why = "took " + std::to_string(ms) + " ms (limit " +
            std::to_string(limit_ms) + ")";
    std::cout << (why.empty() ? "PASS" : "FAIL") << ' ' << n << ' ' << name
              << " (" << std::fixed << std::setprecision(1) << ms << " ms)";
    if (!why.empty()) std::cout << " - " << why;
    std::cout << '\n' << std::flush;
    if (!why.empty()) ++failures;
  };

  run(1, "center formula for finite-order monodromies", 7000.0,
      criterion_center);
  run(2, "Z x Z congruence with inverted center", 1000.0, criterion_zxz);
  run(3, "center inversion separated in a finite quotient", 10000.0,
      criterion_center_inversion);
  run(4, "torus conjugacy matches the bounded conjugator oracle", 300000.0,
      criterion_conjugacy_oracle);
  run(5, "Whitehead engine matches the Nielsen-ball oracle", 600000.0,
      criterion_whitehead);
  run(6, "finite-order catalog matches integer matrix torsion", 120000.0,
      criterion_catalog);
  run(7, "path independence and the omega homomorphism", 120000.0,
      criterion_paths);
  run(8, "sub-torus monodromy identity on random conjugators", 10000.0,
      criterion_subtorus);
  run(9, "witness artifacts are byte-identical across same-seed runs",
      600000.0, criterion_determinism);

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
