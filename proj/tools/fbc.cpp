// fbc — exact computation for free groups, their automorphisms, and
// free-by-cyclic suspensions with finite-order outer monodromy.
//
// Exit codes: 0 decided-positive, 2 decided-negative, 3 unresolved,
// 1 input error (malformed files, flags, or ineligible inputs).
//
// Budgets: `--budget-ms N` buys N * 1000 deterministic work units (layer
// expansions, search nodes, or explored states depending on the command),
// never wall-clock time — identical invocations take the identical search
// path and produce byte-identical output on any machine.
//
// Every decision command accepts `--out <file>` and writes a witness
// artifact that `fbc verify <file>` re-checks from scratch; `--seed` is
// recorded in the artifact for provenance (all search paths are
// deterministic, so it steers nothing).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fbc/witness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fbc::error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fbc::error("cannot write '" + path + "'");
  out << content;
}

struct ArtifactOpts {
  std::string out;
  std::optional<long long> seed;
};

void add_artifact_flags(CLI::App* cmd, ArtifactOpts& opts) {
  cmd->add_option("--out", opts.out, "write a re-verifiable witness file");
  cmd->add_option("--seed", opts.seed,
                  "seed recorded in the witness (searches are deterministic; "
                  "it steers nothing)");
}

void emit_witness(fbc::WitnessDoc doc, const ArtifactOpts& opts) {
  if (opts.out.empty()) return;
  if (opts.seed) doc.add("seed", *opts.seed);
  write_file(opts.out, doc.to_text());
}

fbc::FreeAutomorphism load_automorphism(const std::string& path) {
  return fbc::parse_automorphism_file(read_file(path));
}

std::string join_images(const fbc::FreeAutomorphism& a) {
  std::string out;
  const auto& images = a.images();
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i) out += ' ';
    out += fbc::to_string(images[i]);
  }
  return out;
}

std::string join_words(const std::vector<fbc::Word>& tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ';';
    out += fbc::to_string(tuple[i]);
  }
  return out;
}

// rank of the smallest alphabet containing every letter that occurs
int infer_rank(const std::vector<std::string>& texts) {
  int rank = 1;
  for (const std::string& s : texts)
    for (char c : s) {
      int idx = 0;
      if (c >= 'a' && c <= 'z') idx = c - 'a' + 1;
      if (c >= 'A' && c <= 'Z') idx = c - 'A' + 1;
      if (idx > rank) rank = idx;
    }
  return rank;
}

int run_order(const std::string& path, int bound, long long ceiling,
              ArtifactOpts& artifact) {
  fbc::FreeAutomorphism phi = load_automorphism(path);
  fbc::OuterOrderResult r =
      fbc::outer_order(phi, bound, static_cast<std::size_t>(ceiling));
  int rc = 0;
  switch (r.status) {
    case fbc::OrderStatus::found:
      std::cout << "order " << r.certificate->order
                << ", f0 = " << fbc::to_string(r.certificate->f0) << "\n";
      rc = 0;
      break;
    case fbc::OrderStatus::absent:
      std::cout << "absent up to bound " << bound << "\n";
      rc = 2;
      break;
    case fbc::OrderStatus::exceeded:
      std::cout << "exceeded at power " << r.stopped_at << "\n";
      rc = 2;
      break;
  }
  emit_witness(
      fbc::make_order_witness(phi, bound, static_cast<std::size_t>(ceiling),
                              r),
      artifact);
  return rc;
}

int run_center(const std::string& path, int bound, ArtifactOpts& artifact) {
  fbc::FreeAutomorphism phi = load_automorphism(path);
  fbc::MappingTorus T = fbc::MappingTorus::create(std::move(phi), bound);
  std::cout << fbc::to_string(T.center()) << "\n";
  emit_witness(fbc::make_center_witness(T), artifact);
  return 0;
}

int run_torus_conj(const std::string& path, const std::string& xs,
                   const std::string& ys, long long budget_ms, int bound,
                   ArtifactOpts& artifact) {
  fbc::FreeAutomorphism phi = load_automorphism(path);
  fbc::MappingTorus T = fbc::MappingTorus::create(std::move(phi), bound);
  fbc::TorusElement x = fbc::parse_torus_element_relaxed(xs, T.rank());
  fbc::TorusElement y = fbc::parse_torus_element_relaxed(ys, T.rank());
  auto budget = static_cast<unsigned long long>(budget_ms) * 1000;
  fbc::TorusConjugacyVerdict v = fbc::torus_conjugate(T, x, y, budget);
  int rc = 0;
  switch (v.kind) {
    case fbc::TorusConjugacyVerdict::Kind::conjugate:
      std::cout << "CONJUGATE " << fbc::to_string(*v.witness) << "\n";
      rc = 0;
      break;
    case fbc::TorusConjugacyVerdict::Kind::not_conjugate:
      if (v.certificate->kind ==
          fbc::TorusConjugacyCertificate::Kind::exponent)
        std::cout << "NOT_CONJUGATE exponent\n";
      else
        std::cout << "NOT_CONJUGATE quotient "
                  << v.certificate->quotient->note << "\n";
      rc = 2;
      break;
    case fbc::TorusConjugacyVerdict::Kind::unresolved:
      std::cout << "UNRESOLVED\n";
      rc = 3;
      break;
  }
  emit_witness(fbc::make_torus_conj_witness(T, x, y, budget, v), artifact);
  return rc;
}

int run_out_conj(const std::string& path1, const std::string& path2,
                 long long budget_ms, ArtifactOpts& artifact) {
  fbc::FreeAutomorphism phi = load_automorphism(path1);
  fbc::FreeAutomorphism psi = load_automorphism(path2);
  auto budget = static_cast<std::size_t>(budget_ms) * 1000;
  fbc::OutSearchConfig cfg;
  fbc::OutConjugacyVerdict v = fbc::out_conjugate(phi, psi, budget, cfg);
  int rc = 0;
  switch (v.kind) {
    case fbc::OutConjugacyVerdict::Kind::conjugate:
      std::cout << "CONJUGATE " << join_images(*v.conjugator) << ", inner "
                << fbc::to_string(*v.inner_part) << "\n";
      rc = 0;
      break;
    case fbc::OutConjugacyVerdict::Kind::distinguished:
      std::cout << "NOT_CONJUGATE " << v.distinguished_field << "\n";
      rc = 2;
      break;
    case fbc::OutConjugacyVerdict::Kind::unresolved:
      std::cout << "UNRESOLVED\n";
      rc = 3;
      break;
  }
  emit_witness(fbc::make_out_conj_witness(phi, psi, budget, cfg, v),
               artifact);
  return rc;
}

int run_whitehead(int rank, const std::vector<std::string>& tuple_args,
                  const std::vector<std::string>& other_args,
                  long long budget_ms, ArtifactOpts& artifact) {
  fbc::TupleSystem u;
  for (const std::string& t : tuple_args)
    u.push_back(fbc::parse_word_tuple(t, rank));
  if (other_args.empty()) {
    fbc::MinimizedSystem ms = fbc::whitehead_minimize_system(u);
    for (const auto& tuple : ms.minimal)
      std::cout << "minimal " << join_words(tuple) << "\n";
    std::cout << "total " << fbc::detail::system_length(ms.minimal) << "\n";
    std::cout << "witness " << join_images(ms.witness) << "\n";
    emit_witness(fbc::make_whitehead_minimize_witness(u, ms), artifact);
    return 0;
  }
  fbc::TupleSystem v;
  for (const std::string& t : other_args)
    v.push_back(fbc::parse_word_tuple(t, rank));
  auto cap = static_cast<std::size_t>(budget_ms) * 1000;
  fbc::SystemOrbitDecision d = fbc::orbit_equivalent_systems(u, v, cap);
  int rc = 0;
  switch (d.verdict) {
    case fbc::OrbitVerdict::equivalent:
      std::cout << "EQUIVALENT " << join_images(*d.witness) << "\n";
      rc = 0;
      break;
    case fbc::OrbitVerdict::inequivalent:
      std::cout << "INEQUIVALENT\n";
      std::cout << "minimal-lengths " << d.minimal_length_u << " "
                << d.minimal_length_v << "\n";
      rc = 2;
      break;
    case fbc::OrbitVerdict::unresolved:
      std::cout << "UNRESOLVED\n";
      rc = 3;
      break;
  }
  emit_witness(fbc::make_whitehead_compare_witness(u, v, cap, d), artifact);
  return rc;
}

int run_congruence(const std::string& path,
                   const std::vector<std::string>& torsion_paths,
                   int max_order, int bound, ArtifactOpts& artifact) {
  fbc::FreeAutomorphism phi = load_automorphism(path);
  fbc::MappingTorus T = fbc::MappingTorus::create(std::move(phi), bound);
  if (T.rank() == 1 && T.monodromy().is_identity() && torsion_paths.empty()) {
    fbc::ZCongruence z = fbc::z_rtimes_z_congruence();
    std::cout << "quotient " << z.quotient.target.name()
              << ": a -> " << z.quotient.fibre_images[0] << ", t -> "
              << z.quotient.t_image << ", kernel contains a and t^4\n";
    std::cout << "alpha: t -> t^-1 induces "
              << fbc::detail::join_ints(z.induced_alpha) << " on "
              << z.quotient.target.name() << " (inversion, nontrivial)\n";
    emit_witness(fbc::make_zxz_witness(z), artifact);
    return 0;
  }
  std::vector<fbc::TorusAutomorphism> torsion;
  for (const std::string& tp : torsion_paths) {
    fbc::TorusAutomorphism psi =
        fbc::parse_torus_automorphism_file(read_file(tp));
    if (static_cast<int>(psi.fibre_images.size()) != T.rank())
      throw fbc::error("torsion automorphism '" + tp + "' has rank " +
                       std::to_string(psi.fibre_images.size()) +
                       ", monodromy has rank " + std::to_string(T.rank()));
    torsion.push_back(std::move(psi));
  }
  const int order_bound = 16;
  auto quotients = fbc::enumerate_finite_quotients(T, max_order);
  fbc::SeparationReport report =
      fbc::verify_separation(quotients, torsion, T, order_bound);
  std::cout << "quotients " << quotients.size() << " up to order "
            << max_order << "\n";
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    const fbc::SeparationOutcome& o = report.outcomes[i];
    std::cout << "torsion " << i << ": ";
    switch (o.kind) {
      case fbc::SeparationOutcome::Kind::separated: {
        const fbc::FiniteQuotient& q = quotients[o.evidence->quotient_index];
        const char* action =
            fbc::detect_center_inverting(T, torsion[i]) ==
                    fbc::CenterAction::inverting
                ? "inverting"
                : "fixing";
        std::cout << action << ", outer order " << o.evidence->outer_order
                  << ", separated by " << q.note << " (order "
                  << q.target.order() << ")\n";
        break;
      }
      case fbc::SeparationOutcome::Kind::not_torsion_nontrivial:
        std::cout << "not applicable (" << o.reason << ")\n";
        break;
      case fbc::SeparationOutcome::Kind::unseparated:
        std::cout << "unseparated up to order " << max_order << "\n";
        break;
    }
  }
  std::cout << "separated " << (torsion.size() - report.unseparated.size())
            << "/" << torsion.size() << "\n";
  emit_witness(fbc::make_separation_witness(T, torsion, quotients, max_order,
                                            order_bound, report),
               artifact);
  return report.unseparated.empty() ? 0 : 2;
}

int run_catalog(int rank, fbc::CatalogOptions opt, ArtifactOpts& artifact) {
  auto cat = fbc::finite_order_catalog(rank, opt);
  std::cout << fbc::detail::join_ints(fbc::catalog_orders(cat)) << "\n";
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const fbc::CatalogEntry& e = cat[i];
    std::cout << "entry " << i << ": order " << e.order << ", graph V="
              << e.graph.vertex_count() << " E=" << e.graph.edge_count()
              << ", images " << join_images(e.representative) << "\n";
  }
  emit_witness(fbc::make_catalog_witness(rank, opt, cat), artifact);
  return 0;
}

int run_mwh_precheck(const std::vector<std::string>& tuple_args,
                     const std::vector<std::string>& other_args,
                     std::optional<int> rank_opt, ArtifactOpts& artifact) {
  int rank = rank_opt ? *rank_opt : [&] {
    std::vector<std::string> all = tuple_args;
    all.insert(all.end(), other_args.begin(), other_args.end());
    return infer_rank(all);
  }();
  fbc::TorusTupleSystem p, q;
  for (const std::string& t : tuple_args)
    p.push_back(fbc::parse_torus_tuple(t, rank));
  for (const std::string& t : other_args)
    q.push_back(fbc::parse_torus_tuple(t, rank));
  fbc::MwhPrecheckVerdict v = fbc::mwh_precheck(p, q);
  if (v.pass)
    std::cout << "PASS\n";
  else
    std::cout << "FAIL " << v.reason << "\n";
  emit_witness(fbc::make_mwh_precheck_witness(rank, p, q, v), artifact);
  return v.pass ? 0 : 2;
}

int run_verify(const std::string& path) {
  fbc::WitnessOutcome outcome = fbc::verify_witness_text(read_file(path));
  if (outcome.ok) {
    std::cout << "VERIFIED " << outcome.kind << "\n";
    return 0;
  }
  std::cout << "FAILED " << outcome.kind << ": " << outcome.detail << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact computation for free groups, automorphisms, and "
      "free-by-cyclic suspensions"};
  app.require_subcommand(1);
  int rc = 0;

  // order
  std::string order_path;
  int order_bound = 64;
  long long order_ceiling = 4096;
  ArtifactOpts order_artifact;
  auto* order = app.add_subcommand(
      "order", "certify the outer order of an automorphism");
  order->add_option("auto_file", order_path, "automorphism file")->required();
  order->add_option("--bound", order_bound, "largest order tried")
      ->capture_default_str();
  order->add_option("--ceiling", order_ceiling,
                    "image-length ceiling that reports growth as 'exceeded'")
      ->capture_default_str();
  add_artifact_flags(order, order_artifact);
  order->callback([&] {
    rc = run_order(order_path, order_bound, order_ceiling, order_artifact);
  });

  // center
  std::string center_path;
  int center_bound = 64;
  ArtifactOpts center_artifact;
  auto* center = app.add_subcommand(
      "center", "center t^k f0 of the suspension of a finite-order "
                "automorphism (fibre rank >= 2)");
  center->add_option("auto_file", center_path, "automorphism file")
      ->required();
  center->add_option("--bound", center_bound, "largest order tried")
      ->capture_default_str();
  add_artifact_flags(center, center_artifact);
  center->callback(
      [&] { rc = run_center(center_path, center_bound, center_artifact); });

  // torus-conj
  std::string tc_path, tc_x, tc_y;
  long long tc_budget = 5000;
  int tc_bound = 64;
  ArtifactOpts tc_artifact;
  auto* tc = app.add_subcommand(
      "torus-conj", "decide conjugacy of two suspension elements");
  tc->add_option("auto_file", tc_path, "monodromy automorphism file")
      ->required();
  tc->add_option("x", tc_x, "first element, e.g. \"t^0 a\"")->required();
  tc->add_option("y", tc_y, "second element")->required();
  tc->add_option("--budget-ms", tc_budget,
                 "work budget (1 ms = 1000 deterministic units)")
      ->capture_default_str();
  tc->add_option("--bound", tc_bound, "largest monodromy order tried")
      ->capture_default_str();
  add_artifact_flags(tc, tc_artifact);
  tc->callback([&] {
    rc = run_torus_conj(tc_path, tc_x, tc_y, tc_budget, tc_bound,
                        tc_artifact);
  });

  // out-conj
  std::string oc_path1, oc_path2;
  long long oc_budget = 20;
  ArtifactOpts oc_artifact;
  auto* oc = app.add_subcommand(
      "out-conj", "decide outer conjugacy of two automorphisms");
  oc->add_option("auto_file1", oc_path1, "first automorphism file")
      ->required();
  oc->add_option("auto_file2", oc_path2, "second automorphism file")
      ->required();
  oc->add_option("--budget-ms", oc_budget,
                 "work budget (1 ms = 1000 deterministic units)")
      ->capture_default_str();
  add_artifact_flags(oc, oc_artifact);
  oc->callback(
      [&] { rc = run_out_conj(oc_path1, oc_path2, oc_budget, oc_artifact); });

  // whitehead
  int wh_rank = 0;
  std::vector<std::string> wh_tuples, wh_others;
  long long wh_budget = 200;
  ArtifactOpts wh_artifact;
  auto* wh = app.add_subcommand(
      "whitehead",
      "minimize a tuple system, or decide orbit equivalence against a "
      "second system given with --other");
  wh->add_option("--rank", wh_rank, "free group rank")->required();
  wh->add_option("--tuple", wh_tuples,
                 "tuple of words separated by ';' (repeatable)")
      ->required();
  wh->add_option("--other", wh_others,
                 "tuple of the comparison system (repeatable)");
  wh->add_option("--budget-ms", wh_budget,
                 "state budget (1 ms = 1000 explored states)")
      ->capture_default_str();
  add_artifact_flags(wh, wh_artifact);
  wh->callback([&] {
    rc = run_whitehead(wh_rank, wh_tuples, wh_others, wh_budget, wh_artifact);
  });

  // congruence
  std::string cg_path;
  std::vector<std::string> cg_torsion;
  int cg_max_order = 48;
  int cg_bound = 64;
  ArtifactOpts cg_artifact;
  auto* cg = app.add_subcommand(
      "congruence",
      "find finite quotients separating finite-order outer automorphisms "
      "of the suspension; with a rank-1 identity monodromy and no torsion "
      "files, reports the explicit Z x Z witness");
  cg->add_option("auto_file", cg_path, "monodromy automorphism file")
      ->required();
  cg->add_option("torsion_files", cg_torsion,
                 "torus automorphism files to separate");
  cg->add_option("--max-order", cg_max_order,
                 "largest quotient order enumerated")
      ->capture_default_str();
  cg->add_option("--bound", cg_bound, "largest monodromy order tried")
      ->capture_default_str();
  add_artifact_flags(cg, cg_artifact);
  cg->callback([&] {
    rc = run_congruence(cg_path, cg_torsion, cg_max_order, cg_bound,
                        cg_artifact);
  });

  // catalog
  int cat_rank = 0;
  fbc::CatalogOptions cat_opt;
  ArtifactOpts cat_artifact;
  auto* cat = app.add_subcommand(
      "catalog",
      "catalog the finite-order outer classes realized by graph isometries");
  cat->add_option("rank", cat_rank, "free group rank")->required();
  cat->add_option("--max-vertices", cat_opt.max_vertices,
                  "vertex bound (0: default 2m-2)")
      ->capture_default_str();
  cat->add_option("--max-edges", cat_opt.max_edges,
                  "edge bound (0: default 3m-3)")
      ->capture_default_str();
  cat->add_flag_callback(
      "--no-subdivision",
      [&] { cat_opt.include_subdivision = false; },
      "skip the barycentric subdivision pass");
  cat->add_option("--bound", cat_opt.order_bound, "largest order certified")
      ->capture_default_str();
  add_artifact_flags(cat, cat_artifact);
  cat->callback([&] { rc = run_catalog(cat_rank, cat_opt, cat_artifact); });

  // mwh-precheck
  std::vector<std::string> mp_tuples, mp_others;
  std::optional<int> mp_rank;
  ArtifactOpts mp_artifact;
  auto* mp = app.add_subcommand(
      "mwh-precheck",
      "necessary arity and t-exponent checks for suspension tuple systems");
  mp->add_option("--tuple", mp_tuples,
                 "tuple of elements separated by ';' (repeatable)")
      ->required();
  mp->add_option("--other", mp_others,
                 "tuple of the comparison system (repeatable)")
      ->required();
  mp->add_option("--rank", mp_rank,
                 "fibre rank (default: smallest alphabet covering the input)");
  add_artifact_flags(mp, mp_artifact);
  mp->callback([&] {
    rc = run_mwh_precheck(mp_tuples, mp_others, mp_rank, mp_artifact);
  });

  // verify
  std::string vf_path;
  auto* vf =
      app.add_subcommand("verify", "re-check a witness file from scratch");
  vf->add_option("witness_file", vf_path, "witness file")->required();
  vf->callback([&] { rc = run_verify(vf_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const fbc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
