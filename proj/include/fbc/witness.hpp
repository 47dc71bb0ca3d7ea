#pragma once

// Self-contained, re-verifiable run artifacts ("witness files"), plus the
// text formats the command-line surface reads and writes: automorphism
// files with line/column diagnostics, torus automorphism files, tuple
// systems, group tables and finite quotients.
//
// A witness file is line oriented:
//     fbc-witness 1
//     kind <name>
//     <key> <value>
//     begin <section>
//     <verbatim payload lines>
//     end <section>
// and carries every input needed to re-check the verdict with no access to
// the original command line. Verification never trusts the recorded
// verdict: exact certificates are re-validated by direct computation,
// finite-quotient certificates re-verify the embedded multiplication table
// and the semidirect relations, and bounded negative or unresolved records
// are replayed from the recorded bounds — meaningful because every search
// path in the library is deterministic.

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "central_quotient.hpp"
#include "out_conjugacy.hpp"
#include "realization.hpp"
#include "whitehead.hpp"

namespace fbc {

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

inline long long parse_integer(std::string_view s, const std::string& what) {
  s = trim(s);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw parse_error(what + ": expected an integer, got '" + std::string(s) +
                      "'");
  return value;
}

inline std::vector<int> parse_int_list(std::string_view s,
                                       const std::string& what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ' ') ++pos;
    if (pos > start)
      out.push_back(static_cast<int>(
          parse_integer(s.substr(start, pos - start), what)));
  }
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace detail

// ---- input files with line/column diagnostics ----

// `<generator> -> <word>` per line, generators covering a, b, c, ... in
// order; the rank is the number of lines. Errors carry 1-based line and
// column positions.
inline FreeAutomorphism parse_automorphism_file(std::string_view text) {
  struct Row {
    int line;
    std::string rhs;
    std::size_t rhs_col;  // 1-based column where the right side starts
  };
  std::vector<Row> rows;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    int line_no = static_cast<int>(i) + 1;
    if (detail::trim(line).empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw parse_error("line " + std::to_string(line_no) +
                        ": expected '<generator> -> <word>'");
    std::string_view lhs = detail::trim(line.substr(0, arrow));
    std::string expect =
        letter_to_string(static_cast<Letter>(rows.size() + 1));
    if (lhs != expect)
      throw parse_error("line " + std::to_string(line_no) +
                        ": generator lines must cover the alphabet in "
                        "order; expected '" +
                        expect + "', got '" + std::string(lhs) + "'");
    std::size_t col = arrow + 2;
    while (col < line.size() && line[col] == ' ') ++col;
    rows.push_back({line_no, std::string(detail::trim(line.substr(col))),
                    col + 1});
  }
  if (rows.empty())
    throw parse_error("line 1: automorphism file has no generator lines");
  int rank = static_cast<int>(rows.size());
  std::vector<Word> images;
  for (const Row& r : rows) {
    try {
      images.push_back(Word::parse(r.rhs, rank));
    } catch (const parse_error& e) {
      throw parse_error("line " + std::to_string(r.line) + ", column " +
                            std::to_string(r.rhs_col + e.position) + ": " +
                            e.what(),
                        r.rhs_col + e.position);
    }
  }
  return FreeAutomorphism::from_images(std::move(images));
}

// Torus element with word-only shorthand: `abA` means `t^0 abA`.
inline TorusElement parse_torus_element_relaxed(std::string_view text,
                                                int rank) {
  std::string_view s = detail::trim(text);
  if (s.size() >= 2 && s[0] == 't' && s[1] == '^')
    return parse_torus_element(s, rank);
  return TorusElement(0, Word::parse(s, rank));
}

// `<generator> -> <element>` per fibre generator in order, then a final
// `t -> <element>` line; the rank is the number of generator lines.
inline TorusAutomorphism parse_torus_automorphism_file(std::string_view text) {
  struct Row {
    int line;
    std::string lhs;
    std::string rhs;
    std::size_t rhs_col;
  };
  std::vector<Row> rows;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    int line_no = static_cast<int>(i) + 1;
    if (detail::trim(line).empty()) continue;
    std::size_t arrow = line.find("->");
    // `t -> t^-1 1`: the image may itself contain "->"? it cannot — the
    // element grammar has no arrows, so the first arrow splits the line.
    if (arrow == std::string_view::npos)
      throw parse_error("line " + std::to_string(line_no) +
                        ": expected '<generator> -> <element>'");
    std::size_t col = arrow + 2;
    while (col < line.size() && line[col] == ' ') ++col;
    rows.push_back({line_no, std::string(detail::trim(line.substr(0, arrow))),
                    std::string(detail::trim(line.substr(col))), col + 1});
  }
  if (rows.size() < 2)
    throw parse_error(
        "line 1: torus automorphism file needs generator lines and a final "
        "'t -> <element>' line");
  if (rows.back().lhs != "t")
    throw parse_error("line " + std::to_string(rows.back().line) +
                      ": the final line must map 't'");
  int rank = static_cast<int>(rows.size()) - 1;
  TorusAutomorphism psi;
  for (int i = 0; i < rank; ++i) {
    std::string expect = letter_to_string(static_cast<Letter>(i + 1));
    if (rows[i].lhs != expect)
      throw parse_error("line " + std::to_string(rows[i].line) +
                        ": generator lines must cover the alphabet in "
                        "order; expected '" +
                        expect + "', got '" + rows[i].lhs + "'");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      TorusElement im = parse_torus_element_relaxed(rows[i].rhs, rank);
      if (i + 1 < rows.size())
        psi.fibre_images.push_back(std::move(im));
      else
        psi.t_image = std::move(im);
    } catch (const parse_error& e) {
      throw parse_error("line " + std::to_string(rows[i].line) + ", column " +
                            std::to_string(rows[i].rhs_col + e.position) +
                            ": " + e.what(),
                        rows[i].rhs_col + e.position);
    }
  }
  return psi;
}

inline std::string torus_automorphism_to_text(int rank,
                                              const TorusAutomorphism& psi) {
  std::string out;
  for (int i = 0; i < rank; ++i)
    out += letter_to_string(static_cast<Letter>(i + 1)) + " -> " +
           to_string(psi.fibre_images[static_cast<std::size_t>(i)]) + "\n";
  out += "t -> " + to_string(psi.t_image) + "\n";
  return out;
}

// ---- tuple systems ----

// One tuple per line, words separated by ';'. The empty word is "1".
inline std::string tuple_system_to_text(const TupleSystem& sys) {
  std::string out;
  for (const auto& tuple : sys) {
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (j) out += ';';
      out += to_string(tuple[j]);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<Word> parse_word_tuple(std::string_view line, int rank) {
  std::vector<Word> tuple;
  std::size_t pos = 0;
  while (true) {
    std::size_t semi = line.find(';', pos);
    std::string_view piece = line.substr(
        pos, semi == std::string_view::npos ? semi : semi - pos);
    tuple.push_back(Word::parse(detail::trim(piece), rank));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return tuple;
}

inline TupleSystem parse_tuple_system(std::string_view text, int rank) {
  TupleSystem sys;
  for (std::string_view line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    sys.push_back(parse_word_tuple(line, rank));
  }
  if (sys.empty()) throw parse_error("tuple system has no tuples");
  return sys;
}

inline std::string torus_tuple_system_to_text(const TorusTupleSystem& sys) {
  std::string out;
  for (const auto& tuple : sys) {
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (j) out += ';';
      out += to_string(tuple[j]);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<TorusElement> parse_torus_tuple(std::string_view line,
                                                   int rank) {
  std::vector<TorusElement> tuple;
  std::size_t pos = 0;
  while (true) {
    std::size_t semi = line.find(';', pos);
    std::string_view piece = line.substr(
        pos, semi == std::string_view::npos ? semi : semi - pos);
    tuple.push_back(parse_torus_element_relaxed(piece, rank));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return tuple;
}

inline TorusTupleSystem parse_torus_tuple_system(std::string_view text,
                                                 int rank) {
  TorusTupleSystem sys;
  for (std::string_view line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    sys.push_back(parse_torus_tuple(line, rank));
  }
  if (sys.empty()) throw parse_error("tuple system has no tuples");
  return sys;
}

// ---- group tables and quotients ----

inline std::string group_table_to_text(const FiniteGroupTable& g) {
  std::string out = "name " + g.name() + "\n";
  out += "order " + std::to_string(g.order()) + "\n";
  for (int a = 0; a < g.order(); ++a) {
    out += "row";
    for (int b = 0; b < g.order(); ++b)
      out += ' ' + std::to_string(g.product(a, b));
    out += '\n';
  }
  return out;
}

// Reconstruction re-runs the full axiom check in the table constructor.
inline FiniteGroupTable parse_group_table(
    const std::vector<std::string_view>& lines, std::size_t from,
    std::size_t* consumed = nullptr) {
  if (from >= lines.size() || lines[from].substr(0, 5) != "name ")
    throw parse_error("group table: expected a 'name' line");
  std::string name(detail::trim(lines[from].substr(5)));
  if (from + 1 >= lines.size() || lines[from + 1].substr(0, 6) != "order ")
    throw parse_error("group table: expected an 'order' line");
  int order = static_cast<int>(
      detail::parse_integer(lines[from + 1].substr(6), "group order"));
  if (order <= 0) throw parse_error("group table: order must be positive");
  std::vector<int> table;
  for (int a = 0; a < order; ++a) {
    std::size_t idx = from + 2 + static_cast<std::size_t>(a);
    if (idx >= lines.size() || lines[idx].substr(0, 3) != "row")
      throw parse_error("group table: expected " + std::to_string(order) +
                        " 'row' lines");
    auto vals = detail::parse_int_list(lines[idx].substr(3), "table row");
    if (static_cast<int>(vals.size()) != order)
      throw parse_error("group table: row has " +
                        std::to_string(vals.size()) + " entries, expected " +
                        std::to_string(order));
    table.insert(table.end(), vals.begin(), vals.end());
  }
  if (consumed) *consumed = 2 + static_cast<std::size_t>(order);
  return FiniteGroupTable(std::move(name), order, std::move(table));
}

inline std::string quotient_to_text(const FiniteQuotient& q) {
  std::string out = "note " + q.note + "\n";
  out += "t_image " + std::to_string(q.t_image) + "\n";
  out += "fibre_images " + detail::join_ints(q.fibre_images) + "\n";
  out += group_table_to_text(q.target);
  return out;
}

inline FiniteQuotient parse_quotient(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.size() < 3 || lines[0].substr(0, 5) != "note " ||
      lines[1].substr(0, 8) != "t_image " ||
      lines[2].substr(0, 13) != "fibre_images ")
    throw parse_error(
        "quotient: expected 'note', 't_image', 'fibre_images' lines");
  std::string note(detail::trim(lines[0].substr(5)));
  int t_image = static_cast<int>(
      detail::parse_integer(lines[1].substr(8), "t_image"));
  auto fibre = detail::parse_int_list(lines[2].substr(13), "fibre_images");
  FiniteGroupTable target = parse_group_table(lines, 3);
  return FiniteQuotient{std::move(target), std::move(fibre), t_image,
                        std::move(note)};
}

// ---- the witness document ----

struct WitnessDoc {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::pair<std::string, std::string>> sections;

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, long long value) {
    fields.emplace_back(std::move(key), std::to_string(value));
  }
  void add_section(std::string name, std::string body) {
    if (body.empty() || body.back() != '\n') body += '\n';
    sections.emplace_back(std::move(name), std::move(body));
  }

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }
  const std::string& get(std::string_view key) const {
    const std::string* v = find(key);
    if (!v)
      throw parse_error("witness is missing the '" + std::string(key) +
                        "' field");
    return *v;
  }
  long long get_int(std::string_view key) const {
    return detail::parse_integer(get(key), std::string(key));
  }
  const std::string* find_section(std::string_view name) const {
    for (const auto& [k, v] : sections)
      if (k == name) return &v;
    return nullptr;
  }
  const std::string& section(std::string_view name) const {
    const std::string* v = find_section(name);
    if (!v)
      throw parse_error("witness is missing the '" + std::string(name) +
                        "' section");
    return *v;
  }

  std::string to_text() const {
    std::string out = "fbc-witness 1\nkind " + kind + "\n";
    for (const auto& [k, v] : fields) out += k + " " + v + "\n";
    for (const auto& [name, body] : sections)
      out += "begin " + name + "\n" + body + "end " + name + "\n";
    return out;
  }

  static WitnessDoc parse(std::string_view text) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || lines[0] != "fbc-witness 1")
      throw parse_error("line 1: expected the header 'fbc-witness 1'");
    if (lines.size() < 2 || lines[1].substr(0, 5) != "kind ")
      throw parse_error("line 2: expected 'kind <name>'");
    WitnessDoc doc;
    doc.kind = std::string(detail::trim(lines[1].substr(5)));
    std::size_t i = 2;
    while (i < lines.size()) {
      std::string_view line = lines[i];
      if (detail::trim(line).empty()) {
        ++i;
        continue;
      }
      if (line.substr(0, 6) == "begin ") {
        std::string name(detail::trim(line.substr(6)));
        std::string terminator = "end " + name;
        std::string body;
        ++i;
        bool closed = false;
        while (i < lines.size()) {
          if (lines[i] == terminator) {
            closed = true;
            ++i;
            break;
          }
          body += std::string(lines[i]) + "\n";
          ++i;
        }
        if (!closed)
          throw parse_error("section '" + name + "' is never closed ('" +
                            terminator + "' missing)");
        doc.sections.emplace_back(std::move(name), std::move(body));
        continue;
      }
      std::size_t space = line.find(' ');
      if (space == std::string_view::npos)
        throw parse_error("line " + std::to_string(i + 1) +
                          ": expected '<key> <value>', 'begin <section>' or "
                          "'end <section>'");
      doc.fields.emplace_back(std::string(line.substr(0, space)),
                              std::string(line.substr(space + 1)));
      ++i;
    }
    return doc;
  }
};

// ---- builders ----

inline WitnessDoc make_order_witness(const FreeAutomorphism& phi, int bound,
                                     std::size_t ceiling,
                                     const OuterOrderResult& result) {
  WitnessDoc doc;
  doc.kind = "order";
  doc.add("rank", phi.rank());
  doc.add("bound", bound);
  doc.add("ceiling", static_cast<long long>(ceiling));
  switch (result.status) {
    case OrderStatus::found:
      doc.add("status", "found");
      doc.add("order", result.certificate->order);
      doc.add("f0", to_string(result.certificate->f0));
      break;
    case OrderStatus::absent:
      doc.add("status", "absent");
      doc.add("stopped_at", result.stopped_at);
      break;
    case OrderStatus::exceeded:
      doc.add("status", "exceeded");
      doc.add("stopped_at", result.stopped_at);
      break;
  }
  doc.add_section("automorphism", phi.to_text());
  return doc;
}

inline WitnessDoc make_center_witness(const MappingTorus& T) {
  WitnessDoc doc;
  doc.kind = "center";
  doc.add("rank", T.rank());
  doc.add("order", T.order());
  doc.add("f0", to_string(T.f0()));
  doc.add("center", to_string(T.center()));
  doc.add_section("automorphism", T.monodromy().to_text());
  return doc;
}

inline WitnessDoc make_torus_conj_witness(const MappingTorus& T,
                                          const TorusElement& x,
                                          const TorusElement& y,
                                          unsigned long long budget,
                                          const TorusConjugacyVerdict& v) {
  WitnessDoc doc;
  doc.kind = "torus-conj";
  doc.add("rank", T.rank());
  doc.add("order", T.order());
  doc.add("f0", to_string(T.f0()));
  doc.add("x", to_string(x));
  doc.add("y", to_string(y));
  doc.add("budget", static_cast<long long>(budget));
  switch (v.kind) {
    case TorusConjugacyVerdict::Kind::conjugate:
      doc.add("verdict", "conjugate");
      doc.add("witness", to_string(*v.witness));
      break;
    case TorusConjugacyVerdict::Kind::not_conjugate:
      doc.add("verdict", "not-conjugate");
      if (v.certificate->kind == TorusConjugacyCertificate::Kind::exponent) {
        doc.add("certificate", "exponent");
      } else {
        doc.add("certificate", "quotient");
        doc.add_section("quotient", quotient_to_text(*v.certificate->quotient));
      }
      break;
    case TorusConjugacyVerdict::Kind::unresolved:
      doc.add("verdict", "unresolved");
      break;
  }
  doc.add_section("automorphism", T.monodromy().to_text());
  return doc;
}

inline WitnessDoc make_out_conj_witness(const FreeAutomorphism& phi,
                                        const FreeAutomorphism& psi,
                                        std::size_t budget,
                                        const OutSearchConfig& cfg,
                                        const OutConjugacyVerdict& v) {
  WitnessDoc doc;
  doc.kind = "out-conj";
  doc.add("rank", phi.rank());
  doc.add("budget", static_cast<long long>(budget));
  doc.add("max_image_total", static_cast<long long>(cfg.max_image_total));
  doc.add("order_bound", cfg.fingerprint.order_bound);
  doc.add("growth_ceiling",
          static_cast<long long>(cfg.fingerprint.growth_ceiling));
  switch (v.kind) {
    case OutConjugacyVerdict::Kind::conjugate:
      doc.add("verdict", "conjugate");
      doc.add("inner", to_string(*v.inner_part));
      doc.add_section("conjugator", v.conjugator->to_text());
      break;
    case OutConjugacyVerdict::Kind::distinguished:
      doc.add("verdict", "distinguished");
      doc.add("distinguished", v.distinguished_field);
      break;
    case OutConjugacyVerdict::Kind::unresolved:
      doc.add("verdict", "unresolved");
      break;
  }
  doc.add_section("automorphism1", phi.to_text());
  doc.add_section("automorphism2", psi.to_text());
  return doc;
}

inline WitnessDoc make_whitehead_minimize_witness(const TupleSystem& sys,
                                                  const MinimizedSystem& ms) {
  WitnessDoc doc;
  doc.kind = "whitehead";
  doc.add("mode", "minimize");
  doc.add("rank", system_rank(sys));
  doc.add("total", static_cast<long long>(detail::system_length(ms.minimal)));
  doc.add_section("system", tuple_system_to_text(sys));
  doc.add_section("minimized", tuple_system_to_text(ms.minimal));
  doc.add_section("witness", ms.witness.to_text());
  return doc;
}

inline WitnessDoc make_whitehead_compare_witness(
    const TupleSystem& u, const TupleSystem& v, std::size_t state_cap,
    const SystemOrbitDecision& d) {
  WitnessDoc doc;
  doc.kind = "whitehead";
  doc.add("mode", "compare");
  doc.add("rank", system_rank(u));
  doc.add("state_cap", static_cast<long long>(state_cap));
  switch (d.verdict) {
    case OrbitVerdict::equivalent:
      doc.add("verdict", "equivalent");
      break;
    case OrbitVerdict::inequivalent:
      doc.add("verdict", "inequivalent");
      break;
    case OrbitVerdict::unresolved:
      doc.add("verdict", "unresolved");
      break;
  }
  doc.add("minimal_u", static_cast<long long>(d.minimal_length_u));
  doc.add("minimal_v", static_cast<long long>(d.minimal_length_v));
  if (d.witness) doc.add_section("witness", d.witness->to_text());
  doc.add_section("system1", tuple_system_to_text(u));
  doc.add_section("system2", tuple_system_to_text(v));
  return doc;
}

inline WitnessDoc make_zxz_witness(const ZCongruence& z) {
  WitnessDoc doc;
  doc.kind = "congruence";
  doc.add("case", "zxz");
  doc.add("induced", detail::join_ints(z.induced_alpha));
  doc.add_section("quotient", quotient_to_text(z.quotient));
  doc.add_section("alpha", torus_automorphism_to_text(1, z.alpha));
  return doc;
}

inline WitnessDoc make_separation_witness(
    const MappingTorus& T, const std::vector<TorusAutomorphism>& torsion,
    const std::vector<FiniteQuotient>& quotients, int max_order,
    int order_bound, const SeparationReport& report) {
  WitnessDoc doc;
  doc.kind = "congruence";
  doc.add("case", "separation");
  doc.add("rank", T.rank());
  doc.add("order", T.order());
  doc.add("f0", to_string(T.f0()));
  doc.add("max_order", max_order);
  doc.add("order_bound", order_bound);
  doc.add("count", static_cast<long long>(torsion.size()));
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    const SeparationOutcome& o = report.outcomes[i];
    std::string n = std::to_string(i);
    switch (o.kind) {
      case SeparationOutcome::Kind::separated: {
        doc.add("outcome" + n, "separated");
        doc.add("outer_order" + n, o.evidence->outer_order);
        const FiniteQuotient& q = quotients[o.evidence->quotient_index];
        doc.add("note" + n, q.note);
        doc.add("induced" + n, detail::join_ints(o.evidence->induced));
        doc.add("action" + n,
                detect_center_inverting(T, torsion[i]) ==
                        CenterAction::inverting
                    ? "inverting"
                    : "fixing");
        doc.add_section("quotient" + n, quotient_to_text(q));
        break;
      }
      case SeparationOutcome::Kind::not_torsion_nontrivial:
        doc.add("outcome" + n, "not-applicable");
        doc.add("reason" + n, o.reason);
        break;
      case SeparationOutcome::Kind::unseparated:
        doc.add("outcome" + n, "unseparated");
        break;
    }
    doc.add_section("torsion" + n,
                    torus_automorphism_to_text(T.rank(), torsion[i]));
  }
  doc.add_section("monodromy", T.monodromy().to_text());
  return doc;
}

inline std::string catalog_entry_to_text(const CatalogEntry& e) {
  std::string out = "order " + std::to_string(e.order) + "\n";
  out += "images";
  for (const Word& w : e.representative.images()) out += ' ' + to_string(w);
  out += "\ngraph\n" + e.graph.to_text();
  out += "isometry\n" + isometry_to_text(e.isometry);
  return out;
}

inline WitnessDoc make_catalog_witness(int rank, const CatalogOptions& opt,
                                       const std::vector<CatalogEntry>& cat) {
  WitnessDoc doc;
  doc.kind = "catalog";
  doc.add("rank", rank);
  doc.add("max_vertices", opt.max_vertices);
  doc.add("max_edges", opt.max_edges);
  doc.add("include_subdivision", opt.include_subdivision ? 1 : 0);
  doc.add("order_bound", opt.order_bound);
  doc.add("growth_ceiling", static_cast<long long>(opt.growth_ceiling));
  doc.add("dedup_budget", static_cast<long long>(opt.dedup_budget));
  doc.add("orders", detail::join_ints(catalog_orders(cat)));
  doc.add("count", static_cast<long long>(cat.size()));
  for (std::size_t i = 0; i < cat.size(); ++i)
    doc.add_section("entry" + std::to_string(i),
                    catalog_entry_to_text(cat[i]));
  return doc;
}

inline WitnessDoc make_mwh_precheck_witness(int rank,
                                            const TorusTupleSystem& p,
                                            const TorusTupleSystem& q,
                                            const MwhPrecheckVerdict& v) {
  WitnessDoc doc;
  doc.kind = "mwh-precheck";
  doc.add("rank", rank);
  doc.add("verdict", v.pass ? "pass" : "fail");
  if (!v.pass) doc.add("reason", v.reason);
  doc.add_section("system1", torus_tuple_system_to_text(p));
  doc.add_section("system2", torus_tuple_system_to_text(q));
  return doc;
}

// ---- verification ----

struct WitnessOutcome {
  bool ok = false;
  std::string kind;
  std::string detail;  // failure explanation when !ok
};

namespace detail {

inline WitnessOutcome fail(const WitnessDoc& doc, std::string why) {
  return {false, doc.kind, std::move(why)};
}

inline WitnessOutcome pass(const WitnessDoc& doc) {
  return {true, doc.kind, ""};
}

inline WitnessOutcome verify_order_witness(const WitnessDoc& doc) {
  FreeAutomorphism phi = parse_automorphism_file(doc.section("automorphism"));
  std::string status = doc.get("status");
  if (status == "found") {
    OuterOrderCertificate cert{
        static_cast<int>(doc.get_int("order")),
        Word::parse(doc.get("f0"), phi.rank())};
    if (!verify_outer_order(phi, cert))
      return fail(doc, "the (order, f0) certificate does not verify");
    return pass(doc);
  }
  auto replay = outer_order(phi, static_cast<int>(doc.get_int("bound")),
                            static_cast<std::size_t>(doc.get_int("ceiling")));
  OrderStatus expect = status == "absent" ? OrderStatus::absent
                       : status == "exceeded"
                           ? OrderStatus::exceeded
                           : throw parse_error("unknown status '" + status +
                                               "'");
  if (replay.status != expect)
    return fail(doc, "replay does not reproduce status '" + status + "'");
  if (replay.stopped_at != doc.get_int("stopped_at"))
    return fail(doc, "replay stopped at power " +
                         std::to_string(replay.stopped_at) +
                         ", witness recorded " + doc.get("stopped_at"));
  return pass(doc);
}

inline MappingTorus witness_torus(const WitnessDoc& doc,
                                  std::string_view monodromy_section) {
  FreeAutomorphism phi =
      parse_automorphism_file(doc.section(monodromy_section));
  OuterOrderCertificate cert{static_cast<int>(doc.get_int("order")),
                            Word::parse(doc.get("f0"), phi.rank())};
  // with_certificate re-checks the certificate exactly
  return MappingTorus::with_certificate(std::move(phi), std::move(cert));
}

inline WitnessOutcome verify_center_witness(const WitnessDoc& doc) {
  MappingTorus T = witness_torus(doc, "automorphism");
  TorusElement recorded = parse_torus_element(doc.get("center"), T.rank());
  if (T.center() != recorded)
    return fail(doc, "recomputed center " + to_string(T.center()) +
                         " differs from recorded " + to_string(recorded));
  return pass(doc);
}

inline WitnessOutcome verify_torus_conj_witness(const WitnessDoc& doc) {
  MappingTorus T = witness_torus(doc, "automorphism");
  TorusElement x = parse_torus_element(doc.get("x"), T.rank());
  TorusElement y = parse_torus_element(doc.get("y"), T.rank());
  std::string verdict = doc.get("verdict");
  if (verdict == "conjugate") {
    TorusElement w = parse_torus_element(doc.get("witness"), T.rank());
    if (T.conjugate(x, w) != y)
      return fail(doc, "witness fails: w^-1 x w != y");
    return pass(doc);
  }
  if (verdict == "not-conjugate") {
    std::string cert = doc.get("certificate");
    if (cert == "exponent") {
      if (x.t_exp == y.t_exp)
        return fail(doc, "exponent certificate but t-exponents agree");
      return pass(doc);
    }
    if (cert == "quotient") {
      FiniteQuotient q = parse_quotient(doc.section("quotient"));
      if (!verify_quotient(T, q))
        return fail(doc, "embedded quotient fails the torus relations");
      if (!quotient_separates(q, x, y))
        return fail(doc, "images are conjugate in the embedded quotient");
      return pass(doc);
    }
    return fail(doc, "unknown certificate '" + cert + "'");
  }
  if (verdict == "unresolved") {
    auto replay = torus_conjugate(
        T, x, y, static_cast<unsigned long long>(doc.get_int("budget")));
    if (replay.kind != TorusConjugacyVerdict::Kind::unresolved)
      return fail(doc, "replay at the recorded budget resolves the pair");
    return pass(doc);
  }
  return fail(doc, "unknown verdict '" + verdict + "'");
}

inline WitnessOutcome verify_out_conj_witness(const WitnessDoc& doc) {
  FreeAutomorphism phi =
      parse_automorphism_file(doc.section("automorphism1"));
  FreeAutomorphism psi =
      parse_automorphism_file(doc.section("automorphism2"));
  OutSearchConfig cfg;
  cfg.fingerprint.order_bound = static_cast<int>(doc.get_int("order_bound"));
  cfg.fingerprint.growth_ceiling =
      static_cast<std::size_t>(doc.get_int("growth_ceiling"));
  cfg.max_image_total =
      static_cast<std::size_t>(doc.get_int("max_image_total"));
  std::string verdict = doc.get("verdict");
  if (verdict == "conjugate") {
    FreeAutomorphism theta =
        parse_automorphism_file(doc.section("conjugator"));
    Word g = Word::parse(doc.get("inner"), phi.rank());
    FreeAutomorphism delta =
        compose(compose(theta, phi), theta.inverse());
    if (!(delta == compose(FreeAutomorphism::inner(g), psi)))
      return fail(doc,
                  "conjugator fails: theta phi theta^-1 != ad_g . psi");
    return pass(doc);
  }
  if (verdict == "distinguished") {
    auto field = compare_fingerprints(fingerprint(phi, cfg.fingerprint),
                                      fingerprint(psi, cfg.fingerprint));
    if (!field)
      return fail(doc, "fingerprints agree; nothing is distinguished");
    if (*field != doc.get("distinguished"))
      return fail(doc, "fingerprints differ at '" + *field +
                           "', witness recorded '" +
                           doc.get("distinguished") + "'");
    return pass(doc);
  }
  if (verdict == "unresolved") {
    auto replay = out_conjugate(
        phi, psi, static_cast<std::size_t>(doc.get_int("budget")), cfg);
    if (replay.kind != OutConjugacyVerdict::Kind::unresolved)
      return fail(doc, "replay at the recorded budget resolves the pair");
    return pass(doc);
  }
  return fail(doc, "unknown verdict '" + verdict + "'");
}

inline WitnessOutcome verify_whitehead_witness(const WitnessDoc& doc) {
  int rank = static_cast<int>(doc.get_int("rank"));
  std::string mode = doc.get("mode");
  if (mode == "minimize") {
    TupleSystem sys = parse_tuple_system(doc.section("system"), rank);
    MinimizedSystem replay = whitehead_minimize_system(sys);
    if (tuple_system_to_text(replay.minimal) != doc.section("minimized"))
      return fail(doc, "replay minimization differs from the record");
    FreeAutomorphism w = parse_automorphism_file(doc.section("witness"));
    TupleSystem recorded = parse_tuple_system(doc.section("minimized"), rank);
    for (std::size_t i = 0; i < sys.size(); ++i) {
      std::vector<Word> img;
      for (const Word& x : sys[i]) img.push_back(w.apply(x));
      if (!simultaneous_conjugator(img, recorded[i]))
        return fail(doc, "witness does not carry tuple " + std::to_string(i) +
                             " to the minimal form");
    }
    return pass(doc);
  }
  if (mode != "compare") return fail(doc, "unknown mode '" + mode + "'");
  TupleSystem u = parse_tuple_system(doc.section("system1"), rank);
  TupleSystem v = parse_tuple_system(doc.section("system2"), rank);
  std::string verdict = doc.get("verdict");
  if (verdict == "equivalent") {
    FreeAutomorphism w = parse_automorphism_file(doc.section("witness"));
    if (u.size() != v.size())
      return fail(doc, "system arities differ; cannot be equivalent");
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::vector<Word> img;
      for (const Word& x : u[i]) img.push_back(w.apply(x));
      if (!simultaneous_conjugator(img, v[i]))
        return fail(doc, "witness does not align tuple " + std::to_string(i));
    }
    return pass(doc);
  }
  auto replay = orbit_equivalent_systems(
      u, v, static_cast<std::size_t>(doc.get_int("state_cap")));
  OrbitVerdict expect =
      verdict == "inequivalent" ? OrbitVerdict::inequivalent
      : verdict == "unresolved"
          ? OrbitVerdict::unresolved
          : throw parse_error("unknown verdict '" + verdict + "'");
  if (replay.verdict != expect)
    return fail(doc, "replay does not reproduce verdict '" + verdict + "'");
  if (replay.minimal_length_u !=
          static_cast<std::size_t>(doc.get_int("minimal_u")) ||
      replay.minimal_length_v !=
          static_cast<std::size_t>(doc.get_int("minimal_v")))
    return fail(doc, "replay minimal lengths differ from the record");
  return pass(doc);
}

inline WitnessOutcome verify_congruence_witness(const WitnessDoc& doc) {
  std::string which = doc.get("case");
  if (which == "zxz") {
    MappingTorus T = MappingTorus::create(FreeAutomorphism::identity(1));
    FiniteQuotient q = parse_quotient(doc.section("quotient"));
    if (!verify_quotient(T, q))
      return fail(doc, "embedded quotient fails the torus relations");
    // the load-bearing facts: f and t^4 die, t survives with order 4
    if (!quotient_in_kernel(q, T.fibre_element(Word::generator(1, 1))))
      return fail(doc, "fibre generator is not in the kernel");
    if (!quotient_in_kernel(q, TorusElement(4, Word(1))))
      return fail(doc, "t^4 is not in the kernel");
    if (q.target.element_order(quotient_eval(q, T.t_element())) != 4)
      return fail(doc, "t does not have order 4 in the quotient");
    TorusAutomorphism alpha =
        parse_torus_automorphism_file(doc.section("alpha"));
    if (!torus_relations_hold(T, alpha))
      return fail(doc, "alpha does not satisfy the torus relations");
    auto induced = induced_map(T, q, alpha);
    if (!induced) return fail(doc, "alpha does not preserve the kernel");
    if (join_ints(*induced) != doc.get("induced"))
      return fail(doc, "recomputed induced map differs from the record");
    if (table_map_inner(q.target, *induced))
      return fail(doc, "induced map is trivial on the quotient");
    return pass(doc);
  }
  if (which != "separation")
    return fail(doc, "unknown case '" + which + "'");
  MappingTorus T = witness_torus(doc, "monodromy");
  int max_order = static_cast<int>(doc.get_int("max_order"));
  int order_bound = static_cast<int>(doc.get_int("order_bound"));
  std::size_t count = static_cast<std::size_t>(doc.get_int("count"));
  std::vector<TorusAutomorphism> torsion;
  for (std::size_t i = 0; i < count; ++i)
    torsion.push_back(parse_torus_automorphism_file(
        doc.section("torsion" + std::to_string(i))));
  auto quotients = enumerate_finite_quotients(T, max_order);
  SeparationReport report =
      verify_separation(quotients, torsion, T, order_bound);
  for (std::size_t i = 0; i < count; ++i) {
    std::string n = std::to_string(i);
    const SeparationOutcome& o = report.outcomes[i];
    std::string recorded = doc.get("outcome" + n);
    std::string recomputed =
        o.kind == SeparationOutcome::Kind::separated ? "separated"
        : o.kind == SeparationOutcome::Kind::not_torsion_nontrivial
            ? "not-applicable"
            : "unseparated";
    if (recomputed != recorded)
      return fail(doc, "torsion " + n + ": replay outcome '" + recomputed +
                           "' differs from recorded '" + recorded + "'");
    if (o.kind != SeparationOutcome::Kind::separated) continue;
    const FiniteQuotient& q = quotients[o.evidence->quotient_index];
    if (q.note != doc.get("note" + n))
      return fail(doc, "torsion " + n + ": separating quotient differs");
    if (join_ints(o.evidence->induced) != doc.get("induced" + n))
      return fail(doc, "torsion " + n + ": induced map differs");
    if (o.evidence->outer_order != doc.get_int("outer_order" + n))
      return fail(doc, "torsion " + n + ": outer order differs");
    // recheck the embedded quotient independently of the enumeration
    FiniteQuotient embedded =
        parse_quotient(doc.section("quotient" + n));
    if (!verify_quotient(T, embedded))
      return fail(doc, "torsion " + n +
                           ": embedded quotient fails the torus relations");
    auto delta = induced_map(T, embedded, torsion[i]);
    if (!delta || !table_map_bijective(*delta) ||
        table_map_inner(embedded.target, *delta))
      return fail(doc, "torsion " + n +
                           ": embedded quotient does not separate");
    std::string action = detect_center_inverting(T, torsion[i]) ==
                                 CenterAction::inverting
                             ? "inverting"
                             : "fixing";
    if (action != doc.get("action" + n))
      return fail(doc, "torsion " + n + ": center action differs");
  }
  return pass(doc);
}

inline WitnessOutcome verify_catalog_witness(const WitnessDoc& doc) {
  int rank = static_cast<int>(doc.get_int("rank"));
  CatalogOptions opt;
  opt.max_vertices = static_cast<int>(doc.get_int("max_vertices"));
  opt.max_edges = static_cast<int>(doc.get_int("max_edges"));
  opt.include_subdivision = doc.get_int("include_subdivision") != 0;
  opt.order_bound = static_cast<int>(doc.get_int("order_bound"));
  opt.growth_ceiling = static_cast<std::size_t>(doc.get_int("growth_ceiling"));
  opt.dedup_budget = static_cast<std::size_t>(doc.get_int("dedup_budget"));
  auto cat = finite_order_catalog(rank, opt);
  if (cat.size() != static_cast<std::size_t>(doc.get_int("count")))
    return fail(doc, "replay catalog has " + std::to_string(cat.size()) +
                         " entries, witness recorded " + doc.get("count"));
  if (join_ints(catalog_orders(cat)) != doc.get("orders"))
    return fail(doc, "replay order set differs from the record");
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (catalog_entry_to_text(cat[i]) !=
        doc.section("entry" + std::to_string(i)))
      return fail(doc, "entry " + std::to_string(i) +
                           " differs from the replayed catalog");
  return pass(doc);
}

inline WitnessOutcome verify_mwh_precheck_witness(const WitnessDoc& doc) {
  int rank = static_cast<int>(doc.get_int("rank"));
  TorusTupleSystem p = parse_torus_tuple_system(doc.section("system1"), rank);
  TorusTupleSystem q = parse_torus_tuple_system(doc.section("system2"), rank);
  MwhPrecheckVerdict v = mwh_precheck(p, q);
  std::string recorded = doc.get("verdict");
  if ((v.pass ? "pass" : "fail") != recorded)
    return fail(doc, "replay verdict differs from the record");
  if (!v.pass && v.reason != doc.get("reason"))
    return fail(doc, "replay failure reason differs from the record");
  return pass(doc);
}

}  // namespace detail

inline WitnessOutcome verify_witness_doc(const WitnessDoc& doc) {
  if (doc.kind == "order") return detail::verify_order_witness(doc);
  if (doc.kind == "center") return detail::verify_center_witness(doc);
  if (doc.kind == "torus-conj") return detail::verify_torus_conj_witness(doc);
  if (doc.kind == "out-conj") return detail::verify_out_conj_witness(doc);
  if (doc.kind == "whitehead") return detail::verify_whitehead_witness(doc);
  if (doc.kind == "congruence") return detail::verify_congruence_witness(doc);
  if (doc.kind == "catalog") return detail::verify_catalog_witness(doc);
  if (doc.kind == "mwh-precheck")
    return detail::verify_mwh_precheck_witness(doc);
  throw parse_error("unknown witness kind '" + doc.kind + "'");
}

inline WitnessOutcome verify_witness_text(std::string_view text) {
  return verify_witness_doc(WitnessDoc::parse(text));
}

}  // namespace fbc
