#pragma once

// Exact free-group word algebra: reduced words, cyclic words, conjugacy,
// and the text grammar shared by the CLI and the witness files.
//
// Letters are nonzero integers: +i is the i-th generator (1-based), -i its
// inverse. Words are kept freely reduced at all times. The text grammar is
//   word   ::= "1" | letter+
//   letter ::= [a-z] | [A-Z] | [xX][0-9]+
// with lowercase = generator, uppercase = inverse, and "x3"/"X3" index forms
// accepted for any rank ('x' followed by a digit is always the index form).
// The letter order used for canonical rotations is a < A < b < B < ...

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fbc {

using Letter = std::int32_t;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input; `where` is a 0-based column when known.
struct parse_error : error {
  parse_error(const std::string& msg, std::size_t where = 0)
      : error(msg), position(where) {}
  std::size_t position;
};

struct alphabet_mismatch : error {
  using error::error;
};

inline void check_rank(int rank) {
  if (rank < 1) throw error("alphabet rank must be at least 1");
}

// Total order on letters: a < A < b < B < ...
inline int letter_key(Letter l) {
  return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0);
}

class Word {
 public:
  Word() : rank_(0) {}
  explicit Word(int rank) : rank_(rank) { check_rank(rank); }

  // Free reduction of an arbitrary letter sequence.
  static Word reduce(int rank, std::span<const Letter> raw) {
    check_rank(rank);
    Word w(rank);
    w.letters_.reserve(raw.size());
    for (Letter l : raw) w.push(l);
    return w;
  }

  static Word reduce(int rank, std::initializer_list<Letter> raw) {
    return reduce(rank, std::span<const Letter>(raw.begin(), raw.size()));
  }

  // Single generator (or inverse) as a word.
  static Word generator(int rank, Letter l) { return reduce(rank, {l}); }

  static Word parse(std::string_view text, int rank);

  int rank() const { return rank_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  Word inverse() const {
    Word w(rank_ ? rank_ : 1);
    w.rank_ = rank_;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back(-*it);
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    if (a.rank_ != b.rank_)
      throw alphabet_mismatch("word product across different alphabets");
    Word w = a;
    for (Letter l : b.letters_) w.push(l);
    return w;
  }

  Word power(long long n) const {
    Word base = n < 0 ? inverse() : *this;
    long long cnt = n < 0 ? -n : n;
    Word out(rank_ ? rank_ : 1);
    out.rank_ = rank_;
    for (long long i = 0; i < cnt; ++i) out = out * base;
    return out;
  }

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const Word& o) const { return !(*this == o); }

  // Lexicographic by letter_key, shorter-first on ties of common prefix.
  // shortlex: length first, then letterwise by letter_key
  bool operator<(const Word& o) const {
    if (letters_.size() != o.letters_.size())
      return letters_.size() < o.letters_.size();
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      int a = letter_key(letters_[i]), b = letter_key(o.letters_[i]);
      if (a != b) return a < b;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(rank_);
    for (Letter l : letters_) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  friend class CyclicWord;

  void push(Letter l) {
    if (l == 0 || std::abs(l) > rank_)
      throw error("letter index out of range for alphabet of rank " +
                  std::to_string(rank_));
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  int rank_;
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

// g^-1 w g, the right-action convention ad_g applied to w.
inline Word conjugated(const Word& w, const Word& g) {
  return g.inverse() * w * g;
}

inline Word commutator(const Word& a, const Word& b) {
  return a.inverse() * b.inverse() * a * b;
}

// Splits u as c * core * c^-1 with core cyclically reduced.
// Returns {core, c}.
inline std::pair<Word, Word> cyclic_reduce(const Word& u) {
  const auto& ls = u.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  int rank = u.rank() ? u.rank() : 1;
  std::vector<Letter> core(ls.begin() + lo, ls.begin() + hi);
  std::vector<Letter> conj(ls.begin(), ls.begin() + lo);
  return {Word::reduce(rank, core), Word::reduce(rank, conj)};
}

// Conjugacy class of a word, stored as the lexicographically least rotation
// (letter order a < A < b < B < ...) of the cyclically reduced core; among
// equal rotations of a periodic word the least offset wins.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const Word& w) {
    auto [core, conj] = cyclic_reduce(w);
    (void)conj;
    rep_ = least_rotation(core);
  }

  const Word& canonical() const { return rep_; }
  std::size_t length() const { return rep_.size(); }
  int rank() const { return rep_.rank(); }

  bool operator==(const CyclicWord& o) const { return rep_ == o.rep_; }
  bool operator!=(const CyclicWord& o) const { return !(*this == o); }
  bool operator<(const CyclicWord& o) const { return rep_ < o.rep_; }
  std::size_t hash() const { return rep_.hash(); }

 private:
  static Word least_rotation(const Word& core) {
    const auto& ls = core.letters();
    std::size_t n = ls.size();
    if (n <= 1) return core;
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        int a = letter_key(ls[(r + i) % n]);
        int b = letter_key(ls[(best + i) % n]);
        if (a != b) {
          if (a < b) best = r;
          break;
        }
      }
    }
    std::vector<Letter> rot;
    rot.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rot.push_back(ls[(best + i) % n]);
    // A rotation of a cyclically reduced word is reduced; reuse reduce anyway.
    return Word::reduce(core.rank(), rot);
  }

  Word rep_;
};

struct CyclicWordHash {
  std::size_t operator()(const CyclicWord& w) const { return w.hash(); }
};

// Decides conjugacy of u and v in the free group. On success returns g with
// g^-1 u g = v (verified exactly); the least rotation offset is used, so the
// result is deterministic.
inline std::optional<Word> conjugate_in_free(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw alphabet_mismatch("conjugacy across different alphabets");
  auto [cu, pu] = cyclic_reduce(u);
  auto [cv, pv] = cyclic_reduce(v);
  if (cu.size() != cv.size()) return std::nullopt;
  std::size_t n = cu.size();
  int rank = u.rank() ? u.rank() : 1;
  if (n == 0) {
    Word g(rank);
    return g;  // both trivial; identity conjugator
  }
  const auto& a = cu.letters();
  const auto& b = cv.letters();
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[(r + i) % n] != b[i]) {
        match = false;
        break;
      }
    }
    if (match) {
      std::vector<Letter> prefix(a.begin(), a.begin() + r);
      Word p = Word::reduce(rank, prefix);
      Word g = pu * p * pv.inverse();
      if (conjugated(u, g) != v) throw error("internal: bad conjugator");
      return g;
    }
  }
  return std::nullopt;
}

// Simultaneous conjugacy: a single g with g^-1 u_i g = v_i for all i.
inline std::optional<Word> simultaneous_conjugator(
    std::span<const Word> us, std::span<const Word> vs) {
  if (us.size() != vs.size())
    throw error("simultaneous conjugacy needs tuples of equal arity");
  if (us.empty()) return std::nullopt;
  int rank = us[0].rank();
  std::size_t first = us.size();
  for (std::size_t i = 0; i < us.size(); ++i)
    if (!us[i].empty()) {
      first = i;
      break;
    }
  if (first == us.size()) {
    // all left entries trivial: conjugator exists iff all right entries are
    for (const Word& v : vs)
      if (!v.empty()) return std::nullopt;
    return Word(rank);
  }
  auto g0 = conjugate_in_free(us[first], vs[first]);
  if (!g0) return std::nullopt;
  // Solutions are g0 * z with z in the centralizer of v_first, which is the
  // cyclic group on the root of v_first; |n| beyond the length bound only
  // grows the conjugates, so a bounded scan is exhaustive.
  auto [core, conj] = cyclic_reduce(vs[first]);
  Word root = core;
  // root of the cyclically reduced core: shortest period
  for (std::size_t p = 1; p <= core.size(); ++p) {
    if (core.size() % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < core.size(); ++i)
      if (core[i] != core[i - p]) {
        periodic = false;
        break;
      }
    if (periodic) {
      root = Word::reduce(rank, std::span<const Letter>(core.letters().data(), p));
      break;
    }
  }
  Word z_base = conj * root * conj.inverse();  // centralizer generator of v_first
  long long span_bound = 2;
  for (std::size_t i = 0; i < us.size(); ++i)
    span_bound += static_cast<long long>(us[i].size() + vs[i].size());
  for (long long n = -span_bound; n <= span_bound; ++n) {
    Word g = *g0 * z_base.power(n);
    bool ok = true;
    for (std::size_t i = 0; i < us.size(); ++i)
      if (conjugated(us[i], g) != vs[i]) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return std::nullopt;
}

// ---- text grammar ----

inline std::string letter_to_string(Letter l) {
  int idx = std::abs(l);
  std::string out;
  if (idx <= 26) {
    char base = l > 0 ? 'a' : 'A';
    out.push_back(static_cast<char>(base + idx - 1));
  } else {
    out.push_back(l > 0 ? 'x' : 'X');
    out += std::to_string(idx);
  }
  return out;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) out += letter_to_string(l);
  return out;
}

inline std::string to_string(const CyclicWord& w) {
  return to_string(w.canonical());
}

inline Word Word::parse(std::string_view text, int rank) {
  check_rank(rank);
  if (text == "1") return Word(rank);
  if (text.empty()) throw parse_error("empty word (write \"1\" for identity)");
  std::vector<Letter> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    bool upper = (c >= 'A' && c <= 'Z');
    bool lower = (c >= 'a' && c <= 'z');
    if (!upper && !lower)
      throw parse_error(std::string("unexpected character '") + c + "' in word", i);
    if ((c == 'x' || c == 'X') && i + 1 < text.size() && text[i + 1] >= '0' &&
        text[i + 1] <= '9') {
      std::size_t j = i + 1;
      long idx = 0;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
        idx = idx * 10 + (text[j] - '0');
        if (idx > 1000000) throw parse_error("generator index too large", i);
        ++j;
      }
      if (idx < 1) throw parse_error("generator index must be at least 1", i);
      if (idx > rank)
        throw parse_error("generator index exceeds alphabet rank", i);
      raw.push_back(static_cast<Letter>(c == 'x' ? idx : -idx));
      i = j;
    } else {
      int idx = lower ? (c - 'a' + 1) : (c - 'A' + 1);
      if (idx > rank)
        throw parse_error(std::string("letter '") + c + "' exceeds alphabet rank", i);
      raw.push_back(static_cast<Letter>(lower ? idx : -idx));
      ++i;
    }
  }
  return Word::reduce(rank, raw);
}

}  // namespace fbc
