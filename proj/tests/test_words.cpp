#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "fbc/word.hpp"

using namespace fbc;

namespace {

Word W(const char* s, int rank = 2) { return Word::parse(s, rank); }

// deterministic random reduced word of exactly `len` letters
Word random_word(std::mt19937& rng, int rank, int len) {
  std::vector<Letter> ls;
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  while (static_cast<int>(ls.size()) < len) {
    Letter l = static_cast<Letter>(gen(rng));
    if (sign(rng)) l = -l;
    if (!ls.empty() && ls.back() == -l) continue;
    ls.push_back(l);
  }
  return Word::reduce(rank, ls);
}

// all freely reduced words of length exactly n over rank 2, lexicographic
void enumerate_words(int rank, int n, std::vector<Letter>& cur,
                     std::vector<Word>& out) {
  if (n == 0) {
    out.emplace_back(Word::reduce(rank, cur));
    return;
  }
  for (int i = 1; i <= rank; ++i) {
    for (Letter l : {static_cast<Letter>(i), static_cast<Letter>(-i)}) {
      if (!cur.empty() && cur.back() == -l) continue;
      cur.push_back(l);
      enumerate_words(rank, n - 1, cur, out);
      cur.pop_back();
    }
  }
}

std::vector<Word> words_up_to(int rank, int max_len) {
  std::vector<Word> out;
  std::vector<Letter> cur;
  for (int n = 0; n <= max_len; ++n) enumerate_words(rank, n, cur, out);
  return out;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(W("aA").empty());
  CHECK(W("abBA").empty());
  CHECK(W("abA") * W("aBA") == Word(2));
  CHECK(W("ab") * W("BA") == Word(2));
  CHECK(Word::reduce(2, {1, -1, 2, -2}) == Word(2));
  CHECK(Word::reduce(2, {1, 2, -2, 1}) == W("aa"));
  CHECK(W("ab").inverse() == W("BA"));
  CHECK(W("aBab").inverse() == W("BAbA"));
  CHECK(W("ab").power(3) == W("ababab"));
  CHECK(W("ab").power(-2) == W("BABA"));
  CHECK(W("ab").power(0) == Word(2));
  CHECK(W("a").power(-3) == W("AAA"));
}

TEST_CASE("word ordering is length then letter rank a < A < b < B") {
  CHECK(letter_key(1) == 0);
  CHECK(letter_key(-1) == 1);
  CHECK(letter_key(2) == 2);
  CHECK(letter_key(-2) == 3);
  CHECK(Word(2) < W("a"));
  CHECK(W("a") < W("A"));
  CHECK(W("A") < W("b"));
  CHECK(W("b") < W("B"));
  CHECK(W("B") < W("aa"));
  CHECK(W("ab") < W("aB"));
}

TEST_CASE("parse and print round-trip") {
  CHECK(to_string(Word(3)) == "1");
  CHECK(Word::parse("1", 5) == Word(5));
  CHECK(to_string(W("abAB")) == "abAB");
  CHECK(to_string(Word::generator(26, 26)) == "z");
  CHECK(to_string(Word::generator(27, 27)) == "x27");
  CHECK(to_string(Word::generator(30, 27).inverse()) == "X27");
  CHECK(Word::parse("x1", 2) == W("a"));
  CHECK(Word::parse("X2", 2) == W("B"));
  CHECK(Word::parse("x27X27", 27) == Word(27));
  // 'x' not followed by a digit is the 24th letter
  CHECK(Word::parse("xa", 24) == Word::generator(24, 24) * Word::generator(24, 1));
  for (const char* s : {"abAB", "x27yx28", "zZa"}) {
    Word w = Word::parse(s, 30);
    CHECK(Word::parse(to_string(w), 30) == w);
  }
  CHECK_THROWS_AS(Word::parse("ab2", 2), parse_error);
  CHECK_THROWS_AS(Word::parse("a b", 2), parse_error);
  CHECK_THROWS_AS(Word::parse("", 2), parse_error);
  CHECK_THROWS_AS(Word::parse("c", 2), parse_error);
  CHECK_THROWS_AS(Word::parse("x0", 2), parse_error);
  CHECK_THROWS_AS(Word::parse("x3", 2), parse_error);
  CHECK_THROWS_AS(Word::parse("11", 2), parse_error);
  try {
    Word::parse("abc", 2);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("alphabet mismatch is refused") {
  CHECK_THROWS_AS(W("a", 2) * W("a", 3), alphabet_mismatch);
  CHECK_THROWS_AS(Word::reduce(2, {3}), error);
}

TEST_CASE("cyclic reduction") {
  auto [core1, c1] = cyclic_reduce(W("Aba"));
  CHECK(core1 == W("b"));
  CHECK(c1 == W("A"));
  auto [core2, c2] = cyclic_reduce(W("BAbab"));
  CHECK(core2 == W("b"));
  CHECK(c2 == W("BA"));
  auto [core3, c3] = cyclic_reduce(W("ab"));
  CHECK(core3 == W("ab"));
  CHECK(c3.empty());
  auto [core4, c4] = cyclic_reduce(Word(2));
  CHECK(core4.empty());
  CHECK(c4.empty());

  std::mt19937 rng(12345);
  for (int it = 0; it < 200; ++it) {
    Word u = random_word(rng, 2, it % 9);
    auto [core, c] = cyclic_reduce(u);
    CHECK(c * core * c.inverse() == u);
    // core is cyclically reduced: first and last letters are not inverse
    if (core.size() >= 2) CHECK(core[0] != -core[core.size() - 1]);
  }
}

TEST_CASE("conjugacy in the free group") {
  auto g1 = conjugate_in_free(W("ab"), W("ba"));
  REQUIRE(g1.has_value());
  CHECK(conjugated(W("ab"), *g1) == W("ba"));
  CHECK(*g1 == W("a"));

  auto g2 = conjugate_in_free(W("abAB"), W("bABa"));
  REQUIRE(g2.has_value());
  CHECK(conjugated(W("abAB"), *g2) == W("bABa"));

  CHECK_FALSE(conjugate_in_free(W("a"), W("b")).has_value());
  CHECK_FALSE(conjugate_in_free(W("ab"), W("aB")).has_value());
  CHECK_FALSE(conjugate_in_free(W("a"), W("aa")).has_value());
  CHECK(conjugate_in_free(Word(2), Word(2)).has_value());
  CHECK_FALSE(conjugate_in_free(Word(2), W("a")).has_value());
}

TEST_CASE("conjugacy agrees with brute force on all short pairs") {
  auto words = words_up_to(2, 4);
  auto conjugators = words_up_to(2, 6);
  for (const Word& u : words) {
    for (const Word& v : words) {
      auto g = conjugate_in_free(u, v);
      bool brute = false;
      for (const Word& h : conjugators) {
        if (conjugated(u, h) == v) {
          brute = true;
          break;
        }
      }
      // a conjugator between words of length <= 4 fits in the <= 6 ball
      REQUIRE(g.has_value() == brute);
      if (g) CHECK(conjugated(u, *g) == v);
      CHECK((CyclicWord(u) == CyclicWord(v)) == brute);
    }
  }
}

TEST_CASE("cyclic words canonicalize rotations") {
  CHECK(CyclicWord(W("ab")) == CyclicWord(W("ba")));
  CHECK(CyclicWord(W("Aba")) == CyclicWord(W("b")));
  CHECK(CyclicWord(W("abAB")).canonical() == W("abAB"));
  CHECK(CyclicWord(W("ba")).canonical() == W("ab"));
  CHECK(CyclicWord(W("ab")) != CyclicWord(W("aB")));
  std::mt19937 rng(777);
  for (int it = 0; it < 200; ++it) {
    Word u = random_word(rng, 3, 1 + it % 8);
    Word g = random_word(rng, 3, it % 5);
    CHECK(CyclicWord(u) == CyclicWord(conjugated(u, g)));
  }
}

TEST_CASE("random conjugate pairs are always recovered") {
  std::mt19937 rng(424242);
  for (int it = 0; it < 300; ++it) {
    Word u = random_word(rng, 2, it % 10);
    Word g = random_word(rng, 2, it % 7);
    Word v = conjugated(u, g);
    auto h = conjugate_in_free(u, v);
    REQUIRE(h.has_value());
    CHECK(conjugated(u, *h) == v);
  }
}

TEST_CASE("group axioms hold on random words") {
  std::mt19937 rng(99);
  for (int it = 0; it < 200; ++it) {
    Word a = random_word(rng, 3, it % 12);
    Word b = random_word(rng, 3, (it * 7) % 12);
    Word c = random_word(rng, 3, (it * 3) % 12);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * a.inverse() == Word(3));
    CHECK((a * b).inverse() == b.inverse() * a.inverse());
    CHECK(conjugated(conjugated(a, b), c) == conjugated(a, b * c));
  }
  CHECK(commutator(W("a"), W("b")) == W("ABab"));
}

TEST_CASE("simultaneous conjugacy of tuples") {
  std::vector<Word> us = {W("ab"), W("b")};
  std::vector<Word> vs = {conjugated(W("ab"), W("bA")),
                          conjugated(W("b"), W("bA"))};
  auto g = simultaneous_conjugator(us, vs);
  REQUIRE(g.has_value());
  CHECK(conjugated(us[0], *g) == vs[0]);
  CHECK(conjugated(us[1], *g) == vs[1]);

  // first coordinates conjugate, second pair rules every candidate out
  std::vector<Word> xs = {W("a"), W("b")};
  std::vector<Word> ys = {W("a"), W("a")};
  CHECK_FALSE(simultaneous_conjugator(xs, ys).has_value());

  // centralizer of the first entry must be scanned: conjugating by a power
  // of a fixes "a" but moves "b"
  std::vector<Word> ps = {W("a"), W("b")};
  std::vector<Word> qs = {W("a"), conjugated(W("b"), W("aaa"))};
  auto h = simultaneous_conjugator(ps, qs);
  REQUIRE(h.has_value());
  CHECK(conjugated(ps[0], *h) == qs[0]);
  CHECK(conjugated(ps[1], *h) == qs[1]);

  // leading trivial entries are skipped
  std::vector<Word> es = {Word(2), W("ab")};
  std::vector<Word> fs = {Word(2), conjugated(W("ab"), W("B"))};
  auto k = simultaneous_conjugator(es, fs);
  REQUIRE(k.has_value());
  CHECK(conjugated(es[1], *k) == fs[1]);

  std::mt19937 rng(31337);
  for (int it = 0; it < 150; ++it) {
    std::vector<Word> as, bs;
    Word g2 = random_word(rng, 2, it % 6);
    for (int j = 0; j < 3; ++j) {
      Word a = random_word(rng, 2, (it + j) % 7);
      as.push_back(a);
      bs.push_back(conjugated(a, g2));
    }
    auto r = simultaneous_conjugator(as, bs);
    REQUIRE(r.has_value());
    for (int j = 0; j < 3; ++j) CHECK(conjugated(as[j], *r) == bs[j]);
  }
}

TEST_CASE("word hashing separates small words") {
  auto words = words_up_to(2, 5);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      CHECK(words[i].hash() != words[j].hash());
}
