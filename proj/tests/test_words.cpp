#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sgt/words.hpp>

using namespace sgt;

namespace {

GroupWord gw(const std::string& text, int n = 4) {
  return parse_group_word(text, default_symbols(n));
}

MonoidWord mw(const std::string& text, int n = 4) {
  return parse_monoid_word(text, default_symbols(n));
}

// random unreduced signed sequence
std::vector<SignedLetter> random_raw(std::mt19937& rng, int alphabet, int len) {
  std::uniform_int_distribution<int> letters(0, alphabet - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<SignedLetter> raw;
  for (int i = 0; i < len; ++i) raw.push_back({letters(rng), coin(rng) ? +1 : -1});
  return raw;
}

}  // namespace

TEST_CASE("free reduction") {
  Alphabet a4{4};
  SECTION("adjacent cancellation") {
    std::vector<SignedLetter> raw{{0, +1}, {1, +1}, {1, -1}, {2, +1}};
    CHECK(reduce(a4, raw) == gw("02"));
  }
  SECTION("total cancellation") {
    std::vector<SignedLetter> raw{{2, -1}, {2, +1}};
    CHECK(reduce(a4, raw).empty());
  }
  SECTION("already reduced input is untouched") {
    GroupWord w = gw("02'02'31'20'");
    CHECK(w.size() == 8);
    CHECK(render(w, default_symbols(4)) == "02'02'31'20'");
  }
  SECTION("letter out of range") {
    std::vector<SignedLetter> raw{{7, +1}};
    CHECK_THROWS_AS(reduce(a4, raw), input_error);
  }
  SECTION("idempotence on random input") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
      auto raw = random_raw(rng, 4, 30);
      GroupWord once = reduce(a4, raw);
      std::vector<SignedLetter> again;
      for (int i = 0; i < once.size(); ++i) again.push_back(once.syllable(i));
      CHECK(reduce(a4, again) == once);
    }
  }
}

TEST_CASE("inversion") {
  CHECK(GroupWord(Alphabet{4}).inverse().empty());
  CHECK(gw("0").inverse() == gw("0'"));
  CHECK(gw("01'2").inverse() == gw("2'10'"));
  SECTION("w * w^-1 = e") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      GroupWord w = reduce(Alphabet{3}, random_raw(rng, 3, 20));
      CHECK((w * w.inverse()).empty());
      CHECK(w.inverse().inverse() == w);
    }
  }
}

TEST_CASE("reduced concatenation") {
  CHECK(gw("03'") * gw("31'") == gw("01'"));
  CHECK(gw("01") * gw("1'0'2") == gw("2"));
  CHECK((gw("012") * GroupWord(Alphabet{4})) == gw("012"));
  SECTION("alphabet mismatch") {
    CHECK_THROWS_AS(gw("01", 2) * gw("01", 3), input_error);
  }
  SECTION("associativity on random words") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      GroupWord u = reduce(Alphabet{3}, random_raw(rng, 3, 8));
      GroupWord v = reduce(Alphabet{3}, random_raw(rng, 3, 8));
      GroupWord w = reduce(Alphabet{3}, random_raw(rng, 3, 8));
      CHECK(((u * v) * w) == (u * (v * w)));
    }
  }
}

TEST_CASE("signed letter counts") {
  CHECK(signed_count(GroupWord(Alphabet{4}), 2) == 0);
  GroupWord w = gw("02'02'31'20'");
  CHECK(signed_count(w, 0) == 1);
  CHECK(signed_count(w, 2) == -1);
  CHECK(signed_count(w, 3) == 1);
  SECTION("additive under concatenation") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
      GroupWord u = reduce(Alphabet{4}, random_raw(rng, 4, 12));
      GroupWord v = reduce(Alphabet{4}, random_raw(rng, 4, 12));
      for (Letter b = 0; b < 4; ++b)
        CHECK(signed_count(u * v, b) == signed_count(u, b) + signed_count(v, b));
    }
  }
  SECTION("positive words count plain occurrences") {
    MonoidWord u = mw("0210012");
    GroupWord g = GroupWord::from_monoid(Alphabet{4}, u);
    for (Letter b = 0; b < 4; ++b) {
      long plain = static_cast<long>(std::count(u.begin(), u.end(), b));
      CHECK(signed_count(g, b) == plain);
    }
  }
}

TEST_CASE("occurrences") {
  CHECK(occurrences(mw("100100102"), mw("10")) == std::vector<int>{0, 3, 6});
  CHECK(occurrences(mw("0101", 2), mw("01", 2)) == std::vector<int>{0, 2});
  CHECK(occurrences(mw("000", 2), mw("1", 2)).empty());
  CHECK(occurrences(mw("01", 2), MonoidWord{}) == std::vector<int>{0, 1, 2});
  CHECK(occurrences(MonoidWord{}, mw("0", 2)).empty());
}

TEST_CASE("word syntax") {
  CHECK(render(GroupWord(Alphabet{4}), default_symbols(4)) == "e");
  CHECK(render(MonoidWord{}, default_symbols(4)) == "e");
  CHECK(gw("e").empty());
  CHECK(render(gw("02'02'31'20'"), default_symbols(4)) == "02'02'31'20'");
  CHECK(mw("100100102", 3) == MonoidWord{1, 0, 0, 1, 0, 0, 1, 0, 2});
  CHECK_THROWS_AS(parse_group_word("05", default_symbols(4)), input_error);
  CHECK_THROWS_AS(parse_monoid_word("01'", default_symbols(4)), input_error);
  CHECK_THROWS_AS(default_symbols(63), input_error);
  SECTION("render/parse round trip") {
    std::mt19937 rng(321);
    for (int trial = 0; trial < 50; ++trial) {
      GroupWord w = reduce(Alphabet{5}, random_raw(rng, 5, 15));
      CHECK(parse_group_word(render(w, default_symbols(5)), default_symbols(5)) == w);
    }
  }
}

TEST_CASE("monoid embedding") {
  GroupWord g = GroupWord::from_monoid(Alphabet{3}, mw("0120", 3));
  CHECK(g.is_positive());
  CHECK(g.to_monoid() == mw("0120", 3));
  CHECK_THROWS_AS(gw("01'").to_monoid(), domain_error);
}

TEST_CASE("internal operations have no 62-letter bound") {
  Alphabet big{100};
  std::vector<SignedLetter> raw{{99, +1}, {70, -1}, {70, +1}, {0, +1}};
  GroupWord w = reduce(big, raw);
  CHECK(w.size() == 2);
  CHECK(signed_count(w, 99) == 1);
  CHECK((w * w.inverse()).empty());
  // only the textual format is capped
  CHECK_THROWS_AS(render(w, default_symbols(62)), input_error);
}
