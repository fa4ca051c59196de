#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sgt/examples.hpp>
#include <sgt/returns.hpp>
#include <sgt/stallings.hpp>

using namespace sgt;

namespace {

MonoidWord mw(const std::string& text, int n = 4) {
  return parse_monoid_word(text, default_symbols(n));
}

std::vector<std::string> rendered_theta(const ReturnStructure& rs, int alphabet) {
  std::vector<std::string> out;
  for (const MonoidWord& w : rs.theta) out.push_back(render(w, default_symbols(alphabet)));
  return out;
}

std::vector<std::string> rendered_images(const Substitution& s) {
  std::vector<std::string> out;
  std::string syms = default_symbols(s.alphabet().size);
  for (Letter a = 0; a < s.alphabet().size; ++a) out.push_back(render(s.image(a), syms));
  return out;
}

// theta extended to a homomorphism on index words
MonoidWord theta_apply(const ReturnStructure& rs, const MonoidWord& idx) {
  MonoidWord out;
  for (Letter i : idx) {
    const MonoidWord& r = rs.theta[static_cast<size_t>(i)];
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

TEST_CASE("connection search") {
  SECTION("thue-morse") {
    Connection c = find_connection(examples::thue_morse());
    CHECK(c == Connection{{0}, {1}, 2});
  }
  SECTION("period doubling") {
    Connection c = find_connection(examples::period_doubling());
    CHECK(c == Connection{{1}, {0}, 2});
  }
  SECTION("invertible counterexample") {
    Connection c = find_connection(examples::invertible_counterexample());
    CHECK(c == Connection{{1}, {0}, 2});
  }
  SECTION("fibonacci") {
    CHECK(find_connection(examples::fibonacci()) == Connection{{1}, {0}, 2});
  }
  SECTION("periodic ternary has a connection of order 1") {
    CHECK(find_connection(examples::periodic_ternary()) == Connection{{1}, {0}, 1});
  }
  SECTION("one-letter substitution falls back to a repeated letter") {
    Substitution s(Alphabet{1}, {MonoidWord{0, 0}});
    CHECK(find_connection(s) == Connection{{0}, {0}, 1});
  }
  CHECK_THROWS_AS(find_connection(Substitution::identity(Alphabet{1})), unsupported_error);
}

TEST_CASE("connection verification") {
  Substitution tm = examples::thue_morse();
  CHECK(verify_connection(tm, mw("0", 2), mw("10", 2), 2));
  CHECK_FALSE(verify_connection(tm, mw("0", 2), mw("1", 2), 1));
  CHECK_FALSE(verify_connection(tm, mw("0", 2), mw("1", 2), 4));  // not the least order
  CHECK_FALSE(verify_connection(tm, mw("0", 2), mw("1", 2), 0));
  SECTION("repeated-letter pairs are genuine connections too") {
    CHECK(verify_connection(tm, mw("0", 2), mw("0", 2), 2));
    CHECK(verify_connection(examples::period_doubling(), mw("0", 2), mw("0", 2), 2));
  }
  SECTION("pairs outside the language are rejected") {
    // 11 is not a factor of the period doubling language
    CHECK_FALSE(verify_connection(examples::period_doubling(), mw("1", 2), mw("1", 2), 2));
  }
}

TEST_CASE("return substitutions") {
  SECTION("thue-morse at (0,1)") {
    ReturnStructure rs = durand(examples::thue_morse(), Connection{{0}, {1}, 2});
    CHECK(rendered_images(rs.derived) == examples::tm_derived_01());
    CHECK(rendered_theta(rs, 2) == std::vector<std::string>{"100", "10", "1100", "110"});
  }
  SECTION("thue-morse at the two-letter connection (0,10)") {
    ReturnStructure rs = durand(examples::thue_morse(), Connection{{0}, {1, 0}, 2});
    CHECK(rendered_images(rs.derived) == examples::tm_derived_010());
  }
  SECTION("period doubling at (1,0)") {
    ReturnStructure rs = durand(examples::period_doubling(), Connection{{1}, {0}, 2});
    CHECK(rendered_images(rs.derived) == examples::pd_derived_10());
  }
  SECTION("seven return words of the invertible counterexample") {
    ReturnStructure rs = durand(examples::invertible_counterexample(), Connection{{1}, {0}, 2});
    CHECK(rendered_theta(rs, 4) == examples::xi_theta_10());
    CHECK(rendered_images(rs.derived) == examples::xi_derived_10());
  }
  SECTION("periodic input aborts with the singleton signal") {
    Substitution p = examples::periodic_ternary();
    Connection c = find_connection(p);
    try {
      durand(p, c);
      FAIL("expected a periodicity signal");
    } catch (const periodicity_signal& sig) {
      std::set<MonoidWord> rotations{mw("021", 3), mw("210", 3), mw("102", 3)};
      CHECK(rotations.count(sig.period_word) == 1);
    }
  }
}

TEST_CASE("factorization rows") {
  Substitution xi = examples::invertible_counterexample();
  ReturnStructure rs = durand(xi, Connection{{1}, {0}, 2});
  SECTION("row 0") {
    CHECK(factorize_over_returns(xi, rs, 0) == std::vector<int>{0, 0, 1, 0, 2});
  }
  SECTION("row 5") {
    CHECK(factorize_over_returns(xi, rs, 5) ==
          std::vector<int>{0, 0, 3, 5, 6, 1, 0, 5, 0, 0, 0, 2});
  }
  SECTION("all rows agree with the return substitution") {
    for (int j = 0; j < 7; ++j) {
      std::vector<int> row = factorize_over_returns(xi, rs, j);
      CHECK(MonoidWord(row.begin(), row.end()) == rs.derived.image(j));
    }
  }
  SECTION("thue-morse row 0 at (0,1)") {
    ReturnStructure tm = durand(examples::thue_morse(), Connection{{0}, {1}, 2});
    CHECK(factorize_over_returns(examples::thue_morse(), tm, 0) ==
          std::vector<int>{0, 1, 2, 3});
  }
  CHECK_THROWS_AS(factorize_over_returns(xi, rs, 9), input_error);
}

TEST_CASE("return structure invariants") {
  struct Fixture {
    Substitution s;
    Connection c;
  };
  std::vector<Fixture> fixtures{
      {examples::thue_morse(), Connection{{0}, {1}, 2}},
      {examples::thue_morse(), Connection{{0}, {1, 0}, 2}},
      {examples::period_doubling(), Connection{{1}, {0}, 2}},
      {examples::invertible_counterexample(), Connection{{1}, {0}, 2}},
      {examples::fibonacci(), Connection{{1}, {0}, 2}},
  };
  for (const Fixture& fix : fixtures) {
    ReturnStructure rs = durand(fix.s, fix.c);
    Substitution sk = fix.s.power(fix.c.order);
    MonoidWord uv = fix.c.u;
    uv.insert(uv.end(), fix.c.v.begin(), fix.c.v.end());

    SECTION("defining relation on short index words") {
      int n = rs.derived.alphabet().size;
      std::vector<MonoidWord> words;
      for (Letter a = 0; a < n; ++a) words.push_back({a});
      for (Letter a = 0; a < n; ++a)
        for (Letter b = 0; b < n; ++b) {
          words.push_back({a, b});
          for (Letter c = 0; c < n; ++c) words.push_back({a, b, c});
        }
      for (const MonoidWord& w : words)
        CHECK(theta_apply(rs, rs.derived.apply(w)) == sk.apply(theta_apply(rs, w)));
    }

    SECTION("each return word separates two consecutive occurrences") {
      int needed = 0;
      for (const MonoidWord& r : rs.theta) needed = std::max(needed, static_cast<int>(r.size()));
      auto factors = language_factors(fix.s, needed + static_cast<int>(uv.size()) + 2);
      for (const MonoidWord& r : rs.theta) {
        MonoidWord urv = fix.c.u;
        urv.insert(urv.end(), r.begin(), r.end());
        urv.insert(urv.end(), fix.c.v.begin(), fix.c.v.end());
        CHECK(factors.count(urv) == 1);
        CHECK(starts_with(urv, uv));
        CHECK(ends_with(urv, uv));
        CHECK(occurrences(urv, uv).size() == 2);
      }
    }

    SECTION("ordering by leftmost occurrence") {
      // grow u s^(nk)(v) until every return word shows up
      MonoidWord w = fix.c.v;
      for (int rounds = 0; rounds < 12; ++rounds) {
        w = sk.apply(w);
        MonoidWord uw = fix.c.u;
        uw.insert(uw.end(), w.begin(), w.end());
        std::vector<int> firsts;
        bool all = true;
        for (const MonoidWord& r : rs.theta) {
          MonoidWord urv = fix.c.u;
          urv.insert(urv.end(), r.begin(), r.end());
          urv.insert(urv.end(), fix.c.v.begin(), fix.c.v.end());
          auto occ = occurrences(uw, urv);
          if (occ.empty()) {
            all = false;
            break;
          }
          firsts.push_back(occ.front());
        }
        if (!all) continue;
        CHECK(std::is_sorted(firsts.begin(), firsts.end()));
        break;
      }
    }

    SECTION("return sets are codes, return substitutions primitive and proper") {
      CHECK(is_code(rs.theta));
      CHECK(is_primitive(rs.derived));
      CHECK(is_proper(rs.derived));
    }
  }
}

TEST_CASE("freely generating positive sets are codes") {
  // the converse fails: return sets are codes whose subgroups may collapse
  std::mt19937 rng(606);
  std::uniform_int_distribution<int> letters(0, 2), len(1, 5), count(2, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<MonoidWord> words;
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
      MonoidWord w;
      int l = len(rng);
      for (int j = 0; j < l; ++j) w.push_back(letters(rng));
      words.insert(w);
    }
    std::vector<GroupWord> gens;
    for (const MonoidWord& w : words) gens.push_back(GroupWord::from_monoid(Alphabet{3}, w));
    int r = rank(core(fold(flower(Alphabet{3}, gens))));
    if (r == static_cast<int>(words.size()))
      CHECK(is_code(std::vector<MonoidWord>(words.begin(), words.end())));
  }
  SECTION("a code whose subgroup collapses") {
    std::vector<MonoidWord> theta{mw("100", 2), mw("10", 2), mw("1100", 2), mw("110", 2)};
    CHECK(is_code(theta));
    std::vector<GroupWord> gens;
    for (const MonoidWord& w : theta) gens.push_back(GroupWord::from_monoid(Alphabet{2}, w));
    CHECK(rank(core(fold(flower(Alphabet{2}, gens)))) == 2);
  }
}

TEST_CASE("code test") {
  CHECK(is_code({mw("001"), mw("02001"), mw("02001301"), mw("02320001"),
                 mw("02001301320301"), mw("02320301"), mw("001320001")}));
  CHECK_FALSE(is_code({mw("0", 2), mw("01", 2), mw("10", 2)}));  // 010 factors twice
  CHECK(is_code({mw("0", 2)}));
  CHECK(is_code({mw("01", 2), mw("10", 2)}));
  CHECK_FALSE(is_code({MonoidWord{}, mw("0", 2)}));
  CHECK_FALSE(is_code({mw("0", 2), mw("0", 2)}));  // duplicate word
  CHECK_THROWS_AS(is_code({}), input_error);
  SECTION("prefix codes always pass") {
    CHECK(is_code({mw("00", 2), mw("01", 2), mw("1", 2)}));
  }
}
