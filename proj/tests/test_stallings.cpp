#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sgt/examples.hpp>
#include <sgt/stallings.hpp>

using namespace sgt;

namespace {

GroupWord gw(const std::string& text, int n) {
  return parse_group_word(text, default_symbols(n));
}

std::vector<GroupWord> gws(const std::vector<std::string>& texts, int n) {
  std::vector<GroupWord> out;
  for (const std::string& t : texts) out.push_back(gw(t, n));
  return out;
}

GroupWord random_reduced(std::mt19937& rng, int alphabet, int maxlen) {
  std::uniform_int_distribution<int> letters(0, alphabet - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> len(0, maxlen);
  std::vector<SignedLetter> raw;
  int target = len(rng);
  for (int i = 0; i < target; ++i) raw.push_back({letters(rng), coin(rng) ? +1 : -1});
  return reduce(Alphabet{alphabet}, raw);
}

// brute-force membership oracle: all products of up to three generators
std::set<GroupWord> short_products(const std::vector<GroupWord>& gens, Alphabet alph) {
  std::vector<GroupWord> pool{GroupWord(alph)};
  for (const GroupWord& g : gens) {
    pool.push_back(g);
    pool.push_back(g.inverse());
  }
  std::set<GroupWord> out;
  for (const GroupWord& a : pool)
    for (const GroupWord& b : pool)
      for (const GroupWord& c : pool) out.insert(a * b * c);
  return out;
}

}  // namespace

TEST_CASE("flower construction") {
  Alphabet a2{2};
  StallingsAutomaton empty = flower(a2, std::vector<GroupWord>{});
  CHECK(empty.num_states() == 1);
  CHECK(empty.edges().empty());

  StallingsAutomaton loop = flower(a2, gws({"0"}, 2));
  CHECK(loop.num_states() == 1);
  REQUIRE(loop.edges().size() == 1);
  CHECK(loop.edges()[0] == Edge{0, 0, 0});

  StallingsAutomaton two = flower(a2, gws({"01'", "1"}, 2));
  CHECK(two.num_states() == 2);
  CHECK(two.edges().size() == 3);
}

TEST_CASE("folding") {
  Alphabet a2{2};
  SECTION("idempotent on folded input") {
    StallingsAutomaton f = fold(flower(a2, gws({"01", "10"}, 2)));
    CHECK(f.check_folded());
    CHECK(fold(f) == f);
  }
  SECTION("duplicate generators collapse") {
    CHECK(fold(flower(a2, gws({"01", "01"}, 2))) == fold(flower(a2, gws({"01"}, 2))));
  }
  SECTION("image of the (0,10) thue-morse return substitution") {
    auto fix = examples::tm_image_automaton();
    REQUIRE(fix.automaton.check_folded());
    StallingsAutomaton folded =
        fold(flower(Alphabet{4}, gws({"01", "023132", "0232", "0131"}, 4)));
    CHECK(canonicalized(folded) == canonicalized(fix.automaton));
    CHECK(rank(folded) == 4);
  }
  SECTION("confluence: shuffled fold orders answer membership identically") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
      int alphabet = 2 + trial % 3;
      std::uniform_int_distribution<int> count(1, 5);
      std::vector<GroupWord> gens;
      int k = count(rng);
      for (int i = 0; i < k; ++i) gens.push_back(random_reduced(rng, alphabet, 8));
      StallingsAutomaton plain = fold(flower(Alphabet{alphabet}, gens));
      StallingsAutomaton shuffled =
          fold(flower(Alphabet{alphabet}, gens), static_cast<uint32_t>(trial * 31 + 1));
      CHECK(plain == shuffled);  // canonical forms agree outright
      for (int w = 0; w < 200; ++w) {
        GroupWord word = random_reduced(rng, alphabet, 10);
        CHECK(membership(plain, word) == membership(shuffled, word));
      }
    }
  }
}

TEST_CASE("membership") {
  SECTION("against the short-product oracle") {
    std::mt19937 rng(31415);
    for (int trial = 0; trial < 20; ++trial) {
      int alphabet = 2 + trial % 2;
      std::vector<GroupWord> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(random_reduced(rng, alphabet, 5));
      StallingsAutomaton a = fold(flower(Alphabet{alphabet}, gens));
      for (const GroupWord& w : short_products(gens, Alphabet{alphabet}))
        CHECK(membership(a, w));
    }
  }
  SECTION("five-letter witness automaton") {
    StallingsAutomaton wit = examples::restriction_witness_automaton();
    REQUIRE(wit.check_folded());
    for (const std::string& img : examples::xi_restriction_images())
      CHECK(membership(wit, gw(img, 5)));
    CHECK_FALSE(membership(wit, gw("1", 5)));
    CHECK(membership(wit, GroupWord(Alphabet{5})));
  }
}

TEST_CASE("core trimming") {
  Alphabet a2{2};
  SECTION("roses are already cores") {
    StallingsAutomaton rose = fold(flower(a2, gws({"0", "1"}, 2)));
    CHECK(core(rose) == rose);
    CHECK(is_rose(rose));
  }
  SECTION("dead tails disappear") {
    // path automaton 0 -0-> 1 -1-> 2 with a loop at state 0
    StallingsAutomaton with_tail(a2, 3, {{0, 0, 1}, {1, 1, 2}, {0, 1, 0}}, true);
    StallingsAutomaton trimmed = core(with_tail);
    CHECK(trimmed.num_states() == 1);
    CHECK(trimmed.edges().size() == 1);
    GroupWord w = gw("1", 2);
    CHECK(membership(with_tail, w) == membership(trimmed, w));
  }
  SECTION("reference automata are already cores") {
    auto fix = examples::xi_image_automaton();
    CHECK(core(fix.automaton) == canonicalized(fix.automaton));
  }
}

TEST_CASE("spanning trees and bases") {
  SECTION("rose has an empty tree and letter basis") {
    StallingsAutomaton rose = fold(flower(Alphabet{2}, gws({"0", "1"}, 2)));
    SpanningTree t = spanning_tree(rose);
    CHECK(t.edge_ids.empty());
    SubgroupBasis basis = basis_from_tree(rose, t);
    REQUIRE(basis.words.size() == 2);
    CHECK(basis.words[0] == gw("0", 2));
    CHECK(basis.words[1] == gw("1", 2));
  }
  SECTION("line automaton is all tree") {
    StallingsAutomaton line(Alphabet{2}, 3, {{0, 0, 1}, {1, 1, 2}}, true);
    SpanningTree t = spanning_tree(line);
    CHECK(t.edge_ids == std::vector<int>{0, 1});
    CHECK(basis_from_tree(line, t).words.empty());
  }
  SECTION("marked tree of the thue-morse image automaton") {
    auto fix = examples::tm_image_automaton();
    SpanningTree t = tree_from_edges(fix.automaton, fix.tree_edges);
    SubgroupBasis basis = basis_from_tree(fix.automaton, t);
    std::set<GroupWord> got(basis.words.begin(), basis.words.end());
    CHECK(got == std::set<GroupWord>{gw("03'", 4), gw("31", 4), gw("3232", 4),
                                     gw("2'12'3'", 4)});
  }
  SECTION("marked tree of the seven-letter image automaton") {
    auto fix = examples::xi_image_automaton();
    SpanningTree t = tree_from_edges(fix.automaton, fix.tree_edges);
    SubgroupBasis basis = basis_from_tree(fix.automaton, t);
    std::set<GroupWord> got(basis.words.begin(), basis.words.end());
    std::set<GroupWord> expect;
    for (const GroupWord& w : examples::xi_restriction_basis()) expect.insert(w);
    CHECK(got == expect);
    CHECK(rank(fix.automaton) == 5);
  }
  SECTION("invalid external trees are rejected") {
    auto fix = examples::tm_image_automaton();
    CHECK_THROWS_AS(tree_from_edges(fix.automaton, {0, 1}), input_error);
    CHECK_THROWS_AS(tree_from_edges(fix.automaton, {0, 1, 2}), input_error);  // does not span
  }
}

TEST_CASE("expression in a basis") {
  SECTION("basis elements express as single letters") {
    auto fix = examples::xi_image_automaton();
    SpanningTree t = tree_from_edges(fix.automaton, fix.tree_edges);
    SubgroupBasis basis = basis_from_tree(fix.automaton, t);
    for (int i = 0; i < static_cast<int>(basis.words.size()); ++i) {
      GroupWord expr = express_in_basis(fix.automaton, t, basis.words[static_cast<size_t>(i)]);
      REQUIRE(expr.size() == 1);
      CHECK(expr.letter(0) == i);
      CHECK(expr.sign(0) == +1);
    }
    CHECK(express_in_basis(fix.automaton, t, GroupWord(Alphabet{7})).empty());
  }
  SECTION("round trip through evaluation") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<GroupWord> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(random_reduced(rng, 3, 6));
      StallingsAutomaton a = core(fold(flower(Alphabet{3}, gens)));
      SpanningTree t = spanning_tree(a);
      SubgroupBasis basis = basis_from_tree(a, t);
      GeneratorExpresser over_basis(Alphabet{3}, basis.words);
      for (const GroupWord& w : short_products(gens, Alphabet{3})) {
        if (!membership(a, w)) continue;
        GroupWord expr = express_in_basis(a, t, w);
        CHECK(evaluate_in(expr, basis.words) == w);
        // expressions over a free basis are unique, so the two independent
        // rewriting routes must agree syllable for syllable
        CHECK(over_basis.express(w) == expr);
      }
    }
  }
  SECTION("non-members are rejected") {
    auto fix = examples::tm_image_automaton();
    SpanningTree t = tree_from_edges(fix.automaton, fix.tree_edges);
    CHECK_THROWS_AS(express_in_basis(fix.automaton, t, gw("3", 4)), membership_error);
  }
  SECTION("factorization table of the seven-letter return substitution") {
    GroupEndomorphism e = GroupEndomorphism::from(
        durand(examples::invertible_counterexample(), Connection{{1}, {0}, 2}).derived);
    auto fix = examples::xi_image_automaton();
    SpanningTree t = tree_from_edges(fix.automaton, fix.tree_edges);
    SubgroupBasis tree_basis = basis_from_tree(fix.automaton, t);
    auto table = examples::xi_restriction_table();
    std::vector<GroupWord> basis = examples::xi_restriction_basis();
    for (size_t i = 0; i < basis.size(); ++i) {
      GroupWord expr = express_in_basis(fix.automaton, t, e.apply(basis[i]));
      REQUIRE(expr.is_positive());
      std::vector<std::string> words;
      for (int k = 0; k < expr.size(); ++k)
        words.push_back(render(tree_basis.words[static_cast<size_t>(expr.letter(k))],
                               default_symbols(7)));
      CHECK(words == table[i]);
    }
  }
}

TEST_CASE("folding the restriction images reproduces the witness automaton") {
  GroupEndomorphism e = GroupEndomorphism::from(
      durand(examples::invertible_counterexample(), Connection{{1}, {0}, 2}).derived);
  Restriction r = restrict_endo(e, 1, examples::xi_restriction_basis());
  StallingsAutomaton folded = core(fold(flower(Alphabet{5}, r.restricted.images())));
  CHECK(folded == canonicalized(examples::restriction_witness_automaton()));
}

TEST_CASE("rank") {
  CHECK(rank(examples::tm_image_automaton().automaton) == 4);
  CHECK(rank(examples::xi_image_automaton().automaton) == 5);
  CHECK(rank(examples::restriction_witness_automaton()) == 5);
  SECTION("at most the number of generators") {
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<GroupWord> gens;
      for (int i = 0; i < 4; ++i) gens.push_back(random_reduced(rng, 3, 6));
      CHECK(rank(core(fold(flower(Alphabet{3}, gens)))) <= 4);
    }
  }
}

TEST_CASE("dot export") {
  auto fix = examples::tm_image_automaton();
  SpanningTree t = tree_from_edges(fix.automaton, fix.tree_edges);
  std::string dot = to_dot(fix.automaton, &t);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '\n') > 10);
  size_t dashed = 0;
  for (size_t p = dot.find("style=dashed"); p != std::string::npos;
       p = dot.find("style=dashed", p + 1))
    ++dashed;
  CHECK(dashed == 3);
  CHECK(to_dot(fix.automaton, &t) == dot);  // byte-deterministic

  StallingsAutomaton empty = flower(Alphabet{1}, std::vector<GroupWord>{});
  CHECK(to_dot(empty).find("s0") != std::string::npos);
}

TEST_CASE("generator expressions") {
  SECTION("single relation example") {
    std::vector<GroupWord> gens = gws({"01", "1"}, 2);
    GeneratorExpresser ge(Alphabet{2}, gens);
    GroupWord zero = gw("0", 2);
    CHECK(ge.member(zero));
    CHECK(evaluate_in(ge.express(zero), gens) == zero);
    CHECK(ge.express(zero) == gw("01'", 2));
  }
  SECTION("random expressions evaluate back") {
    std::mt19937 rng(161803);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<GroupWord> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(random_reduced(rng, 3, 6));
      GeneratorExpresser ge(Alphabet{3}, gens);
      for (const GroupWord& w : short_products(gens, Alphabet{3})) {
        REQUIRE(ge.member(w));
        CHECK(evaluate_in(ge.express(w), gens) == w);
      }
    }
  }
  SECTION("non-members are reported") {
    GeneratorExpresser ge(Alphabet{2}, gws({"00", "1"}, 2));
    CHECK_FALSE(ge.member(gw("0", 2)));
    CHECK_THROWS_AS(ge.express(gw("0", 2)), membership_error);
  }
}
