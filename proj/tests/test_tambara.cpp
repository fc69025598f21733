#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "twistkit/tambara.hpp"
#include "twistkit/witt.hpp"

using namespace twistkit;
using namespace twistkit::tambara;

TEST_CASE("sum rule (2,1) is N(x) + N(y) + V(xy)") {
  auto e = generate_sum_rule(2, 1);
  REQUIRE(e.terms.size() == 3);
  CHECK(e.terms[0].v_from == 2);
  CHECK(e.word_str(e.terms[0]) == "x");
  CHECK(e.terms[1].v_from == 2);
  CHECK(e.word_str(e.terms[1]) == "y");
  CHECK(e.terms[2].v_from == 1);
  CHECK(e.word_str(e.terms[2]) == "xy");
  CHECK(orbit_count_check(e));
  CHECK(trivial_specialization_check(e));
}

TEST_CASE("sum rule (4,1) splits the binomial 6 as 4 + 2") {
  auto e = generate_sum_rule(4, 1);
  REQUIRE(e.terms.size() == 6);
  // N^4_1(x), N^4_1(y), V^4_2 N^2_1(xy), three free-orbit words
  CHECK(e.terms[0].v_from == 4);
  CHECK(e.terms[1].v_from == 4);
  CHECK(e.terms[2].v_from == 2);
  CHECK(e.word_str(e.terms[2]) == "xy");
  std::vector<std::string> free_words;
  for (auto& t : e.terms)
    if (t.v_from == 1) free_words.push_back(e.word_str(t));
  REQUIRE(free_words.size() == 3);
  CHECK(free_words[0] == "xxxy");
  CHECK(free_words[1] == "xxyy");
  CHECK(free_words[2] == "xyyy");
}

TEST_CASE("sum rule (m,m) degenerates to x + y") {
  auto e = generate_sum_rule(3, 3);
  REQUIRE(e.terms.size() == 2);
  for (auto& t : e.terms) {
    CHECK(t.v_from == 3);
    CHECK(t.n_from == 3);
    CHECK(t.word.size() == 1);
  }
}

TEST_CASE("transfer rules match the worked examples") {
  auto e421 = generate_transfer_rule(4, 2, 1);
  REQUIRE(e421.terms.size() == 1);
  CHECK(e421.terms[0].v_from == 1);
  CHECK(e421.terms[0].mult == 1);
  CHECK(e421.word_str(e421.terms[0]) == "xx");

  auto e621 = generate_transfer_rule(6, 2, 1);
  REQUIRE(e621.terms.size() == 2);
  CHECK(e621.terms[0].v_from == 3);
  CHECK(e621.word_str(e621.terms[0]) == "x");
  CHECK(e621.terms[1].v_from == 1);
  CHECK(e621.word_str(e621.terms[1]) == "xxx");

  // (m,m,k): the rule is V^m_k(x)
  auto id = generate_transfer_rule(6, 6, 2);
  REQUIRE(id.terms.size() == 1);
  CHECK(id.terms[0].v_from == 2);
  CHECK(id.terms[0].word.size() == 1);

  // (9,3,1) aggregates three free orbits: N^9_3 V^3_1(x) = 3 V^9_1(xxx)
  auto e931 = generate_transfer_rule(9, 3, 1);
  REQUIRE(e931.terms.size() == 1);
  CHECK(e931.terms[0].v_from == 1);
  CHECK(e931.terms[0].mult == 3);
  CHECK(e931.word_str(e931.terms[0]) == "xxx");
  CHECK(trivial_specialization_check(e931));
}

TEST_CASE("orbit count sanity across the index list") {
  for (auto [m, k] : std::vector<std::pair<long, long>>{
           {2, 1}, {3, 1}, {4, 1}, {4, 2}, {6, 1}, {6, 2}, {6, 3}, {8, 2},
           {12, 2}, {12, 1}}) {
    auto e = generate_sum_rule(m, k);
    CHECK(orbit_count_check(e));
    CHECK(trivial_specialization_check(e));
  }
  for (auto mnk : std::vector<std::array<long, 3>>{
           {4, 2, 1}, {6, 2, 1}, {6, 3, 1}, {8, 4, 2}, {12, 6, 2}}) {
    auto e = generate_transfer_rule(mnk[0], mnk[1], mnk[2]);
    CHECK(trivial_specialization_check(e));
  }
}

TEST_CASE("expression JSON round-trip and golden comparison") {
  auto e = generate_sum_rule(6, 2);
  auto j = e.to_json();
  auto back = Expression::from_json(j);
  CHECK(back == e);
  CHECK(back.to_json() == j);

  // Golden file comparison when available.
  const char* dir = std::getenv("TWISTKIT_GOLDENS");
  if (dir) {
    std::ifstream f(std::string(dir) + "/goldens.json");
    REQUIRE(f.good());
    Json g;
    f >> g;
    for (auto [m, k] : std::vector<std::pair<long, long>>{
             {2, 1}, {3, 1}, {4, 1}, {4, 2}, {6, 1}, {6, 2}, {6, 3}, {8, 2},
             {12, 2}}) {
      auto key = "sum_" + std::to_string(m) + "_" + std::to_string(k);
      CHECK(generate_sum_rule(m, k).to_json() == g.at("rules").at(key));
    }
    CHECK(generate_transfer_rule(4, 2, 1).to_json() ==
          g.at("rules").at("transfer_4_2_1"));
    CHECK(generate_transfer_rule(6, 2, 1).to_json() ==
          g.at("rules").at("transfer_6_2_1"));
  }
}

TEST_CASE("rules evaluate in big Witt vectors") {
  Rng rng(21);
  auto Zxy = PolyRing::over_z({"x", "y"});
  BigWittRealization R(Zxy);
  for (auto [m, k] :
       std::vector<std::pair<long, long>>{{2, 1}, {4, 2}, {6, 2}, {6, 3}}) {
    auto e = generate_sum_rule(m, k);
    auto rep = verify_rule(e, R, 6, rng);
    CHECK(rep.pass);
  }
  auto t = generate_transfer_rule(6, 2, 1);
  CHECK(verify_rule(t, R, 6, rng).pass);
}

TEST_CASE("evaluate with the identity expression returns the input") {
  Rng rng(22);
  auto Z = ZRing::integers();
  BigWittRealization R(Z);
  Expression id;
  id.kind = Expression::Kind::Generic;
  id.m = 4;
  id.k = 4;
  id.letters = {"x"};
  Term t;
  t.v_from = 4;
  t.n_from = 4;
  t.word = {0};
  id.terms.push_back(t);
  Elem x = R.sample(4, rng);
  CHECK(evaluate(id, R, {x}) == x);
}

TEST_CASE("level mismatch is rejected") {
  auto e = generate_sum_rule(2, 1);
  Rng rng(23);
  auto Z = ZRing::integers();
  BigWittRealization R(Z);
  CHECK_THROWS_AS(evaluate(e, R, {R.sample(1, rng)}), LevelMismatch);
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(generate_sum_rule(26, 1), Precondition);
  CHECK_THROWS_AS(generate_sum_rule(4, 3), Precondition);
  CHECK_THROWS_AS(generate_transfer_rule(12, 5, 1), Precondition);  // n !| m
}
