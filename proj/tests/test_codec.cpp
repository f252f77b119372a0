#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "overt/codec.hpp"

using namespace overt;

TEST_CASE("cantor pairing roundtrips and is a bijection on an initial segment") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t x = 0; x < 40; ++x) {
    for (std::uint64_t y = 0; y < 40; ++y) {
      std::uint64_t z = cantor_pair(x, y);
      auto [a, b] = cantor_unpair(z);
      CHECK(a == x);
      CHECK(b == y);
      CHECK(seen.insert(z).second);
    }
  }
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_pair(0, 1) == 2);
}

TEST_CASE("word codes roundtrip and respect the prefix order") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 500; ++it) {
    Word w;
    std::size_t len = rng() % 9;
    for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % 6);
    std::uint64_t c = word_code(w);
    auto back = word_decode(c);
    REQUIRE(back.has_value());
    CHECK(*back == w);
    if (!w.empty()) {
      Word pre(w.begin(), w.end() - 1);
      CHECK(word_code(pre) < c);
      CHECK(word_is_proper_prefix(pre, w));
      CHECK(!word_is_proper_prefix(w, pre));
    }
  }
  CHECK(word_code({}) == 0);
  // every code below 64 either decodes or is rejected, deterministically
  for (std::uint64_t c = 0; c < 64; ++c) {
    auto w = word_decode(c);
    if (w) CHECK(word_code(*w) == c);
  }
}

TEST_CASE("binary heap codes are a total bijection") {
  for (std::uint64_t c = 0; c < 200; ++c) {
    Word w = bin_decode(c);
    CHECK(bin_code(w) == c);
    for (Token b : w) CHECK(b <= 1);
  }
  CHECK(bin_code({}) == 0);
  CHECK(bin_code({0}) == 1);
  CHECK(bin_code({1}) == 2);
  CHECK(bin_code({0, 0}) == 3);
  CHECK(bin_code({1, 1}) == 6);
}

TEST_CASE("word set codes roundtrip on small sets") {
  std::vector<std::vector<Word>> sets = {
      {{}},                        // {eps}
      {{0}},                       // {"0"}
      {{0}, {1}},                  //
      {{1, 2}, {0}, {3}},          //
      {{0, 0, 0}, {0, 0, 1}},      //
  };
  for (auto& s : sets) {
    std::uint64_t c = word_set_code(s);
    auto back = word_set_decode(c);
    REQUIRE(back.has_value());
    std::vector<Word> sorted = s;
    std::sort(sorted.begin(), sorted.end(),
              [](const Word& a, const Word& b) { return word_code(a) < word_code(b); });
    CHECK(*back == sorted);
  }
  CHECK_THROWS_AS(word_set_code({}), CodecError);
}
