#include <doctest.h>

#include <random>

#include "overt/quasipolish.hpp"

using namespace overt;

namespace {

Word decode_or_fail(Token code) {
  auto w = word_decode(code);
  REQUIRE(w.has_value());
  return *w;
}

bool all_zero(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](Token t) { return t == 0; });
}

}  // namespace

TEST_CASE("builtin relations are transitive on their universes") {
  CHECK(!transitivity_counterexample(relation_lt()).has_value());
  CHECK(!transitivity_counterexample(relation_proper_prefix()).has_value());
}

TEST_CASE("fragment checks: consistent, violating and unwitnessed fragments") {
  // the ideal "all of N" over <
  RoundedIdealName full{relation_lt(), EnumName::uniform([](Token) { return true; }), {}};
  auto r1 = check_rounded_ideal_fragment(full, FuelBudget(50));
  CHECK(r1.kind == FragmentCheck::Kind::ConsistentSoFar);

  // {3} over < with a complete enumeration: 0 < 3 decoded but 0 missing
  RoundedIdealName bad{relation_lt(), EnumName::of_finite_set({3}), {}};
  auto r2 = check_rounded_ideal_fragment(bad, FuelBudget(50));
  CHECK(r2.kind == FragmentCheck::Kind::Violation);

  // prefixes of the zero branch over proper prefix
  RoundedIdealName zeros{
      relation_proper_prefix(),
      EnumName::uniform([](Token c) {
        auto w = word_decode(c);
        return w.has_value() && all_zero(*w);
      }),
      {}};
  auto r3 = check_rounded_ideal_fragment(zeros, FuelBudget(200));
  CHECK(r3.kind == FragmentCheck::Kind::ConsistentSoFar);

  // a complete fragment whose top pair has no decoded upper bound
  RoundedIdealName cut{relation_lt(), EnumName::of_finite_set({0, 1, 2}), {}};
  auto r4 = check_rounded_ideal_fragment(cut, FuelBudget(50));
  CHECK(r4.kind == FragmentCheck::Kind::UnwitnessedDirectedness);
}

TEST_CASE("vc_ri on the full space over < yields the unique ideal N") {
  EnumName all = EnumName::uniform([](Token) { return true; });
  RoundedIdealName ideal = vc_ri(relation_lt(), all, FuelBudget(4096));
  auto chain = ideal.chain_prefix(6);
  CHECK(chain == std::vector<Token>{0, 1, 2, 3, 4, 5});
  auto decoded = ideal.en.decode(FuelBudget(64));
  for (Token t = 0; t < 5; ++t) CHECK(decoded.count(t));
  CHECK(check_rounded_ideal_fragment(ideal, FuelBudget(10000)).kind ==
        FragmentCheck::Kind::ConsistentSoFar);
}

TEST_CASE("vc_ri follows the deterministic scan order on Baire instances") {
  // A = { p : p starts with 1 }
  BaireCapSet starts1{{{Word{1}, std::nullopt}}};
  RoundedIdealName ideal = vc_ri(relation_proper_prefix(), baire_overt_name(starts1),
                                 FuelBudget(4096));
  auto chain = ideal.chain_prefix(3);
  CHECK(decode_or_fail(chain[0]) == Word{});
  CHECK(decode_or_fail(chain[1]) == Word{1});
  CHECK(decode_or_fail(chain[2]) == Word{1, 0});

  // A = { 0^omega }
  BaireCapSet zeros{{{Word{}, Token{0}}}};
  RoundedIdealName zideal = vc_ri(relation_proper_prefix(), baire_overt_name(zeros),
                                  FuelBudget(4096));
  for (Token i = 0; i < 5; ++i) {
    Word w = decode_or_fail(zideal.chain_prefix(5)[i]);
    CHECK(w.size() == i);
    CHECK(all_zero(w));
  }
}

TEST_CASE("vc_ri chain confirms every open it walks through") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 30; ++it) {
    BaireCapSet set;
    int comps = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < comps; ++c) {
      Word root;
      std::size_t len = rng() % 4;
      for (std::size_t i = 0; i < len; ++i) root.push_back(rng() % 3);
      set.components.push_back({root, Token{rng() % 3}});
    }
    EnumName overt = baire_overt_name(set);
    RoundedIdealName ideal = vc_ri(relation_proper_prefix(), overt, FuelBudget(8192));
    auto chain = ideal.chain_prefix(10);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      Word w = decode_or_fail(chain[i]);
      CHECK(set.extendible(w));  // the induced point stays inside the closed set
      if (i > 0) CHECK(relation_proper_prefix().holds(chain[i - 1], chain[i]));
    }
  }
}

TEST_CASE("dense sequences seed one ideal per confirmed basic open") {
  EnumName all = EnumName::uniform([](Token) { return true; });
  auto two = dense_sequence(relation_lt(), all, 2, FuelBudget(2048));
  REQUIRE(two.size() == 2);
  for (auto& ideal : two) {
    auto d = ideal.en.decode(FuelBudget(64));
    for (Token t = 0; t < 4; ++t) CHECK(d.count(t));  // both are the ideal N
  }

  BaireCapSet baire{{{Word{}, std::nullopt}}};  // the full Baire space
  auto three = dense_sequence(relation_proper_prefix(), baire_overt_name(baire), 3,
                              FuelBudget(1u << 15));
  REQUIRE(three.size() == 3);
  // seeds are the first three confirmed opens in position order
  std::vector<Token> seeds;
  {
    EnumName en = baire_overt_name(baire);
    std::set<Token> seen;
    for (std::uint64_t i = 0; seeds.size() < 3; ++i) {
      Token t = en.name.at(i);
      if (t != 0 && seen.insert(t - 1).second) seeds.push_back(t - 1);
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    auto decoded = three[k].en.decode(FuelBudget(48));
    CHECK(decoded.count(seeds[k]));
  }

  BaireCapSet zeros{{{Word{}, Token{0}}}};
  auto both = dense_sequence(relation_proper_prefix(), baire_overt_name(zeros), 2,
                             FuelBudget(1u << 15));
  REQUIRE(both.size() == 2);
  for (auto& ideal : both) {
    for (Token c : ideal.chain_prefix(4)) CHECK(all_zero(decode_or_fail(c)));
  }
}

TEST_CASE("build_trace discovers productive words in confirmation order") {
  Pi02DomainDescriptor len{[](const Word& w) { return static_cast<Token>(w.size()); }};
  EnumName binary = EnumName::uniform([](Token c) {
    auto w = word_decode(c);
    if (!w) return false;
    return std::all_of(w->begin(), w->end(), [](Token t) { return t <= 1; });
  });
  TraceTransducer tr = build_trace(len, binary, FuelBudget(4096));
  CHECK(tr.forward(Word{}) == Word{});

  // independent oracle: confirmation order is code order for the uniform schedule
  auto oracle_nth = [&](const Word& u, Token n) {
    std::uint64_t rank = 0;
    for (Token c = 0; c < 4096; ++c) {
      auto w = word_decode(c);
      if (!w || w->empty()) continue;
      if (!std::all_of(w->begin(), w->end(), [](Token t) { return t <= 1; })) continue;
      if (!word_is_proper_prefix(u, *w)) continue;
      if (rank == n) return *w;
      ++rank;
    }
    throw FuelExhausted("oracle");
  };
  for (Token a = 0; a < 3; ++a) {
    Word fa = tr.forward({a});
    CHECK(fa == oracle_nth({}, a));
    for (Token b = 0; b < 3; ++b) {
      Word fab = tr.forward({a, b});
      CHECK(fab == oracle_nth(fa, b));
      CHECK(word_is_proper_prefix(fa, fab));
      for (Token c = 0; c < 2; ++c) {
        Word fabc = tr.forward({a, b, c});
        CHECK(fabc == oracle_nth(fab, c));
        CHECK(tr.productive(fabc));
        CHECK(tr.forward(tr.invert(fabc)) == fabc);
      }
    }
  }
}

TEST_CASE("build_trace on a single-branch domain walks the zero spine") {
  Pi02DomainDescriptor len{[](const Word& w) { return static_cast<Token>(w.size()); }};
  EnumName zeros = EnumName::uniform([](Token c) {
    auto w = word_decode(c);
    return w.has_value() && all_zero(*w);
  });
  TraceTransducer tr = build_trace(len, zeros, FuelBudget(4096));
  Word w;
  for (int k = 0; k < 5; ++k) {
    CHECK(tr.forward(w) == Word(w.size(), 0));
    CHECK(tr.invert(Word(w.size(), 0)) == Word(w.size(), 0));
    w.push_back(0);
  }
  // any index word lands on the spine, so the limit is the constant branch
  CHECK(all_zero(tr.forward({2, 1})));
  CHECK(tr.forward({2, 1}).size() > 2);
}

TEST_CASE("totalize_representation filters forbidden tokens out of the range") {
  // domain: names never containing token 5
  Pi02DomainDescriptor clean{[](const Word& w) {
    Token n = 0;
    for (Token t : w) {
      if (t == 5) break;
      ++n;
    }
    return n;
  }};
  EnumName ext = EnumName::uniform([](Token c) {
    auto w = word_decode(c);
    if (!w) return false;
    return std::none_of(w->begin(), w->end(), [](Token t) { return t == 5; });
  });
  TraceTransducer tr = totalize_representation(clean, ext, FuelBudget(1u << 14));
  std::mt19937_64 rng(9);
  for (int it = 0; it < 40; ++it) {
    Word w;
    for (int i = 0; i < 3; ++i) w.push_back(rng() % 4);
    Word out = tr.forward(w);
    CHECK(std::none_of(out.begin(), out.end(), [](Token t) { return t == 5; }));
  }
}

TEST_CASE("relation_from_representation frozen example and axioms") {
  // lambda(eps) = 1 here, so ({eps}, 1) can sit above (empty, 0)
  Pi02DomainDescriptor lam{[](const Word& w) { return static_cast<Token>(w.size() + 1); }};
  FiberOvertRealizer f{[](const Word& u, Token n) {
    std::vector<Word> out;
    for (Token k = 0; k <= n; ++k) out.push_back(Word(k, 0));
    for (std::size_t k = 0; k <= u.size(); ++k) {
      Word p(u.begin(), u.begin() + k);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
  }};
  std::vector<Word> words = {{}, {0}, {0, 0}, {1}};
  CHECK(!fiber_realizer_violation(f, words, 4).has_value());

  CeRelation rel = relation_from_representation(f, lam);
  CHECK(rel.holds(rr_code({}, 0), rr_code({{}}, 1)));   // (empty,0) < ({eps},1)
  CHECK(!rel.holds(rr_code({{}}, 1), rr_code({{}}, 1)));  // n < n fails
  CHECK(!rel.holds(rr_code({}, 0), rr_code({}, 1)));      // B must be nonempty

  // transitivity over the first valid codes
  std::vector<Token> universe;
  for (Token c = 0; universe.size() < 64 && c < 200000; ++c) {
    if (rr_decode(c).has_value()) universe.push_back(c);
  }
  REQUIRE(universe.size() == 64);
  for (Token a : universe) {
    for (Token b : universe) {
      if (!rel.holds(a, b)) continue;
      for (Token c : universe) {
        if (rel.holds(b, c)) CHECK(rel.holds(a, c));
      }
    }
  }
}

TEST_CASE("the one-point representation produces a single ideal class") {
  Pi02DomainDescriptor len{[](const Word& w) { return static_cast<Token>(w.size()); }};
  FiberOvertRealizer f{[](const Word& u, Token n) {
    std::vector<Word> out;
    for (Token k = 0; k <= n; ++k) out.push_back(Word(k, 0));
    for (std::size_t k = 0; k <= u.size(); ++k) {
      Word p(u.begin(), u.begin() + k);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
  }};
  CeRelation rel = relation_from_representation(f, len);
  // bounded universe: all sets of zero-words up to length 4, stages up to 6
  std::vector<std::vector<Word>> zero_sets = {{}};
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<Word> s;
    for (int k = 0; k < 5; ++k) {
      if (mask & (1 << k)) s.push_back(Word(k, 0));
    }
    zero_sets.push_back(s);
  }
  std::vector<Token> universe;
  for (const auto& s : zero_sets) {
    for (Token n = 0; n <= 6; ++n) universe.push_back(rr_code(s, n));
  }
  CHECK(count_rounded_ideal_classes(rel, universe) == 1);
}

TEST_CASE("ideal class counts for the builtin relations") {
  CHECK(count_rounded_ideal_classes(relation_lt(), 64) == 1);
  // a window wide enough to expose both the 0-branch and the 1-branch
  CHECK(count_rounded_ideal_classes(relation_proper_prefix(), 512) > 1);
}
