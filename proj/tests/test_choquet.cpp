#include <doctest.h>

#include "overt/choquet.hpp"

using namespace overt;

namespace {

const FuelBudget kFuel(1u << 14);

GameState fresh(SpaceId space) {
  GameState g;
  g.space = space;
  return g;
}

}  // namespace

TEST_CASE("open set algebra: membership and containment are exact") {
  OpenSet nat_pair = OpenSet::basic(SpaceId::Nat, nat_finite_index(0b101));
  CHECK(nat_pair.contains(Point::nat(0)));
  CHECK(nat_pair.contains(Point::nat(2)));
  CHECK(!nat_pair.contains(Point::nat(1)));
  OpenSet nat_tail = OpenSet::basic(SpaceId::Nat, nat_tail_index(1, 0b100));
  CHECK(OpenSet::basic(SpaceId::Nat, nat_singleton_index(5)).subset_of(nat_tail));
  CHECK(!nat_tail.subset_of(nat_pair));
  CHECK(OpenSet{SpaceId::Nat, {nat_singleton_index(0), nat_singleton_index(2)}}.subset_of(
      nat_pair));

  OpenSet q_parent = OpenSet::basic(SpaceId::Q01, q01_basis_index({0}));
  OpenSet q_children{SpaceId::Q01, {q01_basis_index({0, 0}), q01_basis_index({0, 1})}};
  CHECK(q_children.subset_of(q_parent));
  // the cut is irrational, so inside the rationals the children cover exactly
  CHECK(q_parent.subset_of(q_children));
  OpenSet q_one_child = OpenSet::basic(SpaceId::Q01, q01_basis_index({0, 0}));
  CHECK(!q_parent.subset_of(q_one_child));

  OpenSet cof_small = OpenSet::basic(SpaceId::NatCofinite, natcof_index(0b111));
  OpenSet cof_big = OpenSet::basic(SpaceId::NatCofinite, natcof_index(0b011));
  CHECK(cof_small.subset_of(cof_big));
  CHECK(!cof_big.subset_of(cof_small));
}

TEST_CASE("basic intersections keep the shared point") {
  auto meet = intersect_basics(SpaceId::Q01, q01_basis_index({0}), q01_basis_index({0, 1}));
  REQUIRE(meet.has_value());
  CHECK(*meet == q01_basis_index({0, 1}));
  CHECK(!intersect_basics(SpaceId::Q01, q01_basis_index({0}), q01_basis_index({1})).has_value());
  auto nat = intersect_basics(SpaceId::Nat, nat_finite_index(0b110), nat_tail_index(2, 0));
  REQUIRE(nat.has_value());
  CHECK(space(SpaceId::Nat).member(Point::nat(2), *nat));
  CHECK(!space(SpaceId::Nat).member(Point::nat(1), *nat));
}

TEST_CASE("a discrete game round returns the singleton") {
  StrategyII s = strategy_from_realizer(game_realizer(SpaceId::Nat), SpaceId::Nat);
  GameState g = fresh(SpaceId::Nat);
  MoveI move{OpenSet::basic(SpaceId::Nat, nat_singleton_index(7)), Point::nat(7)};
  auto [g1, v] = play_round(std::move(g), s, move, kFuel);
  CHECK(v.contains(Point::nat(7)));
  CHECK(v.subset_of(move.u));
  CHECK(g1.rounds.size() == 1);
  auto report = check_round_invariants(g1);
  CHECK(report.ok);
}

TEST_CASE("illegal moves are rejected with diagnosis") {
  StrategyII s = strategy_from_realizer(game_realizer(SpaceId::Nat), SpaceId::Nat);
  GameState g = fresh(SpaceId::Nat);
  MoveI bad{OpenSet::basic(SpaceId::Nat, nat_singleton_index(7)), Point::nat(8)};
  CHECK_THROWS_AS(play_round(std::move(g), s, bad, kFuel), IllegalMove);

  GameState g2 = fresh(SpaceId::Nat);
  MoveI first{OpenSet::basic(SpaceId::Nat, nat_singleton_index(3)), Point::nat(3)};
  auto [g3, v] = play_round(std::move(g2), s, first, kFuel);
  MoveI outside{OpenSet::basic(SpaceId::Nat, nat_singleton_index(4)), Point::nat(4)};
  CHECK_THROWS_AS(play_round(std::move(g3), s, outside, kFuel), IllegalMove);
}

TEST_CASE("a scripted rational game keeps every containment exact") {
  StrategyII s = strategy_from_realizer(game_realizer(SpaceId::Q01), SpaceId::Q01);
  ScriptedPlayer player{SpaceId::Q01, 7};
  GameState g = fresh(SpaceId::Q01);
  MoveI move = player.first();
  OpenSet last_v{SpaceId::Q01, {}};
  for (std::uint64_t round = 0; round < 10; ++round) {
    auto [g2, v] = play_round(std::move(g), s, move, kFuel);
    g = std::move(g2);
    CHECK(v.contains(g.rounds.back().x));
    CHECK(v.subset_of(g.rounds.back().u));
    auto report = check_round_invariants(g);
    if (!report.ok) {
      for (const auto& why : report.violations) MESSAGE(why);
    }
    CHECK(report.ok);
    last_v = v;
    move = player.next(g, last_v, round + 1);
  }
}

TEST_CASE("a cofinite game round answers with a cofinite open") {
  StrategyII s = strategy_from_realizer(game_realizer(SpaceId::NatCofinite), SpaceId::NatCofinite);
  GameState g = fresh(SpaceId::NatCofinite);
  MoveI move{OpenSet::basic(SpaceId::NatCofinite, natcof_index(0b1001)), Point::natcof(5)};
  auto [g1, v] = play_round(std::move(g), s, move, kFuel);
  CHECK(v.contains(Point::natcof(5)));
  CHECK(v.subset_of(move.u));
  CHECK(check_round_invariants(g1).ok);
  // another round inside the response keeps the invariants
  MoveI again{v, Point::natcof(5)};
  auto [g2, v2] = play_round(std::move(g1), s, again, kFuel);
  CHECK(v2.contains(Point::natcof(5)));
  CHECK(check_round_invariants(g2).ok);
}

TEST_CASE("the five invariants hold across long seeded games on Nat and Q01") {
  for (SpaceId space_id : {SpaceId::Nat, SpaceId::Q01}) {
    StrategyII s = strategy_from_realizer(game_realizer(space_id), space_id);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ScriptedPlayer player{space_id, seed};
      GameState g = fresh(space_id);
      MoveI move = player.first();
      for (std::uint64_t round = 0; round < 50; ++round) {
        auto [g2, v] = play_round(std::move(g), s, move, kFuel);
        g = std::move(g2);
        auto report = check_round_invariants(g);
        if (!report.ok) {
          MESSAGE("seed ", seed, " round ", round, ": ", report.violations.front());
        }
        REQUIRE(report.ok);
        move = player.next(g, v, round + 1);
      }
      CHECK(g.rounds.size() == 50);
    }
  }
}

TEST_CASE("a corrupted state is reported by the auditor") {
  StrategyII s = strategy_from_realizer(game_realizer(SpaceId::Nat), SpaceId::Nat);
  GameState g = fresh(SpaceId::Nat);
  MoveI move{OpenSet::basic(SpaceId::Nat, nat_singleton_index(7)), Point::nat(7)};
  auto [g1, v] = play_round(std::move(g), s, move, kFuel);
  // negative control: push the played point into the excluded set
  g1.rounds.back().excluded_before.push_back(Point::nat(7));
  auto report = check_round_invariants(g1);
  CHECK(!report.ok);
  REQUIRE(!report.violations.empty());
  CHECK(report.violations.front().find("(1)") != std::string::npos);
}

TEST_CASE("a fresh game passes vacuously") {
  GameState g = fresh(SpaceId::Q01);
  CHECK(check_round_invariants(g).ok);
}
