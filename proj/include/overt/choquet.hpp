#pragma once

#include "overt/spaces.hpp"

// The convergent strong Choquet game: Player I plays (open, point) pairs
// shrinking through Player II's responses; Player II's strategy is
// synthesized from an overt-choice realizer, and every round is audited
// against the five bookkeeping invariants.

namespace overt {

struct IllegalMove : Error {
  explicit IllegalMove(const std::string& what) : Error("illegal move: " + what) {}
};
struct RealizerStalled : Error {
  explicit RealizerStalled(const std::string& what) : Error("realizer stalled: " + what) {}
};

// Finite union of basic opens with exact membership and containment.
struct OpenSet {
  SpaceId space;
  std::vector<Token> parts;

  bool contains(const Point& pt) const;
  bool subset_of(const OpenSet& other) const;
  static OpenSet basic(SpaceId space, Token idx) { return {space, {idx}}; }
};

// Exact intersection of two basic opens both containing a common point;
// defined for the game spaces (Nat, Q01, NatCofinite).
std::optional<Token> intersect_basics(SpaceId space, Token a, Token b);

struct MoveI {
  OpenSet u;
  Point x;
};

struct Round {
  OpenSet u;
  Point x;
  OpenSet v;
  std::vector<Point> excluded_before;  // A_i when the round was played
  std::uint64_t fed_len = 0;           // realizer cursors at the round's end
  std::uint64_t consumed_len = 0;
};

struct GameState {
  SpaceId space;
  std::vector<Round> rounds;
  std::vector<Point> excluded;  // A_{i+1} after the latest round
  Word fed;                     // enumeration prefix handed to the realizer
  Word consumed_tokens;         // realizer output tokens inspected so far
};

struct StrategyII {
  SpaceId space;
  WordFunction realizer;
  std::uint64_t feed_batch = 64;
};

StrategyII strategy_from_realizer(WordFunction realizer, SpaceId space);

std::pair<GameState, OpenSet> play_round(GameState game, const StrategyII& strategy,
                                         const MoveI& move, FuelBudget fuel);

struct InvariantReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Audits the proof's five conditions for the latest round.
InvariantReport check_round_invariants(const GameState& game);

// Shipped realizers for the game spaces.
WordFunction nat_singleton_realizer();
WordFunction q01_branch_realizer();
WordFunction natcof_inference_realizer();
WordFunction game_realizer(SpaceId space);

// Deterministic legal Player I scripts for the acceptance runs.
struct ScriptedPlayer {
  SpaceId space;
  std::uint64_t seed;
  MoveI first() const;
  MoveI next(const GameState& game, const OpenSet& last_v, std::uint64_t round) const;
};

}  // namespace overt
