#include "overt/choquet.hpp"

#include <algorithm>
#include <bit>

namespace overt {

namespace {

struct NatBasic {
  bool is_tail = false;
  Token from = 0;
  std::uint64_t mask = 0;  // members when finite, exclusions when tail
  bool is_singleton = false;
  Token singleton = 0;
};

NatBasic nat_parse(Token idx) {
  auto [kind, payload] = cantor_unpair(idx);
  NatBasic b;
  if (kind == 0) {
    b.is_singleton = true;
    b.singleton = payload;
  } else if (kind == 1) {
    auto [from, mask] = cantor_unpair(payload);
    b.is_tail = true;
    b.from = from;
    b.mask = mask;
  } else if (kind == 2) {
    b.mask = payload;
  } else {
    throw BadIndex("nat basis");
  }
  return b;
}

bool nat_basic_contains(const NatBasic& b, Token n) {
  if (b.is_singleton) return n == b.singleton;
  if (b.is_tail) return n >= b.from && (n >= 64 || ((b.mask >> n) & 1) == 0);
  return n < 64 && ((b.mask >> n) & 1) != 0;
}

bool nat_union_covers(Token part, const std::vector<Token>& cover) {
  NatBasic b = nat_parse(part);
  std::vector<NatBasic> cs;
  cs.reserve(cover.size());
  for (Token c : cover) cs.push_back(nat_parse(c));
  auto covered = [&](Token n) {
    for (const NatBasic& c : cs) {
      if (nat_basic_contains(c, n)) return true;
    }
    return false;
  };
  if (b.is_singleton) return covered(b.singleton);
  if (!b.is_tail) {
    for (Token n = 0; n < 64; ++n) {
      if (((b.mask >> n) & 1) && !covered(n)) return false;
    }
    return true;
  }
  // a tail is infinite: some covering part must also be a tail, and the
  // finite stretch below the largest threshold is checked pointwise
  Token horizon = b.from;
  bool end_covered = false;
  for (const NatBasic& c : cs) {
    if (c.is_tail) {
      end_covered = true;
      horizon = std::max(horizon, c.from);
    }
  }
  if (!end_covered) return false;
  Token top = std::max<Token>(horizon, 64) + 1;
  for (Token n = b.from; n <= top; ++n) {
    if (nat_basic_contains(b, n) && !covered(n)) return false;
  }
  return true;
}

}  // namespace

bool OpenSet::contains(const Point& pt) const {
  const Space& sp = overt::space(space);
  for (Token part : parts) {
    if (sp.member(pt, part)) return true;
  }
  return false;
}

bool OpenSet::subset_of(const OpenSet& other) const {
  if (space != other.space) throw Error("opens from different spaces");
  switch (space) {
    case SpaceId::Nat: {
      for (Token part : parts) {
        if (!nat_union_covers(part, other.parts)) return false;
      }
      return true;
    }
    case SpaceId::Q01: {
      std::vector<Word> cover;
      for (Token part : other.parts) cover.push_back(bin_decode(part));
      for (Token part : parts) {
        if (!q01_cover_covers(bin_decode(part), cover)) return false;
      }
      return true;
    }
    case SpaceId::NatCofinite: {
      // union of cofinites excludes the intersection of the masks
      std::uint64_t mine = ~0ull, theirs = ~0ull;
      for (Token part : parts) mine &= part;
      for (Token part : other.parts) theirs &= part;
      return (theirs & ~mine) == 0;
    }
    default:
      throw Error("game opens live on Nat, Q01 or NatCofinite");
  }
}

std::optional<Token> intersect_basics(SpaceId space_id, Token a, Token b) {
  switch (space_id) {
    case SpaceId::Nat: {
      NatBasic x = nat_parse(a), y = nat_parse(b);
      if (x.is_singleton) {
        return nat_basic_contains(y, x.singleton) ? std::optional<Token>(a) : std::nullopt;
      }
      if (y.is_singleton) {
        return nat_basic_contains(x, y.singleton) ? std::optional<Token>(b) : std::nullopt;
      }
      if (!x.is_tail && !y.is_tail) {
        std::uint64_t m = x.mask & y.mask;
        return m ? std::optional<Token>(nat_finite_index(m)) : std::nullopt;
      }
      if (x.is_tail && y.is_tail) {
        return nat_tail_index(std::max(x.from, y.from), x.mask | y.mask);
      }
      const NatBasic& fin = x.is_tail ? y : x;
      const NatBasic& tail = x.is_tail ? x : y;
      std::uint64_t m = 0;
      for (Token n = 0; n < 64; ++n) {
        if (((fin.mask >> n) & 1) && nat_basic_contains(tail, n)) m |= 1ull << n;
      }
      return m ? std::optional<Token>(nat_finite_index(m)) : std::nullopt;
    }
    case SpaceId::Q01: {
      Word wa = bin_decode(a), wb = bin_decode(b);
      if (word_is_prefix(wa, wb)) return b;
      if (word_is_prefix(wb, wa)) return a;
      return std::nullopt;
    }
    case SpaceId::NatCofinite:
      return natcof_index(a | b);
    default:
      throw Error("game opens live on Nat, Q01 or NatCofinite");
  }
}

// ---- strategy ---------------------------------------------------------------------

StrategyII strategy_from_realizer(WordFunction realizer, SpaceId space) {
  return {space, std::move(realizer), 64};
}

std::pair<GameState, OpenSet> play_round(GameState game, const StrategyII& strategy,
                                         const MoveI& move, FuelBudget fuel) {
  const std::uint64_t round = game.rounds.size();
  if (move.u.space != game.space || move.x.space != game.space) {
    throw IllegalMove("move from a different space");
  }
  if (!move.u.contains(move.x)) throw IllegalMove("the chosen point is outside the open");
  if (round > 0 && !move.u.subset_of(game.rounds.back().v)) {
    throw IllegalMove("the open is not inside the previous response");
  }

  // A_{i+1} gains the previous point when Player I moved away
  std::vector<Point> a_now = game.excluded;  // A_i
  std::vector<Point> a_next = a_now;
  if (round > 0 && !point_eq(move.x, game.rounds.back().x)) {
    a_next.push_back(game.rounds.back().x);
  }

  const Space& sp = space(game.space);
  std::vector<Point> presented = a_now;  // the set shown this round: A_i + x_i
  presented.push_back(move.x);
  auto meets_presented = [&](Token idx) {
    if (!sp.valid_index(idx)) return false;
    for (const Point& p : presented) {
      if (sp.member(p, idx)) return true;
    }
    return false;
  };
  std::set<Token> confirmed;
  for (Token tok : game.fed) {
    if (tok != 0) confirmed.insert(tok - 1);
  }
  auto confirm = [&](Token idx) {
    if (confirmed.insert(idx).second) game.fed.push_back(idx + 1);
  };
  // every basic open with index <= round that meets the current set goes in
  for (Token k = 0; k <= round; ++k) {
    if (meets_presented(k)) confirm(k);
  }

  std::optional<Token> chosen;
  std::uint64_t spent = 0;
  std::uint64_t window = game.fed.size();
  while (!chosen && spent < fuel.max_steps) {
    for (std::uint64_t step = 0; step < strategy.feed_batch; ++step, ++window) {
      if (meets_presented(window)) {
        confirm(window);
      } else {
        game.fed.push_back(0);
      }
    }
    spent += strategy.feed_batch;
    Word out = strategy.realizer(game.fed);
    while (game.consumed_tokens.size() < out.size() && !chosen) {
      Token tok = out[game.consumed_tokens.size()];
      game.consumed_tokens.push_back(tok);
      if (tok == 0) continue;
      Token idx = tok - 1;
      if (!sp.valid_index(idx)) throw RealizerStalled("realizer emitted an invalid index");
      OpenSet w = OpenSet::basic(game.space, idx);
      bool excludes = true;
      for (const Point& a : a_next) excludes = excludes && !sp.member(a, idx);
      if (sp.member(move.x, idx) && w.subset_of(move.u) && excludes) chosen = idx;
    }
  }
  if (!chosen) throw RealizerStalled("no suitable basic open within fuel");

  // V = W meet every fed basic open containing x
  Token v_idx = *chosen;
  for (Token idx : confirmed) {
    if (!sp.member(move.x, idx)) continue;
    auto meet = intersect_basics(game.space, v_idx, idx);
    if (!meet) throw Error("intersection lost the point");  // both contain x
    v_idx = *meet;
  }
  OpenSet v = OpenSet::basic(game.space, v_idx);

  game.rounds.push_back(
      Round{move.u, move.x, v, a_now, game.fed.size(), game.consumed_tokens.size()});
  game.excluded = std::move(a_next);
  return {std::move(game), v};
}

InvariantReport check_round_invariants(const GameState& game) {
  InvariantReport report;
  if (game.rounds.empty()) return report;  // trivial before any information flows
  const Round& r = game.rounds.back();
  const Space& sp = space(game.space);

  auto blame = [&](std::string what) {
    report.ok = false;
    report.violations.push_back(std::move(what));
  };

  // 1: the played point avoids the excluded set
  for (const Point& a : r.excluded_before) {
    if (point_eq(a, r.x)) blame("(1) played point sits in the excluded set");
  }
  // 2: the played open avoids the excluded set
  for (const Point& a : r.excluded_before) {
    if (r.u.contains(a)) blame("(2) played open meets the excluded set");
  }
  // 3: every fed basic open meets the presented set A_i + x_i
  std::vector<Point> presented = r.excluded_before;
  presented.push_back(r.x);
  for (std::uint64_t position = 0; position < r.fed_len; ++position) {
    Token tok = game.fed[position];
    if (tok == 0) continue;
    bool meets = false;
    for (const Point& p : presented) meets = meets || sp.member(p, tok - 1);
    if (!meets) {
      blame("(3) fed open at position " + std::to_string(position) +
            " misses the presented set");
      break;
    }
  }
  // 4: every consumed open contains the played point
  for (std::uint64_t position = 0; position < r.consumed_len; ++position) {
    Token tok = game.consumed_tokens[position];
    if (tok == 0) continue;
    if (!sp.member(r.x, tok - 1)) {
      blame("(4) consumed open at position " + std::to_string(position) +
            " avoids the played point");
      break;
    }
  }
  // 5: the consumed output pins a point outside the excluded set: for every
  // excluded point some consumed open avoids it
  for (const Point& a : r.excluded_before) {
    bool separated = false;
    for (std::uint64_t position = 0; position < r.consumed_len && !separated; ++position) {
      Token tok = game.consumed_tokens[position];
      separated = tok != 0 && !sp.member(a, tok - 1);
    }
    if (!separated) {
      blame("(5) consumed output does not separate " + point_to_string(a));
    }
  }
  return report;
}

// ---- realizers ---------------------------------------------------------------------

WordFunction nat_singleton_realizer() {
  return WordFunction("nat-singleton", [](const Word& input) -> Word {
    const Space& sp = space(SpaceId::Nat);
    std::optional<Token> pick;
    for (Token tok : input) {
      if (tok == 0) continue;
      if (sp.isolated_point(tok - 1)) {
        pick = tok - 1;
        break;
      }
    }
    if (!pick) return {};
    return Word(input.size(), *pick + 1);
  });
}

WordFunction q01_branch_realizer() {
  // One output token per input token: the deepest basis word reached so far.
  // Descents happen at fixed input positions, so re-evaluation on a longer
  // prefix extends the output instead of rewriting it.
  return WordFunction("q01-branch", [](const Word& input) -> Word {
    std::set<Token> confirmed;
    std::vector<Token> order;
    Word out;
    Word u;
    for (Token tok : input) {
      if (tok != 0 && confirmed.insert(tok - 1).second) order.push_back(tok - 1);
      for (;;) {
        Word u0 = u, u1 = u;
        u0.push_back(0);
        u1.push_back(1);
        std::optional<Word> next;
        for (Token c : order) {  // earliest confirmed child wins
          if (c == bin_code(u0)) {
            next = u0;
            break;
          }
          if (c == bin_code(u1)) {
            next = u1;
            break;
          }
        }
        if (!next || next->size() > 16) break;
        u = *next;
      }
      out.push_back(bin_code(u) + 1);
    }
    return out;
  });
}

WordFunction natcof_inference_realizer() {
  // The feeder scans mask indices in order, so a padding token at position m
  // reveals that the presented set sits inside the bits of m. Once the scan
  // position passes the running intersection, that intersection is exact and
  // its least bit is a member, named by a shrinking chain of cofinite opens.
  return WordFunction("natcof-inference", [](const Word& input) -> Word {
    std::uint64_t constraint = ~0ull;
    Word out;
    std::optional<Token> candidate;
    std::uint64_t emitted = 0;
    for (std::uint64_t position = 0; position < input.size(); ++position) {
      if (input[position] == 0 && position > 0) constraint &= position;
      if (!candidate && constraint != ~0ull && position > constraint) {
        candidate = static_cast<Token>(std::countr_zero(constraint));
      }
      if (candidate) {
        std::uint64_t mask = 0;
        for (Token n = 0; n < 63 && n <= emitted; ++n) {
          if (n != *candidate) mask |= 1ull << n;
        }
        ++emitted;
        out.push_back(natcof_index(mask) + 1);
      } else {
        out.push_back(0);
      }
    }
    return out;
  });
}

WordFunction game_realizer(SpaceId space_id) {
  switch (space_id) {
    case SpaceId::Nat:
      return nat_singleton_realizer();
    case SpaceId::Q01:
      return q01_branch_realizer();
    case SpaceId::NatCofinite:
      return natcof_inference_realizer();
    default:
      throw Error("no shipped realizer for this space");
  }
}

// ---- scripted Player I ---------------------------------------------------------------

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t round) {
  std::uint64_t x = seed * 0x9e3779b97f4a7c15ull + round * 0xbf58476d1ce4e5b9ull + 1;
  x ^= x >> 30;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 27;
  return x;
}

Point open_member(SpaceId space_id, const OpenSet& v, std::uint64_t rnd) {
  switch (space_id) {
    case SpaceId::Nat: {
      for (Token n = 0; n < 192; ++n) {
        Token candidate = (rnd + n) % 192;
        if (v.contains(Point::nat(candidate))) return Point::nat(candidate);
      }
      throw Error("empty nat open");
    }
    case SpaceId::Q01: {
      // descend a couple of levels below the first part, then take the least
      Word w = bin_decode(v.parts.front());
      for (int d = 0; d < 2 && w.size() < 12; ++d) w.push_back((rnd >> d) & 1);
      return Point::q01(rational_at(least_rational_index(q_basis_interval(w))));
    }
    case SpaceId::NatCofinite: {
      // the inference realizer needs the scan to pass 2^x, so keep points low
      std::uint64_t mask = ~0ull;
      for (Token part : v.parts) mask &= part;
      for (Token n = 0; n < 64; ++n) {
        Token candidate = (rnd + n) % 10;
        if (((mask >> candidate) & 1) == 0) return Point::natcof(candidate);
      }
      throw Error("empty cofinite open");
    }
    default:
      throw Error("unsupported game space");
  }
}

OpenSet sub_open_around(SpaceId space_id, const OpenSet& v, const Point& x, std::uint64_t rnd) {
  switch (space_id) {
    case SpaceId::Nat: {
      Token n = std::get<Token>(x.value);
      if (n >= 24 || rnd % 2 == 0) return OpenSet::basic(space_id, nat_singleton_index(n));
      std::uint64_t mask = 1ull << n;
      Token extra = rnd % 24;
      if (v.contains(Point::nat(extra))) mask |= 1ull << extra;
      OpenSet candidate = OpenSet::basic(space_id, nat_finite_index(mask));
      return candidate.subset_of(v) ? candidate
                                    : OpenSet::basic(space_id, nat_singleton_index(n));
    }
    case SpaceId::Q01: {
      // at most one level deeper, staying on the child containing x
      Word w = bin_decode(v.parts.front());
      const Rat& q = std::get<Rat>(x.value);
      if (w.size() < 10 && rnd % 3 != 0) {
        Word w0 = w;
        w0.push_back(0);
        if (!q_basis_interval(w0).contains(q)) w0.back() = 1;
        w = w0;
      }
      return OpenSet::basic(space_id, q01_basis_index(w));
    }
    case SpaceId::NatCofinite: {
      std::uint64_t mask = ~0ull;
      for (Token part : v.parts) mask &= part;
      Token n = std::get<Token>(x.value);
      Token extra = rnd % 64;
      if (extra != n) mask |= 1ull << extra;
      mask &= ~(1ull << n);
      return OpenSet::basic(space_id, natcof_index(mask));
    }
    default:
      throw Error("unsupported game space");
  }
}

}  // namespace

MoveI ScriptedPlayer::first() const {
  switch (space) {
    case SpaceId::Nat: {
      Token x = mix(seed, 0) % 24;
      std::uint64_t mask = (1ull << x) | (1ull << (mix(seed, 1) % 24));
      return {OpenSet::basic(space, nat_finite_index(mask)), Point::nat(x)};
    }
    case SpaceId::Q01: {
      OpenSet root = OpenSet::basic(space, q01_basis_index({}));
      return {root, open_member(space, root, mix(seed, 2))};
    }
    case SpaceId::NatCofinite: {
      std::uint64_t mask = mix(seed, 3) & 0xffu;
      OpenSet u = OpenSet::basic(space, natcof_index(mask));
      return {u, open_member(space, u, mix(seed, 4))};
    }
    default:
      throw Error("unsupported game space");
  }
}

MoveI ScriptedPlayer::next(const GameState& game, const OpenSet& last_v,
                           std::uint64_t round) const {
  std::uint64_t rnd = mix(seed, 16 + round);
  const Point& prev = game.rounds.back().x;
  // the cofinite realizer infers its point from a fixed presentation, so its
  // scripts never switch; the others may
  bool switch_point = space != SpaceId::NatCofinite && rnd % 4 == 0;
  Point x = switch_point ? open_member(space, last_v, rnd) : prev;
  if (!last_v.contains(x)) x = open_member(space, last_v, rnd);
  OpenSet u = sub_open_around(space, last_v, x, rnd >> 8);
  if (!u.subset_of(last_v) || !u.contains(x)) {
    u = last_v;  // fall back to repeating the response
  }
  return {u, x};
}

}  // namespace overt
