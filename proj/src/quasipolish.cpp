#include "overt/quasipolish.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <memory>
#include <set>

namespace overt {

CeRelation relation_lt() {
  CeRelation r;
  r.holds = [](Token a, Token b) { return a < b; };
  r.label = "lt";
  return r;
}

CeRelation relation_proper_prefix() {
  CeRelation r;
  r.holds = [](Token a, Token b) {
    auto wa = word_decode(a), wb = word_decode(b);
    if (!wa || !wb) return false;
    return word_is_proper_prefix(*wa, *wb);
  };
  r.label = "proper_prefix";
  return r;
}

std::optional<std::array<Token, 3>> transitivity_counterexample(const CeRelation& rel) {
  std::uint64_t bound = rel.universe_hint;
  for (Token a = 0; a < bound; ++a) {
    for (Token b = 0; b < bound; ++b) {
      if (!rel.holds(a, b)) continue;
      for (Token c = 0; c < bound; ++c) {
        if (rel.holds(b, c) && !rel.holds(a, c)) return std::array<Token, 3>{a, b, c};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<Token, Token>> enumerate_relation_facts(const CeRelation& rel,
                                                              FuelBudget fuel) {
  std::vector<std::pair<Token, Token>> facts;
  for (std::uint64_t z = 0; z < fuel.max_steps; ++z) {
    auto [a, b] = cantor_unpair(z);
    if (rel.holds(a, b)) facts.emplace_back(a, b);
  }
  return facts;
}

namespace {

// Shared state behind a vc_ri output: the chain grows as deeper tokens of the
// ideal's enumeration are queried.
struct ChainState {
  CeRelation rel;
  EnumName input;
  std::uint64_t step_budget;
  std::vector<Token> chain;
  std::vector<Token> confirmed_order;
  std::set<Token> confirmed;
  std::uint64_t read = 0;

  void read_more(std::uint64_t upto) {
    while (read < upto) {
      Token t = input.name.at(read);
      ++read;
      if (t != 0 && !confirmed.count(t - 1)) {
        confirmed.insert(t - 1);
        confirmed_order.push_back(t - 1);
      }
    }
  }

  // First confirmed value (in confirmation order) extending the chain.
  std::optional<Token> next_link() const {
    for (Token v : confirmed_order) {
      if (chain.empty() || rel.holds(chain.back(), v)) return v;
    }
    return std::nullopt;
  }

  void extend_to(std::uint64_t len) {
    while (chain.size() < len) {
      std::uint64_t spent = 0;
      for (;;) {
        // consume already-confirmed values first, then read further
        std::optional<Token> v;
        for (Token c : confirmed_order) {
          if (chain.empty() || rel.holds(chain.back(), c)) {
            v = c;
            break;
          }
        }
        if (v) {
          chain.push_back(*v);
          break;
        }
        if (spent >= step_budget) {
          throw FuelExhausted("vc_ri: no chain extension at depth " +
                              std::to_string(chain.size()));
        }
        std::uint64_t batch = std::max<std::uint64_t>(16, read);
        batch = std::min(batch, step_budget - spent);
        read_more(read + batch);
        spent += batch;
      }
    }
  }
};

RoundedIdealName ideal_from_chain_state(const CeRelation& rel,
                                        std::shared_ptr<ChainState> st) {
  EnumName en(Name([st](std::uint64_t t) -> Token {
    std::uint64_t tp1 = t + 1;
    if (std::has_single_bit(tp1)) {
      std::uint64_t u = std::bit_width(tp1) - 1;
      st->extend_to(u + 1);
      return st->chain[u] + 1;
    }
    std::uint64_t powers = std::bit_width(tp1);  // # of u with 2^u - 1 <= t
    std::uint64_t rank = t - powers;
    auto [n, u] = cantor_unpair(rank);
    // only emit once the witnessing chain link sits at an earlier position
    if (u + 1 >= 63 || (std::uint64_t{1} << (u + 1)) > t) return 0;
    st->extend_to(u + 1);
    return st->rel.holds(n, st->chain[u]) ? n + 1 : 0;
  }));
  RoundedIdealName out;
  out.rel = rel;
  out.en = std::move(en);
  out.chain_prefix = [st](std::uint64_t count) {
    st->extend_to(count);
    return std::vector<Token>(st->chain.begin(), st->chain.begin() + count);
  };
  return out;
}

}  // namespace

RoundedIdealName vc_ri(const CeRelation& rel, const EnumName& overt, FuelBudget fuel) {
  auto st = std::make_shared<ChainState>();
  st->rel = rel;
  st->input = overt;
  st->step_budget = fuel.max_steps;
  st->extend_to(1);  // a first confirmed basic open must exist
  return ideal_from_chain_state(rel, st);
}

FragmentCheck check_rounded_ideal_fragment(const RoundedIdealName& ideal, FuelBudget fuel) {
  const std::uint64_t full = fuel.max_steps;
  const std::uint64_t window = std::max<std::uint64_t>(1, full / 4);
  std::set<Token> decoded = ideal.en.decode(FuelBudget(full));
  std::set<Token> early = ideal.en.decode(FuelBudget(window));
  auto stage = ideal.en.name.padding_stage();
  bool complete = stage.has_value() && *stage <= full;

  FragmentCheck out;
  if (complete && decoded.empty()) {
    out.kind = FragmentCheck::Kind::Violation;
    out.reason = "enumeration is provably empty";
    return out;
  }
  if (complete) {
    for (auto [x, y] : enumerate_relation_facts(ideal.rel, FuelBudget(full))) {
      if (decoded.count(y) && !decoded.count(x)) {
        out.kind = FragmentCheck::Kind::Violation;
        out.reason = "downward closure: " + std::to_string(x) + " < " + std::to_string(y) +
                     " but " + std::to_string(x) + " missing";
        return out;
      }
    }
  }
  for (Token x : early) {
    for (Token y : early) {
      if (y < x) continue;
      bool witnessed = false;
      for (Token z : decoded) {
        if (ideal.rel.holds(x, z) && ideal.rel.holds(y, z)) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) {
        out.kind = FragmentCheck::Kind::UnwitnessedDirectedness;
        out.pair = {x, y};
        return out;
      }
    }
  }
  out.kind = FragmentCheck::Kind::ConsistentSoFar;
  return out;
}

std::vector<RoundedIdealName> dense_sequence(const CeRelation& rel, const EnumName& overt,
                                             std::uint64_t count, FuelBudget fuel) {
  // first `count` distinct confirmed basic opens, in position order
  std::vector<Token> seeds;
  std::set<Token> seen;
  for (std::uint64_t i = 0; i < fuel.max_steps && seeds.size() < count; ++i) {
    Token t = overt.name.at(i);
    if (t != 0 && seen.insert(t - 1).second) seeds.push_back(t - 1);
  }
  if (seeds.size() < count) throw FuelExhausted("dense_sequence: fewer confirmed opens than asked");

  std::vector<RoundedIdealName> out;
  for (Token n : seeds) {
    // overt name of cl(up(n) meet A): up(m) meets it iff some k above n and m
    // is confirmed to meet A; the second pair component is the scan effort
    EnumName derived(Name([rel, overt, n](std::uint64_t t) -> Token {
      auto [m, effort] = cantor_unpair(t);
      for (std::uint64_t i = 0; i <= effort; ++i) {
        Token tok = overt.name.at(i);
        if (tok == 0) continue;
        Token k = tok - 1;
        if (rel.holds(n, k) && rel.holds(m, k)) return m + 1;
      }
      return 0;
    }));
    out.push_back(vc_ri(rel, derived, fuel));
  }
  return out;
}

bool lambda_order_preserving(const Pi02DomainDescriptor& d, const std::vector<Word>& samples) {
  for (const Word& w : samples) {
    Word prefix;
    Token prev = d.lambda(prefix);
    for (Token letter : w) {
      prefix.push_back(letter);
      Token cur = d.lambda(prefix);
      if (cur < prev) return false;
      prev = cur;
    }
  }
  return true;
}

namespace {

struct DiscoveryState {
  Pi02DomainDescriptor lambda;
  EnumName ext;
  std::uint64_t budget;
  std::vector<Word> confirmed_order;
  std::set<Token> confirmed_codes;
  std::uint64_t read = 0;

  void read_to(std::uint64_t upto) {
    while (read < upto) {
      Token t = ext.name.at(read);
      ++read;
      if (t != 0 && confirmed_codes.insert(t - 1).second) {
        auto w = word_decode(t - 1);
        if (w) confirmed_order.push_back(*w);
      }
    }
  }

  bool productive(const Word& w) {
    if (w.empty()) return true;
    Word parent(w.begin(), w.end() - 1);
    if (lambda.lambda(w) <= lambda.lambda(parent)) return false;
    read_to(budget);
    return confirmed_codes.count(word_code(w)) != 0;
  }

  // n-th productive proper extension of u in discovery order.
  Word nth_productive_extension(const Word& u, Token n) {
    read_to(budget);
    std::uint64_t rank = 0;
    for (const Word& v : confirmed_order) {
      if (!word_is_proper_prefix(u, v)) continue;
      if (v.empty()) continue;
      Word parent(v.begin(), v.end() - 1);
      if (lambda.lambda(v) <= lambda.lambda(parent)) continue;
      if (rank == n) return v;
      ++rank;
    }
    throw FuelExhausted("build_trace: productive extension " + std::to_string(n) +
                        " of " + word_to_string(u) + " not discovered");
  }
};

}  // namespace

TraceTransducer build_trace(const Pi02DomainDescriptor& lambda, const EnumName& ext,
                            FuelBudget fuel) {
  auto st = std::make_shared<DiscoveryState>();
  st->lambda = lambda;
  st->ext = ext;
  st->budget = fuel.max_steps;

  TraceTransducer out;
  out.forward = WordFunction("trace", [st](const Word& w) {
    Word cur;  // F(eps) = eps
    for (Token n : w) cur = st->nth_productive_extension(cur, n);
    return cur;
  });
  out.productive = [st](const Word& w) { return st->productive(w); };
  out.invert = [st](const Word& target) {
    Word index_word;
    Word cur;
    while (cur != target) {
      if (!word_is_proper_prefix(cur, target)) {
        throw Error("invert: target not on a productive path from " + word_to_string(cur));
      }
      // greedy: first discovered productive extension of cur inside target
      st->read_to(st->budget);
      std::uint64_t rank = 0;
      bool stepped = false;
      for (const Word& v : st->confirmed_order) {
        if (!word_is_proper_prefix(cur, v)) continue;
        if (v.empty()) continue;
        Word parent(v.begin(), v.end() - 1);
        if (st->lambda.lambda(v) <= st->lambda.lambda(parent)) continue;
        if (word_is_prefix(v, target)) {
          index_word.push_back(rank);
          cur = v;
          stepped = true;
          break;
        }
        ++rank;
      }
      if (!stepped) throw FuelExhausted("invert: no discovered step toward target");
    }
    return index_word;
  };
  return out;
}

TraceTransducer totalize_representation(const Pi02DomainDescriptor& lambda, const EnumName& ext,
                                        FuelBudget fuel) {
  return build_trace(lambda, ext, fuel);
}

std::optional<std::string> fiber_realizer_violation(const FiberOvertRealizer& f,
                                                    const std::vector<Word>& words,
                                                    Token max_stage) {
  auto contains = [](const std::vector<Word>& set, const Word& w) {
    return std::find(set.begin(), set.end(), w) != set.end();
  };
  for (const Word& u : words) {
    for (Token n = 0; n <= max_stage; ++n) {
      auto fn = f.f(u, n);
      if (!contains(fn, u)) return "u not in f(u,n) for u=" + word_to_string(u);
      for (const Word& w : fn) {
        if (!w.empty()) {
          Word parent(w.begin(), w.end() - 1);
          if (!contains(fn, parent)) return "f(u,n) not prefix-closed at " + word_to_string(w);
        }
      }
      if (n > 0) {
        auto fprev = f.f(u, n - 1);
        for (const Word& w : fprev) {
          if (!contains(fn, w)) return "f(u,.) not monotone in the stage";
        }
      }
    }
    for (const Word& u2 : words) {
      if (!word_is_prefix(u, u2) || u == u2) continue;
      for (Token n = 0; n <= max_stage; ++n) {
        auto fu = f.f(u, n), fu2 = f.f(u2, n);
        for (const Word& w : fu) {
          if (!contains(fu2, w)) return "f(.,n) not monotone along prefixes";
        }
      }
    }
  }
  return std::nullopt;
}

Token rr_code(const std::vector<Word>& set, Token n) {
  Token setc = set.empty() ? 0 : checked_add(word_set_code(set), 1);
  return cantor_pair(setc, n);
}

std::optional<std::pair<std::vector<Word>, Token>> rr_decode(Token code) {
  auto [setc, n] = cantor_unpair(code);
  if (setc == 0) return std::make_pair(std::vector<Word>{}, n);
  auto set = word_set_decode(setc - 1);
  if (!set) return std::nullopt;
  return std::make_pair(*set, n);
}

CeRelation relation_from_representation(const FiberOvertRealizer& f,
                                        const Pi02DomainDescriptor& lambda,
                                        std::uint64_t universe_hint) {
  CeRelation rel;
  rel.universe_hint = universe_hint;
  rel.label = "from_representation";
  rel.holds = [f, lambda](Token c1, Token c2) {
    auto d1 = rr_decode(c1), d2 = rr_decode(c2);
    if (!d1 || !d2) return false;
    const auto& [A, n] = *d1;
    const auto& [B, m] = *d2;
    if (B.empty()) return false;
    if (n >= m) return false;
    for (const Word& w : B) {
      if (n >= lambda.lambda(w)) return false;
    }
    for (const Word& u : B) {
      auto fu = f.f(u, m);
      for (const Word& a : A) {
        if (std::find(fu.begin(), fu.end(), a) == fu.end()) return false;
      }
    }
    for (const Word& u : A) {
      for (const Word& w : f.f(u, n)) {
        bool extended = false;
        for (const Word& b : B) {
          if (word_is_prefix(w, b)) {
            extended = true;
            break;
          }
        }
        if (!extended) return false;
      }
    }
    return true;
  };
  return rel;
}

std::uint64_t count_rounded_ideal_classes(const CeRelation& rel, std::uint64_t universe_bound) {
  std::vector<Token> universe(universe_bound);
  for (Token x = 0; x < universe_bound; ++x) universe[x] = x;
  return count_rounded_ideal_classes(rel, std::move(universe));
}

std::uint64_t count_rounded_ideal_classes(const CeRelation& rel, std::vector<Token> universe) {
  // A finite universe cannot host infinite chains, so "keeps extending" is
  // approximated by chain depth: elements reaching at least half the maximal
  // in-universe depth stand in for the ideal's ends.
  std::size_t n = universe.size();
  if (n == 0) return 0;
  std::vector<std::vector<bool>> rel_table(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rel_table[i][j] = rel.holds(universe[i], universe[j]);
  }
  // longest chains out of and into each element; loops count as unbounded
  const std::int64_t kLoop = static_cast<std::int64_t>(n) + 1;
  auto longest = [&](bool outgoing) {
    std::vector<std::int64_t> len(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (rel_table[i][i]) len[i] = kLoop;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          bool edge = outgoing ? rel_table[i][j] : rel_table[j][i];
          if (!edge) continue;
          std::int64_t cand = std::min(kLoop, len[j] + 1);
          if (cand > len[i]) {
            len[i] = cand;
            changed = true;
          }
        }
      }
    }
    return len;
  };
  std::vector<std::int64_t> depth = longest(true), height = longest(false);
  std::int64_t chain_len = 0;
  for (std::size_t i = 0; i < n; ++i) chain_len = std::max(chain_len, depth[i] + height[i]);
  // Middle band: well away from the roots (which join everything) and from
  // the frontier (which joins nothing); its joinability components stand in
  // for the distinct ideals the universe supports.
  std::int64_t band = std::max<std::int64_t>(1, chain_len / 4);
  std::vector<std::size_t> mid;
  for (std::size_t i = 0; i < n; ++i) {
    if (depth[i] >= band && height[i] >= band) mid.push_back(i);
  }
  if (mid.empty()) return 0;
  std::map<std::size_t, std::size_t> parent;
  for (std::size_t x : mid) parent[x] = x;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x : mid) {
    for (std::size_t y : mid) {
      bool joinable = false;
      for (std::size_t z = 0; z < n && !joinable; ++z) {
        joinable = rel_table[x][z] && rel_table[y][z];
      }
      if (joinable) parent[find(x)] = find(y);
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t x : mid) roots.insert(find(x));
  return roots.size();
}

// ---- Baire cap sets ---------------------------------------------------------

bool BaireCapSet::extendible(const Word& w) const {
  for (const Component& c : components) {
    if (word_is_prefix(w, c.root)) return true;
    if (word_is_prefix(c.root, w)) {
      bool ok = true;
      for (std::size_t i = c.root.size(); i < w.size(); ++i) {
        if (c.cap && w[i] > *c.cap) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

EnumName baire_overt_name(const BaireCapSet& set) {
  auto shared = std::make_shared<BaireCapSet>(set);
  std::size_t m = std::max<std::size_t>(1, set.components.size());
  return EnumName(Name([shared, m](std::uint64_t t) -> Token {
    if (t % 2 == 0) {
      // backbone: prefixes of each component's leftmost branch, round robin
      std::uint64_t u = t / 2;
      std::size_t comp = u % m;
      std::uint64_t depth = u / m;
      if (comp >= shared->components.size()) return 0;
      const auto& c = shared->components[comp];
      Word w;
      for (std::uint64_t i = 0; i < depth && i < c.root.size(); ++i) w.push_back(c.root[i]);
      for (std::uint64_t i = c.root.size(); i < depth; ++i) w.push_back(0);
      try {
        return word_code(w) + 1;
      } catch (const OverflowError&) {
        return 0;  // beyond the codec's range, so no schedule could confirm it
      }
    }
    std::uint64_t code = (t - 1) / 2;
    auto w = word_decode(code);
    if (!w) return 0;
    return shared->extendible(*w) ? code + 1 : 0;
  }));
}

}  // namespace overt
