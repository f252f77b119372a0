#include "overt/names.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace overt {

Tail Tail::eventually_zero(std::uint64_t point) {
  Tail t;
  t.kind = Kind::EventuallyZero;
  t.point = point;
  return t;
}
Tail Tail::eventually_constant(Token c, std::uint64_t point) {
  Tail t;
  t.kind = Kind::EventuallyConstant;
  t.constant = c;
  t.point = point;
  return t;
}
Tail Tail::periodic(Word period) {
  if (period.empty()) throw Error("periodic tail with empty period");
  Tail t;
  t.kind = Kind::Periodic;
  t.period = std::move(period);
  return t;
}
Tail Tail::finite_stage(std::uint64_t stage) {
  Tail t;
  t.kind = Kind::FiniteStage;
  t.point = stage;
  return t;
}

struct Name::State {
  std::function<Token(std::uint64_t)> gen;
  std::optional<Tail> tail;
  Word cache;
};

Name::Name() : Name([](std::uint64_t) { return Token{0}; }, Tail::eventually_zero(0)) {}

Name::Name(std::function<Token(std::uint64_t)> gen, std::optional<Tail> tail)
    : state_(std::make_shared<State>()) {
  state_->gen = std::move(gen);
  state_->tail = std::move(tail);
}

Name Name::constant(Token c) {
  return Name([c](std::uint64_t) { return c; }, Tail::eventually_constant(c, 0));
}

Name Name::from_prefix(Word prefix, Token rest) {
  auto tail = rest == 0 ? Tail::eventually_zero(prefix.size())
                        : Tail::eventually_constant(rest, prefix.size());
  return Name(
      [prefix = std::move(prefix), rest](std::uint64_t i) {
        return i < prefix.size() ? prefix[i] : rest;
      },
      tail);
}

Name Name::from_tail(const Tail& tail, Word prefix) {
  return Name(
      [prefix = std::move(prefix), tail](std::uint64_t i) -> Token {
        if (i < prefix.size()) return prefix[i];
        switch (tail.kind) {
          case Tail::Kind::EventuallyZero:
          case Tail::Kind::FiniteStage:
            return 0;
          case Tail::Kind::EventuallyConstant:
            return tail.constant;
          case Tail::Kind::Periodic:
            return tail.period[i % tail.period.size()];
        }
        return 0;
      },
      tail);
}

Token Name::at(std::uint64_t i) const {
  Word& cache = state_->cache;
  while (cache.size() <= i) cache.push_back(state_->gen(cache.size()));
  return cache[i];
}

Word Name::prefix(std::uint64_t n) const {
  Word w;
  w.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) w.push_back(at(i));
  return w;
}

const std::optional<Tail>& Name::tail() const { return state_->tail; }

bool Name::tail_consistent() const {
  if (!state_->tail) return true;
  const Tail& t = *state_->tail;
  std::uint64_t hi = 2 * t.point + 8;
  for (std::uint64_t i = (t.kind == Tail::Kind::Periodic ? 0 : t.point); i < hi; ++i) {
    Token v = at(i);
    switch (t.kind) {
      case Tail::Kind::EventuallyZero:
      case Tail::Kind::FiniteStage:
        if (v != 0) return false;
        break;
      case Tail::Kind::EventuallyConstant:
        if (v != t.constant) return false;
        break;
      case Tail::Kind::Periodic:
        if (v != t.period[i % t.period.size()]) return false;
        break;
    }
  }
  return true;
}

std::optional<std::uint64_t> Name::padding_stage() const {
  if (!state_->tail) return std::nullopt;
  const Tail& t = *state_->tail;
  if (t.kind == Tail::Kind::EventuallyZero || t.kind == Tail::Kind::FiniteStage) return t.point;
  if (t.kind == Tail::Kind::EventuallyConstant && t.constant == 0) return t.point;
  return std::nullopt;
}

Token query_name(const Name& p, std::uint64_t i) { return p.at(i); }

Name pair_names(const Name& p, const Name& q) {
  std::optional<Tail> tail;
  auto pz = p.padding_stage(), qz = q.padding_stage();
  if (pz && qz) tail = Tail::eventually_zero(2 * std::max(*pz, *qz));
  return Name([p, q](std::uint64_t i) { return i % 2 == 0 ? p.at(i / 2) : q.at(i / 2); }, tail);
}

Name unpair_first(const Name& pq) {
  return Name([pq](std::uint64_t i) { return pq.at(2 * i); });
}
Name unpair_second(const Name& pq) {
  return Name([pq](std::uint64_t i) { return pq.at(2 * i + 1); });
}

Word even_positions(const Word& w) {
  Word out;
  for (std::size_t i = 0; i < w.size(); i += 2) out.push_back(w[i]);
  return out;
}

Word odd_positions(const Word& w) {
  Word out;
  for (std::size_t i = 1; i < w.size(); i += 2) out.push_back(w[i]);
  return out;
}

WordFunction::WordFunction() : label_("id"), fn_([](const Word& w) { return w; }) {}

WordFunction::WordFunction(std::string label, std::function<Word(const Word&)> fn)
    : label_(std::move(label)), fn_(std::move(fn)) {}

WordFunction WordFunction::identity() { return WordFunction(); }

WordFunction WordFunction::from_table(std::vector<std::pair<Word, Word>> table) {
  // Lookup of the longest tabulated prefix of the input.
  std::sort(table.begin(), table.end(),
            [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  return WordFunction("table", [table = std::move(table)](const Word& w) -> Word {
    for (const auto& [in, out] : table) {
      if (word_is_prefix(in, w)) return out;
    }
    return {};
  });
}

Word WordFunction::operator()(const Word& input) const { return fn_(input); }

const std::string& WordFunction::label() const { return label_; }

Word apply_word_function(const WordFunction& h, const Name& p, FuelBudget fuel) {
  std::uint64_t n = fuel.max_steps;
  std::vector<std::uint64_t> schedule;
  if (n <= 256) {
    for (std::uint64_t k = 0; k <= n; ++k) schedule.push_back(k);
  } else {
    schedule = {0, 1};
    for (std::uint64_t k = 2; k < n; k *= 2) schedule.push_back(k);
    schedule.push_back(n);
  }
  Word prev;
  Word input;
  for (std::uint64_t k : schedule) {
    while (input.size() < k) input.push_back(p.at(input.size()));
    Word out = h(input);
    if (!word_is_prefix(prev, out)) {
      throw MonotonicityViolation(h.label() + " on prefix length " + std::to_string(k));
    }
    prev = std::move(out);
  }
  return prev;
}

WordFunction compose_transducers(const WordFunction& h1, const WordFunction& h2) {
  return WordFunction(h2.label() + " . " + h1.label(),
                      [h1, h2](const Word& w) { return h2(h1(w)); });
}

Name transduce(const WordFunction& h, const Name& p, std::uint64_t probe_cap) {
  // Shared probe state: output tokens appear as h sees longer input prefixes.
  struct Probe {
    WordFunction h;
    Name p;
    Word out;
    std::uint64_t in_len = 0;
    std::uint64_t cap;
  };
  auto probe = std::make_shared<Probe>(Probe{h, p, {}, 0, probe_cap});
  return Name([probe](std::uint64_t i) -> Token {
    while (probe->out.size() <= i) {
      if (probe->in_len >= probe->cap) {
        throw FuelExhausted("transduce: no output token " + std::to_string(i) + " within cap");
      }
      probe->in_len = std::max<std::uint64_t>(probe->in_len * 2, probe->in_len + 1);
      Word next = probe->h(probe->p.prefix(probe->in_len));
      if (!word_is_prefix(probe->out, next)) {
        throw MonotonicityViolation(probe->h.label() + " during transduce");
      }
      probe->out = std::move(next);
    }
    return probe->out[i];
  });
}

std::set<Token> EnumName::decode(FuelBudget fuel) const {
  std::set<Token> out;
  for (std::uint64_t i = 0; i < fuel.max_steps; ++i) {
    Token t = name.at(i);
    if (t != 0) out.insert(t - 1);
  }
  return out;
}

EnumName EnumName::of_finite_set(const std::set<Token>& values) {
  Word prefix;
  for (Token v : values) prefix.push_back(checked_add(v, 1));
  Name n = Name::from_prefix(prefix);
  return EnumName(Name([n](std::uint64_t i) { return n.at(i); },
                       Tail::finite_stage(values.size())));
}

EnumName EnumName::uniform(std::function<bool(Token)> accept) {
  return EnumName(Name([accept = std::move(accept)](std::uint64_t i) -> Token {
    return accept(i) ? i + 1 : 0;
  }));
}

}  // namespace overt
