#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "overt/codec.hpp"

// Deterministic lazy streams of naturals ("names"), enumeration names with
// the token-0-padding convention, and monotone word functions, the finite
// form of realizers. Everything downstream computes on these.

namespace overt {

struct MonotonicityViolation : Error {
  explicit MonotonicityViolation(const std::string& what)
      : Error("monotonicity violation: " + what) {}
};
struct InvalidName : Error {
  explicit InvalidName(const std::string& what) : Error("invalid name: " + what) {}
};
struct MissingTailDescriptor : Error {
  MissingTailDescriptor() : Error("name carries no tail descriptor") {}
};

struct FuelBudget {
  std::uint64_t max_steps = 10000;
  FuelBudget() = default;
  explicit FuelBudget(std::uint64_t n) : max_steps(n) {
    if (n == 0) throw Error("fuel budget must be at least 1");
  }
};

// Finite description of a stream's tail, making desk-scale checks total.
struct Tail {
  enum class Kind { EventuallyZero, EventuallyConstant, Periodic, FiniteStage };
  Kind kind = Kind::EventuallyZero;
  Token constant = 0;        // EventuallyConstant
  Word period;               // Periodic
  std::uint64_t point = 0;   // stabilization index (EventuallyZero/Constant), stage (FiniteStage)

  static Tail eventually_zero(std::uint64_t point);
  static Tail eventually_constant(Token c, std::uint64_t point);
  static Tail periodic(Word period);
  static Tail finite_stage(std::uint64_t stage);
};

class Name {
 public:
  Name();  // all zeros
  explicit Name(std::function<Token(std::uint64_t)> gen, std::optional<Tail> tail = {});
  static Name constant(Token c);
  static Name from_prefix(Word prefix, Token rest = 0);  // prefix then rest forever
  static Name from_tail(const Tail& tail, Word prefix = {});

  Token at(std::uint64_t i) const;  // memoized; repeated queries agree
  Word prefix(std::uint64_t n) const;
  const std::optional<Tail>& tail() const;

  // True when the sampled generator agrees with the tail descriptor up to
  // twice its stabilization point.
  bool tail_consistent() const;
  // A name is provably complete when its tail says every later token is padding.
  std::optional<std::uint64_t> padding_stage() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

Token query_name(const Name& p, std::uint64_t i);

// Interleaving pair: output(2i) = p(i), output(2i+1) = q(i).
Name pair_names(const Name& p, const Name& q);
Name unpair_first(const Name& pq);
Name unpair_second(const Name& pq);
Word even_positions(const Word& w);
Word odd_positions(const Word& w);

class WordFunction {
 public:
  WordFunction();  // identity
  WordFunction(std::string label, std::function<Word(const Word&)> fn);
  static WordFunction identity();
  static WordFunction from_table(std::vector<std::pair<Word, Word>> table);

  Word operator()(const Word& input) const;
  const std::string& label() const;

 private:
  std::string label_;
  std::function<Word(const Word&)> fn_;
};

// Evaluate h on the fuel-length prefix of p, checking monotonicity along an
// incremental prefix schedule.
Word apply_word_function(const WordFunction& h, const Name& p, FuelBudget fuel);

WordFunction compose_transducers(const WordFunction& h1, const WordFunction& h2);

// The stream H(p) as a name; token i is read off h on growing prefixes of p,
// throwing FuelExhausted past the probe cap.
Name transduce(const WordFunction& h, const Name& p, std::uint64_t probe_cap = 1u << 16);

struct EnumName {
  Name name;

  EnumName() = default;
  explicit EnumName(Name n) : name(std::move(n)) {}
  // {n : token n+1 occurs among the first fuel tokens}
  std::set<Token> decode(FuelBudget fuel) const;
  // Enumeration listing `values` ascending, one per step, then padding.
  static EnumName of_finite_set(const std::set<Token>& values);
  // Uniform schedule: position t confirms t iff accept(t).
  static EnumName uniform(std::function<bool(Token)> accept);
};

}  // namespace overt
