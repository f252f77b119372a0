#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "overt/names.hpp"

// Rounded-ideal presentations of quasi-Polish spaces: the chain algorithm for
// overt choice over a c.e. transitive relation, dense sequences, trace
// transducers totalizing Pi02 domains, and the relation built from a
// fiber-overt representation.

namespace overt {

struct ConditionCheckFailure : Error {
  explicit ConditionCheckFailure(const std::string& what)
      : Error("fiber realizer condition failed: " + what) {}
};

struct CeRelation {
  std::function<bool(Token, Token)> holds;
  std::uint64_t universe_hint = 64;
  std::string label = "anonymous";
};

CeRelation relation_lt();
// Proper prefix on N*-codes; codes that decode to no word relate to nothing.
CeRelation relation_proper_prefix();

// Exhaustive transitivity check over the bounded universe; nullopt when clean.
std::optional<std::array<Token, 3>> transitivity_counterexample(const CeRelation& rel);

// Confirmed pairs in Cantor order of (a, b), capped by fuel.
std::vector<std::pair<Token, Token>> enumerate_relation_facts(const CeRelation& rel,
                                                              FuelBudget fuel);

struct RoundedIdealName {
  CeRelation rel;
  EnumName en;
  // The ascending chain generating the ideal, extended on demand; empty
  // entries never appear. Throws FuelExhausted when extension stalls.
  std::function<std::vector<Token>(std::uint64_t)> chain_prefix;
};

struct FragmentCheck {
  enum class Kind { ConsistentSoFar, Violation, UnwitnessedDirectedness };
  Kind kind = Kind::ConsistentSoFar;
  std::string reason;
  std::pair<Token, Token> pair{0, 0};
};

FragmentCheck check_rounded_ideal_fragment(const RoundedIdealName& ideal, FuelBudget fuel);

// Overt choice for RI(rel): builds the ascending chain through basic opens
// confirmed to meet the set, emitting the generated rounded ideal.
RoundedIdealName vc_ri(const CeRelation& rel, const EnumName& overt, FuelBudget fuel);

std::vector<RoundedIdealName> dense_sequence(const CeRelation& rel, const EnumName& overt,
                                             std::uint64_t count, FuelBudget fuel);

struct Pi02DomainDescriptor {
  std::function<Token(const Word&)> lambda;  // order-preserving along prefixes
};

// Sampled monotonicity of the descriptor on prefix chains.
bool lambda_order_preserving(const Pi02DomainDescriptor& d, const std::vector<Word>& samples);

struct TraceTransducer {
  WordFunction forward;                     // monotone; range = productive words
  std::function<Word(const Word&)> invert;  // productive word -> an index word
  std::function<bool(const Word&)> productive;
};

TraceTransducer build_trace(const Pi02DomainDescriptor& lambda, const EnumName& ext,
                            FuelBudget fuel);
TraceTransducer totalize_representation(const Pi02DomainDescriptor& lambda, const EnumName& ext,
                                        FuelBudget fuel);

struct FiberOvertRealizer {
  std::function<std::vector<Word>(const Word&, Token)> f;
};

// Sampled check of the realizer's algebraic conditions on bounded words.
std::optional<std::string> fiber_realizer_violation(const FiberOvertRealizer& f,
                                                    const std::vector<Word>& words,
                                                    Token max_stage);

// Codes for (finite word set, n) pairs used by the produced relation.
Token rr_code(const std::vector<Word>& set, Token n);
std::optional<std::pair<std::vector<Word>, Token>> rr_decode(Token code);

CeRelation relation_from_representation(const FiberOvertRealizer& f,
                                        const Pi02DomainDescriptor& lambda,
                                        std::uint64_t universe_hint = 64);

// Desk-scale count of rounded-ideal classes over the bounded universe:
// elements that keep extending, grouped by joinability.
std::uint64_t count_rounded_ideal_classes(const CeRelation& rel, std::uint64_t universe_bound);
std::uint64_t count_rounded_ideal_classes(const CeRelation& rel, std::vector<Token> universe);

// ---- closed subsets of Baire space at desk scale ---------------------------

// Finite union of capped cylinders: { p : root prefix of p and every later
// token <= cap }; cap absent means no bound. Closed, with decidable
// extendibility of finite words.
struct BaireCapSet {
  struct Component {
    Word root;
    std::optional<Token> cap;
  };
  std::vector<Component> components;

  bool extendible(const Word& w) const;
  bool empty() const { return components.empty(); }
};

// Overt name over the proper-prefix relation: even positions walk a canonical
// backbone through each component, odd positions run the uniform code scan.
EnumName baire_overt_name(const BaireCapSet& set);

}  // namespace overt
