#include <doctest.h>

#include <random>

#include "overt/adversaries.hpp"
#include "overt/choquet.hpp"
#include "overt/reductions.hpp"

// Every word function the repo builds must be monotone: on any prefix chain
// the outputs form a prefix chain too. Sampled over input families matching
// each transducer's expected shape.

using namespace overt;

namespace {

void check_monotone_on(const WordFunction& h, const Word& input) {
  Word prev;
  for (std::size_t len = 0; len <= input.size(); ++len) {
    Word out;
    try {
      out = h(Word(input.begin(), input.begin() + len));
    } catch (const Error&) {
      return;  // undefined past this prefix; nothing more to compare
    }
    CHECK_MESSAGE(word_is_prefix(prev, out), h.label(), " at prefix length ", len);
    prev = std::move(out);
  }
}

Word random_tokens(std::mt19937_64& rng, std::size_t len, Token hi) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % hi);
  return w;
}

}  // namespace

TEST_CASE("every shipped transducer is monotone on sampled prefix chains") {
  std::mt19937_64 rng(20260807);

  for (const auto& [id, w] : witness_registry()) {
    for (int it = 0; it < 6; ++it) {
      // instance-shaped input for the pre transducer: mostly padding with
      // occasional small confirmations
      Word pre_input;
      for (int i = 0; i < 64; ++i) {
        pre_input.push_back(rng() % 3 == 0 ? rng() % 24 : 0);
      }
      check_monotone_on(w.pre, pre_input);
      // pair-shaped input for the post transducer
      Word pair_input;
      for (int i = 0; i < 32; ++i) {
        pair_input.push_back(rng() % 4 == 0 ? rng() % 8 : 0);   // original half
        pair_input.push_back(rng() % 3 == 0 ? rng() % 24 : 0);  // answer half
      }
      check_monotone_on(w.post, pair_input);
    }
    // and on an honest run of the witness
    const Instance inst = default_suite(id).front();
    check_monotone_on(w.pre, inst.name.prefix(64));
  }

  for (const auto& [id, solver] : ecp_solvers()) {
    for (int it = 0; it < 6; ++it) {
      Word input;
      for (int i = 0; i < 64; ++i) input.push_back(rng() % 2 == 0 ? rng() % 12 : 0);
      check_monotone_on(solver.transducer, input);
    }
  }
  for (const auto& [id, solver] : fsl_solvers()) {
    for (int it = 0; it < 6; ++it) {
      Word input;
      for (int i = 0; i < 64; ++i) input.push_back(rng() % 2 == 0 ? rng() % 12 : 0);
      check_monotone_on(solver.transducer, input);
    }
  }
  for (SpaceId id : {SpaceId::Nat, SpaceId::Q01, SpaceId::NatCofinite}) {
    WordFunction realizer = game_realizer(id);
    for (int it = 0; it < 6; ++it) {
      Word input;
      for (int i = 0; i < 64; ++i) input.push_back(rng() % 3 == 0 ? rng() % 16 : 0);
      check_monotone_on(realizer, input);
    }
  }
  check_monotone_on(acc_tmin_post_on_answer(), random_tokens(rng, 24, 4));
}
