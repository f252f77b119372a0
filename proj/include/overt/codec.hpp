#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Integer codecs shared by every module: Cantor pairing on naturals,
// self-delimiting codes for finite words over the naturals, heap codes for
// binary words, and packed codes for small finite word sets.

namespace overt {

using Token = std::uint64_t;
using Word = std::vector<Token>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error("overflow: " + what) {}
};
struct CodecError : Error {
  explicit CodecError(const std::string& what) : Error("codec: " + what) {}
};
struct BadIndex : Error {
  explicit BadIndex(const std::string& what) : Error("bad basis index: " + what) {}
};
struct FuelExhausted : Error {
  explicit FuelExhausted(const std::string& what) : Error("fuel exhausted: " + what) {}
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

// Cantor pair: (x,y) -> (x+y)(x+y+1)/2 + y.
std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

// Word code for N*: the bits of (code+1) are a leading 1 followed by the
// Elias-gamma codes of letter+1, most significant word position first.
// Code 0 is the empty word; prefixes get strictly smaller codes.
std::uint64_t word_code(const Word& w);
std::optional<Word> word_decode(std::uint64_t code);
bool is_word_code(std::uint64_t code);
bool word_is_prefix(const Word& a, const Word& b);         // a prefix of b
bool word_is_proper_prefix(const Word& a, const Word& b);

// Heap code for binary words: eps -> 0, wb -> 2*code(w) + 1 + b. Total bijection.
std::uint64_t bin_code(const Word& w);
Word bin_decode(std::uint64_t code);

// Packed code for a nonempty finite set of N*-words, canonical order.
// Small sets of short words only; CodecError when the packing does not fit.
std::uint64_t word_set_code(std::vector<Word> words);
std::optional<std::vector<Word>> word_set_decode(std::uint64_t code);

std::string word_to_string(const Word& w);

}  // namespace overt
