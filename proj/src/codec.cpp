#include "overt/codec.hpp"

#include <algorithm>
#include <bit>

namespace overt {

namespace {

using u128 = unsigned __int128;

std::uint64_t isqrt_u128(u128 n) {
  if (n == 0) return 0;
  u128 x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return static_cast<std::uint64_t>(x);
}

constexpr std::uint64_t kMax = ~0ull;

int gamma_bits(std::uint64_t n) {  // n >= 1
  return 2 * (std::bit_width(n) - 1) + 1;
}

}  // namespace

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (kMax - a < b) throw OverflowError("add");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && kMax / a < b) throw OverflowError("mul");
  return a * b;
}

std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y) {
  u128 s = static_cast<u128>(x) + y;
  u128 v = s * (s + 1) / 2 + y;
  if (v > kMax) throw OverflowError("cantor_pair");
  return static_cast<std::uint64_t>(v);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  u128 d = static_cast<u128>(8) * z + 1;
  std::uint64_t w = (isqrt_u128(d) - 1) / 2;
  u128 t = static_cast<u128>(w) * (w + 1) / 2;
  while (t > z) {  // isqrt rounding guard
    --w;
    t = static_cast<u128>(w) * (w + 1) / 2;
  }
  while (static_cast<u128>(w + 1) * (w + 2) / 2 <= z) {
    ++w;
    t = static_cast<u128>(w) * (w + 1) / 2;
  }
  std::uint64_t y = z - static_cast<std::uint64_t>(t);
  return {w - y, y};
}

std::uint64_t word_code(const Word& w) {
  u128 acc = 1;
  int used = 1;
  for (Token letter : w) {
    if (letter >= kMax) throw OverflowError("word letter");
    std::uint64_t n = letter + 1;
    int gb = gamma_bits(n);
    used += gb;
    if (used > 64) throw OverflowError("word_code: word too long to encode");
    acc = (acc << gb) | n;
  }
  return static_cast<std::uint64_t>(acc) - 1;
}

std::optional<Word> word_decode(std::uint64_t code) {
  if (code == kMax) return std::nullopt;
  std::uint64_t v = code + 1;
  int total = std::bit_width(v);
  int pos = total - 2;  // skip the marker bit
  Word w;
  while (pos >= 0) {
    int z = 0;
    while (pos >= 0 && ((v >> pos) & 1) == 0) {
      ++z;
      --pos;
    }
    if (pos < 0 || pos - z < -1) return std::nullopt;
    if (pos + 1 < z + 1) return std::nullopt;  // truncated gamma payload
    std::uint64_t n = (v >> (pos - z)) & ((2ull << z) - 1);
    pos -= z + 1;
    if (n == 0) return std::nullopt;
    w.push_back(n - 1);
  }
  return w;
}

bool is_word_code(std::uint64_t code) { return word_decode(code).has_value(); }

bool word_is_prefix(const Word& a, const Word& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

bool word_is_proper_prefix(const Word& a, const Word& b) {
  return a.size() < b.size() && word_is_prefix(a, b);
}

std::uint64_t bin_code(const Word& w) {
  std::uint64_t c = 0;
  for (Token b : w) {
    if (b > 1) throw CodecError("bin_code: letter outside {0,1}");
    if (c > (kMax - 2) / 2) throw OverflowError("bin_code");
    c = 2 * c + 1 + b;
  }
  return c;
}

Word bin_decode(std::uint64_t code) {
  Word w;
  while (code != 0) {
    w.push_back((code - 1) & 1);
    code = (code - 1) >> 1;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::uint64_t word_set_code(std::vector<Word> words) {
  if (words.empty()) throw CodecError("word_set_code: empty set");
  std::vector<std::uint64_t> codes;
  codes.reserve(words.size());
  for (const Word& w : words) codes.push_back(word_code(w));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

  u128 acc = 1;
  int used = 1;
  auto push = [&](std::uint64_t n) {  // n >= 1
    int gb = gamma_bits(n);
    used += gb;
    if (used > 64) throw OverflowError("word_set_code: set too large to pack");
    acc = (acc << gb) | n;
  };
  push(static_cast<std::uint64_t>(codes.size()));
  std::uint64_t prev = 0;
  bool first = true;
  for (std::uint64_t c : codes) {
    push(first ? c + 1 : c - prev);
    prev = c;
    first = false;
  }
  return static_cast<std::uint64_t>(acc) - 1;
}

std::optional<std::vector<Word>> word_set_decode(std::uint64_t code) {
  // The payload is itself a gamma stream; reuse word_decode and reinterpret.
  auto stream = word_decode(code);
  if (!stream || stream->empty()) return std::nullopt;
  std::uint64_t count = (*stream)[0] + 1;
  if (stream->size() != count + 1) return std::nullopt;
  std::vector<Word> out;
  std::uint64_t c = 0;
  for (std::uint64_t i = 1; i <= count; ++i) {
    std::uint64_t d = (*stream)[i] + 1;
    c = (i == 1) ? d - 1 : checked_add(c, d);
    auto w = word_decode(c);
    if (!w) return std::nullopt;
    out.push_back(*w);
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "eps";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

}  // namespace overt
