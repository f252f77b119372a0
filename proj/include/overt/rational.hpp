#pragma once

#include <cstdint>
#include <string>

#include "overt/codec.hpp"

// Exact arithmetic: rationals over checked 128-bit integers and the field
// Q(sqrt2), whose sign test reduces to a 256-bit integer comparison. All
// interval subdivision, membership and cut computations run through these
// types; nothing in the repo compares real numbers approximately.

namespace overt {

using i128 = __int128;

i128 checked_add_i(i128 a, i128 b);
i128 checked_sub_i(i128 a, i128 b);
i128 checked_mul_i(i128 a, i128 b);
i128 gcd_i(i128 a, i128 b);
std::string i128_to_string(i128 v);

struct Rat {
  i128 num = 0;
  i128 den = 1;  // > 0, gcd(num, den) == 1

  Rat() = default;
  Rat(i128 n, i128 d);
  static Rat from_int(i128 n) { return Rat(n, 1); }

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this == o || *this < o; }
  std::string to_string() const;
};

// (p + q*sqrt2) / d with d > 0 and gcd(p, q, d) == 1.
struct QF2 {
  i128 p = 0;
  i128 q = 0;
  i128 d = 1;

  QF2() = default;
  QF2(i128 p_, i128 q_, i128 d_);
  static QF2 from_rat(const Rat& r) { return QF2(r.num, 0, r.den); }
  static QF2 sqrt2() { return QF2(0, 1, 1); }

  bool is_rational() const { return q == 0; }
  Rat rational_part_as_rat() const;  // requires q == 0

  QF2 operator+(const QF2& o) const;
  QF2 operator-(const QF2& o) const;
  QF2 operator*(const QF2& o) const;
  QF2 reciprocal() const;
  std::string to_string() const;
};

int sign(const QF2& x);                       // -1, 0, +1
int compare(const QF2& a, const QF2& b);      // sign(a - b)
int compare(const QF2& a, const Rat& b);
i128 floor_qf2(const QF2& x);

// Fixed enumeration of the rationals in [0,1]: reduced fractions ordered by
// denominator then numerator (0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...).
Rat rational_at(std::uint64_t index);
std::uint64_t rational_index(const Rat& r);  // inverse of rational_at

// Minimal-denominator (then minimal-numerator) rational strictly between
// two exact bounds; bounds must satisfy lo < hi.
Rat simplest_strictly_between(const QF2& lo, const QF2& hi);

// Continued-fraction convergents of sqrt2/2; an infinite closed discrete
// subset of the rationals in [0,1], used to embed N as a closed subspace.
Rat sqrt2_half_convergent(std::uint64_t n);

}  // namespace overt
