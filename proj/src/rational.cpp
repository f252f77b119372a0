#include "overt/rational.hpp"

#include <array>
#include <mutex>
#include <vector>

namespace overt {

namespace {

using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

std::uint64_t isqrt_u128(u128 n) {
  if (n == 0) return 0;
  u128 x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return static_cast<std::uint64_t>(x);
}

// 256-bit product of two u128 values, little-endian 64-bit limbs.
std::array<std::uint64_t, 4> mul_u128(u128 a, u128 b) {
  std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  std::array<std::uint64_t, 4> r{0, 0, 0, 0};
  auto addat = [&](int i, u128 v) {
    while (v != 0 && i < 4) {
      u128 s = static_cast<u128>(r[i]) + static_cast<std::uint64_t>(v);
      r[i] = static_cast<std::uint64_t>(s);
      v = (v >> 64) + (s >> 64);
      ++i;
    }
  };
  addat(0, static_cast<u128>(a0) * b0);
  addat(1, static_cast<u128>(a0) * b1);
  addat(1, static_cast<u128>(a1) * b0);
  addat(2, static_cast<u128>(a1) * b1);
  return r;
}

std::array<std::uint64_t, 4> shl1(std::array<std::uint64_t, 4> v) {
  std::uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t nc = v[i] >> 63;
    v[i] = (v[i] << 1) | carry;
    carry = nc;
  }
  if (carry) throw OverflowError("256-bit shift");
  return v;
}

int cmp256(const std::array<std::uint64_t, 4>& a, const std::array<std::uint64_t, 4>& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// sign(p + q*sqrt2) via p^2 vs 2 q^2 when the terms have opposite signs.
int sign_pq(i128 p, i128 q) {
  if (q == 0) return p < 0 ? -1 : (p > 0 ? 1 : 0);
  if (p == 0) return q < 0 ? -1 : 1;
  if (p > 0 && q > 0) return 1;
  if (p < 0 && q < 0) return -1;
  int c = cmp256(mul_u128(uabs(p), uabs(p)), shl1(mul_u128(uabs(q), uabs(q))));
  if (c == 0) throw Error("sqrt2 turned out rational");  // impossible for q != 0
  if (p > 0) return c > 0 ? 1 : -1;  // q < 0
  return c > 0 ? -1 : 1;             // p < 0, q > 0
}

i128 floordiv(i128 a, i128 b) {  // b > 0
  i128 r = a / b;
  if (a % b != 0 && a < 0) --r;
  return r;
}

std::mutex phi_mutex;
std::vector<std::uint64_t> phi_cumulative = {0, 0};  // phi sums over 2..d-1

std::uint64_t phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Sum of phi(e) for 2 <= e < d.
std::uint64_t phi_sum_below(std::uint64_t d) {
  std::lock_guard<std::mutex> lock(phi_mutex);
  while (phi_cumulative.size() <= d) {
    std::uint64_t e = phi_cumulative.size() - 1;
    phi_cumulative.push_back(phi_cumulative.back() + (e >= 2 ? phi(e) : 0));
  }
  return phi_cumulative[d];
}

}  // namespace

i128 checked_add_i(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("i128 add");
  return r;
}

i128 checked_sub_i(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("i128 sub");
  return r;
}

i128 checked_mul_i(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("i128 mul");
  return r;
}

i128 gcd_i(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = uabs(v);
  std::string s;
  while (u != 0) {
    s += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (neg) s += '-';
  return {s.rbegin(), s.rend()};
}

Rat::Rat(i128 n, i128 d) : num(n), den(d) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd_i(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rat Rat::operator+(const Rat& o) const {
  return Rat(checked_add_i(checked_mul_i(num, o.den), checked_mul_i(o.num, den)),
             checked_mul_i(den, o.den));
}
Rat Rat::operator-(const Rat& o) const {
  return Rat(checked_sub_i(checked_mul_i(num, o.den), checked_mul_i(o.num, den)),
             checked_mul_i(den, o.den));
}
Rat Rat::operator*(const Rat& o) const {
  return Rat(checked_mul_i(num, o.num), checked_mul_i(den, o.den));
}
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw Error("rational division by zero");
  return Rat(checked_mul_i(num, o.den), checked_mul_i(den, o.num));
}
bool Rat::operator<(const Rat& o) const {
  return checked_mul_i(num, o.den) < checked_mul_i(o.num, den);
}
std::string Rat::to_string() const {
  if (den == 1) return i128_to_string(num);
  return i128_to_string(num) + "/" + i128_to_string(den);
}

QF2::QF2(i128 p_, i128 q_, i128 d_) : p(p_), q(q_), d(d_) {
  if (d == 0) throw Error("QF2 with zero denominator");
  if (d < 0) {
    p = -p;
    q = -q;
    d = -d;
  }
  i128 g = gcd_i(gcd_i(p, q), d);
  if (g > 1) {
    p /= g;
    q /= g;
    d /= g;
  }
}

Rat QF2::rational_part_as_rat() const {
  if (q != 0) throw Error("QF2 value is irrational");
  return Rat(p, d);
}

QF2 QF2::operator+(const QF2& o) const {
  return QF2(checked_add_i(checked_mul_i(p, o.d), checked_mul_i(o.p, d)),
             checked_add_i(checked_mul_i(q, o.d), checked_mul_i(o.q, d)),
             checked_mul_i(d, o.d));
}
QF2 QF2::operator-(const QF2& o) const {
  return QF2(checked_sub_i(checked_mul_i(p, o.d), checked_mul_i(o.p, d)),
             checked_sub_i(checked_mul_i(q, o.d), checked_mul_i(o.q, d)),
             checked_mul_i(d, o.d));
}
QF2 QF2::operator*(const QF2& o) const {
  i128 np = checked_add_i(checked_mul_i(p, o.p), checked_mul_i(2, checked_mul_i(q, o.q)));
  i128 nq = checked_add_i(checked_mul_i(p, o.q), checked_mul_i(q, o.p));
  return QF2(np, nq, checked_mul_i(d, o.d));
}
QF2 QF2::reciprocal() const {
  // 1 / ((p + q sqrt2)/d) = d (p - q sqrt2) / (p^2 - 2 q^2)
  i128 norm = checked_sub_i(checked_mul_i(p, p), checked_mul_i(2, checked_mul_i(q, q)));
  if (norm == 0) throw Error("QF2 reciprocal of zero");
  return QF2(checked_mul_i(d, p), checked_mul_i(d, -q), norm);
}
std::string QF2::to_string() const {
  return "(" + i128_to_string(p) + " + " + i128_to_string(q) + "*sqrt2)/" + i128_to_string(d);
}

int sign(const QF2& x) { return sign_pq(x.p, x.q); }

int compare(const QF2& a, const QF2& b) { return sign(a - b); }

int compare(const QF2& a, const Rat& b) { return compare(a, QF2::from_rat(b)); }

i128 floor_qf2(const QF2& x) {
  i128 t;
  if (x.q == 0) {
    t = 0;
  } else {
    u128 qq = uabs(x.q);
    if (qq > (static_cast<u128>(1) << 63)) throw OverflowError("floor_qf2 range");
    std::uint64_t root = isqrt_u128(2 * qq * qq);
    t = (x.q > 0) ? static_cast<i128>(root) : -(static_cast<i128>(root) + 1);
  }
  i128 k = floordiv(checked_add_i(x.p, t), x.d);
  auto cmp_int = [&](i128 n) {
    return sign_pq(checked_sub_i(x.p, checked_mul_i(n, x.d)), x.q);
  };
  while (cmp_int(k + 1) >= 0) ++k;
  while (cmp_int(k) < 0) --k;
  return k;
}

Rat rational_at(std::uint64_t index) {
  if (index == 0) return Rat(0, 1);
  if (index == 1) return Rat(1, 1);
  std::uint64_t rest = index - 2;
  for (std::uint64_t d = 2;; ++d) {
    std::uint64_t count = phi(d);
    if (rest < count) {
      for (std::uint64_t p = 1; p < d; ++p) {
        if (gcd_i(p, d) == 1) {
          if (rest == 0) return Rat(p, d);
          --rest;
        }
      }
    }
    rest -= count;
    if (d > (1u << 26)) throw FuelExhausted("rational_at");
  }
}

std::uint64_t rational_index(const Rat& r) {
  if (r.num < 0 || r.num > r.den) throw CodecError("rational outside [0,1]");
  if (r.den == 1) return r.num == 0 ? 0 : 1;
  std::uint64_t d = static_cast<std::uint64_t>(r.den);
  std::uint64_t idx = 2 + phi_sum_below(d);
  for (i128 p = 1; p < r.num; ++p) {
    if (gcd_i(p, r.den) == 1) ++idx;
  }
  return idx;
}

Rat simplest_strictly_between(const QF2& lo, const QF2& hi) {
  if (compare(lo, hi) >= 0) throw Error("simplest_strictly_between: empty interval");
  i128 k = floor_qf2(lo);
  QF2 next = QF2::from_rat(Rat::from_int(k + 1));
  if (compare(next, hi) < 0) return Rat::from_int(k + 1);
  QF2 x = lo - QF2::from_rat(Rat::from_int(k));
  QF2 y = hi - QF2::from_rat(Rat::from_int(k));
  // x in [0,1), y in (x, k+1-lo...]; find simplest in (x, y).
  Rat inner;
  if (sign(x) == 0) {
    // (0, y): 1/(floor(1/y) + 1)
    i128 f = floor_qf2(y.reciprocal());
    inner = Rat(1, checked_add_i(f, 1));
    // guard against y exactly 1/(f+1)... cannot happen: 1/(f+1) < y by floor defn
  } else {
    Rat s = simplest_strictly_between(y.reciprocal(), x.reciprocal());
    inner = Rat(s.den, s.num);
  }
  return Rat::from_int(k) + inner;
}

Rat sqrt2_half_convergent(std::uint64_t n) {
  // cf expansion of sqrt2/2 is [0; 1, 2, 2, 2, ...]
  if (n == 0) return Rat(0, 1);
  if (n == 1) return Rat(1, 1);
  i128 h2 = 0, h1 = 1, k2 = 1, k1 = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    i128 h = checked_add_i(checked_mul_i(2, h1), h2);
    i128 k = checked_add_i(checked_mul_i(2, k1), k2);
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return Rat(h1, k1);
}

}  // namespace overt
