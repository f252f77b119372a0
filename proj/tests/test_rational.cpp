#include <doctest.h>

#include <random>

#include "overt/rational.hpp"

using namespace overt;

TEST_CASE("rational arithmetic and ordering") {
  Rat half(1, 2), third(1, 3);
  CHECK((half + third) == Rat(5, 6));
  CHECK((half - third) == Rat(1, 6));
  CHECK((half * third) == Rat(1, 6));
  CHECK((half / third) == Rat(3, 2));
  CHECK(third < half);
  CHECK(Rat(-2, -4) == half);
  CHECK(Rat(2, -4) == Rat(-1, 2));
}

TEST_CASE("QF2 sign agrees with floating point on random samples") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 2000; ++it) {
    long long p = static_cast<long long>(rng() % 2001) - 1000;
    long long q = static_cast<long long>(rng() % 2001) - 1000;
    long long d = static_cast<long long>(rng() % 1000) + 1;
    QF2 x(p, q, d);
    double approx = (static_cast<double>(p) + static_cast<double>(q) * 1.4142135623730951) / d;
    int s = sign(x);
    if (approx > 1e-9) CHECK(s == 1);
    if (approx < -1e-9) CHECK(s == -1);
  }
  CHECK(sign(QF2(0, 0, 5)) == 0);
  CHECK(sign(QF2(-3, 2, 1)) == -1);   // 2*sqrt2 = 2.828... < 3
  CHECK(sign(QF2(-2, 2, 1)) == 1);
  // 1/2 > sqrt2/3 because 9 > 8 after squaring
  CHECK(compare(QF2(1, 0, 2), QF2(0, 1, 3)) == 1);
}

TEST_CASE("QF2 field operations") {
  QF2 a(1, 1, 2);  // (1 + sqrt2)/2
  QF2 b(0, 1, 3);  // sqrt2/3
  CHECK(compare((a - b) + b, a) == 0);
  CHECK(compare(a * b, QF2(2, 1, 6)) == 0);  // (1+sqrt2)sqrt2/6 = (2 + sqrt2)/6
  CHECK(compare(a * a.reciprocal(), QF2(1, 0, 1)) == 0);
  CHECK(compare(b.reciprocal(), QF2(0, 3, 2)) == 0);  // 3/sqrt2 = 3 sqrt2 / 2
}

TEST_CASE("floor of QF2 values") {
  CHECK(floor_qf2(QF2(0, 1, 1)) == 1);    // sqrt2
  CHECK(floor_qf2(QF2(0, -1, 1)) == -2);  // -sqrt2
  CHECK(floor_qf2(QF2(7, 0, 2)) == 3);
  CHECK(floor_qf2(QF2(-7, 0, 2)) == -4);
  CHECK(floor_qf2(QF2(0, 5, 7)) == 1);    // 5 sqrt2 / 7 = 1.0101...
  CHECK(floor_qf2(QF2(0, 0, 3)) == 0);
}

TEST_CASE("the fixed rational enumeration starts 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4") {
  CHECK(rational_at(0) == Rat(0, 1));
  CHECK(rational_at(1) == Rat(1, 1));
  CHECK(rational_at(2) == Rat(1, 2));
  CHECK(rational_at(3) == Rat(1, 3));
  CHECK(rational_at(4) == Rat(2, 3));
  CHECK(rational_at(5) == Rat(1, 4));
  CHECK(rational_at(6) == Rat(3, 4));
  CHECK(rational_at(7) == Rat(1, 5));
  for (std::uint64_t n = 0; n < 300; ++n) {
    CHECK(rational_index(rational_at(n)) == n);
  }
}

TEST_CASE("simplest rational in an interval matches a linear-scan oracle") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 300; ++it) {
    // random rational endpoints with small irrational perturbations
    long long a = static_cast<long long>(rng() % 50);
    long long b = a + 1 + static_cast<long long>(rng() % 50);
    long long d = 97;
    QF2 lo(a, (it % 3 == 0) ? 1 : 0, d);
    QF2 hi(b, (it % 5 == 0) ? -1 : 0, d);
    if (compare(lo, hi) >= 0) continue;
    Rat s = simplest_strictly_between(lo, hi);
    CHECK(compare(lo, QF2::from_rat(s)) < 0);
    CHECK(compare(QF2::from_rat(s), hi) < 0);
    // oracle: first rational in the enumeration order restricted to [0, 1]-scaled window
    bool found_smaller = false;
    for (i128 den = 1; den < s.den && !found_smaller; ++den) {
      for (i128 num = floor_qf2(lo) * den; num <= (floor_qf2(hi) + 1) * den; ++num) {
        QF2 cand = QF2::from_rat(Rat(num, den));
        if (compare(lo, cand) < 0 && compare(cand, hi) < 0) {
          found_smaller = true;
          break;
        }
      }
    }
    CHECK(!found_smaller);
  }
}

TEST_CASE("sqrt2/2 convergents alternate around sqrt2/2 and are closed-discrete") {
  QF2 target(0, 1, 2);  // sqrt2/2
  CHECK(sqrt2_half_convergent(0) == Rat(0, 1));
  CHECK(sqrt2_half_convergent(1) == Rat(1, 1));
  CHECK(sqrt2_half_convergent(2) == Rat(2, 3));
  CHECK(sqrt2_half_convergent(3) == Rat(5, 7));
  CHECK(sqrt2_half_convergent(4) == Rat(12, 17));
  for (std::uint64_t n = 2; n < 20; ++n) {
    Rat c = sqrt2_half_convergent(n);
    Rat next = sqrt2_half_convergent(n + 1);
    int side = compare(QF2::from_rat(c), target);
    int nside = compare(QF2::from_rat(next), target);
    CHECK(side != 0);
    CHECK(side == -nside);  // alternating
    CHECK(Rat(0, 1) <= c);
    CHECK(c <= Rat(1, 1));
  }
}
