#include "overt/spaces.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace overt {

namespace {

constexpr std::uint64_t kQ01DepthCap = 18;  // keeps the cf walk inside i128

Token fin_support_at(const Word& values, Token a) {
  return a < values.size() ? values[a] : 0;
}

}  // namespace

bool point_eq(const Point& a, const Point& b) {
  return a.space == b.space && a.value == b.value;
}

bool point_less(const Point& a, const Point& b) {
  if (a.space != b.space) throw Error("comparing points of different spaces");
  switch (a.space) {
    case SpaceId::Nat:
    case SpaceId::NatCofinite:
      return std::get<Token>(a.value) < std::get<Token>(b.value);
    case SpaceId::Q01:
      return rational_index(std::get<Rat>(a.value)) < rational_index(std::get<Rat>(b.value));
    case SpaceId::S0:
      return word_code(std::get<Word>(a.value)) < word_code(std::get<Word>(b.value));
    case SpaceId::Tmin: {
      const auto& x = std::get<TminPoint>(a.value);
      const auto& y = std::get<TminPoint>(b.value);
      if (x.inf != y.inf) return !x.inf;  // finite points first
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    }
    case SpaceId::Smin: {
      const auto& x = std::get<SminPoint>(a.value);
      const auto& y = std::get<SminPoint>(b.value);
      if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    }
  }
  return false;
}

std::string point_to_string(const Point& p) {
  switch (p.space) {
    case SpaceId::Nat:
    case SpaceId::NatCofinite:
      return std::to_string(std::get<Token>(p.value));
    case SpaceId::Q01:
      return std::get<Rat>(p.value).to_string();
    case SpaceId::S0:
      return word_to_string(std::get<Word>(p.value));
    case SpaceId::Tmin: {
      const auto& t = std::get<TminPoint>(p.value);
      if (t.inf) return "inf";
      return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + ")";
    }
    case SpaceId::Smin: {
      const auto& s = std::get<SminPoint>(p.value);
      switch (s.kind) {
        case SminPoint::Kind::Fin:
          return "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
        case SminPoint::Kind::RowInf:
          return "(" + std::to_string(s.a) + ",inf)";
        case SminPoint::Kind::InfInf:
          return "(inf,inf)";
      }
    }
  }
  return "?";
}

// ---- rational interval basis ----------------------------------------------

bool QInterval::contains(const QF2& x) const {
  int cl = compare(lo, x);
  if (cl > 0 || (cl == 0 && lo_open)) return false;
  int ch = compare(x, hi);
  if (ch > 0 || (ch == 0 && hi_open)) return false;
  return true;
}

std::string QInterval::to_string() const {
  return std::string(lo_open ? "(" : "[") + lo.to_string() + ", " + hi.to_string() +
         (hi_open ? ")" : "]");
}

std::uint64_t least_rational_index(const QInterval& interval) {
  if (compare(interval.lo, interval.hi) >= 0) throw DegenerateInterval();
  std::optional<std::uint64_t> best;
  auto offer = [&](const Rat& r) {
    if (r.num < 0 || r.num > r.den) return;  // enumeration covers [0,1] only
    if (!interval.contains(r)) return;
    std::uint64_t idx = rational_index(r);
    if (!best || idx < *best) best = idx;
  };
  if (interval.lo.is_rational() && !interval.lo_open) offer(interval.lo.rational_part_as_rat());
  if (interval.hi.is_rational() && !interval.hi_open) offer(interval.hi.rational_part_as_rat());
  offer(Rat(0, 1));
  offer(Rat(1, 1));
  offer(simplest_strictly_between(interval.lo, interval.hi));
  if (!best) throw Error("interval with no rational in [0,1]");
  return *best;
}

QSplit q_basis_split(const QInterval& interval) {
  if (compare(interval.lo, interval.hi) >= 0) throw DegenerateInterval();
  const QF2 width = interval.hi - interval.lo;
  const QF2 factors[3] = {QF2(0, 1, 3), QF2(2, -1, 1), QF2(0, 2, 5)};
  QSplit s;
  bool found = false;
  for (int k = 0; k < 3 && !found; ++k) {
    QF2 tau = interval.lo + width * factors[k];
    if (!tau.is_rational()) {
      s.tau = tau;
      s.cut_factor = k;
      found = true;
    }
  }
  if (!found) throw Error("all cut candidates rational; interval degenerate");
  s.left = QInterval{interval.lo, s.tau, interval.lo_open, true};
  s.right = QInterval{s.tau, interval.hi, true, interval.hi_open};
  Rat least = rational_at(least_rational_index(interval));
  s.least_in_left = s.left.contains(least);
  return s;
}

QInterval q_basis_interval(const Word& w) {
  static std::mutex mu;
  static std::map<std::uint64_t, QInterval> cache;
  if (w.size() > kQ01DepthCap) throw BadIndex("q01 word deeper than desk-scale cap");
  for (Token b : w) {
    if (b > 1) throw BadIndex("q01 basis word must be binary");
  }
  std::uint64_t code = bin_code(w);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(code);
    if (it != cache.end()) return it->second;
  }
  QInterval cur{QF2(0, 0, 1), QF2(1, 0, 1), false, false};
  for (std::size_t i = 0; i < w.size(); ++i) {
    QSplit s = q_basis_split(cur);
    Token parent_last = (i == 0) ? 0 : w[i - 1];
    QInterval least_piece = s.least_in_left ? s.left : s.right;
    QInterval other_piece = s.least_in_left ? s.right : s.left;
    cur = (w[i] == parent_last) ? least_piece : other_piece;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(code, cur);
  return cur;
}

bool q01_cover_covers(const Word& w, const std::vector<Word>& cover) {
  for (const Word& c : cover) {
    if (word_is_prefix(c, w)) return true;
  }
  std::size_t deepest = 0;
  for (const Word& c : cover) deepest = std::max(deepest, c.size());
  if (w.size() >= deepest) return false;
  Word w0 = w, w1 = w;
  w0.push_back(0);
  w1.push_back(1);
  return q01_cover_covers(w0, cover) && q01_cover_covers(w1, cover);
}

// ---- basis index codecs ----------------------------------------------------

Token nat_singleton_index(Token n) { return cantor_pair(0, n); }
Token nat_tail_index(Token from, std::uint64_t excluded_mask) {
  return cantor_pair(1, cantor_pair(from, excluded_mask));
}
Token nat_finite_index(std::uint64_t members_mask) { return cantor_pair(2, members_mask); }
Token q01_basis_index(const Word& binary_word) { return bin_code(binary_word); }
Token s0_basis_index(const std::vector<Word>& avoid_set) { return word_set_code(avoid_set); }
Token tmin_singleton_index(Token a, Token b) { return cantor_pair(0, cantor_pair(a, b)); }
Token tmin_u_index(const FinSupport& ell) {
  Word v = ell.values;
  while (!v.empty() && v.back() == 0) v.pop_back();
  return cantor_pair(1, word_code(v));
}
Token smin_singleton_index(Token a, Token b) { return cantor_pair(0, cantor_pair(a, b)); }
Token smin_v_index(Token a, Token b) { return cantor_pair(1, cantor_pair(a, b)); }
Token smin_w_index(Token a, const FinSupport& ell) {
  Word v = ell.values;
  while (!v.empty() && v.back() == 0) v.pop_back();
  return cantor_pair(2, cantor_pair(a, word_code(v)));
}
Token natcof_index(std::uint64_t excluded_mask) { return excluded_mask; }

// ---- spaces ----------------------------------------------------------------

namespace {

class NatSpace final : public Space {
 public:
  SpaceId id() const override { return SpaceId::Nat; }

  // Normal form of a basic open: finite member set or tail-minus-finite.
  struct Basic {
    bool is_tail = false;
    Token from = 0;
    std::uint64_t mask = 0;  // members (finite) or exclusions (tail)
    Token singleton = 0;
    bool is_singleton = false;
  };

  std::optional<Basic> parse(Token idx) const {
    auto [kind, payload] = cantor_unpair(idx);
    Basic b;
    if (kind == 0) {
      b.is_singleton = true;
      b.singleton = payload;
      return b;
    }
    if (kind == 1) {
      auto [from, mask] = cantor_unpair(payload);
      b.is_tail = true;
      b.from = from;
      b.mask = mask;
      return b;
    }
    if (kind == 2) {
      b.mask = payload;
      return b;
    }
    return std::nullopt;
  }

  bool valid_index(Token idx) const override { return parse(idx).has_value(); }

  static bool basic_contains(const Basic& b, Token n) {
    if (b.is_singleton) return n == b.singleton;
    if (b.is_tail) return n >= b.from && (n >= 64 || ((b.mask >> n) & 1) == 0);
    return n < 64 && ((b.mask >> n) & 1) != 0;
  }

  bool member(const Point& pt, Token idx) const override {
    auto b = parse(idx);
    if (!b) throw BadIndex("nat basis");
    return basic_contains(*b, std::get<Token>(pt.value));
  }

  Tri basic_subset(Token i, Token j) const override {
    auto a = parse(i), b = parse(j);
    if (!a || !b) throw BadIndex("nat basis");
    auto contains_all_finite = [&](const Basic& fin, const Basic& other) {
      if (fin.is_singleton) return basic_contains(other, fin.singleton);
      for (Token n = 0; n < 64; ++n) {
        if (((fin.mask >> n) & 1) && !basic_contains(other, n)) return false;
      }
      return true;
    };
    if (!a->is_tail) return contains_all_finite(*a, *b) ? Tri::Yes : Tri::No;
    if (!b->is_tail) return Tri::No;  // infinite tail never inside a finite set
    if (a->from < b->from) {
      if (b->from > a->from + 64) return Tri::No;  // masks cannot thin out a range that long
      for (Token n = a->from; n < b->from; ++n) {
        if (basic_contains(*a, n)) return Tri::No;
      }
    }
    for (Token n = b->from; n < 64; ++n) {
      if (((b->mask >> n) & 1) && basic_contains(*a, n)) return Tri::No;
    }
    return Tri::Yes;
  }

  std::string describe(Token idx) const override {
    auto b = parse(idx);
    if (!b) return "invalid";
    if (b->is_singleton) return "{" + std::to_string(b->singleton) + "}";
    if (b->is_tail)
      return "[" + std::to_string(b->from) + ",inf) minus mask " + std::to_string(b->mask);
    return "finite mask " + std::to_string(b->mask);
  }

  std::optional<Point> isolated_point(Token idx) const override {
    auto b = parse(idx);
    if (!b) return std::nullopt;
    if (b->is_singleton) return Point::nat(b->singleton);
    if (!b->is_tail && std::popcount(b->mask) == 1) {
      return Point::nat(static_cast<Token>(std::countr_zero(b->mask)));
    }
    return std::nullopt;
  }
};

class Q01Space final : public Space {
 public:
  SpaceId id() const override { return SpaceId::Q01; }

  bool valid_index(Token idx) const override {
    return bin_decode(idx).size() <= kQ01DepthCap;
  }
  bool member(const Point& pt, Token idx) const override {
    if (!valid_index(idx)) throw BadIndex("q01 basis");
    return q_basis_interval(bin_decode(idx)).contains(std::get<Rat>(pt.value));
  }
  Tri basic_subset(Token i, Token j) const override {
    Word wi = bin_decode(i), wj = bin_decode(j);
    return word_is_prefix(wj, wi) ? Tri::Yes : Tri::No;
  }
  std::string describe(Token idx) const override {
    return q_basis_interval(bin_decode(idx)).to_string();
  }
};

class S0Space final : public Space {
 public:
  SpaceId id() const override { return SpaceId::S0; }

  std::optional<std::vector<Word>> parse(Token idx) const {
    auto set = word_set_decode(idx);
    if (!set) return std::nullopt;
    for (const Word& w : *set) {
      if (w.size() > 8) return std::nullopt;  // desk-scale restriction
      for (Token letter : w) {
        if (letter > 9) return std::nullopt;
      }
    }
    return set;
  }

  bool valid_index(Token idx) const override { return parse(idx).has_value(); }

  bool member(const Point& pt, Token idx) const override {
    auto set = parse(idx);
    if (!set) throw BadIndex("s0 basis");
    const Word& u = std::get<Word>(pt.value);
    for (const Word& w : *set) {
      if (word_is_prefix(w, u)) return false;  // u extends an avoided word
    }
    return true;
  }

  Tri basic_subset(Token i, Token j) const override {
    auto f = parse(i), g = parse(j);
    if (!f || !g) throw BadIndex("s0 basis");
    // B_F subset of B_G iff every word of G has a prefix in F.
    for (const Word& w : *g) {
      bool covered = false;
      for (const Word& v : *f) {
        if (word_is_prefix(v, w)) {
          covered = true;
          break;
        }
      }
      if (!covered) return Tri::No;
    }
    return Tri::Yes;
  }

  std::string describe(Token idx) const override {
    auto set = parse(idx);
    if (!set) return "invalid";
    std::string s = "avoid{";
    for (std::size_t k = 0; k < set->size(); ++k) {
      if (k) s += ", ";
      s += word_to_string((*set)[k]);
    }
    return s + "}";
  }
};

class TminSpace final : public Space {
 public:
  SpaceId id() const override { return SpaceId::Tmin; }

  struct Basic {
    bool is_singleton = false;
    Token a = 0, b = 0;
    Word ell;  // finitely supported bound for U_ell
  };

  std::optional<Basic> parse(Token idx) const {
    auto [kind, payload] = cantor_unpair(idx);
    Basic r;
    if (kind == 0) {
      auto [a, b] = cantor_unpair(payload);
      r.is_singleton = true;
      r.a = a;
      r.b = b;
      return r;
    }
    if (kind == 1) {
      auto ell = word_decode(payload);
      if (!ell) return std::nullopt;
      r.ell = *ell;
      return r;
    }
    return std::nullopt;
  }

  bool valid_index(Token idx) const override { return parse(idx).has_value(); }

  static bool contains(const Basic& basic, const TminPoint& pt) {
    if (basic.is_singleton) return !pt.inf && pt.a == basic.a && pt.b == basic.b;
    if (pt.inf) return true;
    return pt.b >= fin_support_at(basic.ell, pt.a);
  }

  bool member(const Point& pt, Token idx) const override {
    auto b = parse(idx);
    if (!b) throw BadIndex("tmin basis");
    return contains(*b, std::get<TminPoint>(pt.value));
  }

  Tri basic_subset(Token i, Token j) const override {
    auto x = parse(i), y = parse(j);
    if (!x || !y) throw BadIndex("tmin basis");
    if (x->is_singleton) {
      if (y->is_singleton) return (x->a == y->a && x->b == y->b) ? Tri::Yes : Tri::No;
      return x->b >= fin_support_at(y->ell, x->a) ? Tri::Yes : Tri::No;
    }
    if (y->is_singleton) return Tri::No;
    std::size_t bound = std::max(x->ell.size(), y->ell.size());
    for (Token a = 0; a < bound; ++a) {
      if (fin_support_at(x->ell, a) < fin_support_at(y->ell, a)) return Tri::No;
    }
    return Tri::Yes;
  }

  std::string describe(Token idx) const override {
    auto b = parse(idx);
    if (!b) return "invalid";
    if (b->is_singleton) return "{(" + std::to_string(b->a) + "," + std::to_string(b->b) + ")}";
    return "U_" + word_to_string(b->ell);
  }

  std::optional<Point> isolated_point(Token idx) const override {
    auto b = parse(idx);
    if (b && b->is_singleton) return Point::tmin(b->a, b->b);
    return std::nullopt;
  }
};

class SminSpace final : public Space {
 public:
  SpaceId id() const override { return SpaceId::Smin; }

  struct Basic {
    int kind = 0;  // 0 singleton, 1 V_{a,b}, 2 W_{a,ell}
    Token a = 0, b = 0;
    Word ell;
  };

  std::optional<Basic> parse(Token idx) const {
    auto [kind, payload] = cantor_unpair(idx);
    Basic r;
    r.kind = static_cast<int>(kind);
    if (kind == 0 || kind == 1) {
      auto [a, b] = cantor_unpair(payload);
      r.a = a;
      r.b = b;
      return r;
    }
    if (kind == 2) {
      auto [a, ellcode] = cantor_unpair(payload);
      auto ell = word_decode(ellcode);
      if (!ell) return std::nullopt;
      r.a = a;
      r.ell = *ell;
      return r;
    }
    return std::nullopt;
  }

  bool valid_index(Token idx) const override { return parse(idx).has_value(); }

  static bool contains(const Basic& basic, const SminPoint& pt) {
    switch (basic.kind) {
      case 0:
        return pt.kind == SminPoint::Kind::Fin && pt.a == basic.a && pt.b == basic.b;
      case 1:
        if (pt.kind == SminPoint::Kind::RowInf) return pt.a == basic.a;
        return pt.kind == SminPoint::Kind::Fin && pt.a == basic.a && pt.b >= basic.b;
      default:
        if (pt.kind == SminPoint::Kind::InfInf) return true;
        if (pt.kind == SminPoint::Kind::RowInf) return pt.a >= basic.a;
        return pt.a >= basic.a && pt.b >= fin_support_at(basic.ell, pt.a);
    }
  }

  bool member(const Point& pt, Token idx) const override {
    auto b = parse(idx);
    if (!b) throw BadIndex("smin basis");
    return contains(*b, std::get<SminPoint>(pt.value));
  }

  Tri basic_subset(Token i, Token j) const override {
    auto x = parse(i), y = parse(j);
    if (!x || !y) throw BadIndex("smin basis");
    auto sub = [&]() -> bool {
      if (x->kind == 0) {
        Basic pt = *x;
        return contains(*y, SminPoint{SminPoint::Kind::Fin, pt.a, pt.b});
      }
      if (x->kind == 1) {
        if (y->kind == 0) return false;
        if (y->kind == 1) return x->a == y->a && x->b >= y->b;
        // V_{a,b} inside W_{a',ell}: row point (a,inf) plus all (a,j), j >= b
        return x->a >= y->a && x->b >= fin_support_at(y->ell, x->a);
      }
      // x is a W-open; it contains (inf,inf)
      if (y->kind != 2) return false;
      if (x->a < y->a) return false;
      std::size_t bound = std::max(x->ell.size(), y->ell.size());
      for (Token a = x->a; a < std::max<std::uint64_t>(bound, x->a); ++a) {
        if (fin_support_at(x->ell, a) < fin_support_at(y->ell, a)) return false;
      }
      return true;
    };
    return sub() ? Tri::Yes : Tri::No;
  }

  std::string describe(Token idx) const override {
    auto b = parse(idx);
    if (!b) return "invalid";
    if (b->kind == 0) return "{(" + std::to_string(b->a) + "," + std::to_string(b->b) + ")}";
    if (b->kind == 1) return "V_(" + std::to_string(b->a) + "," + std::to_string(b->b) + ")";
    return "W_(" + std::to_string(b->a) + "," + word_to_string(b->ell) + ")";
  }

  std::optional<Point> isolated_point(Token idx) const override {
    auto b = parse(idx);
    if (b && b->kind == 0) return Point::smin(b->a, b->b);
    return std::nullopt;
  }
};

class NatCofSpace final : public Space {
 public:
  SpaceId id() const override { return SpaceId::NatCofinite; }
  bool valid_index(Token) const override { return true; }
  bool member(const Point& pt, Token idx) const override {
    Token n = std::get<Token>(pt.value);
    return n >= 64 || ((idx >> n) & 1) == 0;
  }
  Tri basic_subset(Token i, Token j) const override {
    return (j & ~i) == 0 ? Tri::Yes : Tri::No;  // excluded(j) subset of excluded(i)
  }
  std::string describe(Token idx) const override {
    return "cofinite excluding mask " + std::to_string(idx);
  }
};

}  // namespace

const Space& space(SpaceId id) {
  static NatSpace nat;
  static Q01Space q01;
  static S0Space s0;
  static TminSpace tmin;
  static SminSpace smin;
  static NatCofSpace natcof;
  switch (id) {
    case SpaceId::Nat:
      return nat;
    case SpaceId::Q01:
      return q01;
    case SpaceId::S0:
      return s0;
    case SpaceId::Tmin:
      return tmin;
    case SpaceId::Smin:
      return smin;
    case SpaceId::NatCofinite:
      return natcof;
  }
  throw Error("unknown space");
}

bool basic_open_member(SpaceId id, const Point& pt, Token idx) {
  return space(id).member(pt, idx);
}

std::optional<TminBasic> tmin_parse_basic(Token idx) {
  auto [kind, payload] = cantor_unpair(idx);
  TminBasic r;
  if (kind == 0) {
    auto [a, b] = cantor_unpair(payload);
    r.is_singleton = true;
    r.a = a;
    r.b = b;
    return r;
  }
  if (kind == 1) {
    auto ell = word_decode(payload);
    if (!ell) return std::nullopt;
    r.ell = *ell;
    return r;
  }
  return std::nullopt;
}

std::optional<SminBasic> smin_parse_basic(Token idx) {
  auto [kind, payload] = cantor_unpair(idx);
  SminBasic r;
  r.kind = static_cast<int>(kind);
  if (kind == 0 || kind == 1) {
    auto [a, b] = cantor_unpair(payload);
    r.a = a;
    r.b = b;
    return r;
  }
  if (kind == 2) {
    auto [a, ellcode] = cantor_unpair(payload);
    auto ell = word_decode(ellcode);
    if (!ell) return std::nullopt;
    r.a = a;
    r.ell = *ell;
    return r;
  }
  return std::nullopt;
}

// ---- point names -----------------------------------------------------------

PointName canonical_point_name(const Point& pt) {
  switch (pt.space) {
    case SpaceId::Tmin: {
      const auto& t = std::get<TminPoint>(pt.value);
      if (t.inf) return {pt.space, Name::from_prefix({0}), pt};
      Word prefix{t.a};
      for (Token i = 0; i < t.b; ++i) prefix.push_back(0);
      prefix.push_back(t.a + 1);
      return {pt.space, Name::from_prefix(std::move(prefix)), pt};
    }
    case SpaceId::Smin: {
      const auto& s = std::get<SminPoint>(pt.value);
      if (s.kind == SminPoint::Kind::InfInf) return {pt.space, Name::from_prefix({0}), pt};
      if (s.kind == SminPoint::Kind::RowInf)
        return {pt.space, Name::from_prefix({s.a + 1}), pt};
      Word prefix{s.a + 1};
      for (Token i = 0; i < s.b; ++i) prefix.push_back(0);
      return {pt.space, Name::from_prefix(std::move(prefix), 1), pt};
    }
    default: {
      SpaceId id = pt.space;
      const Space* sp = &space(id);
      Name n([sp, pt](std::uint64_t i) -> Token {
        return (sp->valid_index(i) && sp->member(pt, i)) ? i + 1 : 0;
      });
      return {id, std::move(n), pt};
    }
  }
}

DecodedPoint decode_point(const PointName& pn, FuelBudget fuel) {
  const std::uint64_t n = fuel.max_steps;
  switch (pn.space) {
    case SpaceId::Tmin: {
      Token m = pn.name.at(0);
      for (std::uint64_t i = 1; i < n; ++i) {
        Token v = pn.name.at(i);
        if (v != 0) {
          Token a = v - 1, b = i - 1;
          if (a > m) throw InvalidName("tmin name: column exceeds first token");
          return {Point::tmin(a, b)};
        }
      }
      auto ps = pn.name.padding_stage();
      if (ps && *ps <= n && pn.name.tail_consistent()) return {Point::tmin_inf()};
      return {std::nullopt};
    }
    case SpaceId::Smin: {
      Token first = pn.name.at(0);
      bool seen_one = false;
      std::uint64_t one_at = 0;
      for (std::uint64_t i = 1; i < n; ++i) {
        Token v = pn.name.at(i);
        if (v > 1) throw InvalidName("smin name: token above 1 after position 0");
        if (v == 1 && !seen_one) {
          seen_one = true;
          one_at = i;
        } else if (v == 0 && seen_one) {
          throw InvalidName("smin name: zero after the ones started");
        }
      }
      if (seen_one) {
        if (first == 0) return {Point::smin_row(one_at - 1)};
        return {Point::smin(first - 1, one_at - 1)};
      }
      auto ps = pn.name.padding_stage();
      if (ps && *ps <= n && pn.name.tail_consistent()) {
        if (first == 0) return {Point::smin_inf()};
        return {Point::smin_row(first - 1)};
      }
      return {std::nullopt};
    }
    case SpaceId::Nat: {
      const Space& sp = space(SpaceId::Nat);
      for (std::uint64_t i = 0; i < n; ++i) {
        Token t = pn.name.at(i);
        if (t == 0) continue;
        Token idx = t - 1;
        if (!sp.valid_index(idx)) throw InvalidName("nat name enumerates invalid index");
        if (auto iso = sp.isolated_point(idx)) return {*iso};
      }
      return {std::nullopt};
    }
    default:
      return {std::nullopt};  // never determined by a finite prefix
  }
}

bool point_name_consistent(const PointName& pn, FuelBudget fuel) {
  if (!pn.witness) return false;
  switch (pn.space) {
    case SpaceId::Tmin:
    case SpaceId::Smin: {
      if (!pn.name.tail_consistent()) return false;
      try {
        DecodedPoint d = decode_point(pn, fuel);
        return d.point && point_eq(*d.point, *pn.witness);
      } catch (const InvalidName&) {
        return false;
      }
    }
    default: {
      const Space& sp = space(pn.space);
      for (std::uint64_t i = 0; i < fuel.max_steps; ++i) {
        Token t = pn.name.at(i);
        if (t == 0) continue;
        Token idx = t - 1;
        if (!sp.valid_index(idx) || !sp.member(*pn.witness, idx)) return false;
      }
      return true;
    }
  }
}

// ---- overt names -----------------------------------------------------------

OvertName overt_of_points(SpaceId id, std::vector<Point> pts) {
  const Space* sp = &space(id);
  auto shared = std::make_shared<std::vector<Point>>(std::move(pts));
  EnumName en = EnumName::uniform([sp, shared](Token idx) {
    if (!sp->valid_index(idx)) return false;
    for (const Point& p : *shared) {
      if (sp->member(p, idx)) return true;
    }
    return false;
  });
  return {id, std::move(en)};
}

bool overt_sound_for_points(const OvertName& on, const std::vector<Point>& pts, FuelBudget fuel) {
  const Space& sp = space(on.space);
  for (std::uint64_t i = 0; i < fuel.max_steps; ++i) {
    Token t = on.en.name.at(i);
    if (t == 0) continue;
    Token idx = t - 1;
    if (!sp.valid_index(idx)) return false;
    bool meets = false;
    for (const Point& p : pts) {
      if (sp.member(p, idx)) {
        meets = true;
        break;
      }
    }
    if (!meets) return false;
  }
  return true;
}

bool overt_monotone_consistent(const OvertName& on, FuelBudget fuel, Token index_window) {
  const Space& sp = space(on.space);
  auto decoded = on.en.decode(fuel);
  for (Token i : decoded) {
    if (!sp.valid_index(i)) return false;
    for (Token j = 0; j < index_window; ++j) {
      if (!sp.valid_index(j) || decoded.count(j)) continue;
      if (sp.basic_subset(i, j) == Tri::Yes) return false;
    }
  }
  return true;
}

EnumName product_enum(const EnumName& a, const EnumName& b) {
  struct Cursor {
    EnumName a, b;
    std::set<Token> da, db;
    std::uint64_t read = 0;
    void advance(std::uint64_t upto) {
      while (read < upto) {
        Token ta = a.name.at(read), tb = b.name.at(read);
        if (ta != 0) da.insert(ta - 1);
        if (tb != 0) db.insert(tb - 1);
        ++read;
      }
    }
  };
  auto cur = std::make_shared<Cursor>(Cursor{a, b, {}, {}, 0});
  return EnumName(Name([cur](std::uint64_t t) -> Token {
    std::uint64_t c = (t % 2 == 0) ? t / 2 : cantor_unpair((t - 1) / 2).first;
    cur->advance(t + 1);
    auto [i, j] = cantor_unpair(c);
    if (cur->da.count(i) && cur->db.count(j)) return c + 1;
    return 0;
  }));
}

TransferWitness TransferWitness::identity() {
  TransferWitness w;
  w.kind = Kind::OpenSurjection;
  w.surjection_map = [](Token i) { return std::vector<Token>{i}; };
  return w;
}

EnumName transfer_overt(const TransferWitness& witness, const EnumName& a) {
  if (witness.kind == TransferWitness::Kind::OpenSurjection) {
    return EnumName(Name([witness, a](std::uint64_t t) -> Token {
      auto [s, k] = cantor_unpair(t);
      Token tok = a.name.at(s);
      if (tok == 0) return 0;
      auto listed = witness.surjection_map(tok - 1);
      if (!listed) throw WitnessDomainError("input index " + std::to_string(tok - 1));
      if (k < listed->size()) return (*listed)[k] + 1;
      return 0;
    }));
  }
  // Closed subspace: emit output index j once its witness image is enumerated.
  struct Cursor {
    EnumName a;
    std::set<Token> seen;
    std::uint64_t read = 0;
    void advance(std::uint64_t upto) {
      while (read < upto) {
        Token t = a.name.at(read);
        if (t != 0) seen.insert(t - 1);
        ++read;
      }
    }
  };
  auto cur = std::make_shared<Cursor>(Cursor{a, {}, 0});
  return EnumName(Name([witness, cur](std::uint64_t t) -> Token {
    auto [j, s] = cantor_unpair(t);
    if (j > witness.output_index_bound) return 0;
    cur->advance(s + 1);
    auto w = witness.subspace_map(j);
    if (!w) return 0;
    return cur->seen.count(*w) ? j + 1 : 0;
  }));
}

}  // namespace overt
