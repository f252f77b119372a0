#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "overt/names.hpp"
#include "overt/rational.hpp"

// Concrete effectively countably-based spaces with decidable basis membership
// at desk scale: the discrete naturals, the rationals in [0,1] with the
// sqrt2-cut binary basis, the prefix-avoidance space S0, the one-point
// compactifications Tmin and Smin, and the cofinite naturals. Overt names
// enumerate which basic opens meet a closed set.

namespace overt {

enum class SpaceId { Nat, Q01, S0, Tmin, Smin, NatCofinite };

struct DegenerateInterval : Error {
  DegenerateInterval() : Error("degenerate interval: endpoints coincide") {}
};
struct WitnessDomainError : Error {
  explicit WitnessDomainError(const std::string& what)
      : Error("transfer witness undefined: " + what) {}
};

enum class Tri { Yes, No, Unknown };

struct TminPoint {
  bool inf = false;
  Token a = 0, b = 0;
  bool operator==(const TminPoint&) const = default;
};

struct SminPoint {
  enum class Kind { Fin, RowInf, InfInf };
  Kind kind = Kind::Fin;
  Token a = 0, b = 0;  // Fin: (a,b); RowInf: (a, inf); InfInf: neither used
  bool operator==(const SminPoint&) const = default;
};

struct Point {
  SpaceId space;
  std::variant<Token, Rat, Word, TminPoint, SminPoint> value;

  static Point nat(Token n) { return {SpaceId::Nat, n}; }
  static Point natcof(Token n) { return {SpaceId::NatCofinite, n}; }
  static Point q01(Rat r) { return {SpaceId::Q01, std::move(r)}; }
  static Point s0(Word w) { return {SpaceId::S0, std::move(w)}; }
  static Point tmin(Token a, Token b) { return {SpaceId::Tmin, TminPoint{false, a, b}}; }
  static Point tmin_inf() { return {SpaceId::Tmin, TminPoint{true, 0, 0}}; }
  static Point smin(Token a, Token b) {
    return {SpaceId::Smin, SminPoint{SminPoint::Kind::Fin, a, b}};
  }
  static Point smin_row(Token a) {
    return {SpaceId::Smin, SminPoint{SminPoint::Kind::RowInf, a, 0}};
  }
  static Point smin_inf() {
    return {SpaceId::Smin, SminPoint{SminPoint::Kind::InfInf, 0, 0}};
  }
};

bool point_eq(const Point& a, const Point& b);
bool point_less(const Point& a, const Point& b);  // canonical order per space
std::string point_to_string(const Point& p);

// ---- the rational interval basis ------------------------------------------

struct QInterval {
  QF2 lo, hi;
  bool lo_open = false, hi_open = false;

  bool contains(const QF2& x) const;
  bool contains(const Rat& r) const { return contains(QF2::from_rat(r)); }
  std::string to_string() const;
};

struct QSplit {
  QInterval left, right;  // [lo, tau) and (tau, hi]
  QF2 tau;
  int cut_factor = 0;     // 0: sqrt2/3, 1: 2-sqrt2, 2: 2 sqrt2/5
  bool least_in_left = false;
};

QInterval q_basis_interval(const Word& w);  // binary word
QSplit q_basis_split(const QInterval& interval);
std::uint64_t least_rational_index(const QInterval& interval);
// Does the union of the cover's intervals swallow B_w entirely?
bool q01_cover_covers(const Word& w, const std::vector<Word>& cover);

// ---- basis index codecs ----------------------------------------------------

// Finitely supported Baire-space function, zero beyond the listed prefix.
struct FinSupport {
  Word values;
  Token at(Token a) const { return a < values.size() ? values[a] : 0; }
};

Token nat_singleton_index(Token n);
Token nat_tail_index(Token from, std::uint64_t excluded_mask);
Token nat_finite_index(std::uint64_t members_mask);
Token q01_basis_index(const Word& binary_word);
Token s0_basis_index(const std::vector<Word>& avoid_set);
Token tmin_singleton_index(Token a, Token b);
Token tmin_u_index(const FinSupport& ell);
Token smin_singleton_index(Token a, Token b);
Token smin_v_index(Token a, Token b);
Token smin_w_index(Token a, const FinSupport& ell);
Token natcof_index(std::uint64_t excluded_mask);

class Space {
 public:
  virtual ~Space() = default;
  virtual SpaceId id() const = 0;
  virtual bool valid_index(Token idx) const = 0;
  virtual bool member(const Point& pt, Token idx) const = 0;    // exact; BadIndex on invalid
  virtual Tri basic_subset(Token i, Token j) const = 0;         // B_i subset of B_j
  virtual std::string describe(Token idx) const = 0;
  // Indices of basic opens isolated to a single point, when the space has them.
  virtual std::optional<Point> isolated_point(Token idx) const { return std::nullopt; }
};

const Space& space(SpaceId id);

bool basic_open_member(SpaceId id, const Point& pt, Token idx);

// Public parses of the compactified spaces' basic opens.
struct TminBasic {
  bool is_singleton = false;
  Token a = 0, b = 0;
  Word ell;  // U_ell bound, zero beyond the listed support
};
std::optional<TminBasic> tmin_parse_basic(Token idx);

struct SminBasic {
  int kind = 0;  // 0 singleton, 1 V_{a,b}, 2 W_{a,ell}
  Token a = 0, b = 0;
  Word ell;
};
std::optional<SminBasic> smin_parse_basic(Token idx);

// ---- point names -----------------------------------------------------------

struct PointName {
  SpaceId space;
  Name name;
  std::optional<Point> witness;  // desk-scale descriptor of the named point
};

struct DecodedPoint {
  std::optional<Point> point;  // nullopt: Unknown (prefix still ambiguous)
};

PointName canonical_point_name(const Point& pt);
DecodedPoint decode_point(const PointName& pn, FuelBudget fuel);
// Samples the name against the witness: every enumerated basic open must
// contain it (basis-enumeration spaces), or the decode must match (Tmin/Smin).
bool point_name_consistent(const PointName& pn, FuelBudget fuel);

// ---- overt names -----------------------------------------------------------

struct OvertName {
  SpaceId space;
  EnumName en;
};

// The overt name of a finite closed set: uniform schedule over basis indices.
OvertName overt_of_points(SpaceId id, std::vector<Point> pts);
// Soundness on checkable instances: every enumerated index meets the set.
bool overt_sound_for_points(const OvertName& on, const std::vector<Point>& pts, FuelBudget fuel);
// Monotone consistency: decided subset relations are respected by the
// enumeration within the window.
bool overt_monotone_consistent(const OvertName& on, FuelBudget fuel, Token index_window);

// Product of overt names over the Cantor-pair product basis.
EnumName product_enum(const EnumName& a, const EnumName& b);

struct TransferWitness {
  enum class Kind { OpenSurjection, ClosedSubspace };
  Kind kind = Kind::OpenSurjection;
  // OpenSurjection: enumerated input index -> output indices covering the preimage.
  std::function<std::optional<std::vector<Token>>(Token)> surjection_map;
  // ClosedSubspace: output index j -> input index of B_j restricted to the subspace.
  std::function<std::optional<Token>(Token)> subspace_map;
  Token output_index_bound = 1u << 14;

  static TransferWitness identity();
};

EnumName transfer_overt(const TransferWitness& witness, const EnumName& a);

}  // namespace overt
