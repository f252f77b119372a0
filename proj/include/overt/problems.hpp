#pragma once

#include <optional>
#include <set>
#include <variant>

#include "overt/quasipolish.hpp"
#include "overt/spaces.hpp"

// The multivalued problems as first-class objects: instance codecs over
// names, desk-scale ground-truth descriptors, total verifiers and brute
// oracle solvers with deterministic least-answer tie-breaking.

namespace overt {

struct NoSolution : Error {
  explicit NoSolution(const std::string& what) : Error("no solution: " + what) {}
};

enum class ProblemId { LPO, ACC, CN, CQ01, ECP, FSL, HitSparse, VC };

std::string problem_name(ProblemId id);

// ---- ground truths ----------------------------------------------------------

// Subset of N: residue classes modulo `modulus`, adjusted by finite sets.
struct SubsetDescriptor {
  Token modulus = 1;
  std::set<Token> residues = {0};
  std::set<Token> plus;
  std::set<Token> minus;

  bool contains(Token n) const;
  bool is_infinite() const;
  bool complement_finite() const;
  std::vector<Token> complement_list(Token scan_bound = 256) const;
  std::optional<Token> least(Token scan_bound = 1u << 20) const;
  // Infinitely many members of the given parity class.
  bool infinite_with_parity(Token parity) const;

  static SubsetDescriptor cofinite(std::set<Token> removed);
  static SubsetDescriptor residue(Token modulus, std::set<Token> residues);
};

struct AccGt {
  std::optional<Token> excluded;  // nullopt: the full set
  Token reveal_at = 0;            // j in the psi-name 0^j (i+1) 0^omega
  Token m = 0;                    // 0: ACC_N, otherwise M = {0..m-1}
};

// Closed subset of the rationals in [0,1]: either the complement as a finite
// union of basis intervals, or the image of an index set under the
// convergent embedding of N.
struct CqGt {
  std::optional<std::vector<Word>> complement_cover;
  std::optional<SubsetDescriptor> embedded_indices;
};

struct EcpGt {
  struct BranchSpec {
    Word stem;  // binary
    Token bit;  // eventually constant direction
  };
  std::vector<BranchSpec> branches;

  bool tree_contains(const Word& w) const;
  static std::pair<Word, Token> normalize(Word stem, Token bit);
};

struct FslGt {
  std::vector<Word> words;  // prefix-closed finite tree over {0,1}

  bool contains(const Word& w) const;
  std::vector<Word> leaves() const;
  bool prefix_closed() const;
};

struct HsGt {
  SubsetDescriptor a;  // infinite
  Token f_slope = 1;
  Token f_offset = 0;
  std::vector<Token> f_prefix;  // pointwise overrides for small arguments

  Token f_at(Token n) const;
};

struct VcGt {
  SpaceId space = SpaceId::Nat;
  std::vector<Point> points;  // finite nonempty closed set
};

using GroundTruth =
    std::variant<std::monostate, AccGt, SubsetDescriptor, CqGt, EcpGt, FslGt, HsGt, VcGt>;

struct Instance {
  ProblemId problem;
  Name name;
  GroundTruth gt;
};

struct Answer {
  ProblemId problem;
  Name stream;
  std::optional<Point> point;  // VC / CQ answers carry the chosen point
};

struct Verdict {
  bool valid = false;
  std::string reason;
};

// ---- operations -------------------------------------------------------------

Token lpo_eval(const Name& r);  // 1 iff some token is zero; needs a tail

Instance encode_instance(ProblemId problem, GroundTruth gt);

Verdict verify_answer(const Instance& instance, const Answer& answer, FuelBudget fuel);

Answer brute_solve(const Instance& instance, FuelBudget fuel);

// delta_S: pairs of bits; 00/11 silent, 10 emits 0, 01 emits 1.
Word decode_sname(const Name& p);
Name encode_sname(const Word& w);

// Exact test used by the rational-embedding instances: does the interval
// meet { convergent(n) : n in S }?
bool embedded_meets(const QInterval& interval, const SubsetDescriptor& s);

// Answer constructors.
Answer answer_nat(ProblemId problem, Token n);
Answer answer_bit(ProblemId problem, Token bit);
Token answer_to_nat(const Answer& a);

}  // namespace overt
