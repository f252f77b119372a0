#pragma once

#include <map>

#include "overt/problems.hpp"

// Reduction witnesses between the shipped problems: monotone pre/post
// transducers implementing one oracle call with computable bookkeeping, a
// generic applier, the oracle-elimination extraction, and instance suites
// for the verification harness.

namespace overt {

struct OracleFailure : Error {
  explicit OracleFailure(const std::string& what) : Error("oracle failure: " + what) {}
};

struct ReductionWitness {
  std::string id;
  ProblemId source;
  ProblemId target;
  bool strong = false;  // the post transducer ignores the original-input half
  WordFunction pre;     // instance names to target instance names
  WordFunction post;    // interleaved <original, oracle answer> to answer prefixes
  // Semantic counterpart of `pre` on desk-scale descriptors.
  std::function<GroundTruth(const Instance&)> gt_map;
  // Rich answer from the post output, the source instance and the oracle answer.
  std::function<Answer(const Word&, const Instance&, const Answer&)> answer_from;
};

using Solver = std::function<Answer(const Instance&, FuelBudget)>;

Answer apply_reduction(const ReductionWitness& witness, const Solver& oracle,
                       const Instance& instance, FuelBudget fuel);

// ---- shipped witnesses -------------------------------------------------------

ReductionWitness witness_ecp_to_vcq();
ReductionWitness witness_vcq_to_ecp();
ReductionWitness witness_fsl_to_vcs0();
ReductionWitness witness_accN_to_vcTmin();
ReductionWitness witness_lpo_to_vcSmin();
ReductionWitness witness_cn_to_cq();
ReductionWitness witness_cq_to_cn();
ReductionWitness witness_hitsparse_to_cn();

const std::map<std::string, ReductionWitness>& witness_registry();
std::vector<Instance> default_suite(const std::string& witness_id);

// ---- solvers -----------------------------------------------------------------

// Ground-truth brute oracle (requires descriptors on the instance).
Solver brute_oracle();
// Reads the overt name of a closed set of rationals and follows confirmed
// basis words down to a pinned point.
Solver vc_q01_branch_follower(std::uint64_t depth_cap = 24);
// Decides "does the set meet the isolated part" with LPO, then searches.
Solver vc_tmin_via_lpo();
// LPO on the inf-point test, then the chain algorithm over the Polish part.
Solver vc_smin_via_lpo();

// ---- oracle elimination ------------------------------------------------------

// Extracts (value, input-prefix, basic-open) triples from the outer witness
// by probing it with synthetic single-open names, then searches for a triple
// whose open is confirmed against the inner witness output on p.
Token eliminate_overt_oracle(const WordFunction& outer, const WordFunction& inner, SpaceId space,
                             const Name& p, FuelBudget fuel);

// ---- branch bookkeeping shared with the game module ---------------------------

// The rational pinned by the eventually constant branch stem . bit^omega.
Rat branch_rational(const Word& stem, Token bit);
// The branch of a rational: stem and eventually repeated bit.
std::pair<Word, Token> rational_branch(const Rat& q);

// delta_Tmin / delta_Smin answer post-processing as plain word functions,
// exposed for the elimination tests.
WordFunction acc_tmin_post_on_answer();

}  // namespace overt
