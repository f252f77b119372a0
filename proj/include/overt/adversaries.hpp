#pragma once

#include <map>

#include "overt/problems.hpp"

// Constructive diagonalization: interactive schedules that defeat candidate
// tree-problem solvers at desk scale, with replayable certificates.

namespace overt {

struct SolverUnderTest {
  std::string id;
  WordFunction transducer;          // input prefix -> output prefix, monotone
  std::uint64_t progress_bound = 8;  // semantic output must extend within this many tokens
};

struct FailureCertificate {
  enum class Kind { OutputLeftTree, AlternationBound, Stalled, RangeForced };
  Kind kind = Kind::Stalled;
  std::uint64_t count = 0;  // alternations, commitments, or forced range
  Word input;               // the fed transcript
  Word output;              // the solver's final output word
  // Declared continuation of the enumeration: eventually constant branches
  // base . dir^omega whose prefixes the adversary keeps feeding.
  std::vector<std::pair<Word, Token>> branches;
  std::string detail;
};

std::string certificate_kind_name(FailureCertificate::Kind kind);

struct AdversaryResult {
  std::optional<FailureCertificate> certificate;  // nullopt: inconclusive
};

AdversaryResult adversary_ecp(const SolverUnderTest& solver, std::uint64_t alternation_target,
                              FuelBudget fuel);
AdversaryResult adversary_fsl(const SolverUnderTest& solver, std::uint64_t commitment_target,
                              FuelBudget fuel);
AdversaryResult adversary_cn_reduction(const WordFunction& inner, std::uint64_t range_target,
                                       FuelBudget fuel);

// Certificates replay: rerunning the transcript reproduces the verdict.
bool replay_ecp_certificate(const SolverUnderTest& solver, const FailureCertificate& cert);
bool replay_fsl_certificate(const SolverUnderTest& solver, const FailureCertificate& cert);
bool replay_cn_certificate(const WordFunction& inner, const FailureCertificate& cert);

// Shipped solver strategies, naive and one patient sound-on-suite entry each.
const std::map<std::string, SolverUnderTest>& ecp_solvers();
const std::map<std::string, SolverUnderTest>& fsl_solvers();

// Incremental delta_S decode of an output prefix (whole pairs only).
Word decode_sname_prefix(const Word& tokens);

}  // namespace overt
