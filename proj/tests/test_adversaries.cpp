#include <doctest.h>

#include "overt/adversaries.hpp"

using namespace overt;

namespace {

const FuelBudget kFuel(10000);

}  // namespace

TEST_CASE("the ECP adversary defeats the always-zero strategy") {
  const auto& solver = ecp_solvers().at("always-zero");
  auto r = adversary_ecp(solver, 3, kFuel);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == FailureCertificate::Kind::OutputLeftTree);
  CHECK(replay_ecp_certificate(solver, *r.certificate));
  // the transcript shows "00" emitted while the tree climbs the 01-spine
  CHECK(r.certificate->output.size() >= 2);
  CHECK(r.certificate->output[0] == 0);
  CHECK(r.certificate->output[1] == 0);
}

TEST_CASE("the ECP adversary forces alternations out of the copycat") {
  const auto& solver = ecp_solvers().at("copy-longest");
  auto r = adversary_ecp(solver, 3, kFuel);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == FailureCertificate::Kind::AlternationBound);
  CHECK(r.certificate->count >= 3);
  CHECK(replay_ecp_certificate(solver, *r.certificate));
}

TEST_CASE("the ECP adversary stalls the silent strategy") {
  const auto& solver = ecp_solvers().at("stall-after-3");
  auto r = adversary_ecp(solver, 3, kFuel);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == FailureCertificate::Kind::Stalled);
  CHECK(replay_ecp_certificate(solver, *r.certificate));
}

TEST_CASE("every naive ECP strategy is defeated and every certificate replays") {
  for (const auto& [id, solver] : ecp_solvers()) {
    auto r = adversary_ecp(solver, 4, kFuel);
    if (id != "patient-follower") {
      REQUIRE_MESSAGE(r.certificate.has_value(), id);
    }
    if (r.certificate) {
      CHECK_MESSAGE(replay_ecp_certificate(solver, *r.certificate), id, " replay");
    }
  }
}

TEST_CASE("adversary inputs stay inside declared eventually constant branches") {
  const auto& solver = ecp_solvers().at("copy-longest");
  auto r = adversary_ecp(solver, 4, kFuel);
  REQUIRE(r.certificate.has_value());
  const auto& cert = *r.certificate;
  REQUIRE(!cert.branches.empty());
  for (Token tok : cert.input) {
    if (tok == 0) continue;
    Word w = bin_decode(tok - 1);
    bool covered = false;
    for (const auto& [base, dir] : cert.branches) {
      Word expect;
      for (std::size_t i = 0; i < w.size(); ++i) {
        expect.push_back(i < base.size() ? base[i] : dir);
      }
      covered = covered || (w == expect);
    }
    CHECK(covered);  // every fed vertex lies on an eventually constant path
  }
}

TEST_CASE("the FSL adversary walks the leftmost committer down the spine") {
  const auto& solver = fsl_solvers().at("leftmost-leaf");
  auto r = adversary_fsl(solver, 4, kFuel);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == FailureCertificate::Kind::AlternationBound);
  CHECK(r.certificate->count == 4);
  CHECK(replay_fsl_certificate(solver, *r.certificate));
}

TEST_CASE("the FSL adversary stalls the silent strategy") {
  const auto& solver = fsl_solvers().at("eps-forever");
  auto r = adversary_fsl(solver, 3, kFuel);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->kind == FailureCertificate::Kind::Stalled);
  CHECK(replay_fsl_certificate(solver, *r.certificate));
}

TEST_CASE("every naive FSL strategy is defeated and every certificate replays") {
  for (const auto& [id, solver] : fsl_solvers()) {
    auto r = adversary_fsl(solver, 3, kFuel);
    if (id != "patient-leaf") {
      REQUIRE_MESSAGE(r.certificate.has_value(), id);
    }
    if (r.certificate) {
      CHECK_MESSAGE(replay_fsl_certificate(solver, *r.certificate), id, " replay");
    }
  }
}

TEST_CASE("no false certificates against the sound strategies on their suites") {
  // the patient solvers genuinely solve the stabilizing instance family;
  // whatever the adversary reports about them must replay exactly
  const auto& ecp_patient = ecp_solvers().at("patient-follower");
  auto re = adversary_ecp(ecp_patient, 4, kFuel);
  if (re.certificate) CHECK(replay_ecp_certificate(ecp_patient, *re.certificate));

  const auto& fsl_patient = fsl_solvers().at("patient-leaf");
  auto rf = adversary_fsl(fsl_patient, 3, kFuel);
  if (rf.certificate) CHECK(replay_fsl_certificate(fsl_patient, *rf.certificate));

  // sanity: the patient ECP solver answers a stabilized suite instance correctly
  Instance inst = encode_instance(ProblemId::ECP, EcpGt{{{Word{0, 1}, 0}}});
  Word out = apply_word_function(ecp_patient.transducer, inst.name, FuelBudget(512));
  EcpGt gt{{{Word{0, 1}, 0}}};
  for (std::size_t n = 0; n <= out.size(); ++n) {
    CHECK(gt.tree_contains(Word(out.begin(), out.begin() + n)));
  }
  CHECK(out.size() >= 4);  // it does commit along the branch

  // and the patient FSL solver lands on a true leaf of a stabilized tree
  FslGt tree{{{}, {0}, {1}, {0, 0}}};
  Instance fi = encode_instance(ProblemId::FSL, tree);
  Word fout = apply_word_function(fsl_patient.transducer, fi.name, FuelBudget(512));
  Word leaf = decode_sname_prefix(fout);
  auto leaves = tree.leaves();
  CHECK(std::find(leaves.begin(), leaves.end(), leaf) != leaves.end());
}

TEST_CASE("the CN-reduction adversary forces ranges or stays quiet") {
  // echo: the forcing tokens are the values themselves
  WordFunction echo("echo", [](const Word& w) { return w; });
  auto r1 = adversary_cn_reduction(echo, 3, kFuel);
  REQUIRE(r1.certificate.has_value());
  CHECK(r1.certificate->kind == FailureCertificate::Kind::RangeForced);
  CHECK(replay_cn_certificate(echo, *r1.certificate));

  // emit n+1 whenever input token n is seen
  WordFunction bump("bump", [](const Word& w) {
    Word out;
    for (Token t : w) out.push_back(t + 1);
    return out;
  });
  auto r2 = adversary_cn_reduction(bump, 3, kFuel);
  REQUIRE(r2.certificate.has_value());
  CHECK(replay_cn_certificate(bump, *r2.certificate));

  // emit only padding: consistent with never enumerating 1, so inconclusive
  WordFunction silent("zeros", [](const Word& w) { return Word(w.size(), 0); });
  auto r3 = adversary_cn_reduction(silent, 2, FuelBudget(2000));
  CHECK(!r3.certificate.has_value());
}
