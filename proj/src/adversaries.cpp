#include "overt/adversaries.hpp"

#include <algorithm>

namespace overt {

namespace {

std::uint64_t transitions(const Word& w) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] != w[i + 1]) ++n;
  }
  return n;
}

bool all_binary(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](Token t) { return t <= 1; });
}

// w lies on the branch base . dir^omega
bool on_branch(const Word& w, const Word& base, Token dir) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    Token expect = i < base.size() ? base[i] : dir;
    if (w[i] != expect) return false;
  }
  return true;
}

}  // namespace

std::string certificate_kind_name(FailureCertificate::Kind kind) {
  switch (kind) {
    case FailureCertificate::Kind::OutputLeftTree:
      return "OutputLeftTree";
    case FailureCertificate::Kind::AlternationBound:
      return "AlternationBound";
    case FailureCertificate::Kind::Stalled:
      return "Stalled";
    case FailureCertificate::Kind::RangeForced:
      return "RangeForced";
  }
  return "?";
}

Word decode_sname_prefix(const Word& tokens) {
  Word out;
  for (std::size_t i = 0; 2 * i + 1 < tokens.size(); ++i) {
    Token a = tokens[2 * i], b = tokens[2 * i + 1];
    if (a == b) continue;
    out.push_back(a == 1 ? 0 : 1);
  }
  return out;
}

// ---- the ECP adversary ---------------------------------------------------------

AdversaryResult adversary_ecp(const SolverUnderTest& solver, std::uint64_t alternation_target,
                              FuelBudget fuel) {
  Word input, output;
  std::set<Token> tree;
  Word spine{0};
  Token dir = 1;
  struct Branch {
    Word base;
    Token dir;
    std::uint64_t next_depth = 0;
  };
  std::vector<Branch> feeds{{spine, dir, 0}};  // the active phase sits at the back
  std::size_t robin = 0;
  std::uint64_t stalled_for = 0;

  auto make_cert = [&](FailureCertificate::Kind kind, std::uint64_t count, std::string detail) {
    FailureCertificate cert;
    cert.kind = kind;
    cert.count = count;
    cert.input = input;
    cert.output = output;
    for (const Branch& b : feeds) cert.branches.emplace_back(b.base, b.dir);
    cert.detail = std::move(detail);
    return AdversaryResult{cert};
  };

  auto branch_prefix = [](const Branch& b, std::uint64_t depth) {
    Word w;
    for (std::uint64_t i = 0; i < depth; ++i) w.push_back(i < b.base.size() ? b.base[i] : b.dir);
    return w;
  };

  for (std::uint64_t step = 0; step < fuel.max_steps; ++step) {
    // one enumeration token per solver step, round robin over the branches
    Token token = 0;
    for (std::size_t tries = 0; tries < feeds.size() && token == 0; ++tries) {
      Branch& b = feeds[robin % feeds.size()];
      ++robin;
      if (b.next_depth > 60) continue;  // beyond the code width
      Word w = branch_prefix(b, b.next_depth);
      ++b.next_depth;
      Token code = bin_code(w);
      if (!tree.count(code)) token = code + 1;
    }
    input.push_back(token);
    if (token != 0) tree.insert(token - 1);

    Word next = solver.transducer(input);
    if (!word_is_prefix(output, next)) {
      throw MonotonicityViolation("solver " + solver.id);
    }
    if (next.size() == output.size()) {
      if (++stalled_for > solver.progress_bound) {
        return make_cert(FailureCertificate::Kind::Stalled, stalled_for,
                         "no output extension within the declared bound");
      }
      continue;
    }
    stalled_for = 0;
    output = std::move(next);
    if (!all_binary(output)) {
      return make_cert(FailureCertificate::Kind::OutputLeftTree, 0,
                       "output leaves the binary alphabet");
    }
    if (transitions(output) >= alternation_target) {
      return make_cert(FailureCertificate::Kind::AlternationBound, transitions(output),
                       "forced alternations reached the target");
    }
    if (output.size() > 60 || !tree.count(bin_code(output))) {
      // certify only what no future feed can repair: the word must already
      // disagree with the spine and with every declared escape branch
      bool comparable_spine = word_is_prefix(output, spine) || word_is_prefix(spine, output);
      bool on_escape = false;
      for (const Branch& b : feeds) on_escape = on_escape || on_branch(output, b.base, b.dir);
      if (!comparable_spine && !on_escape) {
        return make_cert(FailureCertificate::Kind::OutputLeftTree, 0,
                         "output incompatible with every continuation");
      }
    }
    // the bend commitment: the solver extended past spine . dir
    Word bend = spine;
    bend.push_back(dir);
    if (word_is_prefix(bend, output)) {
      // keep the unbent continuation alive, then turn the phase at the
      // longest enumerated prefix of the current branch
      Branch& phase = feeds.back();
      Word longest =
          phase.next_depth > 0 ? branch_prefix(phase, phase.next_depth - 1) : phase.base;
      if (!word_is_prefix(bend, longest)) longest = bend;
      feeds.back() = Branch{spine, static_cast<Token>(1 - dir), 0};  // escape branch
      spine = longest;
      dir = 1 - dir;
      feeds.push_back(Branch{spine, dir, 0});
    }
  }
  // fuel spent: the instance ends as the declared branch closure
  bool valid = all_binary(output);
  if (valid) {
    valid = false;
    for (const Branch& b : feeds) valid = valid || on_branch(output, b.base, b.dir);
  }
  if (!valid) {
    return make_cert(FailureCertificate::Kind::OutputLeftTree, 0,
                     "output is not a prefix of any declared branch");
  }
  return {std::nullopt};
}

bool replay_ecp_certificate(const SolverUnderTest& solver, const FailureCertificate& cert) {
  Word output;
  std::uint64_t stalled_for = 0, max_stall = 0;
  for (std::size_t i = 0; i < cert.input.size(); ++i) {
    Word prefix(cert.input.begin(), cert.input.begin() + i + 1);
    Word next = solver.transducer(prefix);
    if (!word_is_prefix(output, next)) return false;
    if (next.size() == output.size()) {
      max_stall = std::max(max_stall, ++stalled_for);
    } else {
      stalled_for = 0;
    }
    output = std::move(next);
  }
  if (output != cert.output) return false;
  switch (cert.kind) {
    case FailureCertificate::Kind::AlternationBound:
      return transitions(output) >= cert.count;
    case FailureCertificate::Kind::Stalled:
      return max_stall > solver.progress_bound;
    case FailureCertificate::Kind::OutputLeftTree: {
      if (!all_binary(output)) return true;
      for (const auto& [base, d] : cert.branches) {
        if (on_branch(output, base, d)) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

// ---- the FSL adversary ---------------------------------------------------------

namespace {

std::vector<Word> tree_leaves(const std::set<Token>& tree) {
  std::vector<Word> out;
  for (Token c : tree) {
    Word w = bin_decode(c);
    Word w0 = w, w1 = w;
    w0.push_back(0);
    w1.push_back(1);
    if (!tree.count(bin_code(w0)) && !tree.count(bin_code(w1))) out.push_back(w);
  }
  return out;
}

}  // namespace

AdversaryResult adversary_fsl(const SolverUnderTest& solver, std::uint64_t commitment_target,
                              FuelBudget fuel) {
  Word input, output;
  std::set<Token> tree;
  std::vector<Token> queue{bin_code(Word{}), bin_code(Word{0})};
  std::set<Token> refuted;  // committed words already answered with growth
  std::uint64_t commitments = 0;
  std::uint64_t stalled_for = 0;
  Word decoded;

  auto make_cert = [&](FailureCertificate::Kind kind, std::uint64_t count, std::string detail) {
    FailureCertificate cert;
    cert.kind = kind;
    cert.count = count;
    cert.input = input;
    cert.output = output;
    cert.detail = std::move(detail);
    return AdversaryResult{cert};
  };

  for (std::uint64_t step = 0; step < fuel.max_steps; ++step) {
    Token token = 0;
    if (!queue.empty()) {
      token = queue.front() + 1;
      queue.erase(queue.begin());
    }
    input.push_back(token);
    if (token != 0) tree.insert(token - 1);

    Word next = solver.transducer(input);
    if (!word_is_prefix(output, next)) throw MonotonicityViolation("solver " + solver.id);
    output = std::move(next);
    if (!all_binary(output)) {
      return make_cert(FailureCertificate::Kind::OutputLeftTree, commitments,
                       "output leaves the binary alphabet");
    }
    Word now = decode_sname_prefix(output);
    if (now.size() == decoded.size()) {
      if (++stalled_for > solver.progress_bound) {
        return make_cert(FailureCertificate::Kind::Stalled, stalled_for,
                         "no committed extension within the declared bound");
      }
    } else {
      stalled_for = 0;
      decoded = std::move(now);
    }

    // reactive refutation: the moment the committed word is a current leaf,
    // grow a sibling and a child below it (once per committed word)
    auto leaves = tree_leaves(tree);
    if (std::find(leaves.begin(), leaves.end(), decoded) != leaves.end() &&
        !refuted.count(bin_code(decoded))) {
      refuted.insert(bin_code(decoded));
      ++commitments;
      if (commitments >= commitment_target) {
        return make_cert(FailureCertificate::Kind::AlternationBound, commitments,
                         "forced commitments reached the target");
      }
      if (!decoded.empty()) {
        Word sibling = decoded;
        sibling.back() = 1 - sibling.back();
        if (!tree.count(bin_code(sibling))) queue.push_back(bin_code(sibling));
      }
      Word child = decoded;
      child.push_back(0);
      if (!tree.count(bin_code(child))) queue.push_back(bin_code(child));
    }
  }
  auto leaves = tree_leaves(tree);
  if (std::find(leaves.begin(), leaves.end(), decoded) == leaves.end()) {
    return make_cert(FailureCertificate::Kind::OutputLeftTree, commitments,
                     tree.count(bin_code(decoded)) ? "committed word is an internal vertex"
                                                   : "committed word is outside the tree");
  }
  return {std::nullopt};
}

bool replay_fsl_certificate(const SolverUnderTest& solver, const FailureCertificate& cert) {
  Word output;
  Word decoded;
  std::uint64_t stalled_for = 0, max_stall = 0;
  std::set<Token> tree;
  std::set<Token> refuted;
  for (std::size_t i = 0; i < cert.input.size(); ++i) {
    if (cert.input[i] != 0) tree.insert(cert.input[i] - 1);
    Word prefix(cert.input.begin(), cert.input.begin() + i + 1);
    Word next = solver.transducer(prefix);
    if (!word_is_prefix(output, next)) return false;
    output = std::move(next);
    if (!all_binary(output)) {
      return cert.kind == FailureCertificate::Kind::OutputLeftTree;
    }
    Word now = decode_sname_prefix(output);
    if (now.size() == decoded.size()) {
      max_stall = std::max(max_stall, ++stalled_for);
    } else {
      stalled_for = 0;
      decoded = std::move(now);
    }
    auto leaves = tree_leaves(tree);
    if (std::find(leaves.begin(), leaves.end(), decoded) != leaves.end()) {
      refuted.insert(bin_code(decoded));
    }
  }
  if (output != cert.output) return false;
  switch (cert.kind) {
    case FailureCertificate::Kind::AlternationBound:
      return refuted.size() >= cert.count;
    case FailureCertificate::Kind::Stalled:
      return max_stall > solver.progress_bound;
    case FailureCertificate::Kind::OutputLeftTree: {
      auto leaves = tree_leaves(tree);
      return std::find(leaves.begin(), leaves.end(), decoded) == leaves.end();
    }
    default:
      return false;
  }
}

// ---- the CN-reduction adversary --------------------------------------------------

AdversaryResult adversary_cn_reduction(const WordFunction& inner, std::uint64_t range_target,
                                       FuelBudget fuel) {
  Word p;
  std::uint64_t spent = 0;
  const Token alphabet = static_cast<Token>(range_target + 3);
  for (std::uint64_t value = 0; value <= range_target; ++value) {
    // search an extension whose image enumerates `value`
    bool found = false;
    std::vector<Word> frontier{{}};
    while (!found && spent < fuel.max_steps && !frontier.empty()) {
      Word e = frontier.front();
      frontier.erase(frontier.begin());
      ++spent;
      Word probe = p;
      probe.insert(probe.end(), e.begin(), e.end());
      Word image = inner(probe);
      for (Token tok : image) {
        if (tok == value + 1) {
          p = std::move(probe);
          found = true;
          break;
        }
      }
      if (!found && e.size() < 6) {
        for (Token a = 0; a < alphabet; ++a) {
          Word longer = e;
          longer.push_back(a);
          frontier.push_back(std::move(longer));
        }
      }
    }
    if (!found) return {std::nullopt};  // consistent with the image avoiding `value`
    p.push_back(value + 1);  // the separator keeps the input a full enumeration
  }
  FailureCertificate cert;
  cert.kind = FailureCertificate::Kind::RangeForced;
  cert.count = range_target;
  cert.input = p;
  cert.output = inner(p);
  cert.detail = "image enumerates every value up to the target";
  return {cert};
}

bool replay_cn_certificate(const WordFunction& inner, const FailureCertificate& cert) {
  if (cert.kind != FailureCertificate::Kind::RangeForced) return false;
  Word image = inner(cert.input);
  if (image != cert.output) return false;
  std::set<Token> decoded;
  for (Token tok : image) {
    if (tok != 0) decoded.insert(tok - 1);
  }
  for (Token v = 0; v <= cert.count; ++v) {
    if (!decoded.count(v)) return false;
  }
  return true;
}

// ---- shipped solver strategies -----------------------------------------------------

namespace {

std::vector<Word> enumerated_words(const Word& input) {
  std::vector<Word> out;
  for (Token tok : input) {
    if (tok != 0) out.push_back(bin_decode(tok - 1));
  }
  return out;
}

SolverUnderTest ecp_constant(std::string id, Token bit) {
  return {id, WordFunction(id,
                           [bit](const Word& input) {
                             return Word(input.size(), bit);
                           }),
          8};
}

// adopt any enumerated word extending the current output, in arrival order
SolverUnderTest ecp_copycat() {
  return {"copy-longest", WordFunction("copy-longest",
                                       [](const Word& input) {
                                         Word w;
                                         for (const Word& v : enumerated_words(input)) {
                                           if (word_is_prefix(w, v)) w = v;
                                         }
                                         return w;
                                       }),
          8};
}

// like the copycat, padding with its last bit after a quiet stretch
SolverUnderTest ecp_eager() {
  return {"eager-padder", WordFunction("eager-padder",
                                       [](const Word& input) {
                                         Word w;
                                         std::uint64_t idle = 0;
                                         std::uint64_t pos = 0;
                                         for (Token tok : input) {
                                           ++pos;
                                           bool adopted = false;
                                           if (tok != 0) {
                                             Word v = bin_decode(tok - 1);
                                             if (word_is_prefix(w, v)) {
                                               w = v;
                                               adopted = true;
                                             }
                                           }
                                           if (adopted) {
                                             idle = 0;
                                           } else if (++idle % 4 == 0 && !w.empty()) {
                                             w.push_back(w.back());
                                           }
                                         }
                                         return w;
                                       }),
          8};
}

SolverUnderTest ecp_stall3() {
  return {"stall-after-3", WordFunction("stall-after-3",
                                        [](const Word& input) {
                                          return Word(std::min<std::size_t>(3, input.size()), 0);
                                        }),
          4};
}

// patient: extend by a bit only when a longer constant-tailed witness extends it
SolverUnderTest ecp_sound() {
  constexpr std::uint64_t kRun = 3;
  return {"patient-follower",
          WordFunction("patient-follower",
                       [](const Word& input) {
                         std::vector<Word> seen;
                         Word w;
                         auto evidence = [&](const Word& candidate) {
                           for (const Word& u : seen) {
                             if (u.size() < candidate.size() + kRun) continue;
                             if (!word_is_prefix(candidate, u)) continue;
                             bool constant_tail = true;
                             for (std::size_t i = u.size() - kRun; i + 1 < u.size(); ++i) {
                               constant_tail = constant_tail && u[i] == u[i + 1];
                             }
                             if (constant_tail) return true;
                           }
                           return false;
                         };
                         for (Token tok : input) {
                           if (tok != 0) seen.push_back(bin_decode(tok - 1));
                           bool moved = true;
                           while (moved) {
                             moved = false;
                             for (Token b = 0; b <= 1 && !moved; ++b) {
                               Word cand = w;
                               cand.push_back(b);
                               if (evidence(cand)) {
                                 w = cand;
                                 moved = true;
                               }
                             }
                           }
                         }
                         return w;
                       }),
          16};
}

Word sname_pairs_for(const Word& target, std::size_t from) {
  Word out;
  for (std::size_t i = from; i < target.size(); ++i) {
    out.push_back(target[i] == 0 ? 1 : 0);
    out.push_back(target[i] == 0 ? 0 : 1);
  }
  return out;
}

// follow a chosen leaf selector, never retracting
SolverUnderTest fsl_follow(std::string id,
                           std::function<std::optional<Word>(const std::set<Token>&, const Word&)>
                               pick,
                           std::uint64_t bound = 8) {
  WordFunction fn(id, [pick](const Word& input) {
    std::set<Token> tree;
    Word committed;
    Word out;
    for (Token tok : input) {
      if (tok != 0) tree.insert(tok - 1);
      auto target = pick(tree, committed);
      if (target && word_is_proper_prefix(committed, *target)) {
        Word pairs = sname_pairs_for(*target, committed.size());
        out.insert(out.end(), pairs.begin(), pairs.end());
        committed = *target;
      }
    }
    return out;
  });
  return {std::move(id), std::move(fn), bound};
}

SolverUnderTest fsl_leftmost() {
  return fsl_follow("leftmost-leaf", [](const std::set<Token>& tree, const Word& committed) {
    std::optional<Word> best;
    for (const Word& leaf : tree_leaves(tree)) {
      if (!word_is_proper_prefix(committed, leaf)) continue;
      if (!best || bin_code(leaf) < bin_code(*best)) best = leaf;
    }
    return best;
  });
}

SolverUnderTest fsl_rightmost() {
  return fsl_follow("rightmost-leaf", [](const std::set<Token>& tree, const Word& committed) {
    std::optional<Word> best;
    for (const Word& leaf : tree_leaves(tree)) {
      if (!word_is_proper_prefix(committed, leaf)) continue;
      if (!best || bin_code(leaf) > bin_code(*best)) best = leaf;
    }
    return best;
  });
}

SolverUnderTest fsl_deepest() {
  return fsl_follow("deepest-leaf", [](const std::set<Token>& tree, const Word& committed) {
    std::optional<Word> best;
    for (const Word& leaf : tree_leaves(tree)) {
      if (!word_is_proper_prefix(committed, leaf)) continue;
      if (!best || leaf.size() > best->size() ||
          (leaf.size() == best->size() && bin_code(leaf) < bin_code(*best))) {
        best = leaf;
      }
    }
    return best;
  });
}

SolverUnderTest fsl_eps_forever() {
  return {"eps-forever", WordFunction("eps-forever", [](const Word&) { return Word{}; }), 6};
}

SolverUnderTest fsl_commit_one_late() {
  return fsl_follow("commit-1-late", [](const std::set<Token>& tree, const Word& committed) {
    // waits for {eps, 0, 1, 00}, then walks below 1
    std::optional<Word> best;
    bool armed = tree.count(bin_code({})) && tree.count(bin_code({0})) &&
                 tree.count(bin_code({1})) && tree.count(bin_code({0, 0}));
    if (!armed) return best;
    if (committed.empty()) return std::optional<Word>(Word{1});
    for (const Word& leaf : tree_leaves(tree)) {
      if (!word_is_proper_prefix(committed, leaf)) continue;
      if (!best || bin_code(leaf) < bin_code(*best)) best = leaf;
    }
    return best;
  });
}

// patient: adopt a leaf only after it survives unchanged for a quiet stretch
SolverUnderTest fsl_sound() {
  constexpr std::uint64_t kQuiet = 6;
  return {"patient-leaf",
          WordFunction("patient-leaf",
                       [](const Word& input) {
                         std::set<Token> tree;
                         Word committed;
                         Word out;
                         std::uint64_t quiet = 0;
                         for (Token tok : input) {
                           if (tok != 0) {
                             tree.insert(tok - 1);
                             quiet = 0;
                           } else {
                             ++quiet;
                           }
                           if (quiet < kQuiet) continue;
                           std::optional<Word> best;
                           for (const Word& leaf : tree_leaves(tree)) {
                             if (!word_is_proper_prefix(committed, leaf)) continue;
                             if (!best || bin_code(leaf) < bin_code(*best)) best = leaf;
                           }
                           if (best) {
                             Word pairs = sname_pairs_for(*best, committed.size());
                             out.insert(out.end(), pairs.begin(), pairs.end());
                             committed = *best;
                           }
                         }
                         return out;
                       }),
          32};
}

}  // namespace

const std::map<std::string, SolverUnderTest>& ecp_solvers() {
  static const std::map<std::string, SolverUnderTest> reg = [] {
    std::map<std::string, SolverUnderTest> m;
    for (auto s : {ecp_constant("always-zero", 0), ecp_constant("always-one", 1), ecp_copycat(),
                   ecp_eager(), ecp_stall3(), ecp_sound()}) {
      m.emplace(s.id, std::move(s));
    }
    return m;
  }();
  return reg;
}

const std::map<std::string, SolverUnderTest>& fsl_solvers() {
  static const std::map<std::string, SolverUnderTest> reg = [] {
    std::map<std::string, SolverUnderTest> m;
    for (auto s : {fsl_leftmost(), fsl_rightmost(), fsl_deepest(), fsl_eps_forever(),
                   fsl_commit_one_late(), fsl_sound()}) {
      m.emplace(s.id, std::move(s));
    }
    return m;
  }();
  return reg;
}

}  // namespace overt
