#include "overt/reductions.hpp"

#include <algorithm>

namespace overt {

namespace {

Token first_zero_position(const Name& r) {
  if (!r.tail()) throw MissingTailDescriptor();
  const Tail& t = *r.tail();
  std::uint64_t horizon = t.kind == Tail::Kind::Periodic ? t.period.size() : t.point + 1;
  for (std::uint64_t k = 0; k < horizon; ++k) {
    if (r.at(k) == 0) return k;
  }
  if (t.kind == Tail::Kind::EventuallyZero || t.kind == Tail::Kind::FiniteStage) return t.point;
  throw Error("stream has no zero");
}

Token fin_at(const Word& ell, Token a) { return a < ell.size() ? ell[a] : 0; }

// Pre-transducers emit one slot per input token: slot cantor(idx, s) decides
// basis index idx from the instance prefix of length s+1. Decisions are
// stable, so the output is monotone, and every index is revisited with
// growing stages.
Word slot_emit(const Word& input, const std::function<bool(Token, const Word&)>& decide) {
  Word out;
  out.reserve(input.size());
  for (std::uint64_t t = 0; t < input.size(); ++t) {
    auto [idx, s] = cantor_unpair(t);
    Word prefix(input.begin(), input.begin() + std::min<std::size_t>(s + 1, input.size()));
    out.push_back(decide(idx, prefix) ? idx + 1 : 0);
  }
  return out;
}

// ---- ACC_N to VC(Tmin) -------------------------------------------------------

bool acc_tmin_emit(Token idx, const Word& prefix) {
  auto basic = tmin_parse_basic(idx);
  if (!basic) return false;
  // first revealed token of the psi-name, if any
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    if (prefix[j] != 0) {
      Token i = prefix[j] - 1;
      Point p1 = Point::tmin(i + 1, j), p2 = Point::tmin(0, i);
      return basic_open_member(SpaceId::Tmin, p1, idx) ||
             basic_open_member(SpaceId::Tmin, p2, idx);
    }
  }
  // all padding so far: emit only opens valid for every remaining future
  if (basic->is_singleton) return false;
  Token zeros = prefix.size();
  for (Token i = 0; i < fin_at(basic->ell, 0); ++i) {
    if (fin_at(basic->ell, i + 1) > zeros) return false;
  }
  return true;
}

// delta_Tmin postprocessing: answer m once the name rules out columns above m.
Word acc_tmin_read_answer(const Word& answer) {
  if (answer.empty()) return {};
  Token m = answer[0];
  for (std::size_t i = 1; i < answer.size(); ++i) {
    if (answer[i] != 0) {
      Token b = i - 1;
      return {b == m ? m + 1 : m};
    }
  }
  if (answer.size() >= m + 2) return {m};
  return {};
}

// ---- LPO to VC(Smin) ---------------------------------------------------------

// least Cantor code of a point inside W_{a,ell}
Token smin_w_mu(const SminBasic& basic) {
  Token best = ~Token{0};
  Token hi = std::max<Token>(basic.a, basic.ell.size()) + 1;
  for (Token i = basic.a; i <= hi; ++i) {
    best = std::min(best, cantor_pair(i, fin_at(basic.ell, i)));
  }
  return best;
}

bool lpo_smin_emit(Token idx, const Word& prefix) {
  auto basic = smin_parse_basic(idx);
  if (!basic) return false;
  for (std::size_t z = 0; z < prefix.size(); ++z) {
    if (prefix[z] == 0) {
      // zero revealed at z: the set is A_z = { (a,b) : <a,b> <= z }
      for (Token c = 0; c <= z; ++c) {
        auto [a, b] = cantor_unpair(c);
        if (basic_open_member(SpaceId::Smin, Point::smin(a, b), idx)) return true;
      }
      return false;
    }
  }
  // no zero yet: only W-opens near enough to every remaining A_m
  return basic->kind == 2 && smin_w_mu(*basic) <= prefix.size();
}

// ---- FSL to VC(S0): the phi simulation ----------------------------------------

struct PhiSim {
  std::set<Token> tree{bin_code(Word{})};
  std::vector<Token> pending;
  std::map<Token, Word> phi{{bin_code(Word{}), Word{}}};
  std::vector<Word> mentioned{Word{}};
  std::set<Token> emitted;
  Word out;
  std::uint64_t scanned_window = 0;
  bool tree_changed = true;

  bool fresh(const Word& v) const {
    for (const Word& m : mentioned) {
      if (word_is_prefix(v, m)) return false;
    }
    return true;
  }

  void split(Token parent_code) {
    Word p = bin_decode(parent_code);
    Word p0 = p, p1 = p;
    p0.push_back(0);
    p1.push_back(1);
    if (phi.count(bin_code(p0))) return;
    const Word& u = phi.at(parent_code);
    Token n = 0;
    for (;; ++n) {
      Word c0 = u, c1 = u;
      c0.push_back(n);
      c1.push_back(n + 1);
      if (fresh(c0) && fresh(c1)) {
        phi[bin_code(p0)] = c0;
        phi[bin_code(p1)] = c1;
        mentioned.push_back(c0);
        mentioned.push_back(c1);
        return;
      }
    }
  }

  void insert_tree(Token code) {
    if (tree.count(code)) return;
    Word w = bin_decode(code);
    if (!w.empty()) {
      Word parent(w.begin(), w.end() - 1);
      Token pcode = bin_code(parent);
      if (!tree.count(pcode)) {
        pending.push_back(code);
        return;
      }
      split(pcode);  // the parent stops being a leaf
    }
    tree_changed = true;
    tree.insert(code);
    // resolve any waiting descendants
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        Word v = bin_decode(pending[i]);
        Word parent(v.begin(), v.end() - 1);
        if (tree.count(bin_code(parent))) {
          Token c = pending[i];
          pending.erase(pending.begin() + i);
          split(bin_code(parent));
          tree.insert(c);
          moved = true;
          break;
        }
      }
    }
  }

  std::vector<Token> leaf_codes() const {
    std::vector<Token> out;
    for (Token c : tree) {
      Word w = bin_decode(c);
      Word w0 = w, w1 = w;
      w0.push_back(0);
      w1.push_back(1);
      if (!tree.count(bin_code(w0)) && !tree.count(bin_code(w1))) out.push_back(c);
    }
    return out;
  }

  bool safe(Token s0_idx) const {
    const Space& s0 = space(SpaceId::S0);
    if (!s0.valid_index(s0_idx)) return false;
    for (Token leaf : leaf_codes()) {
      if (s0.member(Point::s0(phi.at(leaf)), s0_idx)) return true;
    }
    return false;
  }

  void record_emitted_words(Token s0_idx) {
    auto set = word_set_decode(s0_idx);
    if (!set) return;
    for (const Word& w : *set) mentioned.push_back(w);
  }

  void step(Token token, std::uint64_t window) {
    if (token != 0) insert_tree(token - 1);
    // rescan everything only when the tree moved; otherwise just new codes
    Token lo = tree_changed ? 0 : scanned_window;
    for (Token c = lo; c < window; ++c) {
      if (emitted.count(c)) continue;
      if (safe(c)) {
        record_emitted_words(c);
        emitted.insert(c);
        out.push_back(c + 1);
      }
    }
    if (window > scanned_window) scanned_window = window;
    if (window > 0) tree_changed = false;
  }
};

PhiSim run_phi(const Word& input) {
  PhiSim sim;
  for (std::uint64_t i = 0; i < input.size(); ++i) sim.step(input[i], i + 1);
  return sim;
}

Word fsl_post_word(const Word& pair_word) {
  Word orig = even_positions(pair_word);
  Word ans = odd_positions(pair_word);
  std::size_t n = std::min(orig.size(), ans.size());
  PhiSim sim;
  Word wprime;
  Word bits_out;
  std::vector<bool> consumed(n, false);

  // singleton-avoidance codes of the current candidates, recomputed on moves
  std::optional<Token> f0, f1;
  auto refresh_children = [&]() {
    f0.reset();
    f1.reset();
    Word c0 = wprime, c1 = wprime;
    c0.push_back(0);
    c1.push_back(1);
    auto it0 = sim.phi.find(bin_code(c0));
    auto it1 = sim.phi.find(bin_code(c1));
    if (it0 == sim.phi.end() || it1 == sim.phi.end()) return;
    try {
      f0 = s0_basis_index({it0->second});
      f1 = s0_basis_index({it1->second});
    } catch (const OverflowError&) {
      f0.reset();
      f1.reset();
    }
  };
  // token j tells us the answer avoids one child; descend into the other
  auto try_consume = [&](std::size_t j) {
    if (consumed[j] || ans[j] == 0 || !f0 || !f1) return false;
    Token fidx = ans[j] - 1;
    Token bit;
    if (fidx == *f0) {
      bit = 1;
    } else if (fidx == *f1) {
      bit = 0;
    } else {
      return false;
    }
    wprime.push_back(bit);
    bits_out.push_back(bit == 0 ? 1 : 0);
    bits_out.push_back(bit == 0 ? 0 : 1);
    consumed[j] = true;
    refresh_children();
    return true;
  };

  std::size_t phi_version = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sim.step(orig[i], 0);  // phi bookkeeping only, no emission window
    if (sim.phi.size() != phi_version) {
      phi_version = sim.phi.size();
      refresh_children();
    }
    bool moved = try_consume(i);
    while (moved) {
      moved = false;
      for (std::size_t j = 0; j <= i && !moved; ++j) moved = try_consume(j);
    }
  }
  return bits_out;
}

// ---- CN to CQ01 over the convergent embedding ----------------------------------

bool cn_cq_emit(Token idx, const Word& prefix) {
  Word w = bin_decode(idx);
  if (w.size() > 24) return false;
  std::set<Token> excluded;
  for (Token t : prefix) {
    if (t != 0) excluded.insert(t - 1);
  }
  return !embedded_meets(q_basis_interval(w), SubsetDescriptor::cofinite(excluded));
}

// Convergent indices inside an interval; nullopt when infinitely many.
std::optional<std::vector<Token>> convergents_in_interval(const QInterval& interval) {
  const QF2 target(0, 1, 2);
  bool below = compare(interval.lo, target) < 0 && compare(target, interval.hi) <= 0;
  bool above = compare(target, interval.hi) < 0 && compare(interval.lo, target) <= 0;
  if (below || above) return std::nullopt;
  QF2 dist = (compare(target, interval.lo) < 0) ? interval.lo - target : target - interval.hi;
  std::vector<Token> out;
  for (Token n = 0; n < 96; ++n) {
    Rat c = sqrt2_half_convergent(n);
    if (interval.contains(c)) out.push_back(n);
    QF2 gap = QF2::from_rat(c) - target;
    if (sign(gap) < 0) gap = target - QF2::from_rat(c);
    if (n >= 2 && compare(gap, dist) < 0) return out;  // later convergents sit closer still
  }
  return out;
}

Word cn_cq_post_word(const Word& pair_word) {
  Word ans = odd_positions(pair_word);
  for (Token tok : ans) {
    if (tok == 0) continue;
    Word w = bin_decode(tok - 1);
    if (w.size() > 24) continue;
    auto cands = convergents_in_interval(q_basis_interval(w));
    if (cands && cands->size() == 1) return {cands->front()};
  }
  return {};
}

// ---- CQ01 to CN over the fixed rational enumeration ----------------------------

bool cq_cn_emit(Token n, const Word& prefix) {
  Rat q = rational_at(n);
  for (Token t : prefix) {
    if (t == 0) continue;
    Word w = bin_decode(t - 1);
    if (w.size() > 24) continue;
    if (q_basis_interval(w).contains(q)) return true;
  }
  return false;
}

}  // namespace

// ---- branch bookkeeping ---------------------------------------------------------

Rat branch_rational(const Word& stem, Token bit) {
  // the least-containing child always repeats its own last bit, so the least
  // rational freezes one step below the stem
  Word first = stem;
  first.push_back(bit);
  return rational_at(least_rational_index(q_basis_interval(first)));
}

std::pair<Word, Token> rational_branch(const Rat& q) {
  Word u;
  for (int guard = 0; guard < 31; ++guard) {
    QInterval cur = q_basis_interval(u);
    if (!cur.contains(q)) throw Error("rational_branch: point escaped the interval");
    Rat least = rational_at(least_rational_index(cur));
    Token last = u.empty() ? 0 : u.back();
    if (least == q) return EcpGt::normalize(u, last);
    Word child = u;
    child.push_back(0);
    u.push_back(q_basis_interval(child).contains(q) ? 0 : 1);
  }
  throw FuelExhausted("rational_branch: no stabilization within the depth cap");
}

WordFunction acc_tmin_post_on_answer() {
  return WordFunction("accN-post", [](const Word& answer) { return acc_tmin_read_answer(answer); });
}

// ---- the applier ------------------------------------------------------------------

Answer apply_reduction(const ReductionWitness& witness, const Solver& oracle,
                       const Instance& instance, FuelBudget fuel) {
  if (instance.problem != witness.source) throw Error("instance problem mismatch");
  Name target_name =
      transduce(witness.pre, instance.name, std::max<std::uint64_t>(fuel.max_steps * 4, 1u << 16));
  Instance target{witness.target, target_name, witness.gt_map(instance)};
  Answer oracle_answer = oracle(target, fuel);
  if (oracle_answer.problem != witness.target) throw OracleFailure("answer problem mismatch");
  Name paired = pair_names(instance.name, oracle_answer.stream);
  Word out = apply_word_function(witness.post, paired, fuel);
  return witness.answer_from(out, instance, oracle_answer);
}

// ---- witnesses --------------------------------------------------------------------

ReductionWitness witness_accN_to_vcTmin() {
  ReductionWitness w;
  w.id = "accN<=vcTmin";
  w.source = ProblemId::ACC;
  w.target = ProblemId::VC;
  w.strong = true;
  w.pre = WordFunction("accN-pre", [](const Word& input) {
    return slot_emit(input, acc_tmin_emit);
  });
  w.post = WordFunction("accN-post", [](const Word& pair_word) {
    return acc_tmin_read_answer(odd_positions(pair_word));
  });
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    const auto& g = std::get<AccGt>(inst.gt);
    if (!g.excluded) return VcGt{SpaceId::Tmin, {Point::tmin_inf()}};
    Token i = *g.excluded, j = g.reveal_at;
    return VcGt{SpaceId::Tmin, {Point::tmin(i + 1, j), Point::tmin(0, i)}};
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer&) {
    if (out.empty()) throw FuelExhausted("accN postprocessor undecided");
    return answer_nat(ProblemId::ACC, out[0]);
  };
  return w;
}

ReductionWitness witness_lpo_to_vcSmin() {
  ReductionWitness w;
  w.id = "lpo<=vcSmin";
  w.source = ProblemId::LPO;
  w.target = ProblemId::VC;
  w.strong = true;
  w.pre = WordFunction("lpo-pre", [](const Word& input) {
    return slot_emit(input, lpo_smin_emit);
  });
  // Composition with the answer's first token: names of (inf,inf) start with
  // zero and name the no-zero case, so the emitted bit is the negation.
  w.post = WordFunction("lpo-post", [](const Word& pair_word) -> Word {
    Word ans = odd_positions(pair_word);
    if (ans.empty()) return {};
    return {ans[0] == 0 ? Token{0} : Token{1}};
  });
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    if (lpo_eval(inst.name) == 0) return VcGt{SpaceId::Smin, {Point::smin_inf()}};
    Token m = first_zero_position(inst.name);
    std::vector<Point> pts;
    for (Token c = 0; c <= m; ++c) {
      auto [a, b] = cantor_unpair(c);
      pts.push_back(Point::smin(a, b));
    }
    return VcGt{SpaceId::Smin, pts};
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer&) {
    if (out.empty()) throw FuelExhausted("lpo postprocessor undecided");
    return answer_bit(ProblemId::LPO, out[0]);
  };
  return w;
}

ReductionWitness witness_ecp_to_vcq() {
  ReductionWitness w;
  w.id = "ecp<=vcq";
  w.source = ProblemId::ECP;
  w.target = ProblemId::VC;
  w.strong = true;
  w.pre = WordFunction::identity();  // tree codes are exactly the basis codes
  w.post = WordFunction("ecp-post", [](const Word& pair_word) {
    Word best;
    for (Token tok : odd_positions(pair_word)) {
      if (tok == 0) continue;
      Word cand = bin_decode(tok - 1);
      if (word_is_prefix(best, cand)) best = std::move(cand);
    }
    return best;
  });
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    const auto& g = std::get<EcpGt>(inst.gt);
    std::vector<Point> pts;
    for (const auto& b : g.branches) {
      Rat q = branch_rational(b.stem, b.bit);
      bool dup = false;
      for (const Point& p : pts) dup = dup || std::get<Rat>(p.value) == q;
      if (!dup) pts.push_back(Point::q01(q));
    }
    return VcGt{SpaceId::Q01, pts};
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer& oracle_answer) {
    if (!oracle_answer.point) throw OracleFailure("VC answer without a point");
    auto [stem, bit] = rational_branch(std::get<Rat>(oracle_answer.point->value));
    Name stream = Name::from_prefix(stem, bit);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (stream.at(i) != out[i]) throw OracleFailure("branch bits disagree with the point");
    }
    return Answer{ProblemId::ECP, stream, std::nullopt};
  };
  return w;
}

ReductionWitness witness_vcq_to_ecp() {
  ReductionWitness w;
  w.id = "vcq<=ecp";
  w.source = ProblemId::VC;
  w.target = ProblemId::ECP;
  w.strong = true;
  w.pre = WordFunction::identity();
  w.post = WordFunction("vcq-post", [](const Word& pair_word) -> Word {
    Word bits = odd_positions(pair_word);
    Word out;
    Word prefix;
    out.push_back(bin_code(prefix) + 1);
    for (Token b : bits) {
      if (b > 1 || prefix.size() >= 16) break;
      prefix.push_back(b);
      out.push_back(bin_code(prefix) + 1);
    }
    return out;
  });
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    const auto& g = std::get<VcGt>(inst.gt);
    EcpGt out;
    for (const Point& p : g.points) {
      auto [stem, bit] = rational_branch(std::get<Rat>(p.value));
      out.branches.push_back({stem, bit});
    }
    return out;
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer& oracle_answer) {
    const Name& p = oracle_answer.stream;
    if (!p.tail()) throw OracleFailure("ECP answer without a tail descriptor");
    const Tail& t = *p.tail();
    Token bit = (t.kind == Tail::Kind::EventuallyConstant) ? t.constant : 0;
    auto [stem, nbit] = EcpGt::normalize(p.prefix(t.point), bit);
    Rat q = branch_rational(stem, nbit);
    return Answer{ProblemId::VC, Name::from_prefix(out), Point::q01(q)};
  };
  return w;
}

ReductionWitness witness_fsl_to_vcs0() {
  ReductionWitness w;
  w.id = "fsl<=vcs0";
  w.source = ProblemId::FSL;
  w.target = ProblemId::VC;
  w.strong = false;  // the postprocessor replays phi from the original input
  w.pre = WordFunction("fsl-pre", [](const Word& input) { return run_phi(input).out; });
  w.post = WordFunction("fsl-post", fsl_post_word);
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    const auto& g = std::get<FslGt>(inst.gt);
    std::uint64_t stage = inst.name.padding_stage().value_or(g.words.size() + 2);
    PhiSim sim = run_phi(inst.name.prefix(stage + 1));
    VcGt out{SpaceId::S0, {}};
    for (Token leaf : sim.leaf_codes()) out.points.push_back(Point::s0(sim.phi.at(leaf)));
    return out;
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer&) {
    return Answer{ProblemId::FSL, Name::from_prefix(out), std::nullopt};
  };
  return w;
}

ReductionWitness witness_cn_to_cq() {
  ReductionWitness w;
  w.id = "cn<=cq";
  w.source = ProblemId::CN;
  w.target = ProblemId::CQ01;
  w.strong = true;
  w.pre = WordFunction("cn-pre", [](const Word& input) { return slot_emit(input, cn_cq_emit); });
  w.post = WordFunction("cn-post", cn_cq_post_word);
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    return CqGt{std::nullopt, std::get<SubsetDescriptor>(inst.gt)};
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer&) {
    if (out.empty()) throw FuelExhausted("cn postprocessor undecided");
    return answer_nat(ProblemId::CN, out[0]);
  };
  return w;
}

ReductionWitness witness_cq_to_cn() {
  ReductionWitness w;
  w.id = "cq<=cn";
  w.source = ProblemId::CQ01;
  w.target = ProblemId::CN;
  w.strong = true;
  w.pre = WordFunction("cq-pre", [](const Word& input) { return slot_emit(input, cq_cn_emit); });
  w.post = WordFunction("cq-post", [](const Word& pair_word) -> Word {
    Word ans = odd_positions(pair_word);
    if (ans.empty()) return {};
    Rat q = rational_at(ans[0]);
    Word out;
    for (Token idx = 0; idx < ans.size(); ++idx) {
      Word word = bin_decode(idx);
      bool in = word.size() <= 24 && q_basis_interval(word).contains(q);
      out.push_back(in ? idx + 1 : 0);
    }
    return out;
  });
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    // the pullback along the fixed enumeration keeps the CQ description
    return std::get<CqGt>(inst.gt);
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer& oracle_answer) {
    Rat q = rational_at(answer_to_nat(oracle_answer));
    return Answer{ProblemId::CQ01, Name::from_prefix(out), Point::q01(q)};
  };
  return w;
}

ReductionWitness witness_hitsparse_to_cn() {
  ReductionWitness w;
  w.id = "hitsparse<=cn";
  w.source = ProblemId::HitSparse;
  w.target = ProblemId::CN;
  w.strong = true;
  w.pre = WordFunction("hs-pre", [](const Word& input) { return even_positions(input); });
  w.post = WordFunction("hs-post", [](const Word& pair_word) -> Word {
    Word ans = odd_positions(pair_word);
    if (ans.empty()) return {};
    return {ans[0] + 1};  // the single guess n, in enumeration form
  });
  w.gt_map = [](const Instance& inst) -> GroundTruth {
    return std::get<HsGt>(inst.gt).a;
  };
  w.answer_from = [](const Word& out, const Instance&, const Answer&) {
    return Answer{ProblemId::HitSparse, Name::from_prefix(out), std::nullopt};
  };
  return w;
}

const std::map<std::string, ReductionWitness>& witness_registry() {
  static const std::map<std::string, ReductionWitness> reg = [] {
    std::map<std::string, ReductionWitness> m;
    for (auto w : {witness_ecp_to_vcq(), witness_vcq_to_ecp(), witness_fsl_to_vcs0(),
                   witness_accN_to_vcTmin(), witness_lpo_to_vcSmin(), witness_cn_to_cq(),
                   witness_cq_to_cn(), witness_hitsparse_to_cn()}) {
      m.emplace(w.id, std::move(w));
    }
    return m;
  }();
  return reg;
}

std::vector<Instance> default_suite(const std::string& witness_id) {
  std::vector<Instance> out;
  if (witness_id == "accN<=vcTmin") {
    out.push_back(encode_instance(ProblemId::ACC, AccGt{std::nullopt, 0, 0}));
    for (Token i = 0; i <= 8; ++i) {
      for (Token j = 0; j <= 8; ++j) {
        out.push_back(encode_instance(ProblemId::ACC, AccGt{i, j, 0}));
      }
    }
  } else if (witness_id == "lpo<=vcSmin") {
    out.push_back({ProblemId::LPO, Name::constant(1), std::monostate{}});
    out.push_back({ProblemId::LPO, Name(), std::monostate{}});
    for (Token m = 0; m <= 5; ++m) {
      out.push_back({ProblemId::LPO, Name::from_prefix(Word(m, 1)), std::monostate{}});
    }
    out.push_back({ProblemId::LPO, Name::from_tail(Tail::periodic({3, 1})), std::monostate{}});
  } else if (witness_id == "ecp<=vcq") {
    out.push_back(encode_instance(ProblemId::ECP, EcpGt{{{Word{}, 0}}}));
    out.push_back(encode_instance(ProblemId::ECP, EcpGt{{{Word{}, 1}}}));
    out.push_back(encode_instance(ProblemId::ECP, EcpGt{{{Word{0, 1}, 0}}}));
    out.push_back(encode_instance(ProblemId::ECP, EcpGt{{{Word{}, 0}, {Word{1}, 1}}}));
    out.push_back(encode_instance(ProblemId::ECP, EcpGt{{{Word{1, 0}, 1}, {Word{0}, 0}}}));
  } else if (witness_id == "vcq<=ecp") {
    out.push_back(encode_instance(ProblemId::VC, VcGt{SpaceId::Q01, {Point::q01(Rat(1, 2))}}));
    out.push_back(encode_instance(ProblemId::VC, VcGt{SpaceId::Q01, {Point::q01(Rat(0, 1))}}));
    out.push_back(encode_instance(ProblemId::VC, VcGt{SpaceId::Q01, {Point::q01(Rat(1, 1))}}));
    out.push_back(encode_instance(
        ProblemId::VC, VcGt{SpaceId::Q01, {Point::q01(Rat(1, 3)), Point::q01(Rat(2, 3))}}));
    out.push_back(encode_instance(ProblemId::VC, VcGt{SpaceId::Q01, {Point::q01(Rat(1, 4))}}));
  } else if (witness_id == "fsl<=vcs0") {
    out.push_back(encode_instance(ProblemId::FSL, FslGt{{{}}}));
    out.push_back(encode_instance(ProblemId::FSL, FslGt{{{}, {0}}}));
    out.push_back(encode_instance(ProblemId::FSL, FslGt{{{}, {0}, {1}, {0, 0}}}));
    out.push_back(encode_instance(ProblemId::FSL, FslGt{{{}, {0}, {1}}}));
    out.push_back(encode_instance(ProblemId::FSL, FslGt{{{}, {1}, {1, 0}, {1, 1}}}));
  } else if (witness_id == "cn<=cq" || witness_id == "cq<=cn") {
    if (witness_id == "cn<=cq") {
      out.push_back(encode_instance(ProblemId::CN, SubsetDescriptor::cofinite({0})));
      out.push_back(encode_instance(ProblemId::CN, SubsetDescriptor::cofinite({0, 1, 4})));
      out.push_back(encode_instance(ProblemId::CN, SubsetDescriptor::residue(2, {0})));
      out.push_back(encode_instance(ProblemId::CN, SubsetDescriptor::residue(3, {1})));
      out.push_back(encode_instance(ProblemId::CN, SubsetDescriptor::cofinite({})));
    } else {
      out.push_back(encode_instance(ProblemId::CQ01, CqGt{std::vector<Word>{{0}}, std::nullopt}));
      out.push_back(encode_instance(ProblemId::CQ01, CqGt{std::vector<Word>{{1}}, std::nullopt}));
      out.push_back(encode_instance(
          ProblemId::CQ01, CqGt{std::vector<Word>{{0, 0}, {1, 1}}, std::nullopt}));
      out.push_back(encode_instance(
          ProblemId::CQ01, CqGt{std::nullopt, SubsetDescriptor::cofinite({0, 1, 2})}));
    }
  } else if (witness_id == "hitsparse<=cn") {
    out.push_back(encode_instance(ProblemId::HitSparse,
                                  HsGt{SubsetDescriptor::residue(2, {0}), 1, 1, {}}));
    out.push_back(encode_instance(ProblemId::HitSparse,
                                  HsGt{SubsetDescriptor::residue(3, {0}), 2, 0, {}}));
    out.push_back(
        encode_instance(ProblemId::HitSparse, HsGt{SubsetDescriptor::cofinite({}), 1, 5, {}}));
  } else {
    throw Error("unknown witness id: " + witness_id);
  }
  return out;
}

// ---- solvers -----------------------------------------------------------------------

Solver brute_oracle() {
  return [](const Instance& inst, FuelBudget fuel) { return brute_solve(inst, fuel); };
}

Solver vc_q01_branch_follower(std::uint64_t depth_cap) {
  return [depth_cap](const Instance& inst, FuelBudget fuel) -> Answer {
    Word u;
    std::set<Token> confirmed;
    std::uint64_t read = 0;
    auto confirmed_code = [&](Token code) {
      while (read < fuel.max_steps && !confirmed.count(code)) {
        Token t = inst.name.at(read);
        ++read;
        if (t != 0) confirmed.insert(t - 1);
      }
      return confirmed.count(code) != 0;
    };
    for (std::uint64_t depth = 0; depth < depth_cap; ++depth) {
      Word u0 = u, u1 = u;
      u0.push_back(0);
      u1.push_back(1);
      // descend into the first confirmed child, left preferred on ties
      bool c0 = confirmed_code(bin_code(u0));
      bool c1 = c0 ? false : confirmed_code(bin_code(u1));
      if (c0) {
        u = u0;
      } else if (c1) {
        u = u1;
      } else {
        break;
      }
    }
    Rat q = rational_at(least_rational_index(q_basis_interval(u)));
    Point pt = Point::q01(q);
    return {ProblemId::VC, canonical_point_name(pt).name, pt};
  };
}

Solver vc_tmin_via_lpo() {
  return [](const Instance& inst, FuelBudget fuel) -> Answer {
    std::optional<Token> singleton_idx;
    for (std::uint64_t i = 0; i < fuel.max_steps && !singleton_idx; ++i) {
      Token t = inst.name.at(i);
      if (t == 0) continue;
      auto basic = tmin_parse_basic(t - 1);
      if (basic && basic->is_singleton) singleton_idx = t - 1;
    }
    Name r = singleton_idx ? Name::from_prefix(Word(1, 1))  // a zero follows the prefix
                           : Name::constant(1);
    if (lpo_eval(r) == 1 && singleton_idx) {
      Point pt = *space(SpaceId::Tmin).isolated_point(*singleton_idx);
      return {ProblemId::VC, canonical_point_name(pt).name, pt};
    }
    Point inf = Point::tmin_inf();
    return {ProblemId::VC, canonical_point_name(inf).name, inf};
  };
}

Solver vc_smin_via_lpo() {
  return [](const Instance& inst, FuelBudget fuel) -> Answer {
    bool isolated_part_met = false;
    for (std::uint64_t i = 0; i < fuel.max_steps && !isolated_part_met; ++i) {
      Token t = inst.name.at(i);
      if (t == 0) continue;
      auto basic = smin_parse_basic(t - 1);
      if (basic && basic->kind <= 1) isolated_part_met = true;
    }
    Name r = isolated_part_met ? Name::from_prefix(Word(1, 1)) : Name::constant(1);
    if (lpo_eval(r) == 0) {
      Point inf = Point::smin_inf();
      return {ProblemId::VC, canonical_point_name(inf).name, inf};
    }
    // chain algorithm over the Polish part: basic opens are the singletons
    // and the V-opens, ordered by strict inclusion
    CeRelation rel;
    rel.label = "smin-polish";
    rel.holds = [](Token i, Token j) {
      auto bi = smin_parse_basic(i), bj = smin_parse_basic(j);
      if (!bi || !bj || bi->kind > 1 || bj->kind > 1) return false;
      const Space& sp = space(SpaceId::Smin);
      return sp.basic_subset(j, i) == Tri::Yes && sp.basic_subset(i, j) == Tri::No;
    };
    EnumName filtered(Name([inst](std::uint64_t i) -> Token {
      Token t = inst.name.at(i);
      if (t == 0) return 0;
      auto basic = smin_parse_basic(t - 1);
      return (basic && basic->kind <= 1) ? t : 0;
    }));
    RoundedIdealName ideal = vc_ri(rel, filtered, fuel);
    std::vector<Token> chain;
    for (std::uint64_t len = 10; len >= 1; --len) {
      try {
        chain = ideal.chain_prefix(len);
        break;
      } catch (const FuelExhausted&) {
        // a singleton link ends the chain; retry shorter
      }
    }
    if (chain.empty()) throw FuelExhausted("smin solver: no chain");
    std::optional<Point> pt;
    for (Token link : chain) {
      auto basic = smin_parse_basic(link);
      if (basic && basic->kind == 0) {
        pt = Point::smin(basic->a, basic->b);
        break;
      }
    }
    if (!pt) {
      auto basic = smin_parse_basic(chain.back());
      pt = Point::smin_row(basic->a);
    }
    return {ProblemId::VC, canonical_point_name(*pt).name, *pt};
  };
}

// ---- oracle elimination --------------------------------------------------------------

Token eliminate_overt_oracle(const WordFunction& outer, const WordFunction& inner, SpaceId,
                             const Name& p, FuelBudget fuel) {
  Name hp = transduce(inner, p, std::max<std::uint64_t>(fuel.max_steps * 4, 1u << 16));
  struct Triple {
    Token n;
    std::uint64_t prefix_len;
    Token k;
  };
  std::vector<Triple> triples;
  std::set<Token> confirmed;
  bool hp_stalled = false;
  std::uint64_t hp_read = 0;
  for (std::uint64_t t = 0; t < fuel.max_steps; ++t) {
    auto [plen, k] = cantor_unpair(t);
    // probe: K on <p-prefix, synthetic name asserting only basic open k>
    Word probe;
    for (std::uint64_t i = 0; i < plen; ++i) {
      probe.push_back(p.at(i));
      probe.push_back(i == 0 ? k + 1 : 0);
    }
    try {
      Word out = outer(probe);
      if (!out.empty()) triples.push_back({out[0], plen, k});
    } catch (const Error&) {
      // undefined on this probe; keep dovetailing
    }
    if (!hp_stalled) {
      try {
        Token tok = hp.at(hp_read);
        ++hp_read;
        if (tok != 0) confirmed.insert(tok - 1);
      } catch (const FuelExhausted&) {
        hp_stalled = true;
      }
    }
    for (const Triple& tr : triples) {
      if (confirmed.count(tr.k)) return tr.n;  // prefix condition holds by construction
    }
  }
  throw FuelExhausted("eliminate_overt_oracle: no confirmed triple");
}

}  // namespace overt
