#include "overt/problems.hpp"

#include <algorithm>

namespace overt {

std::string problem_name(ProblemId id) {
  switch (id) {
    case ProblemId::LPO:
      return "LPO";
    case ProblemId::ACC:
      return "ACC";
    case ProblemId::CN:
      return "CN";
    case ProblemId::CQ01:
      return "CQ01";
    case ProblemId::ECP:
      return "ECP";
    case ProblemId::FSL:
      return "FSL";
    case ProblemId::HitSparse:
      return "HitSparse";
    case ProblemId::VC:
      return "VC";
  }
  return "?";
}

// ---- subset descriptors ------------------------------------------------------

bool SubsetDescriptor::contains(Token n) const {
  if (minus.count(n)) return false;
  if (plus.count(n)) return true;
  return residues.count(n % modulus) != 0;
}

bool SubsetDescriptor::is_infinite() const { return !residues.empty(); }

bool SubsetDescriptor::complement_finite() const {
  for (Token r = 0; r < modulus; ++r) {
    if (!residues.count(r)) return false;
  }
  return true;
}

std::vector<Token> SubsetDescriptor::complement_list(Token scan_bound) const {
  std::vector<Token> out;
  for (Token n = 0; n < scan_bound; ++n) {
    if (!contains(n)) out.push_back(n);
  }
  return out;
}

std::optional<Token> SubsetDescriptor::least(Token scan_bound) const {
  for (Token n = 0; n < scan_bound; ++n) {
    if (contains(n)) return n;
  }
  return std::nullopt;
}

bool SubsetDescriptor::infinite_with_parity(Token parity) const {
  for (Token r : residues) {
    if (modulus % 2 == 1) return true;  // odd modulus classes hit both parities
    if (r % 2 == parity % 2) return true;
  }
  return false;
}

SubsetDescriptor SubsetDescriptor::cofinite(std::set<Token> removed) {
  SubsetDescriptor d;
  d.minus = std::move(removed);
  return d;
}

SubsetDescriptor SubsetDescriptor::residue(Token modulus, std::set<Token> residues) {
  SubsetDescriptor d;
  d.modulus = modulus;
  d.residues = std::move(residues);
  return d;
}

// ---- tree ground truths ------------------------------------------------------

std::pair<Word, Token> EcpGt::normalize(Word stem, Token bit) {
  while (!stem.empty() && stem.back() == bit) stem.pop_back();
  return {std::move(stem), bit};
}

bool EcpGt::tree_contains(const Word& w) const {
  for (const BranchSpec& b : branches) {
    // w on the branch stem . bit^omega?
    if (w.size() <= b.stem.size()) {
      if (word_is_prefix(w, b.stem)) return true;
      continue;
    }
    if (!word_is_prefix(b.stem, w)) continue;
    bool tail_ok = true;
    for (std::size_t i = b.stem.size(); i < w.size(); ++i) {
      if (w[i] != b.bit) {
        tail_ok = false;
        break;
      }
    }
    if (tail_ok) return true;
  }
  return false;
}

bool FslGt::contains(const Word& w) const {
  return std::find(words.begin(), words.end(), w) != words.end();
}

std::vector<Word> FslGt::leaves() const {
  std::vector<Word> out;
  for (const Word& w : words) {
    Word w0 = w, w1 = w;
    w0.push_back(0);
    w1.push_back(1);
    if (!contains(w0) && !contains(w1)) out.push_back(w);
  }
  std::sort(out.begin(), out.end(),
            [](const Word& a, const Word& b) { return bin_code(a) < bin_code(b); });
  return out;
}

bool FslGt::prefix_closed() const {
  for (const Word& w : words) {
    if (w.empty()) continue;
    Word parent(w.begin(), w.end() - 1);
    if (!contains(parent)) return false;
  }
  return !words.empty();
}

Token HsGt::f_at(Token n) const {
  if (n < f_prefix.size()) return f_prefix[n];
  return checked_add(checked_mul(f_slope, n), f_offset);
}

// ---- lpo ---------------------------------------------------------------------

Token lpo_eval(const Name& r) {
  if (!r.tail()) throw MissingTailDescriptor();
  if (!r.tail_consistent()) throw InvalidName("tail descriptor disagrees with the stream");
  const Tail& t = *r.tail();
  switch (t.kind) {
    case Tail::Kind::EventuallyZero:
    case Tail::Kind::FiniteStage:
      return 1;  // the tail itself is zeros
    case Tail::Kind::EventuallyConstant: {
      if (t.constant == 0) return 1;
      for (std::uint64_t i = 0; i < t.point; ++i) {
        if (r.at(i) == 0) return 1;
      }
      return 0;
    }
    case Tail::Kind::Periodic: {
      for (Token x : t.period) {
        if (x == 0) return 1;
      }
      return 0;
    }
  }
  return 0;
}

// ---- delta_S -----------------------------------------------------------------

Word decode_sname(const Name& p) {
  auto stage = p.padding_stage();
  if (!stage) throw MissingTailDescriptor();
  if (!p.tail_consistent()) throw InvalidName("delta_S name tail is inconsistent");
  Word out;
  for (std::uint64_t i = 0; 2 * i < *stage; ++i) {
    Token a = p.at(2 * i), b = p.at(2 * i + 1);
    if (a > 1 || b > 1) throw InvalidName("delta_S name with token outside {0,1}");
    if (a == b) continue;  // 00 and 11 are silent
    out.push_back(a == 1 ? 0 : 1);
  }
  return out;
}

Name encode_sname(const Word& w) {
  Word prefix;
  for (Token b : w) {
    if (b > 1) throw CodecError("delta_S encodes binary words only");
    prefix.push_back(b == 0 ? 1 : 0);
    prefix.push_back(b == 0 ? 0 : 1);
  }
  return Name::from_prefix(std::move(prefix));
}

// ---- the convergent embedding test -------------------------------------------

bool embedded_meets(const QInterval& interval, const SubsetDescriptor& s) {
  const QF2 target(0, 1, 2);  // sqrt2/2
  // distance from the accumulation point to the nearer relevant endpoint
  QF2 dlo = target - interval.lo;
  QF2 dhi = interval.hi - target;
  // scan convergents until they are certainly closer to sqrt2/2 than both
  // endpoints (exactness: |c_n - target| strictly decreases)
  for (Token n = 0; n < 96; ++n) {
    Rat c = sqrt2_half_convergent(n);
    if (s.contains(n) && interval.contains(c)) return true;
    QF2 dist = QF2::from_rat(c) - target;
    if (sign(dist) < 0) dist = target - QF2::from_rat(c);
    bool inside_lo = sign(dlo) > 0 && compare(dist, dlo) < 0;
    bool inside_hi = sign(dhi) > 0 && compare(dist, dhi) < 0;
    if ((sign(dlo) <= 0 || inside_lo) && (sign(dhi) <= 0 || inside_hi) && n >= 2) {
      // from here on membership depends only on the side of approach
      break;
    }
  }
  // eventual membership per approach side: even convergents rise to sqrt2/2,
  // odd ones descend to it
  bool below_eventually =
      compare(interval.lo, target) < 0 && compare(target, interval.hi) <= 0;
  bool above_eventually =
      compare(target, interval.hi) < 0 && compare(interval.lo, target) <= 0;
  if (below_eventually && s.infinite_with_parity(0)) return true;
  if (above_eventually && s.infinite_with_parity(1)) return true;
  return false;
}

// ---- instance encoding --------------------------------------------------------

namespace {

Name acc_name(const AccGt& gt) {
  if (!gt.excluded) return Name();
  Word prefix(gt.reveal_at, 0);
  prefix.push_back(*gt.excluded + 1);
  return Name::from_prefix(std::move(prefix));
}

EnumName cq_negative_enum(const CqGt& gt) {
  if (gt.complement_cover) {
    auto cover = std::make_shared<std::vector<Word>>(*gt.complement_cover);
    return EnumName::uniform([cover](Token idx) {
      Word w = bin_decode(idx);
      return w.size() <= 24 && q01_cover_covers(w, *cover);
    });
  }
  auto s = std::make_shared<SubsetDescriptor>(*gt.embedded_indices);
  return EnumName::uniform([s](Token idx) {
    Word w = bin_decode(idx);
    if (w.size() > 24) return false;
    return !embedded_meets(q_basis_interval(w), *s);
  });
}

}  // namespace

Instance encode_instance(ProblemId problem, GroundTruth gt) {
  switch (problem) {
    case ProblemId::LPO:
      throw Error("LPO instances are names; construct them directly");
    case ProblemId::ACC: {
      const auto& g = std::get<AccGt>(gt);
      return {problem, acc_name(g), gt};
    }
    case ProblemId::CN: {
      const auto& g = std::get<SubsetDescriptor>(gt);
      if (g.complement_finite()) {
        auto listed = g.complement_list();
        return {problem,
                EnumName::of_finite_set({listed.begin(), listed.end()}).name, gt};
      }
      auto shared = std::make_shared<SubsetDescriptor>(g);
      return {problem,
              EnumName::uniform([shared](Token n) { return !shared->contains(n); }).name, gt};
    }
    case ProblemId::CQ01: {
      const auto& g = std::get<CqGt>(gt);
      return {problem, cq_negative_enum(g).name, gt};
    }
    case ProblemId::ECP: {
      const auto& g = std::get<EcpGt>(gt);
      auto shared = std::make_shared<EcpGt>(g);
      return {problem,
              EnumName::uniform([shared](Token c) { return shared->tree_contains(bin_decode(c)); })
                  .name,
              gt};
    }
    case ProblemId::FSL: {
      const auto& g = std::get<FslGt>(gt);
      if (!g.prefix_closed()) throw Error("FSL ground truth must be a nonempty tree");
      std::set<Token> codes;
      for (const Word& w : g.words) codes.insert(bin_code(w));
      return {problem, EnumName::of_finite_set(codes).name, gt};
    }
    case ProblemId::HitSparse: {
      const auto& g = std::get<HsGt>(gt);
      if (!g.a.is_infinite()) throw Error("HitSparse wants an infinite solution set");
      auto shared = std::make_shared<HsGt>(g);
      Name neg = EnumName::uniform([shared](Token n) { return !shared->a.contains(n); }).name;
      Name f([shared](std::uint64_t i) { return shared->f_at(i); });
      return {problem, pair_names(neg, f), gt};
    }
    case ProblemId::VC: {
      const auto& g = std::get<VcGt>(gt);
      if (g.points.empty()) throw Error("VC wants a nonempty closed set");
      return {problem, overt_of_points(g.space, g.points).en.name, gt};
    }
  }
  throw Error("unknown problem");
}

// ---- verification -------------------------------------------------------------

namespace {

Verdict ok() { return {true, ""}; }
Verdict bad(std::string reason) { return {false, std::move(reason)}; }

Verdict verify_ecp(const EcpGt& gt, const Answer& answer, FuelBudget fuel) {
  const Name& p = answer.stream;
  if (!p.tail()) return bad("ECP answer carries no tail descriptor");
  if (!p.tail_consistent()) return bad("ECP answer tail disagrees with the stream");
  const Tail& t = *p.tail();
  Token bit;
  std::uint64_t point;
  if (t.kind == Tail::Kind::EventuallyConstant && t.constant <= 1) {
    bit = t.constant;
    point = t.point;
  } else if (t.kind == Tail::Kind::EventuallyZero || t.kind == Tail::Kind::FiniteStage) {
    bit = 0;
    point = t.point;
  } else {
    return bad("ECP answer is not eventually constant");
  }
  Word stem = p.prefix(point);
  for (Token b : stem) {
    if (b > 1) return bad("ECP answer leaves the binary alphabet");
  }
  auto [nstem, nbit] = EcpGt::normalize(stem, bit);
  for (const auto& b : gt.branches) {
    auto [gstem, gbit] = EcpGt::normalize(b.stem, b.bit);
    if (nstem == gstem && nbit == gbit) return ok();
  }
  // also confirm the sampled prefixes directly, for diagnostics
  std::uint64_t horizon = std::min<std::uint64_t>(fuel.max_steps, 2 * point + 8);
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    if (!gt.tree_contains(p.prefix(n))) {
      return bad("ECP answer prefix of length " + std::to_string(n) + " leaves the tree");
    }
  }
  return bad("ECP answer follows the tree but settles on no declared branch");
}

Verdict verify_hit_sparse(const HsGt& gt, const Answer& answer, FuelBudget fuel) {
  EnumName u{answer.stream};
  std::set<Token> hits = u.decode(fuel);
  if (!answer.stream.padding_stage()) return bad("HitSparse answer needs a finite stage");
  bool meets = false;
  for (Token h : hits) {
    if (gt.a.contains(h)) {
      meets = true;
      break;
    }
  }
  if (!meets) return bad("guess set misses the solution set");
  Token top = *hits.rbegin();
  for (Token n = 0; n <= top + 1; ++n) {
    Token fn = gt.f_at(n);
    std::uint64_t inside = 0;
    for (Token h : hits) {
      if (h >= n && h <= fn) ++inside;
    }
    if (inside > 1) {
      return bad("two guesses inside [" + std::to_string(n) + "," + std::to_string(fn) + "]");
    }
  }
  return ok();
}

}  // namespace

Verdict verify_answer(const Instance& instance, const Answer& answer, FuelBudget fuel) {
  if (answer.problem != instance.problem) return bad("answer for a different problem");
  switch (instance.problem) {
    case ProblemId::LPO: {
      Token expect = lpo_eval(instance.name);
      return answer.stream.at(0) == expect ? ok()
                                           : bad("LPO bit " + std::to_string(answer.stream.at(0)) +
                                                 ", expected " + std::to_string(expect));
    }
    case ProblemId::ACC: {
      const auto& g = std::get<AccGt>(instance.gt);
      Token n = answer.stream.at(0);
      if (g.m != 0 && n >= g.m) return bad("answer outside M");
      if (g.excluded && n == *g.excluded) return bad("answer hit the excluded element");
      return ok();
    }
    case ProblemId::CN: {
      Token n = answer.stream.at(0);
      // a CN instance obtained by pulling a rational instance back along the
      // fixed enumeration keeps that description as its ground truth
      if (const auto* pulled = std::get_if<CqGt>(&instance.gt)) {
        Rat q = rational_at(n);
        if (pulled->complement_cover) {
          for (const Word& w : *pulled->complement_cover) {
            if (q_basis_interval(w).contains(q)) return bad("index lands in an excluded interval");
          }
          return ok();
        }
        for (Token m = 0; m < 96; ++m) {
          if (pulled->embedded_indices->contains(m) && sqrt2_half_convergent(m) == q) return ok();
        }
        return bad("index is not an embedded member");
      }
      const auto& g = std::get<SubsetDescriptor>(instance.gt);
      return g.contains(n) ? ok() : bad(std::to_string(n) + " is outside the solution set");
    }
    case ProblemId::CQ01: {
      const auto& g = std::get<CqGt>(instance.gt);
      if (!answer.point) return bad("CQ answer carries no point");
      const Rat& q = std::get<Rat>(answer.point->value);
      if (g.complement_cover) {
        for (const Word& w : *g.complement_cover) {
          if (q_basis_interval(w).contains(q)) return bad("answer lies in an excluded interval");
        }
      } else {
        bool found = false;
        for (Token n = 0; n < 96 && !found; ++n) {
          if (g.embedded_indices->contains(n) && sqrt2_half_convergent(n) == q) found = true;
        }
        if (!found) return bad("answer is not an embedded member");
      }
      PointName pn{SpaceId::Q01, answer.stream, answer.point};
      if (!point_name_consistent(pn, FuelBudget(std::min<std::uint64_t>(fuel.max_steps, 256)))) {
        return bad("answer name enumerates an open avoiding the point");
      }
      return ok();
    }
    case ProblemId::ECP:
      return verify_ecp(std::get<EcpGt>(instance.gt), answer, fuel);
    case ProblemId::FSL: {
      const auto& g = std::get<FslGt>(instance.gt);
      Word w;
      try {
        w = decode_sname(answer.stream);
      } catch (const Error& e) {
        return bad(e.what());
      }
      auto ls = g.leaves();
      if (std::find(ls.begin(), ls.end(), w) != ls.end()) return ok();
      if (g.contains(w)) return bad(word_to_string(w) + " is an internal vertex");
      return bad(word_to_string(w) + " is not in the tree");
    }
    case ProblemId::HitSparse:
      return verify_hit_sparse(std::get<HsGt>(instance.gt), answer, fuel);
    case ProblemId::VC: {
      const auto& g = std::get<VcGt>(instance.gt);
      if (!answer.point) return bad("VC answer carries no point");
      bool inside = false;
      for (const Point& p : g.points) {
        if (point_eq(p, *answer.point)) {
          inside = true;
          break;
        }
      }
      if (!inside) return bad("chosen point is outside the closed set");
      PointName pn{g.space, answer.stream, answer.point};
      if (!point_name_consistent(pn, FuelBudget(std::min<std::uint64_t>(fuel.max_steps, 256)))) {
        return bad("point name is inconsistent with the chosen point");
      }
      return ok();
    }
  }
  return bad("unknown problem");
}

// ---- brute oracle -------------------------------------------------------------

Answer brute_solve(const Instance& instance, FuelBudget fuel) {
  switch (instance.problem) {
    case ProblemId::LPO:
      return answer_bit(ProblemId::LPO, lpo_eval(instance.name));
    case ProblemId::ACC: {
      const auto& g = std::get<AccGt>(instance.gt);
      for (Token n = 0; g.m == 0 || n < g.m; ++n) {
        if (!g.excluded || *g.excluded != n) return answer_nat(ProblemId::ACC, n);
      }
      throw NoSolution("ACC instance admits no value");
    }
    case ProblemId::CN: {
      if (const auto* pulled = std::get_if<CqGt>(&instance.gt)) {
        for (std::uint64_t n = 0; n < fuel.max_steps; ++n) {
          Rat q = rational_at(n);
          bool in = true;
          if (pulled->complement_cover) {
            for (const Word& w : *pulled->complement_cover) {
              if (q_basis_interval(w).contains(q)) {
                in = false;
                break;
              }
            }
          } else {
            in = false;
            for (Token m = 0; m < 96 && !in; ++m) {
              in = pulled->embedded_indices->contains(m) && sqrt2_half_convergent(m) == q;
            }
          }
          if (in) return answer_nat(ProblemId::CN, n);
        }
        throw NoSolution("pullback CN instance exhausted the scan");
      }
      const auto& g = std::get<SubsetDescriptor>(instance.gt);
      auto n = g.least();
      if (!n) throw NoSolution("empty CN instance");
      return answer_nat(ProblemId::CN, *n);
    }
    case ProblemId::CQ01: {
      const auto& g = std::get<CqGt>(instance.gt);
      if (g.complement_cover) {
        for (std::uint64_t i = 0; i < fuel.max_steps; ++i) {
          Rat q = rational_at(i);
          bool excluded = false;
          for (const Word& w : *g.complement_cover) {
            if (q_basis_interval(w).contains(q)) {
              excluded = true;
              break;
            }
          }
          if (!excluded) {
            Point pt = Point::q01(q);
            PointName pn = canonical_point_name(pt);
            return {ProblemId::CQ01, pn.name, pt};
          }
        }
        throw NoSolution("CQ cover leaves no rational in range");
      }
      for (Token n = 0; n < 96; ++n) {
        if (g.embedded_indices->contains(n)) {
          Point pt = Point::q01(sqrt2_half_convergent(n));
          PointName pn = canonical_point_name(pt);
          return {ProblemId::CQ01, pn.name, pt};
        }
      }
      throw NoSolution("embedded CQ instance with empty index set");
    }
    case ProblemId::ECP: {
      const auto& g = std::get<EcpGt>(instance.gt);
      if (g.branches.empty()) throw NoSolution("ECP instance without branches");
      std::optional<std::pair<Word, Token>> best;
      for (const auto& b : g.branches) {
        auto n = EcpGt::normalize(b.stem, b.bit);
        if (!best || std::pair(bin_code(n.first), n.second) <
                         std::pair(bin_code(best->first), best->second)) {
          best = n;
        }
      }
      Name stream = Name::from_prefix(best->first, best->second);
      return {ProblemId::ECP, stream, std::nullopt};
    }
    case ProblemId::FSL: {
      const auto& g = std::get<FslGt>(instance.gt);
      auto ls = g.leaves();
      if (ls.empty()) throw NoSolution("FSL tree without leaves");
      return {ProblemId::FSL, encode_sname(ls.front()), std::nullopt};
    }
    case ProblemId::HitSparse: {
      const auto& g = std::get<HsGt>(instance.gt);
      auto n = g.a.least();
      if (!n) throw NoSolution("HitSparse with empty solution set");
      return {ProblemId::HitSparse, EnumName::of_finite_set({*n}).name, std::nullopt};
    }
    case ProblemId::VC: {
      const auto& g = std::get<VcGt>(instance.gt);
      if (g.points.empty()) throw NoSolution("VC instance with empty set");
      Point least = g.points.front();
      for (const Point& p : g.points) {
        if (point_less(p, least)) least = p;
      }
      PointName pn = canonical_point_name(least);
      return {ProblemId::VC, pn.name, least};
    }
  }
  throw Error("unknown problem");
}

Answer answer_nat(ProblemId problem, Token n) {
  return {problem, Name::constant(n), std::nullopt};
}

Answer answer_bit(ProblemId problem, Token bit) {
  return {problem, Name::constant(bit), std::nullopt};
}

Token answer_to_nat(const Answer& a) { return a.stream.at(0); }

}  // namespace overt
