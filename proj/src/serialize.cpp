#include "overt/serialize.hpp"



namespace overt {

using nlohmann::json;

namespace {

std::int64_t to_i64(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("value too large for the JSON surface");
  }
  return static_cast<std::int64_t>(v);
}

json qf2_to_json(const QF2& x) {
  // (p + q sqrt2)/d as [[p, d], [q, d]] rational pairs
  return json::array({json::array({to_i64(x.p), to_i64(x.d)}),
                      json::array({to_i64(x.q), to_i64(x.d)})});
}

json word_to_json(const Word& w) { return json(w); }

Word word_from_json(const json& j) {
  Word w;
  for (const auto& t : j) w.push_back(t.get<Token>());
  return w;
}

}  // namespace

json name_to_json(const Name& name, std::uint64_t prefix_len) {
  json j;
  j["prefix"] = word_to_json(name.prefix(prefix_len));
  if (name.tail()) {
    const Tail& t = *name.tail();
    json tj;
    switch (t.kind) {
      case Tail::Kind::EventuallyZero:
        tj["kind"] = "eventually_zero";
        tj["point"] = t.point;
        break;
      case Tail::Kind::EventuallyConstant:
        tj["kind"] = "eventually_constant";
        tj["constant"] = t.constant;
        tj["point"] = t.point;
        break;
      case Tail::Kind::Periodic:
        tj["kind"] = "periodic";
        tj["period"] = word_to_json(t.period);
        break;
      case Tail::Kind::FiniteStage:
        tj["kind"] = "finite_stage";
        tj["stage"] = t.point;
        break;
    }
    j["tail"] = tj;
  }
  return j;
}

Name name_from_json(const json& j) {
  Word prefix = word_from_json(j.at("prefix"));
  if (!j.contains("tail")) return Name::from_prefix(std::move(prefix));
  const json& tj = j.at("tail");
  std::string kind = tj.at("kind").get<std::string>();
  if (kind == "eventually_zero") {
    return Name::from_tail(Tail::eventually_zero(tj.value("point", prefix.size())),
                           std::move(prefix));
  }
  if (kind == "eventually_constant") {
    return Name::from_tail(
        Tail::eventually_constant(tj.at("constant").get<Token>(), tj.value("point", prefix.size())),
        std::move(prefix));
  }
  if (kind == "periodic") {
    return Name::from_tail(Tail::periodic(word_from_json(tj.at("period"))), std::move(prefix));
  }
  if (kind == "finite_stage") {
    return Name::from_tail(Tail::finite_stage(tj.value("stage", prefix.size())),
                           std::move(prefix));
  }
  throw CodecError("unknown tail kind " + kind);
}

json rat_to_json(const Rat& r) { return json::array({to_i64(r.num), to_i64(r.den)}); }

Rat rat_from_json(const json& j) {
  if (j.is_array()) return Rat(j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>(), 1);
  throw CodecError("rational wants [num, den]");
}

json interval_to_json(const QInterval& interval) {
  json j;
  j["lo"] = qf2_to_json(interval.lo);
  j["hi"] = qf2_to_json(interval.hi);
  j["lo_open"] = interval.lo_open;
  j["hi_open"] = interval.hi_open;
  j["text"] = interval.to_string();
  return j;
}

std::string space_name(SpaceId id) {
  switch (id) {
    case SpaceId::Nat:
      return "nat";
    case SpaceId::Q01:
      return "q01";
    case SpaceId::S0:
      return "s0";
    case SpaceId::Tmin:
      return "tmin";
    case SpaceId::Smin:
      return "smin";
    case SpaceId::NatCofinite:
      return "natcof";
  }
  return "?";
}

SpaceId space_from_name(const std::string& name) {
  if (name == "nat") return SpaceId::Nat;
  if (name == "q01") return SpaceId::Q01;
  if (name == "s0") return SpaceId::S0;
  if (name == "tmin") return SpaceId::Tmin;
  if (name == "smin") return SpaceId::Smin;
  if (name == "natcof") return SpaceId::NatCofinite;
  throw CodecError("unknown space " + name);
}

json point_to_json(const Point& pt) {
  json j;
  j["space"] = space_name(pt.space);
  switch (pt.space) {
    case SpaceId::Nat:
    case SpaceId::NatCofinite:
      j["point"] = std::get<Token>(pt.value);
      break;
    case SpaceId::Q01:
      j["point"] = rat_to_json(std::get<Rat>(pt.value));
      break;
    case SpaceId::S0:
      j["point"] = word_to_json(std::get<Word>(pt.value));
      break;
    case SpaceId::Tmin: {
      const auto& t = std::get<TminPoint>(pt.value);
      j["point"] = t.inf ? json("inf") : json::array({t.a, t.b});
      break;
    }
    case SpaceId::Smin: {
      const auto& s = std::get<SminPoint>(pt.value);
      if (s.kind == SminPoint::Kind::InfInf) {
        j["point"] = "inf,inf";
      } else if (s.kind == SminPoint::Kind::RowInf) {
        j["point"] = json::array({s.a, json("inf")});
      } else {
        j["point"] = json::array({s.a, s.b});
      }
      break;
    }
  }
  return j;
}

namespace {

Point point_payload_from_json(SpaceId id, const json& p);

}  // namespace

Point point_from_json(const json& j) {
  SpaceId id = space_from_name(j.at("space").get<std::string>());
  return point_payload_from_json(id, j.at("point"));
}

namespace {

Point point_payload_from_json(SpaceId id, const json& p) {
  switch (id) {
    case SpaceId::Nat:
      return Point::nat(p.get<Token>());
    case SpaceId::NatCofinite:
      return Point::natcof(p.get<Token>());
    case SpaceId::Q01:
      return Point::q01(rat_from_json(p));
    case SpaceId::S0:
      return Point::s0(word_from_json(p));
    case SpaceId::Tmin:
      if (p.is_string()) return Point::tmin_inf();
      return Point::tmin(p.at(0).get<Token>(), p.at(1).get<Token>());
    case SpaceId::Smin:
      if (p.is_string()) return Point::smin_inf();
      if (p.at(1).is_string()) return Point::smin_row(p.at(0).get<Token>());
      return Point::smin(p.at(0).get<Token>(), p.at(1).get<Token>());
  }
  throw CodecError("bad point");
}

}  // namespace

namespace {

json subset_to_json(const SubsetDescriptor& s) {
  json j;
  j["modulus"] = s.modulus;
  j["residues"] = json(std::vector<Token>(s.residues.begin(), s.residues.end()));
  j["plus"] = json(std::vector<Token>(s.plus.begin(), s.plus.end()));
  j["minus"] = json(std::vector<Token>(s.minus.begin(), s.minus.end()));
  return j;
}

SubsetDescriptor subset_from_json(const json& j) {
  SubsetDescriptor s;
  s.modulus = j.value("modulus", Token{1});
  s.residues.clear();
  if (j.contains("residues")) {
    for (const auto& r : j.at("residues")) s.residues.insert(r.get<Token>());
  } else {
    s.residues = {0};
  }
  if (j.contains("plus")) {
    for (const auto& r : j.at("plus")) s.plus.insert(r.get<Token>());
  }
  if (j.contains("minus")) {
    for (const auto& r : j.at("minus")) s.minus.insert(r.get<Token>());
  }
  return s;
}

std::string bits_to_string(const Word& w) {
  std::string s;
  for (Token b : w) s += static_cast<char>('0' + b);
  return s;
}

Word bits_from_string(const std::string& s) {
  Word w;
  for (char c : s) {
    if (c != '0' && c != '1') throw CodecError("binary word wants characters 0/1");
    w.push_back(c - '0');
  }
  return w;
}

}  // namespace

json instance_to_json(const Instance& instance) {
  json j;
  j["problem"] = problem_name(instance.problem);
  j["schedule"] = "ascending";
  switch (instance.problem) {
    case ProblemId::LPO:
      j["name"] = name_to_json(instance.name);
      break;
    case ProblemId::ACC: {
      const auto& g = std::get<AccGt>(instance.gt);
      json gt;
      gt["excluded"] = g.excluded ? json(*g.excluded) : json(nullptr);
      gt["reveal_at"] = g.reveal_at;
      gt["m"] = g.m;
      j["ground_truth"] = gt;
      break;
    }
    case ProblemId::CN: {
      if (const auto* s = std::get_if<SubsetDescriptor>(&instance.gt)) {
        j["ground_truth"] = subset_to_json(*s);
      }
      break;
    }
    case ProblemId::CQ01: {
      const auto& g = std::get<CqGt>(instance.gt);
      json gt;
      if (g.complement_cover) {
        json cover = json::array();
        for (const Word& w : *g.complement_cover) cover.push_back(bits_to_string(w));
        gt["complement_cover"] = cover;
      } else {
        gt["embedded_indices"] = subset_to_json(*g.embedded_indices);
      }
      j["ground_truth"] = gt;
      break;
    }
    case ProblemId::ECP: {
      const auto& g = std::get<EcpGt>(instance.gt);
      json branches = json::array();
      for (const auto& b : g.branches) {
        branches.push_back(json{{"stem", bits_to_string(b.stem)}, {"bit", b.bit}});
      }
      j["ground_truth"] = json{{"branches", branches}};
      break;
    }
    case ProblemId::FSL: {
      const auto& g = std::get<FslGt>(instance.gt);
      json words = json::array();
      for (const Word& w : g.words) words.push_back(bits_to_string(w));
      j["ground_truth"] = json{{"tree", words}};
      break;
    }
    case ProblemId::HitSparse: {
      const auto& g = std::get<HsGt>(instance.gt);
      j["ground_truth"] = json{{"a", subset_to_json(g.a)},
                               {"f_slope", g.f_slope},
                               {"f_offset", g.f_offset},
                               {"f_prefix", json(g.f_prefix)}};
      break;
    }
    case ProblemId::VC: {
      const auto& g = std::get<VcGt>(instance.gt);
      json pts = json::array();
      for (const Point& p : g.points) pts.push_back(point_to_json(p));
      j["ground_truth"] = json{{"space", space_name(g.space)}, {"points", pts}};
      break;
    }
  }
  return j;
}

Instance instance_from_json(const json& j) {
  std::string problem = j.at("problem").get<std::string>();
  if (problem == "LPO") {
    return {ProblemId::LPO, name_from_json(j.at("name")), std::monostate{}};
  }
  const json& gt = j.at("ground_truth");
  if (problem == "ACC") {
    AccGt g;
    if (gt.contains("excluded") && !gt.at("excluded").is_null()) {
      g.excluded = gt.at("excluded").get<Token>();
    }
    g.reveal_at = gt.value("reveal_at", Token{0});
    g.m = gt.value("m", Token{0});
    return encode_instance(ProblemId::ACC, g);
  }
  if (problem == "CN") return encode_instance(ProblemId::CN, subset_from_json(gt));
  if (problem == "CQ01") {
    CqGt g;
    if (gt.contains("complement_cover")) {
      std::vector<Word> cover;
      for (const auto& w : gt.at("complement_cover")) {
        cover.push_back(bits_from_string(w.get<std::string>()));
      }
      g.complement_cover = std::move(cover);
    } else {
      g.embedded_indices = subset_from_json(gt.at("embedded_indices"));
    }
    return encode_instance(ProblemId::CQ01, g);
  }
  if (problem == "ECP") {
    EcpGt g;
    for (const auto& b : gt.at("branches")) {
      g.branches.push_back(
          {bits_from_string(b.at("stem").get<std::string>()), b.at("bit").get<Token>()});
    }
    return encode_instance(ProblemId::ECP, g);
  }
  if (problem == "FSL") {
    FslGt g;
    for (const auto& w : gt.at("tree")) g.words.push_back(bits_from_string(w.get<std::string>()));
    return encode_instance(ProblemId::FSL, g);
  }
  if (problem == "HitSparse") {
    HsGt g;
    g.a = subset_from_json(gt.at("a"));
    g.f_slope = gt.value("f_slope", Token{1});
    g.f_offset = gt.value("f_offset", Token{0});
    if (gt.contains("f_prefix")) {
      for (const auto& v : gt.at("f_prefix")) g.f_prefix.push_back(v.get<Token>());
    }
    return encode_instance(ProblemId::HitSparse, g);
  }
  if (problem == "VC") {
    VcGt g;
    g.space = space_from_name(gt.at("space").get<std::string>());
    for (const auto& p : gt.at("points")) {
      g.points.push_back(p.is_object() ? point_from_json(p)
                                       : point_payload_from_json(g.space, p));
    }
    return encode_instance(ProblemId::VC, g);
  }
  throw CodecError("unknown problem " + problem);
}

json answer_to_json(const Answer& answer, std::uint64_t prefix_len) {
  json j;
  j["problem"] = problem_name(answer.problem);
  j["stream"] = name_to_json(answer.stream, prefix_len);
  if (answer.point) j["point"] = point_to_json(*answer.point);
  return j;
}

Answer answer_from_json(const json& j) {
  Answer a;
  std::string problem = j.at("problem").get<std::string>();
  for (ProblemId id : {ProblemId::LPO, ProblemId::ACC, ProblemId::CN, ProblemId::CQ01,
                       ProblemId::ECP, ProblemId::FSL, ProblemId::HitSparse, ProblemId::VC}) {
    if (problem_name(id) == problem) a.problem = id;
  }
  a.stream = name_from_json(j.at("stream"));
  if (j.contains("point")) a.point = point_from_json(j.at("point"));
  return a;
}

json certificate_to_json(const FailureCertificate& cert) {
  json j;
  j["kind"] = certificate_kind_name(cert.kind);
  j["count"] = cert.count;
  j["input"] = json(cert.input);
  j["output"] = json(cert.output);
  if (!cert.branches.empty()) {
    json branches = json::array();
    for (const auto& [base, dir] : cert.branches) {
      branches.push_back(json{{"base", bits_to_string(base)}, {"dir", dir}});
    }
    j["branches"] = branches;
  }
  j["detail"] = cert.detail;
  return j;
}

CeRelation relation_from_json(const json& j) {
  if (j.contains("builtin")) {
    std::string which = j.at("builtin").get<std::string>();
    if (which == "lt") return relation_lt();
    if (which == "proper_prefix") return relation_proper_prefix();
    throw CodecError("unknown builtin relation " + which);
  }
  auto pairs = std::make_shared<std::set<std::pair<Token, Token>>>();
  for (const auto& p : j.at("pairs")) {
    pairs->insert({p.at(0).get<Token>(), p.at(1).get<Token>()});
  }
  CeRelation rel;
  rel.label = "table";
  rel.universe_hint = j.value("universe", 64);
  rel.holds = [pairs](Token a, Token b) { return pairs->count({a, b}) != 0; };
  if (auto bad = transitivity_counterexample(rel)) {
    throw CodecError("relation table is not transitive on its universe");
  }
  return rel;
}

json baire_set_to_json(const BaireCapSet& set) {
  json comps = json::array();
  for (const auto& c : set.components) {
    json cj;
    cj["root"] = json(c.root);
    cj["cap"] = c.cap ? json(*c.cap) : json(nullptr);
    comps.push_back(cj);
  }
  return json{{"components", comps}};
}

BaireCapSet baire_set_from_json(const json& j) {
  BaireCapSet set;
  for (const auto& cj : j.at("components")) {
    BaireCapSet::Component c;
    for (const auto& t : cj.at("root")) c.root.push_back(t.get<Token>());
    if (cj.contains("cap") && !cj.at("cap").is_null()) c.cap = cj.at("cap").get<Token>();
    set.components.push_back(std::move(c));
  }
  return set;
}

json open_set_to_json(const OpenSet& o) {
  json parts = json::array();
  const Space& sp = space(o.space);
  for (Token part : o.parts) {
    parts.push_back(json{{"index", part}, {"text", sp.describe(part)}});
  }
  return json{{"space", space_name(o.space)}, {"parts", parts}};
}

}  // namespace overt
