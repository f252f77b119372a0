#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "overt/serialize.hpp"

// Command line surface: deterministic runs with explicit fuel and seed,
// JSON lines on stdout, diagnostics on stderr. Exit codes: 0 success,
// 1 invalid answer or certificate found, 2 usage error, 3 fuel exhausted.

using namespace overt;
using nlohmann::json;

namespace {

struct RunConfig {
  std::uint64_t fuel = 10000;
  std::uint64_t seed = 1;
  std::string format = "json";
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const RunConfig& cfg, const json& j) {
  if (cfg.format == "text") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

int run_vc_ri(const RunConfig& cfg, const std::string& relation, const std::string& instance_path,
              std::uint64_t chain_len) {
  CeRelation rel = relation == "lt"            ? relation_lt()
                   : relation == "proper_prefix" ? relation_proper_prefix()
                                                 : relation_from_json(load_json(relation));
  EnumName overt_name;
  if (!instance_path.empty()) {
    BaireCapSet set = baire_set_from_json(load_json(instance_path));
    overt_name = baire_overt_name(set);
  } else {
    overt_name = EnumName::uniform([](Token) { return true; });
  }
  RoundedIdealName ideal = vc_ri(rel, overt_name, FuelBudget(cfg.fuel));
  auto chain = ideal.chain_prefix(chain_len);
  json j;
  j["relation"] = rel.label;
  j["chain"] = json(chain);
  if (rel.label == "proper_prefix") {
    json words = json::array();
    for (Token c : chain) {
      auto w = word_decode(c);
      words.push_back(w ? json(*w) : json(nullptr));
    }
    j["chain_words"] = words;
  }
  auto decoded = ideal.en.decode(FuelBudget(128));
  j["ideal_fragment"] = json(std::vector<Token>(decoded.begin(), decoded.end()));
  auto check = check_rounded_ideal_fragment(ideal, FuelBudget(cfg.fuel));
  j["fragment_check"] = check.kind == FragmentCheck::Kind::ConsistentSoFar ? "ConsistentSoFar"
                        : check.kind == FragmentCheck::Kind::Violation     ? "Violation"
                                                                           : "UnwitnessedDirectedness";
  emit(cfg, j);
  return 0;
}

int run_vc_solve(const RunConfig& cfg, const std::string& space_arg,
                 const std::string& instance_path) {
  Instance inst = instance_from_json(load_json(instance_path));
  if (inst.problem != ProblemId::VC) throw Error("vc solve expects a VC instance");
  SpaceId id = space_from_name(space_arg);
  Solver solver;
  switch (id) {
    case SpaceId::Q01:
      solver = vc_q01_branch_follower();
      break;
    case SpaceId::Tmin:
      solver = vc_tmin_via_lpo();
      break;
    case SpaceId::Smin:
      solver = vc_smin_via_lpo();
      break;
    default:
      solver = brute_oracle();
      break;
  }
  Answer a = solver(inst, FuelBudget(cfg.fuel));
  Verdict v = verify_answer(inst, a, FuelBudget(cfg.fuel));
  json j = answer_to_json(a);
  j["verdict"] = v.valid ? "Valid" : ("Invalid: " + v.reason);
  emit(cfg, j);
  return v.valid ? 0 : 1;
}

int run_reduce(const RunConfig& cfg, const std::string& mode, const std::string& witness_id,
               const std::string& instance_path, std::uint64_t grid) {
  const auto& registry = witness_registry();
  auto it = registry.find(witness_id);
  if (it == registry.end()) throw Error("unknown witness " + witness_id);
  const ReductionWitness& w = it->second;
  FuelBudget fuel(std::max<std::uint64_t>(cfg.fuel, w.id == "fsl<=vcs0" ? (1u << 17) : 0));

  std::vector<Instance> instances;
  if (!instance_path.empty()) {
    instances.push_back(instance_from_json(load_json(instance_path)));
  } else if (w.id == "accN<=vcTmin" && grid > 0) {
    instances.push_back(encode_instance(ProblemId::ACC, AccGt{std::nullopt, 0, 0}));
    for (Token i = 0; i <= grid; ++i) {
      for (Token jx = 0; jx <= grid; ++jx) {
        instances.push_back(encode_instance(ProblemId::ACC, AccGt{i, jx, 0}));
      }
    }
  } else {
    instances = default_suite(w.id);
  }

  bool all_valid = true;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    Answer a = apply_reduction(w, brute_oracle(), instances[i], fuel);
    json line;
    line["witness"] = w.id;
    line["instance"] = i;
    if (mode == "apply") {
      line["answer"] = answer_to_json(a);
      emit(cfg, line);
      continue;
    }
    Verdict v = verify_answer(instances[i], a, fuel);
    all_valid = all_valid && v.valid;
    line["verdict"] = v.valid ? "Valid" : ("Invalid: " + v.reason);
    emit(cfg, line);
  }
  return all_valid ? 0 : 1;
}

int run_adversary(const RunConfig& cfg, const std::string& which, const std::string& solver_id,
                  std::uint64_t k) {
  AdversaryResult result;
  if (which == "ecp") {
    result = adversary_ecp(ecp_solvers().at(solver_id), k, FuelBudget(cfg.fuel));
  } else if (which == "fsl") {
    result = adversary_fsl(fsl_solvers().at(solver_id), k, FuelBudget(cfg.fuel));
  } else if (which == "cn") {
    WordFunction inner = solver_id == "echo"
                             ? WordFunction("echo", [](const Word& w) { return w; })
                         : solver_id == "bump"
                             ? WordFunction("bump",
                                            [](const Word& w) {
                                              Word out;
                                              for (Token t : w) out.push_back(t + 1);
                                              return out;
                                            })
                             : WordFunction("zeros", [](const Word& w) {
                                 return Word(w.size(), 0);
                               });
    result = adversary_cn_reduction(inner, k, FuelBudget(cfg.fuel));
  } else {
    throw Error("unknown adversary " + which);
  }
  if (!result.certificate) {
    emit(cfg, json{{"result", "inconclusive"}});
    return 3;
  }
  emit(cfg, certificate_to_json(*result.certificate));
  return 1;  // the adversary succeeded
}

int run_choquet(const RunConfig& cfg, const std::string& space_arg, std::uint64_t rounds) {
  SpaceId id = space_from_name(space_arg);
  StrategyII strategy = strategy_from_realizer(game_realizer(id), id);
  ScriptedPlayer player{id, cfg.seed};
  GameState game;
  game.space = id;
  MoveI move = player.first();
  bool all_ok = true;
  for (std::uint64_t round = 0; round < rounds; ++round) {
    auto [next_state, v] = play_round(std::move(game), strategy, move, FuelBudget(cfg.fuel));
    game = std::move(next_state);
    auto report = check_round_invariants(game);
    all_ok = all_ok && report.ok;
    json line;
    line["round"] = round;
    line["U"] = open_set_to_json(game.rounds.back().u);
    line["x"] = point_to_json(game.rounds.back().x);
    line["V"] = open_set_to_json(v);
    line["invariants"] = report.ok ? json::array() : json(report.violations);
    emit(cfg, line);
    move = player.next(game, v, round + 1);
  }
  return all_ok ? 0 : 1;
}

int run_trace(const RunConfig& cfg, const std::string& instance_path, std::uint64_t depth) {
  json spec_json = load_json(instance_path);
  std::string ext_kind = spec_json.value("ext", "all");
  std::optional<Token> avoid;
  if (spec_json.contains("avoid_token")) avoid = spec_json.at("avoid_token").get<Token>();
  Pi02DomainDescriptor lambda{[avoid](const Word& w) -> Token {
    Token n = 0;
    for (Token t : w) {
      if (avoid && t == *avoid) break;
      ++n;
    }
    return n;
  }};
  Token alphabet = spec_json.value("alphabet", Token{2});
  EnumName ext = EnumName::uniform([ext_kind, avoid, alphabet](Token c) {
    auto w = word_decode(c);
    if (!w) return false;
    for (Token t : *w) {
      if (t >= alphabet) return false;
      if (avoid && t == *avoid) return false;
      if (ext_kind == "zeros" && t != 0) return false;
    }
    return true;
  });
  TraceTransducer tr = build_trace(lambda, ext, FuelBudget(cfg.fuel));
  std::function<void(const Word&)> walk = [&](const Word& w) {
    json line;
    line["index_word"] = json(w);
    Word image = tr.forward(w);
    line["image"] = json(image);
    line["productive"] = tr.productive(image);
    emit(cfg, line);
    if (w.size() < depth) {
      for (Token n = 0; n < alphabet; ++n) {
        Word child = w;
        child.push_back(n);
        walk(child);
      }
    }
  };
  walk({});
  return 0;
}

int run_spaces_basis(const RunConfig& cfg, const std::string& space_arg, const std::string& word,
                     std::optional<std::uint64_t> index) {
  SpaceId id = space_from_name(space_arg);
  if (id == SpaceId::Q01 && !word.empty() && word != "eps") {
    Word w;
    for (char c : word) {
      if (c != '0' && c != '1') throw Error("binary word wants characters 0/1");
      w.push_back(c - '0');
    }
    emit(cfg, interval_to_json(q_basis_interval(w)));
    return 0;
  }
  if (id == SpaceId::Q01) {
    emit(cfg, interval_to_json(q_basis_interval({})));
    return 0;
  }
  if (!index) throw Error("non-rational spaces want --index");
  json j;
  j["space"] = space_arg;
  j["index"] = *index;
  j["text"] = space(id).describe(*index);
  emit(cfg, j);
  return 0;
}

int run_problems_verify(const RunConfig& cfg, const std::string& instance_path,
                        const std::string& answer_path) {
  Instance inst = instance_from_json(load_json(instance_path));
  Answer a = answer_from_json(load_json(answer_path));
  Verdict v = verify_answer(inst, a, FuelBudget(cfg.fuel));
  json j;
  j["problem"] = problem_name(inst.problem);
  j["verdict"] = v.valid ? "Valid" : ("Invalid: " + v.reason);
  emit(cfg, j);
  return v.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"overt: exact finite-prefix computation on represented spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("OVERT_FUEL")) cfg.fuel = std::strtoull(env, nullptr, 10);
  if (const char* env = std::getenv("OVERT_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
  app.add_option("--fuel", cfg.fuel, "step budget for semidecisions");
  app.add_option("--seed", cfg.seed, "seed for scripted randomness");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  // vc-ri
  auto* vcri = app.add_subcommand("vc-ri", "overt choice over a rounded-ideal presentation");
  std::string relation = "proper_prefix", instance_path;
  std::uint64_t chain_len = 8;
  vcri->add_option("--relation", relation, "lt, proper_prefix, or a relation file");
  vcri->add_option("--instance", instance_path, "closed-set description (JSON)");
  vcri->add_option("--chain", chain_len, "chain prefix length to print");

  // vc solve
  auto* vcs = app.add_subcommand("vc", "overt choice on a concrete space");
  auto* vcsolve = vcs->add_subcommand("solve", "solve a VC instance");
  std::string vc_space = "q01", vc_instance;
  vcsolve->add_option("--space", vc_space, "q01, tmin, smin, s0, nat, natcof")->required();
  vcsolve->add_option("--instance", vc_instance, "instance file")->required();

  // reduce
  auto* reduce = app.add_subcommand("reduce", "run or verify a reduction witness");
  auto* rapply = reduce->add_subcommand("apply", "apply a witness to instances");
  auto* rverify = reduce->add_subcommand("verify", "verify composed answers");
  std::string witness_id, reduce_instance;
  std::uint64_t grid = 0;
  for (auto* sub : {rapply, rverify}) {
    sub->add_option("--witness", witness_id, "registry id, e.g. accN<=vcTmin")->required();
    sub->add_option("--instance", reduce_instance, "optional single instance file");
    sub->add_option("--grid", grid, "grid bound for the ACC witness");
  }

  // adversary
  auto* adv = app.add_subcommand("adversary", "diagonalize against a solver");
  std::string adv_kind, adv_solver = "always-zero";
  std::uint64_t adv_k = 3;
  adv->add_option("kind", adv_kind, "ecp, fsl or cn")->required();
  adv->add_option("--solver", adv_solver, "solver id (or inner witness for cn)");
  adv->add_option("--k", adv_k, "target count");

  // choquet
  auto* cho = app.add_subcommand("choquet", "play the convergent strong Choquet game");
  auto* chorun = cho->add_subcommand("run", "play scripted rounds");
  std::string cho_space = "q01", cho_player = "random";
  std::uint64_t cho_rounds = 30;
  chorun->add_option("--space", cho_space, "nat, q01 or natcof");
  chorun->add_option("--playerI", cho_player, "script kind (random)");
  chorun->add_option("--rounds", cho_rounds, "rounds to play");

  // trace
  auto* trace = app.add_subcommand("trace", "trace transducers for Pi02 domains");
  auto* tbuild = trace->add_subcommand("build", "tabulate the trace transducer");
  std::string trace_instance;
  std::uint64_t trace_depth = 2;
  tbuild->add_option("--instance", trace_instance, "domain description file")->required();
  tbuild->add_option("--depth", trace_depth, "index-word depth to tabulate");

  // spaces
  auto* spaces_cmd = app.add_subcommand("spaces", "inspect space bases");
  auto* basis = spaces_cmd->add_subcommand("basis", "describe a basic open");
  std::string basis_space = "q01", basis_word;
  std::optional<std::uint64_t> basis_index;
  basis->add_option("--space", basis_space, "space id")->required();
  basis->add_option("--word", basis_word, "binary word for the rational basis");
  std::uint64_t basis_index_raw = 0;
  auto* idx_opt = basis->add_option("--index", basis_index_raw, "basis index");

  // problems
  auto* problems_cmd = app.add_subcommand("problems", "problem instances and answers");
  auto* pverify = problems_cmd->add_subcommand("verify", "verify an answer file");
  std::string p_instance, p_answer;
  pverify->add_option("--instance", p_instance, "instance file")->required();
  pverify->add_option("--answer", p_answer, "answer file")->required();

  // global flags may appear after a subcommand
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      allow_fallthrough(sub);
    }
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*vcri) return run_vc_ri(cfg, relation, instance_path, chain_len);
    if (*vcsolve) return run_vc_solve(cfg, vc_space, vc_instance);
    if (*rapply) return run_reduce(cfg, "apply", witness_id, reduce_instance, grid);
    if (*rverify) return run_reduce(cfg, "verify", witness_id, reduce_instance, grid);
    if (*adv) return run_adversary(cfg, adv_kind, adv_solver, adv_k);
    if (*chorun) return run_choquet(cfg, cho_space, cho_rounds);
    if (*tbuild) return run_trace(cfg, trace_instance, trace_depth);
    if (*basis) {
      if (idx_opt->count() > 0) basis_index = basis_index_raw;
      return run_spaces_basis(cfg, basis_space, basis_word, basis_index);
    }
    if (*pverify) return run_problems_verify(cfg, p_instance, p_answer);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const FuelExhausted& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
