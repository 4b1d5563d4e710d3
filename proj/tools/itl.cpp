#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "itl/constructions.hpp"
#include "itl/error.hpp"
#include "itl/harness.hpp"
#include "itl/random.hpp"

using namespace itl;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

/// Inline JSON, or @path for a file.
Json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw MalformedSpec("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(std::string("invalid JSON: ") + e.what());
  }
}

/// Writes through a temporary file and renames it into place.
void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw MalformedSpec("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw MalformedSpec("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

Json params_json(const Params& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

struct ListCmd {
  std::string format = "json";
};

int run_list(const ListCmd& cmd) {
  Json systems = Json::array();
  for (const auto& id : list_systems()) {
    const auto s = get_system(id);
    systems.push_back({{"id", s.id()},
                       {"relation", s.relation_id()},
                       {"domain", s.domain().describe()},
                       {"codomain", s.codomain().describe()},
                       {"dualized", s.dualized()},
                       {"metadata", s.metadata()}});
  }
  Json conns = Json::array();
  for (const auto& info : connection_registry()) {
    const auto c = build_connection(info.id);
    conns.push_back({{"id", info.id},
                     {"params", params_json(c.params)},
                     {"source", c.source.id()},
                     {"target", c.target.id()},
                     {"map_minus", c.minus.name},
                     {"map_plus", c.plus.name},
                     {"anchor", info.anchor},
                     {"closure", c.closure_note},
                     {"mutant", info.mutant}});
  }
  if (cmd.format == "text") {
    for (const auto& s : systems)
      std::cout << s["id"].get<std::string>() << "  " << s["relation"].get<std::string>() << "  "
                << s["metadata"].get<std::string>() << "\n";
    for (const auto& c : conns)
      std::cout << c["id"].get<std::string>() << "  " << c["source"].get<std::string>() << " ⪯ "
                << c["target"].get<std::string>() << "\n";
    return kOk;
  }
  std::cout << Json{{"systems", systems}, {"connections", conns}}.dump(2) << "\n";
  return kOk;
}

struct CheckRelCmd {
  std::string rel;
  std::string lhs;
  std::string rhs;
  Nat k = 1;
  std::string eps = "1";
  std::string eps_seq;
  std::string quant = "forall";
  Nat horizon = 4096;
  std::string format = "json";
};

Verdict evaluate_relation(const CheckRelCmd& cmd) {
  if (!is_relation_id(cmd.rel)) throw UnknownId(cmd.rel);
  const UpStream f = stream_from_json(read_json_arg(cmd.lhs));
  const Json rhs = read_json_arg(cmd.rhs);
  const EvalPolicy pol{cmd.horizon};
  const std::string& r = cmd.rel;
  const Quant q = r.find("exists") != std::string::npos ? Quant::Exists : Quant::Forall;
  if (r == "forall_k" || r == "exists_k")
    return eval_count_relation(f, set_from_json(rhs), ThresholdSpec::constant(cmd.k), q, pol);
  if (r == "id_forall" || r == "id_exists")
    return eval_count_relation(f, set_from_json(rhs), ThresholdSpec::identity(), q, pol);
  if (r == "bd_forall" || r == "bd_exists")
    return eval_count_relation(f, set_from_json(rhs), ThresholdSpec::bounded(), q, pol);
  if (r == "col_forall_k" || r == "col_exists_k") return eval_colored_relation(f, partition_from_json(rhs), cmd.k, q, pol);
  if (r == "blass_incl") return eval_blass_inclusion(f, stream_from_json(rhs), pol);
  if (r == "leq_star") return eval_leq_star(f, stream_from_json(rhs), pol);
  const MeasurableSet y = measurable_from_json(rhs);
  if (r == "measure_sum") return eval_measure_relation(f, y, MeasureThreshold::sum(), Quant::Forall, pol);
  if (r == "measure_vec") {
    if (cmd.eps_seq.empty()) throw BadParams("measure_vec needs --eps-seq");
    return eval_measure_relation(f, y, MeasureThreshold::vec(eps_from_json(read_json_arg(cmd.eps_seq))),
                                 param_quant({{"quant", cmd.quant}}, "quant", Quant::Forall), pol);
  }
  return eval_measure_relation(f, y, MeasureThreshold::constant(parse_rational(cmd.eps)), q, pol);
}

int run_check_rel(const CheckRelCmd& cmd) {
  const Verdict v = evaluate_relation(cmd);
  if (cmd.format == "text")
    std::cout << v.to_string() << "\n";
  else
    std::cout << to_json(v).dump() << "\n";
  return kOk;
}

struct ProfileCmd {
  std::string f;
  std::string x;
  Nat n = 16;
  std::string format = "json";
};

int run_profile(const ProfileCmd& cmd) {
  const UpStream f = stream_from_json(read_json_arg(cmd.f));
  const OmegaSet x = set_from_json(read_json_arg(cmd.x));
  const auto word = x.to_word();
  if (!word) throw FragmentUnsupported("profiles need an ultimately periodic set");
  const auto p = interval_count_profile(f, *word);
  std::vector<Nat> counts;
  for (Nat i = 0; i < cmd.n; ++i) counts.push_back(x.count_in(f(i), f(i + 1)));
  if (cmd.format == "text") {
    std::cout << profile_to_string(p) << "\n";
    for (Nat c : counts) std::cout << c << ' ';
    std::cout << "\n";
    return kOk;
  }
  std::cout << Json{{"profile", to_json(p)}, {"counts", counts}}.dump() << "\n";
  return kOk;
}

struct VerifyCmd {
  std::string lemma;
  bool all = false;
  bool mutant = false;
  Nat trials = 500;
  std::uint64_t seed = 1;
  Nat horizon = 4096;
  Nat evidence = 25;
  std::string report;
  std::string format = "json";
};

int run_verify(const VerifyCmd& cmd) {
  if (cmd.all == !cmd.lemma.empty()) throw BadParams("give exactly one of --lemma or --all");
  if (cmd.trials == 0) throw BadParams("--trials must be at least 1");
  std::vector<std::string> ids;
  if (cmd.all) {
    for (const auto& info : connection_registry()) ids.push_back(info.id);
  } else {
    const auto [name, params] = parse_id(cmd.lemma);
    build_connection(name, params);  // validates the id before any work
    ids.push_back(cmd.lemma);
  }
  SuiteOptions opt;
  opt.trials = cmd.trials;
  opt.seed = cmd.seed;
  opt.policy = {cmd.horizon, cmd.evidence};
  opt.mutant = cmd.mutant;

  std::vector<SuiteReport> reports;
  Nat fails = 0;
  for (const auto& id : ids) {
    reports.push_back(run_suite(id, opt));
    fails += reports.back().count(Status::Fail);
  }
  Json suites = Json::array();
  for (const auto& r : reports) suites.push_back(r.to_json());
  const Json doc{{"seed", cmd.seed}, {"trials", cmd.trials}, {"mutant", cmd.mutant}, {"fail_total", fails},
                 {"suites", suites}};
  std::string csv = SuiteReport::csv_header() + "\n";
  for (const auto& r : reports) csv += r.csv_row() + "\n";

  if (!cmd.report.empty()) write_atomically(cmd.report, cmd.format == "csv" ? csv : doc.dump(2) + "\n");
  if (cmd.format == "csv") {
    std::cout << csv;
  } else if (cmd.format == "text") {
    for (const auto& r : reports)
      std::cout << r.lemma << ": pass " << r.count(Status::Pass) << ", evidence " << r.count(Status::PassWithEvidence)
                << ", vacuous " << r.count(Status::Vacuous) << ", fail " << r.count(Status::Fail) << ", inconclusive "
                << r.count(Status::Inconclusive) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return fails == 0 ? kOk : kFail;
}

struct DemoCmd {
  std::string id;
  Nat budget = 1000;
  std::uint64_t seed = 1;
};

int run_demo(const DemoCmd& cmd) {
  if (cmd.id == "forall0") {
    const auto v = eval_count_relation(UpStream::identity(), OmegaSet::evens(), ThresholdSpec::constant(0), Quant::Forall);
    const auto s = search_counterexample("forall0_holds", cmd.budget, cmd.seed);
    std::cout << Json{{"demo", "forall0"},
                      {"example", {{"f", "n"}, {"x", "evens"}, {"verdict", to_json(v)}}},
                      {"search", {{"tried", s.tried}, {"found", s.found}, {"witness", s.witness}}}}
                     .dump(2)
              << "\n";
    return s.found ? kFail : kOk;
  }
  if (cmd.id == "col1_pair") {
    const auto [f, g] = interleaved_pair(cmd.seed);
    const auto s = search_counterexample("both_col1", cmd.budget, cmd.seed);
    std::cout << Json{{"demo", "col1_pair"},
                      {"f", to_json(f)},
                      {"g", to_json(g)},
                      {"search", {{"tried", s.tried}, {"found", s.found}, {"witness", s.witness}}}}
                     .dump(2)
              << "\n";
    return s.found ? kFail : kOk;
  }
  if (cmd.id == "measure_sum_degenerate") {
    Nat false_count = 0;
    Json counter = nullptr;
    for (Nat i = 0; i < cmd.budget; ++i) {
      SplitMix rng(mix_seed(cmd.seed, i));
      GenParams gp;
      gp.seed = rng();
      const auto f = generate_ep(gp);
      gp.seed = rng();
      const auto y = std::get<MeasurableSet>(generate({DomainSpec::Kind::Measurables}, gp));
      const auto v = eval_measure_relation(f, y, MeasureThreshold::sum(), Quant::Forall);
      if (v.is_false())
        ++false_count;
      else if (counter.is_null())
        counter = Json{{"f", to_json(f)}, {"y", to_json(y)}, {"verdict", to_json(v)}};
    }
    std::cout << Json{{"demo", "measure_sum_degenerate"},
                      {"instances", cmd.budget},
                      {"false", false_count},
                      {"counterexample", counter}}
                     .dump(2)
              << "\n";
    return false_count == cmd.budget ? kOk : kFail;
  }
  throw UnknownId(cmd.id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval relations and Tukey connection checker"};
  app.require_subcommand(1);

  ListCmd list;
  auto* list_cmd = app.add_subcommand("list", "Registered systems and connections");
  list_cmd->add_option("--format", list.format)->check(CLI::IsMember({"json", "text"}));

  CheckRelCmd rel;
  auto* rel_cmd = app.add_subcommand("check-rel", "Evaluate one relation");
  rel_cmd->add_option("--rel", rel.rel, "Relation id")->required();
  rel_cmd->add_option("--lhs", rel.lhs, "Stream (JSON or @file)")->required();
  rel_cmd->add_option("--rhs", rel.rhs, "Right-hand object (JSON or @file)")->required();
  rel_cmd->add_option("--k", rel.k, "Count threshold");
  rel_cmd->add_option("--eps", rel.eps, "Measure threshold p/q");
  rel_cmd->add_option("--eps-seq", rel.eps_seq, "Threshold sequence for measure_vec");
  rel_cmd->add_option("--quant", rel.quant, "Quantifier for measure_vec")->check(CLI::IsMember({"forall", "exists"}));
  rel_cmd->add_option("--horizon", rel.horizon, "Scan horizon");
  rel_cmd->add_option("--format", rel.format)->check(CLI::IsMember({"json", "text"}));

  ProfileCmd prof;
  auto* prof_cmd = app.add_subcommand("profile", "Interval count profile of a stream against a set");
  prof_cmd->add_option("--f", prof.f, "Stream (JSON or @file)")->required();
  prof_cmd->add_option("--x", prof.x, "Set (JSON or @file)")->required();
  prof_cmd->add_option("--n", prof.n, "Raw counts to print");
  prof_cmd->add_option("--format", prof.format)->check(CLI::IsMember({"json", "text"}));

  VerifyCmd ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run connection suites");
  ver_cmd->add_option("--lemma", ver.lemma, "Connection id, optionally with {key=value}");
  ver_cmd->add_flag("--all", ver.all, "Every registered connection");
  ver_cmd->add_flag("--mutant", ver.mutant, "Use the corrupted maps");
  ver_cmd->add_option("--trials", ver.trials);
  ver_cmd->add_option("--seed", ver.seed);
  ver_cmd->add_option("--horizon", ver.horizon);
  ver_cmd->add_option("--evidence", ver.evidence);
  ver_cmd->add_option("--report", ver.report, "Report path");
  ver_cmd->add_option("--format", ver.format)->check(CLI::IsMember({"json", "csv", "text"}));

  DemoCmd demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run a counterexample demo");
  demo_cmd->add_option("id", demo.id, "forall0 | col1_pair | measure_sum_degenerate")->required();
  demo_cmd->add_option("--budget", demo.budget);
  demo_cmd->add_option("--seed", demo.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list_cmd) return run_list(list);
    if (*rel_cmd) return run_check_rel(rel);
    if (*prof_cmd) return run_profile(prof);
    if (*ver_cmd) return run_verify(ver);
    if (*demo_cmd) return run_demo(demo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
