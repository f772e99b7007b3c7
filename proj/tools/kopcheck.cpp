// Command-line front end: evaluate formulas, check semantic predicates,
// verify the precondition-knowledge theorems, and emit example systems.
//
// Exit codes: 0 holds / success, 1 formula false or conclusion fails,
// 2 theorem hypotheses unsatisfied, 3 malformed input, 4 budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kop/errors.hpp"
#include "kop/logic.hpp"
#include "kop/parser.hpp"
#include "kop/properties.hpp"
#include "kop/protocols.hpp"
#include "kop/report_io.hpp"
#include "kop/sysdoc.hpp"

namespace {

using namespace kop;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const std::string& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw input_error("bad " + what + " entry: \"" + tok + "\"");
    }
  }
  return out;
}

void warn_boundary(const System& sys) {
  for (int r = 0; r < sys.run_count(); ++r)
    for (const HistoryEvent& e :
         sys.run(r).states[sys.horizon()].env.history)
      if (e.time >= sys.horizon() - 1) {
        std::cerr << "warning: history event \"" << e.action.label
                  << "\" at time " << e.time << " touches the horizon "
                  << sys.horizon()
                  << "; actions this late are invisible to does/did\n";
        return;
      }
}

System load(const std::string& path) {
  System sys = load_system_file(path);
  warn_boundary(sys);
  return sys;
}

int resolve_run(const System& sys, const std::string& token) {
  if (auto r = sys.run_by_label(token)) return *r;
  if (!token.empty() &&
      token.find_first_not_of("0123456789") == std::string::npos) {
    int r = std::stoi(token);
    if (r >= 0 && r < sys.run_count()) return r;
    throw input_error("run index out of range: " + token);
  }
  throw input_error("unknown run: \"" + token + "\"");
}

AgentId agent_of(const System& sys, const std::string& token) {
  AgentId i = resolve_agent(token, sys.agent_names());
  sys.require_agent(i);
  return i;
}

ActionAssignment parse_assignment(const System& sys, const std::string& text) {
  ActionAssignment out;
  for (const std::string& tok : split(text, ',')) {
    auto at = tok.rfind('@');
    if (at == std::string::npos || at == 0 || at + 1 == tok.size())
      throw input_error("expected action@agent, got \"" + tok + "\"");
    out.pairs.emplace_back(agent_of(sys, tok.substr(at + 1)),
                           Action{tok.substr(0, at)});
  }
  out.validate(sys);
  return out;
}

void emit_report(const VerificationReport& report, const System& sys,
                 const std::string& report_path) {
  std::cout << render_report_text(report, &sys);
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw input_error("cannot write report file: " + report_path);
    out << render_report_json(report);
  }
}

struct EvalArgs {
  std::string file;
  std::string formula;
  std::string run;
  int time = 0;
  bool extension = false;
};

int run_eval(const EvalArgs& args, const std::string& report_path) {
  (void)report_path;
  System sys = load(args.file);
  Formula f = parse_formula(args.formula, sys.agent_names());
  Point p{resolve_run(sys, args.run), args.time};
  sys.require_point(p);
  Evaluator ev(sys);
  std::vector<bool> ext = ev.extension(f);
  bool value = ext[sys.point_index(p)];
  std::cout << (value ? "T" : "F") << "\n";
  if (args.extension)
    for (int idx = 0; idx < sys.point_count(); ++idx)
      if (ext[idx]) {
        Point q = sys.point_at(idx);
        std::cout << q.run << " " << q.time << "\n";
      }
  return value ? 0 : 1;
}

struct CheckArgs {
  std::string file;
  std::string predicate;
  std::string psi;
  std::string agent;
  std::string action;
  std::string actions;
  std::string run;
};

void need(bool present, const std::string& flag, const std::string& predicate) {
  if (!present)
    throw input_error("predicate " + predicate + " requires " + flag);
}

int run_check(const CheckArgs& args, const std::string& report_path) {
  System sys = load(args.file);
  VerificationReport report;
  report.theorem = TheoremTag::Predicate;

  auto psi = [&]() {
    need(!args.psi.empty(), "--psi", args.predicate);
    return parse_formula(args.psi, sys.agent_names());
  };
  auto agent = [&]() {
    need(!args.agent.empty(), "--agent", args.predicate);
    return agent_of(sys, args.agent);
  };
  auto action = [&]() {
    need(!args.action.empty(), "--action", args.predicate);
    return Action{args.action};
  };
  auto assignment = [&]() {
    need(!args.actions.empty(), "--actions", args.predicate);
    return parse_assignment(sys, args.actions);
  };

  bool holds = false;
  if (args.predicate == "necessary") {
    Formula f = psi();
    AgentId i = agent();
    Action a = action();
    report.note = "necessary condition for does[" + sys.agent_name(i) + "](" +
                  a.label + ")";
    if (auto v = necessary_violation(sys, f, i, a))
      report.counterexamples.push_back(*v);
  } else if (args.predicate == "conscious") {
    AgentId i = agent();
    Action a = action();
    report.note = "conscious performance of " + a.label + " by " +
                  sys.agent_name(i);
    if (auto v = conscious_violation(sys, i, a)) {
      report.counterexamples.push_back(v->first);
      report.counterexamples.push_back(v->second);
    }
  } else if (args.predicate == "local") {
    AgentId i = agent();
    Formula f = psi();
    report.note = "locality of psi for " + sys.agent_name(i);
    if (auto v = local_violation(sys, i, f))
      report.counterexamples.push_back(*v);
  } else if (args.predicate == "stable") {
    Formula f = psi();
    report.note = "stability of psi";
    if (auto v = stable_violation(sys, f)) {
      report.counterexamples.push_back(v->first);
      report.counterexamples.push_back(v->second);
    }
  } else if (args.predicate == "recalls") {
    AgentId i = agent();
    Formula f = psi();
    report.note = "recall of psi by " + sys.agent_name(i);
    if (auto v = stable_violation(sys, Formula::know(i, f))) {
      report.counterexamples.push_back(v->first);
      report.counterexamples.push_back(v->second);
    }
  } else if (args.predicate == "simultaneous") {
    ActionAssignment a = assignment();
    report.note = "simultaneity of the assigned actions";
    if (auto v = simultaneous_violation(sys, a))
      report.counterexamples.push_back(*v);
  } else if (args.predicate == "ordered") {
    ActionAssignment a = assignment();
    report.note = "ordering of the assigned actions";
    if (auto v = ordered_violation(sys, a))
      report.counterexamples.push_back(*v);
  } else if (args.predicate == "earliest") {
    need(!args.run.empty(), "--run", args.predicate);
    Formula f = psi();
    int r = resolve_run(sys, args.run);
    auto t = earliest(sys, r, f);
    if (t)
      std::cout << "earliest: " << *t << "\n";
    else
      std::cout << "earliest: never\n";
    return t ? 0 : 1;
  } else {
    throw input_error("unknown predicate: " + args.predicate);
  }

  holds = report.counterexamples.empty();
  report.conclusionHolds = holds;
  emit_report(report, sys, report_path);
  return holds ? 0 : 1;
}

struct VerifyArgs {
  std::string file;
  std::string theorem;
  std::string psi;
  std::string agent;
  std::string action;
  std::string actions;
  std::string group;
  std::string seq;
};

int run_verify(const VerifyArgs& args, const std::string& report_path) {
  System sys = load(args.file);
  if (args.psi.empty())
    throw input_error("verify requires --psi");
  Formula psi = parse_formula(args.psi, sys.agent_names());

  VerificationReport report;
  if (args.theorem == "kop") {
    if (args.agent.empty() || args.action.empty())
      throw input_error("kop requires --agent and --action");
    report = check_kop(sys, agent_of(sys, args.agent), Action{args.action}, psi);
  } else if (args.theorem == "ckop") {
    if (args.group.empty() || args.actions.empty())
      throw input_error("ckop requires --group and --actions");
    std::vector<AgentId> group;
    for (const std::string& tok : split(args.group, ','))
      group.push_back(agent_of(sys, tok));
    ActionAssignment assignment = parse_assignment(sys, args.actions);
    AgentId i = args.agent.empty() ? group.front() : agent_of(sys, args.agent);
    report = check_ckop(sys, group, assignment, i, psi);
  } else if (args.theorem == "nkop") {
    if (args.seq.empty()) throw input_error("nkop requires --seq");
    report = check_nkop(sys, parse_assignment(sys, args.seq), psi);
  } else {
    throw input_error("unknown theorem: " + args.theorem);
  }

  emit_report(report, sys, report_path);
  if (!report.hypotheses_hold()) return 2;
  return report.ok() ? 0 : 1;
}

struct ScenarioArgs {
  std::string name;
  std::string out;
  int n = 0;
  int k = 0;
  int delay = 1;
  int horizon = -1;
  std::string window = "0,never";
  std::string mode = "clocked";
  std::string domain;
  std::string designated;
  std::string balances = "-50,0,100";
  bool lossy = false;
  bool no_burnt = false;
};

int run_scenario(const ScenarioArgs& args, std::size_t budget) {
  GenOptions options;
  options.run_budget = budget;

  System sys = scenario_lamp();
  int designated = -1;

  if (args.name == "lamp") {
    sys = scenario_lamp(!args.no_burnt);
  } else if (args.name == "message") {
    sys = scenario_message(!args.lossy);
  } else if (args.name == "atm") {
    sys = scenario_atm(int_list(args.balances, "balance"),
                       args.horizon < 0 ? 3 : args.horizon);
  } else if (args.name == "ctm") {
    CtmMode mode;
    if (args.mode == "clocked") mode = CtmMode::ClockedFlood;
    else if (args.mode == "bottom-up" || args.mode == "bottomup")
      mode = CtmMode::BottomUp;
    else throw input_error("unknown ctm mode: " + args.mode);
    if (args.domain.empty() || args.designated.empty())
      throw input_error("ctm requires --domain and --designated");
    int n = args.n > 0 ? args.n : 4;
    CtmSystem ctm = scenario_ctm(NetworkTopology::path(n),
                                 int_list(args.domain, "domain"),
                                 int_list(args.designated, "designated"), mode,
                                 args.horizon, options);
    sys = std::move(ctm.system);
    designated = ctm.designated_run;
  } else if (args.name == "firing-squad") {
    int n = args.n > 0 ? args.n : 2;
    sys = scenario_firing_squad(n, args.delay, ArrivalWindow::parse(args.window),
                                args.horizon, options);
  } else if (args.name == "chain") {
    int k = args.k > 0 ? args.k : 3;
    sys = scenario_ordered_chain(k, ArrivalWindow::parse(args.window),
                                 args.delay, args.horizon, options);
  } else {
    throw input_error("unknown scenario: " + args.name);
  }

  warn_boundary(sys);
  std::cout << "runs: " << sys.run_count() << "\n";
  std::cout << "points: " << sys.point_count() << "\n";
  if (designated >= 0)
    std::cout << "designated run: " << designated << " "
              << sys.run(designated).label << "\n";
  if (!args.out.empty()) {
    write_system_file(sys, args.out);
    std::cout << "written: " << args.out << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"model checker for knowledge-based precondition analysis"};
  app.require_subcommand(1);

  std::string report_path;
  long seed = 0;
  std::size_t budget = 100000;
  app.add_option("--report", report_path, "write a JSON report to this file");
  app.add_option("--seed", seed, "random seed (reserved; commands are deterministic)");
  app.add_option("--budget", budget, "run-generation budget");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a point");
  eval_cmd->fallthrough();
  eval_cmd->add_option("file", eval_args.file, "system document")->required();
  eval_cmd->add_option("formula", eval_args.formula, "formula text")->required();
  eval_cmd->add_option("--run", eval_args.run, "run index or label")->required();
  eval_cmd->add_option("--time", eval_args.time, "time 0..horizon")->required();
  eval_cmd->add_flag("--extension", eval_args.extension,
                     "also list every point where the formula holds");

  CheckArgs check_args;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "check a semantic predicate (necessary, conscious, local, "
               "stable, recalls, simultaneous, ordered, earliest)");
  check_cmd->fallthrough();
  check_cmd->add_option("file", check_args.file, "system document")->required();
  check_cmd->add_option("predicate", check_args.predicate, "predicate name")
      ->required();
  check_cmd->add_option("--psi", check_args.psi, "formula argument");
  check_cmd->add_option("--agent", check_args.agent, "agent index or name");
  check_cmd->add_option("--action", check_args.action, "action label");
  check_cmd->add_option("--actions", check_args.actions,
                        "comma list of action@agent");
  check_cmd->add_option("--run", check_args.run, "run index or label");

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "verify a theorem instance (kop, ckop, nkop)");
  verify_cmd->fallthrough();
  verify_cmd->add_option("file", verify_args.file, "system document")->required();
  verify_cmd->add_option("theorem", verify_args.theorem, "kop | ckop | nkop")
      ->required();
  verify_cmd->add_option("--psi", verify_args.psi, "precondition formula");
  verify_cmd->add_option("--agent", verify_args.agent, "agent index or name");
  verify_cmd->add_option("--action", verify_args.action, "action label");
  verify_cmd->add_option("--actions", verify_args.actions,
                         "comma list of action@agent");
  verify_cmd->add_option("--group", verify_args.group, "comma list of agents");
  verify_cmd->add_option("--seq", verify_args.seq,
                         "comma list of action@agent, in order");

  ScenarioArgs scenario_args;
  CLI::App* scenario_cmd = app.add_subcommand(
      "scenario", "generate a built-in system (lamp, message, atm, ctm, "
                  "firing-squad, chain)");
  scenario_cmd->fallthrough();
  scenario_cmd->add_option("name", scenario_args.name, "scenario name")
      ->required();
  scenario_cmd->add_option("--out", scenario_args.out, "output document path");
  scenario_cmd->add_option("--n", scenario_args.n, "agent count");
  scenario_cmd->add_option("--k", scenario_args.k, "chain length");
  scenario_cmd->add_option("--delay", scenario_args.delay, "relay delay");
  scenario_cmd->add_option("--horizon", scenario_args.horizon, "horizon");
  scenario_cmd->add_option("--window", scenario_args.window,
                           "arrival window, e.g. 0,1,never");
  scenario_cmd->add_option("--mode", scenario_args.mode,
                           "ctm mode: clocked | bottom-up");
  scenario_cmd->add_option("--domain", scenario_args.domain,
                           "ctm value domain, comma list");
  scenario_cmd->add_option("--designated", scenario_args.designated,
                           "ctm designated initial values, comma list");
  scenario_cmd->add_option("--balances", scenario_args.balances,
                           "atm balance domain, comma list");
  scenario_cmd->add_flag("--lossy", scenario_args.lossy,
                         "message: channel may drop the message");
  scenario_cmd->add_flag("--no-burnt", scenario_args.no_burnt,
                         "lamp: drop the burnt-bulb run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(eval_cmd)) return run_eval(eval_args, report_path);
    if (app.got_subcommand(check_cmd)) return run_check(check_args, report_path);
    if (app.got_subcommand(verify_cmd)) return run_verify(verify_args, report_path);
    if (app.got_subcommand(scenario_cmd)) return run_scenario(scenario_args, budget);
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
