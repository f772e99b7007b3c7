// Acceptance gate for the checker: twelve end-to-end criteria, one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kop/logic.hpp"
#include "kop/parser.hpp"
#include "kop/properties.hpp"
#include "kop/protocols.hpp"
#include "kop/sysdoc.hpp"
#include "support/cli_helper.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace kop;

namespace {

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  try {
    body();
    std::printf("[PASS] %2d. %s (%.2fs)\n", number, name.c_str(),
                seconds_since(start));
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("[FAIL] %2d. %s: %s\n", number, name.c_str(), e.what());
  }
  std::fflush(stdout);
}

std::vector<AgentId> all_agents(const System& sys) {
  std::vector<AgentId> g;
  for (AgentId i = 1; i <= sys.agent_count(); ++i) g.push_back(i);
  return g;
}

// Four inducing rules over the two-letter alphabet used by the exhaustive
// sweep: act on neither value, on "0", on "1", or on both.
std::function<bool(const std::string&)> mask_rule(int mask) {
  return [mask](const std::string& v) {
    int bit = (v == "1") ? 2 : 1;
    return (mask & bit) != 0;
  };
}

std::vector<Formula> small_pool() {
  Formula p = Formula::prop("p");
  Formula q = Formula::prop("q");
  return {p, q, Formula::conj(p, q), Formula::know(1, p),
          Formula::know(2, Formula::know(1, p))};
}

std::vector<System> evaluation_suite(int random_count, unsigned seed) {
  std::vector<System> out;
  out.push_back(scenario_lamp(true));
  out.push_back(scenario_lamp(false));
  out.push_back(scenario_message(false));
  out.push_back(scenario_message(true));
  out.push_back(scenario_atm({0, 1, 2}));
  out.push_back(scenario_firing_squad(2, 1, ArrivalWindow::parse("0,never")));
  out.push_back(scenario_firing_squad(3, 1, ArrivalWindow::parse("0,1,never")));
  out.push_back(scenario_ordered_chain(3, ArrivalWindow::parse("0,never")));
  out.push_back(scenario_ctm(NetworkTopology::path(3), {0, 1}, {0, 1, 0},
                             CtmMode::ClockedFlood)
                    .system);
  std::mt19937 rng(seed);
  for (int i = 0; i < random_count; ++i)
    out.push_back(koptest::random_system(rng));
  return out;
}

// --- 1, 2: maximum spreading over a line of four agents ------------------

void spreading_flood_timing() {
  auto start = std::chrono::steady_clock::now();
  CtmSystem ctm =
      scenario_ctm(NetworkTopology::path(4), {0, 50, 75, 100, 150},
                   {75, 100, 50, 0}, CtmMode::ClockedFlood, 5);
  const System& sys = ctm.system;
  expect(sys.horizon() == 5, "horizon should be 5");
  expect(sys.run_count() == 625, "five values over four agents");
  Formula knows_max = Formula::know(1, Formula::prop("max_100"));
  auto t = earliest(sys, ctm.designated_run, knows_max);
  expect(t.has_value(), "the root must eventually know the maximum");
  expect(*t == 3, "expected the root to know the maximum at time 3, got " +
                      std::to_string(*t));
  expect(!eval(sys, {ctm.designated_run, 2}, knows_max),
         "the root must still be uncertain at time 2");
  expect(seconds_since(start) < 10.0, "analysis exceeded 10 seconds");
}

void spreading_capped_domain() {
  CtmSystem ctm = scenario_ctm(NetworkTopology::path(4), {0, 50, 75, 100},
                               {75, 100, 50, 0}, CtmMode::ClockedFlood, 5);
  const System& sys = ctm.system;
  Formula max100 = Formula::prop("max_100");
  auto holder = earliest(sys, ctm.designated_run, Formula::know(2, max100));
  expect(holder.has_value() && *holder == 0,
         "holding the top value of the domain means knowing the maximum");
  auto root = earliest(sys, ctm.designated_run, Formula::know(1, max100));
  expect(root.has_value() && *root == 1,
         "the root learns the capped maximum on first contact");
}

// --- 3, 4: classic knowledge gaps ----------------------------------------

void message_uncertainty() {
  System lossy = scenario_message(false);
  Point late{*lossy.run_by_label("delivered"), 2};
  AgentId alice = *lossy.agent_by_name("alice");
  AgentId bob = *lossy.agent_by_name("bob");
  Formula delivered = Formula::prop("delivered");
  expect(eval(lossy, late, delivered), "the message did arrive");
  expect(!eval(lossy, late, Formula::know(alice, delivered)),
         "an unacknowledged sender must not know about delivery");
  expect(eval(lossy, late, Formula::know(bob, delivered)),
         "the receiver knows what it received");

  System reliable = scenario_message(true);
  Point sure{*reliable.run_by_label("delivered"), 2};
  expect(eval(reliable, sure, Formula::know(alice, delivered)),
         "over a reliable channel the sender knows");
}

void lamp_uncertainty() {
  System three = scenario_lamp(true);
  AgentId sw = *three.agent_by_name("switch");
  Formula lit = Formula::prop("lit");
  Point on{*three.run_by_label("on_lit"), 1};
  expect(eval(three, on, lit), "the good bulb lights");
  expect(!eval(three, on, Formula::know(sw, lit)),
         "with a possibly burnt bulb the switch cannot know");
  expect(eval(three, {*three.run_by_label("off"), 1},
              Formula::know(sw, Formula::negate(lit))),
         "off means knowingly dark");

  System two = scenario_lamp(false);
  expect(eval(two, {*two.run_by_label("on_lit"), 1},
              Formula::know(*two.agent_by_name("switch"), lit)),
         "with a reliable bulb the switch knows");
}

// --- 5: knowledge of preconditions, exhaustively --------------------------

void knowledge_of_preconditions() {
  auto start = std::chrono::steady_clock::now();
  std::size_t skeletons = 0;
  long instances = 0;
  long asserted = 0;

  koptest::for_each_exhaustive_skeleton([&](const System& base) {
    ++skeletons;
    for (AgentId agent : {1, 2}) {
      for (int mask = 0; mask < 4; ++mask) {
        System sys =
            koptest::with_induced_action(base, agent, "act", mask_rule(mask));
        for (const Formula& psi : small_pool()) {
          ++instances;
          VerificationReport r = check_kop(sys, agent, Action{"act"}, psi);
          if (r.hypotheses_hold()) {
            ++asserted;
            expect(r.conclusionHolds.has_value() && *r.conclusionHolds,
                   "conclusion failed on an exhaustive instance");
            expect(r.counterexamples.empty(), "spurious counterexample");
          } else {
            expect(!r.conclusionHolds.has_value(),
                   "conclusion asserted despite failed hypotheses");
          }
        }
      }
    }
  });
  expect(skeletons == koptest::exhaustive_skeleton_count(),
         "exhaustive sweep size mismatch");
  expect(asserted > 10000, "too few instances passed the hypotheses: " +
                               std::to_string(asserted));

  std::mt19937 rng(5001);
  for (int trial = 0; trial < 1000; ++trial) {
    koptest::ActionInstance inst = koptest::random_action_instance(rng);
    for (const Formula& psi : koptest::formula_pool(inst.sys)) {
      ++instances;
      VerificationReport r = check_kop(inst.sys, inst.agent, inst.action, psi);
      if (r.hypotheses_hold())
        expect(r.ok(), "conclusion failed on a random instance");
    }
    VerificationReport own = check_kop(inst.sys, inst.agent, inst.action,
                                       Formula::did(inst.agent, inst.action));
    expect(own.hypotheses_hold() && own.ok(),
           "an action must know its own occurrence");
  }
  expect(instances > 0, "no instances checked");
  expect(seconds_since(start) < 60.0, "sweep exceeded 60 seconds");
}

// --- 6: common knowledge of preconditions ---------------------------------

void common_knowledge_of_preconditions() {
  std::vector<Formula> psis{Formula::prop("p"), Formula::prop("q"),
                            Formula::conj(Formula::prop("p"), Formula::prop("q")),
                            Formula::know(1, Formula::prop("p"))};
  ActionAssignment joint{{{1, Action{"act1"}}, {2, Action{"act2"}}}};
  long asserted = 0;

  koptest::for_each_exhaustive_skeleton([&](const System& base) {
    for (int m1 = 0; m1 < 4; ++m1) {
      for (int m2 = 0; m2 < 4; ++m2) {
        System sys = koptest::with_induced_action(
            koptest::with_induced_action(base, 1, "act1", mask_rule(m1)), 2,
            "act2", mask_rule(m2));
        if (!is_simultaneous(sys, joint)) continue;
        if (!is_conscious(sys, 1, Action{"act1"}) ||
            !is_conscious(sys, 2, Action{"act2"}))
          continue;
        for (const Formula& psi : psis) {
          VerificationReport r = check_ckop(sys, {1, 2}, joint, 1, psi);
          if (r.hypotheses_hold()) {
            ++asserted;
            expect(r.ok(), "group conclusion failed on an exhaustive instance");
          }
        }
      }
    }
  });
  expect(asserted > 1000, "too few group instances passed the hypotheses: " +
                              std::to_string(asserted));

  std::mt19937 rng(6001);
  for (int trial = 0; trial < 1000; ++trial) {
    koptest::SimultaneousInstance inst = koptest::random_simultaneous(rng);
    VerificationReport r =
        check_ckop(inst.sys, inst.group, inst.assignment, inst.group.front(),
                   Formula::prop("marked"));
    expect(r.hypotheses_hold(), "constructed instance must satisfy hypotheses");
    expect(r.ok(), "group conclusion failed on a random instance");
  }
}

// --- 7: nested knowledge down ordered chains ------------------------------

void nested_knowledge_down_chains() {
  for (int k : {1, 2, 3}) {
    for (const char* window : {"0", "0,never", "0,2,never", "1,never"}) {
      for (int delay : {1, 2}) {
        System chain =
            scenario_ordered_chain(k, ArrivalWindow::parse(window), delay);
        ActionAssignment seq;
        for (AgentId j = 1; j <= k; ++j)
          seq.pairs.emplace_back(j, Action{"a" + std::to_string(j)});
        VerificationReport r =
            check_nkop(chain, seq, Formula::prop("psi_input"));
        std::ostringstream tag;
        tag << " (k=" << k << ", window=" << window << ", delay=" << delay
            << ")";
        expect(r.hypotheses_hold(), "chain hypotheses failed" + tag.str());
        expect(r.conclusionHolds.has_value() && *r.conclusionHolds,
               "nested conclusion failed" + tag.str());
        expect(r.subchecks_hold(), "support facts failed" + tag.str());
        expect(r.counterexamples.empty(), "spurious counterexample" + tag.str());

        // Longer horizons must not disturb any of it.
        System longer = scenario_ordered_chain(
            k, ArrivalWindow::parse(window), delay, chain.horizon() + 1);
        expect(check_nkop(longer, seq, Formula::prop("psi_input")).ok(),
               "verdict changed on a longer horizon" + tag.str());
      }
    }
  }
}

// --- 8: firing together under common knowledge ----------------------------

void squad_fires_on_common_knowledge() {
  for (int n : {2, 3}) {
    System fs = scenario_firing_squad(n, 1, ArrivalWindow::parse("0,1,never"));
    ActionAssignment fires;
    for (AgentId i = 1; i <= n; ++i)
      fires.pairs.emplace_back(i, Action{"fire_" + std::to_string(i)});
    expect(is_simultaneous(fs, fires), "squad must fire in lockstep");

    VerificationReport r =
        check_ckop(fs, all_agents(fs), fires, 1, Formula::prop("psi_go"));
    expect(r.hypotheses_hold() && r.ok(), "squad verdict failed");

    Evaluator ev(fs);
    Formula go = Formula::prop("psi_go");
    for (int idx = 0; idx < fs.point_count(); ++idx) {
      Point p = fs.point_at(idx);
      bool fired = does(fs, p, 1, fires.pairs[0].second);
      if (fired)
        expect(ev.eval_common(p, all_agents(fs), go),
               "fired without common knowledge of the go");
    }
    for (int run = 0; run < fs.run_count(); ++run) {
      auto fire_time =
          earliest(fs, run, Formula::does(1, fires.pairs[0].second));
      auto common_time = earliest(fs, run, Formula::common(all_agents(fs), go));
      expect(fire_time == common_time,
             "squad must fire exactly when the go becomes common knowledge");
    }
  }

  // Same verdict through the command line.
  std::string path = koptest::temp_path("squad.sys");
  expect(koptest::run_cli("scenario firing-squad --n 2 --window 0,never --out " +
                          path)
                 .exit_code == 0,
         "squad generation failed");
  auto verdict = koptest::run_cli(
      "verify " + path +
      " ckop --psi psi_go --group 1,2 --actions fire_1@1,fire_2@2");
  expect(verdict.exit_code == 0,
         "command-line verification should exit 0, got " +
             std::to_string(verdict.exit_code));
  std::remove(path.c_str());
}

// --- 9: the knowledge operators form an S5 system -------------------------

void knowledge_is_s5() {
  for (const System& sys : evaluation_suite(200, 9001)) {
    Evaluator ev(sys);
    for (const Formula& f : koptest::formula_pool(sys)) {
      for (AgentId i = 1; i <= sys.agent_count(); ++i) {
        Formula kf = Formula::know(i, f);
        expect(ev.valid(Formula::implies(kf, f)), "knowledge must be true");
        expect(ev.valid(Formula::implies(kf, Formula::know(i, kf))),
               "knowledge must be positively introspective");
        expect(ev.valid(Formula::implies(
                   Formula::negate(kf), Formula::know(i, Formula::negate(kf)))),
               "knowledge must be negatively introspective");
      }
    }
  }

  std::vector<Formula> pool = small_pool();
  koptest::for_each_exhaustive_skeleton([&](const System& sys) {
    Evaluator ev(sys);
    for (const Formula& f : pool) {
      for (AgentId i : {1, 2}) {
        Formula kf = Formula::know(i, f);
        expect(ev.valid(Formula::implies(kf, f)), "truth axiom failed");
        expect(ev.valid(Formula::implies(kf, Formula::know(i, kf))),
               "positive introspection failed");
        expect(ev.valid(Formula::implies(
                   Formula::negate(kf), Formula::know(i, Formula::negate(kf)))),
               "negative introspection failed");
      }
    }
  });
}

// --- 10: iterated everyone-knows converges --------------------------------

void nesting_converges() {
  for (const System& sys : evaluation_suite(100, 10001)) {
    Evaluator ev(sys);
    std::vector<AgentId> group = all_agents(sys);
    const int N = sys.point_count();
    for (const Formula& f : koptest::formula_pool(sys)) {
      auto common = ev.common_extension(group, f);
      expect(common == ev.nested_everyone_extension(group, f, N),
             "nesting to the point count must reach common knowledge");
      expect(common == ev.nested_everyone_extension(group, f, N + 1),
             "one more level must change nothing");
    }
  }

  std::vector<Formula> pool = small_pool();
  koptest::for_each_exhaustive_skeleton([&](const System& sys) {
    Evaluator ev(sys);
    const int N = sys.point_count();
    for (const Formula& f : pool) {
      for (const std::vector<AgentId>& group :
           {std::vector<AgentId>{1}, std::vector<AgentId>{2},
            std::vector<AgentId>{1, 2}}) {
        auto common = ev.common_extension(group, f);
        expect(common == ev.nested_everyone_extension(group, f, N) &&
                   common == ev.nested_everyone_extension(group, f, N + 1),
               "fixed point missed on an exhaustive skeleton");
      }
    }
  });
}

// --- 11: agreement with an independent evaluator ---------------------------

void oracle_agreement() {
  auto crosscheck = [](const System& sys) {
    Evaluator ev(sys);
    std::vector<Formula> pool = koptest::formula_pool(sys);
    pool.push_back(Formula::common({1}, pool[0]));
    if (sys.agent_count() >= 2)
      pool.push_back(Formula::common({1, 2}, pool[0]));
    for (const Formula& f : pool)
      expect(ev.extension(f) == koptest::oracle_extension(sys, f),
             "evaluator disagrees with the oracle on " + f.to_string());
  };

  for (const System& sys : evaluation_suite(100, 11001)) crosscheck(sys);

  std::vector<Formula> pool = small_pool();
  pool.push_back(Formula::common({1, 2}, Formula::prop("p")));
  pool.push_back(Formula::did(1, Action{"act"}));
  koptest::for_each_exhaustive_skeleton([&](const System& sys) {
    Evaluator ev(sys);
    for (const Formula& f : pool)
      expect(ev.extension(f) == koptest::oracle_extension(sys, f),
             "evaluator disagrees with the oracle on a skeleton");
  });
}

// --- 12: command-line round trips and exit codes ---------------------------

void cli_round_trip() {
  std::string first = koptest::temp_path("chain_a.sys");
  std::string second = koptest::temp_path("chain_b.sys");
  std::string cmd = "scenario chain --k 2 --window 0,never --out ";
  expect(koptest::run_cli(cmd + first).exit_code == 0, "generation failed");
  expect(koptest::run_cli(cmd + second).exit_code == 0, "generation failed");

  std::string bytes = koptest::slurp(first);
  expect(!bytes.empty(), "no document written");
  expect(bytes == koptest::slurp(second), "generation is not deterministic");

  System sys = load_system_file(first);
  expect(render_system(sys) == bytes, "loading and re-rendering changed bytes");
  System back = parse_system(render_system(sys));
  expect(render_system(back) == bytes, "second round trip changed bytes");

  expect(koptest::run_cli("eval " + first + " psi_input --run trigger_0 --time 1")
                 .exit_code == 0,
         "a true formula should exit 0");
  expect(koptest::run_cli("eval " + first + " psi_input --run trigger_0 --time 0")
                 .exit_code == 1,
         "a false formula should exit 1");
  expect(koptest::run_cli("verify " + first +
                          " ckop --psi psi_input --group 1,2 --actions a1@1,a2@2")
                 .exit_code == 2,
         "failed hypotheses should exit 2");
  expect(koptest::run_cli("eval " + first + " \"p &\" --run 0 --time 0")
                 .exit_code == 3,
         "malformed input should exit 3");
  expect(koptest::run_cli(
             "--budget 3 scenario ctm --n 3 --domain 0,1 --designated 0,0,0")
                 .exit_code == 4,
         "an exhausted budget should exit 4");

  std::remove(first.c_str());
  std::remove(second.c_str());
}

} // namespace

int main() {
  criterion(1, "a four-agent line learns its maximum at the expected step",
            spreading_flood_timing);
  criterion(2, "holding the domain's top value is immediate knowledge",
            spreading_capped_domain);
  criterion(3, "senders cannot know unacknowledged deliveries",
            message_uncertainty);
  criterion(4, "the switch knows the light only with a reliable bulb",
            lamp_uncertainty);
  criterion(5, "conscious actions always know their necessary conditions",
            knowledge_of_preconditions);
  criterion(6, "simultaneous joint actions yield common knowledge",
            common_knowledge_of_preconditions);
  criterion(7, "ordered relays nest knowledge down the chain",
            nested_knowledge_down_chains);
  criterion(8, "squads fire exactly on common knowledge of the go",
            squad_fires_on_common_knowledge);
  criterion(9, "knowledge validates the S5 axioms on every suite system",
            knowledge_is_s5);
  criterion(10, "iterated everyone-knows converges to common knowledge",
            nesting_converges);
  criterion(11, "the evaluator matches an independent naive evaluator",
            oracle_agreement);
  criterion(12, "the command line round-trips documents and exit codes",
            cli_round_trip);

  if (g_failures == 0)
    std::printf("acceptance: all 12 criteria passed\n");
  else
    std::printf("acceptance: %d of 12 criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
