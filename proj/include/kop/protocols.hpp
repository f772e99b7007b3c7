#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kop/kernel.hpp"

namespace kop {

// Undirected connection graph over agents 1..n with per-edge delivery
// delays (in steps, at least 1).
struct NetworkTopology {
  int agent_count = 0;
  std::vector<std::pair<AgentId, AgentId>> edges;
  std::vector<int> delays; // parallel to edges; empty means all 1

  static NetworkTopology path(int n);

  void validate() const;
  int delay(AgentId a, AgentId b) const;
  std::vector<AgentId> neighbors(AgentId a) const;
  // Next hop from each agent toward root along a spanning tree; requires
  // the topology to be a connected tree. parent[root] == 0.
  std::vector<AgentId> parents_toward(AgentId root) const;
  std::vector<int> distances_from(AgentId a) const;
};

// Times at which an external input may arrive, plus optionally the branch
// where it never arrives.
struct ArrivalWindow {
  std::vector<int> times;
  bool include_never = false;

  // "0,2,never" and friends
  static ArrivalWindow parse(const std::string& text);
  std::string to_string() const;
  void validate() const;
};

struct GenOptions {
  std::size_t run_budget = 100000;
  bool deduplicate = false;
};

struct OutMessage {
  AgentId to = 0;
  std::string payload;
};

struct AgentMove {
  std::optional<Action> action;
  std::vector<OutMessage> sends;
};

// Deterministic per-agent program: what an agent does and sends is a
// function of its local state alone.
struct Protocol {
  std::function<AgentMove(AgentId, const LocalState&)> step;
};

struct EnvSnapshot {
  std::string payload;
  std::vector<LocalState> locals;
};

// Nondeterminism and state update live in the context. env_choices must
// return a non-empty list; its order fixes the enumeration order of runs.
struct Context {
  std::vector<GlobalState> initial_states; // histories must be empty
  std::function<std::vector<std::string>(int time, const GlobalState&)> env_choices;
  std::function<EnvSnapshot(const GlobalState&, const std::vector<AgentMove>&,
                            const std::string& env_move, int time)>
      transition;
};

// Unfolds every resolution of the context's choices into a run of length
// horizon+1, recording each agent move in the environment history one step
// after it is taken. Runs come out sorted by their branch-choice sequence.
// Throws resource_error when the frontier exceeds options.run_budget.
System generate_system(const Protocol& protocol, const Context& context,
                       int horizon, const GenOptions& options = {});

// --- Scenario builders -----------------------------------------------

// Value-spreading network: every agent starts with a value from `domain`
// and the system computes the maximum. Props max_<v> say "the maximum of
// this run's initial values is v". In every run agent 1 performs
// print_<v> at the first moment it knows the maximum is v.
enum class CtmMode {
  BottomUp,     // convergecast along the tree toward agent 1
  ClockedFlood, // every agent forwards improvements toward agent 1
};

struct CtmSystem {
  System system;
  int designated_run = -1; // run whose initial values equal `designated`
};

CtmSystem scenario_ctm(const NetworkTopology& topology, std::vector<int> domain,
                       const std::vector<int>& designated, CtmMode mode,
                       int horizon = -1, const GenOptions& options = {});

// n agents on a path; an external "go" reaches agent 1 at a window time
// (or never) and is relayed hop by hop. Every agent performs fire_<i> at
// the first moment the group commonly knows psi_go ("a go was received").
System scenario_firing_squad(int n, int relay_delay, const ArrivalWindow& window,
                             int horizon = -1, const GenOptions& options = {});

// One switch agent, horizon 1. Runs: switch ON with the lamp lighting,
// optionally ON with a burnt-out bulb, and OFF. Prop: lit.
System scenario_lamp(bool include_burnt = true);

// Alice may send Bob a message at time 1; delivery takes one step. In the
// lossy variant the channel may drop it. Prop: delivered.
System scenario_message(bool reliable);

// Single-agent teller machine: the bank's response at time 0 reveals the
// balance at time 1 (or fails). The machine dispenses iff it learned a
// positive balance. Prop: good_credit.
System scenario_atm(const std::vector<int>& balance_domain, int horizon = 3);

// k agents in a line; an external trigger reaches agent 1 within the
// window and each agent j performs a<j> on its cue and relays it. Props:
// psi_input ("the trigger was received").
System scenario_ordered_chain(int k, const ArrivalWindow& trigger_window,
                              int relay_delay = 1, int horizon = -1,
                              const GenOptions& options = {});

} // namespace kop
