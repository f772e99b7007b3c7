#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "kop/interpretation.hpp"

namespace kop {

// Agents are numbered 1..n.
using AgentId = int;

struct Action {
  std::string label;
  auto operator<=>(const Action&) const = default;
};

// Record that agent `agent` performed `action` at time `time`.
struct HistoryEvent {
  Action action;
  AgentId agent = 0;
  int time = 0;

  friend bool operator==(const HistoryEvent&, const HistoryEvent&) = default;
};

// Canonical event order: by time, then agent, then action label.
bool event_less(const HistoryEvent& a, const HistoryEvent& b);

// Finite set of events, kept sorted and duplicate-free.
class History {
public:
  History() = default;
  static History from_events(std::vector<HistoryEvent> events);

  bool contains(const HistoryEvent& e) const;
  bool includes(const History& other) const; // superset test
  History with(HistoryEvent e) const;

  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  auto begin() const { return events_.begin(); }
  auto end() const { return events_.end(); }

  friend bool operator==(const History&, const History&) = default;

private:
  std::vector<HistoryEvent> events_;
};

struct LocalState {
  std::string value;
  auto operator<=>(const LocalState&) const = default;
};

struct EnvState {
  History history;
  std::string payload;

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

struct GlobalState {
  EnvState env;
  std::vector<LocalState> locals; // one per agent, index agent-1

  friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

// A run assigns a global state to every time in 0..horizon.
struct Run {
  std::vector<GlobalState> states;
  std::string label; // optional; empty means unlabeled

  friend bool operator==(const Run&, const Run&) = default;
};

struct Point {
  int run = 0;
  int time = 0;
  auto operator<=>(const Point&) const = default;
};

// Immutable finite system: a set of runs over a shared horizon, with an
// interpretation of primitive propositions. All invariants are checked at
// construction; every accessor validates its arguments.
class System {
public:
  System(std::vector<Run> runs, int horizon, int agent_count,
         Interpretation interp, std::vector<std::string> agent_names = {});

  int run_count() const { return static_cast<int>(runs_.size()); }
  int horizon() const { return horizon_; }
  int agent_count() const { return agent_count_; }
  int point_count() const { return run_count() * (horizon_ + 1); }

  const Run& run(int index) const;
  const GlobalState& global_state(Point p) const;
  const Interpretation& interpretation() const { return interp_; }
  const std::vector<std::string>& agent_names() const { return agent_names_; }
  const std::string& agent_name(AgentId i) const;

  bool contains(Point p) const;
  int point_index(Point p) const;
  Point point_at(int index) const;

  void require_point(Point p) const; // throws input_error
  void require_agent(AgentId i) const;

  std::optional<int> run_by_label(const std::string& label) const;
  std::optional<AgentId> agent_by_name(const std::string& name) const;

  // Partition of points by agent i's local state, precomputed at
  // construction. class_id is point-indexed; classes lists member point
  // indices in ascending order.
  const std::vector<int>& class_ids(AgentId i) const;
  const std::vector<std::vector<int>>& classes(AgentId i) const;

  System with_interpretation(Interpretation interp) const;

private:
  void validate() const;
  void build_partitions();

  std::vector<Run> runs_;
  int horizon_ = 0;
  int agent_count_ = 0;
  Interpretation interp_;
  std::vector<std::string> agent_names_;
  std::vector<std::vector<int>> class_ids_;              // [agent-1][point]
  std::vector<std::vector<std::vector<int>>> classes_;   // [agent-1][class]
};

// Agent i's view of point p.
const LocalState& local_state(const System& sys, Point p, AgentId i);

// True when agent i performs a at p, i.e. the event (a,i,t) is recorded in
// the environment history one step later. Always false at the horizon: a
// finite prefix cannot certify an action at its last instant.
bool does(const System& sys, Point p, AgentId i, const Action& a);

// True when agent i performed a at some time <= p.time in p's run.
bool did(const System& sys, Point p, AgentId i, const Action& a);

} // namespace kop
