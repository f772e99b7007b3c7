#include "kop/kernel.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "kop/errors.hpp"

namespace kop {

void Interpretation::declare(std::string name, std::vector<bool> table) {
  if (name.empty())
    throw input_error("proposition name must be non-empty");
  if (tables_.count(name))
    throw input_error("proposition declared twice: " + name);
  names_.push_back(name);
  tables_.emplace(std::move(name), std::move(table));
}

bool Interpretation::declared(const std::string& name) const {
  return tables_.count(name) != 0;
}

const std::vector<bool>& Interpretation::table(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end())
    throw input_error("undeclared proposition: " + name);
  return it->second;
}

bool Interpretation::holds(const std::string& name, int point_index) const {
  return table(name).at(point_index);
}

bool event_less(const HistoryEvent& a, const HistoryEvent& b) {
  if (a.time != b.time) return a.time < b.time;
  if (a.agent != b.agent) return a.agent < b.agent;
  return a.action.label < b.action.label;
}

History History::from_events(std::vector<HistoryEvent> events) {
  std::sort(events.begin(), events.end(), event_less);
  events.erase(std::unique(events.begin(), events.end()), events.end());
  History h;
  h.events_ = std::move(events);
  return h;
}

bool History::contains(const HistoryEvent& e) const {
  return std::binary_search(events_.begin(), events_.end(), e, event_less);
}

bool History::includes(const History& other) const {
  return std::includes(events_.begin(), events_.end(),
                       other.events_.begin(), other.events_.end(), event_less);
}

History History::with(HistoryEvent e) const {
  auto events = events_;
  events.push_back(std::move(e));
  return from_events(std::move(events));
}

System::System(std::vector<Run> runs, int horizon, int agent_count,
               Interpretation interp, std::vector<std::string> agent_names)
    : runs_(std::move(runs)),
      horizon_(horizon),
      agent_count_(agent_count),
      interp_(std::move(interp)),
      agent_names_(std::move(agent_names)) {
  if (agent_names_.empty()) {
    agent_names_.reserve(agent_count_ > 0 ? agent_count_ : 0);
    for (int i = 1; i <= agent_count_; ++i)
      agent_names_.push_back(std::to_string(i));
  }
  validate();
  build_partitions();
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw input_error(msg); }

std::string at_run(int r) { return "run " + std::to_string(r); }

} // namespace

void System::validate() const {
  if (agent_count_ < 1) fail("system needs at least one agent");
  if (horizon_ < 0) fail("horizon must be non-negative");
  if (runs_.empty()) fail("system needs at least one run");
  if (static_cast<int>(agent_names_.size()) != agent_count_)
    fail("agent name list does not match agent count");
  for (int i = 0; i < agent_count_; ++i) {
    if (agent_names_[i].empty()) fail("agent names must be non-empty");
    for (int j = i + 1; j < agent_count_; ++j)
      if (agent_names_[i] == agent_names_[j])
        fail("duplicate agent name: " + agent_names_[i]);
  }

  for (int r = 0; r < run_count(); ++r) {
    const Run& run = runs_[r];
    if (static_cast<int>(run.states.size()) != horizon_ + 1)
      fail(at_run(r) + ": expected " + std::to_string(horizon_ + 1) +
           " states, got " + std::to_string(run.states.size()));
    for (int t = 0; t <= horizon_; ++t) {
      const GlobalState& g = run.states[t];
      if (static_cast<int>(g.locals.size()) != agent_count_)
        fail(at_run(r) + " time " + std::to_string(t) +
             ": local state count does not match agent count");
      for (const HistoryEvent& e : g.env.history) {
        if (e.action.label.empty())
          fail(at_run(r) + ": history event with empty action label");
        if (e.agent < 1 || e.agent > agent_count_)
          fail(at_run(r) + ": history event with agent out of range");
        if (e.time < 0 || e.time >= t)
          fail(at_run(r) + " time " + std::to_string(t) +
               ": history event timed " + std::to_string(e.time) +
               " (events must predate the state)");
      }
      if (t > 0 && !g.env.history.includes(run.states[t - 1].env.history))
        fail(at_run(r) + ": history shrinks between times " +
             std::to_string(t - 1) + " and " + std::to_string(t));
    }
  }

  for (int r = 0; r < run_count(); ++r) {
    if (runs_[r].label.empty()) continue;
    for (int s = r + 1; s < run_count(); ++s)
      if (runs_[r].label == runs_[s].label)
        fail("duplicate run label: " + runs_[r].label);
  }

  for (const std::string& prop : interp_.props())
    if (static_cast<int>(interp_.table(prop).size()) != point_count())
      fail("interpretation of \"" + prop + "\" does not cover every point");
}

void System::build_partitions() {
  const int n = point_count();
  class_ids_.assign(agent_count_, {});
  classes_.assign(agent_count_, {});
  for (int i = 0; i < agent_count_; ++i) {
    auto& ids = class_ids_[i];
    ids.assign(n, -1);
    std::unordered_map<std::string, int> by_value;
    for (int idx = 0; idx < n; ++idx) {
      Point p = point_at(idx);
      const std::string& v = runs_[p.run].states[p.time].locals[i].value;
      auto [it, fresh] = by_value.emplace(v, static_cast<int>(classes_[i].size()));
      if (fresh) classes_[i].push_back({});
      ids[idx] = it->second;
      classes_[i][it->second].push_back(idx);
    }
  }
}

const Run& System::run(int index) const {
  if (index < 0 || index >= run_count())
    fail("run index out of range: " + std::to_string(index));
  return runs_[index];
}

const GlobalState& System::global_state(Point p) const {
  require_point(p);
  return runs_[p.run].states[p.time];
}

bool System::contains(Point p) const {
  return p.run >= 0 && p.run < run_count() && p.time >= 0 && p.time <= horizon_;
}

int System::point_index(Point p) const {
  require_point(p);
  return p.run * (horizon_ + 1) + p.time;
}

Point System::point_at(int index) const {
  if (index < 0 || index >= point_count())
    fail("point index out of range: " + std::to_string(index));
  return Point{index / (horizon_ + 1), index % (horizon_ + 1)};
}

void System::require_point(Point p) const {
  if (!contains(p)) {
    std::ostringstream os;
    os << "point (" << p.run << "," << p.time << ") outside system ("
       << run_count() << " runs, horizon " << horizon_ << ")";
    fail(os.str());
  }
}

void System::require_agent(AgentId i) const {
  if (i < 1 || i > agent_count_)
    fail("agent index out of range: " + std::to_string(i));
}

const std::string& System::agent_name(AgentId i) const {
  require_agent(i);
  return agent_names_[i - 1];
}

std::optional<int> System::run_by_label(const std::string& label) const {
  if (label.empty()) return std::nullopt;
  for (int r = 0; r < run_count(); ++r)
    if (runs_[r].label == label) return r;
  return std::nullopt;
}

std::optional<AgentId> System::agent_by_name(const std::string& name) const {
  for (int i = 0; i < agent_count_; ++i)
    if (agent_names_[i] == name) return i + 1;
  return std::nullopt;
}

const std::vector<int>& System::class_ids(AgentId i) const {
  require_agent(i);
  return class_ids_[i - 1];
}

const std::vector<std::vector<int>>& System::classes(AgentId i) const {
  require_agent(i);
  return classes_[i - 1];
}

System System::with_interpretation(Interpretation interp) const {
  return System(runs_, horizon_, agent_count_, std::move(interp), agent_names_);
}

const LocalState& local_state(const System& sys, Point p, AgentId i) {
  sys.require_agent(i);
  return sys.global_state(p).locals[i - 1];
}

bool does(const System& sys, Point p, AgentId i, const Action& a) {
  sys.require_point(p);
  sys.require_agent(i);
  if (p.time >= sys.horizon()) return false;
  const History& next = sys.run(p.run).states[p.time + 1].env.history;
  return next.contains(HistoryEvent{a, i, p.time});
}

bool did(const System& sys, Point p, AgentId i, const Action& a) {
  sys.require_point(p);
  sys.require_agent(i);
  for (int t = 0; t <= p.time; ++t)
    if (does(sys, Point{p.run, t}, i, a)) return true;
  return false;
}

} // namespace kop
