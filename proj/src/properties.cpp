#include "kop/properties.hpp"

#include <algorithm>

#include "kop/errors.hpp"

namespace kop {

void ActionAssignment::validate(const System& sys) const {
  if (pairs.empty()) throw input_error("action assignment must be non-empty");
  for (const auto& [agent, action] : pairs) {
    sys.require_agent(agent);
    if (action.label.empty())
      throw input_error("action label must be non-empty");
  }
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      if (pairs[a].first == pairs[b].first)
        throw input_error("agent listed twice in action assignment: " +
                          std::to_string(pairs[a].first));
}

std::string theorem_tag_name(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::Kop: return "KOP";
    case TheoremTag::Ckop: return "CKOP";
    case TheoremTag::Nkop: return "NKOP";
    case TheoremTag::Predicate: return "PREDICATE";
  }
  return "PREDICATE";
}

bool VerificationReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const CheckItem& h) { return h.holds; });
}

bool VerificationReport::subchecks_hold() const {
  return std::all_of(subchecks.begin(), subchecks.end(),
                     [](const CheckItem& h) { return h.holds; });
}

bool VerificationReport::ok() const {
  return hypotheses_hold() && conclusionHolds.value_or(false) && subchecks_hold();
}

namespace {

std::vector<bool> does_extension(const System& sys, AgentId i, const Action& a) {
  std::vector<bool> out(sys.point_count());
  for (int idx = 0; idx < sys.point_count(); ++idx)
    out[idx] = does(sys, sys.point_at(idx), i, a);
  return out;
}

} // namespace

std::optional<Point> necessary_violation(const System& sys, const Formula& psi,
                                         AgentId i, const Action& a) {
  sys.require_agent(i);
  Evaluator ev(sys);
  std::vector<bool> d = does_extension(sys, i, a);
  std::vector<bool> cond = ev.extension(psi);
  for (int idx = 0; idx < sys.point_count(); ++idx)
    if (d[idx] && !cond[idx]) return sys.point_at(idx);
  return std::nullopt;
}

bool is_necessary_condition(const System& sys, const Formula& psi, AgentId i,
                            const Action& a) {
  return !necessary_violation(sys, psi, i, a).has_value();
}

std::optional<std::pair<Point, Point>> conscious_violation(const System& sys,
                                                           AgentId i,
                                                           const Action& a) {
  sys.require_agent(i);
  std::vector<bool> d = does_extension(sys, i, a);
  for (const auto& members : sys.classes(i)) {
    int yes = -1, no = -1;
    for (int idx : members) {
      (d[idx] ? yes : no) = idx;
      if (yes >= 0 && no >= 0) {
        // report the performing point first, then its lookalike
        return std::make_pair(sys.point_at(yes), sys.point_at(no));
      }
    }
  }
  return std::nullopt;
}

bool is_conscious(const System& sys, AgentId i, const Action& a) {
  return !conscious_violation(sys, i, a).has_value();
}

std::optional<Point> local_violation(const System& sys, AgentId i,
                                     const Formula& f) {
  sys.require_agent(i);
  Evaluator ev(sys);
  std::vector<bool> ext = ev.extension(f);
  std::vector<bool> known = ev.extension(Formula::know(i, f));
  for (int idx = 0; idx < sys.point_count(); ++idx)
    if (ext[idx] && !known[idx]) return sys.point_at(idx);
  return std::nullopt;
}

bool is_local(const System& sys, AgentId i, const Formula& f) {
  return !local_violation(sys, i, f).has_value();
}

std::optional<std::pair<Point, Point>> stable_violation(const System& sys,
                                                        const Formula& f) {
  Evaluator ev(sys);
  std::vector<bool> ext = ev.extension(f);
  for (int r = 0; r < sys.run_count(); ++r) {
    int held_at = -1;
    for (int t = 0; t <= sys.horizon(); ++t) {
      bool now = ext[sys.point_index(Point{r, t})];
      if (now && held_at < 0) held_at = t;
      if (!now && held_at >= 0)
        return std::make_pair(Point{r, held_at}, Point{r, t});
    }
  }
  return std::nullopt;
}

bool is_stable(const System& sys, const Formula& f) {
  return !stable_violation(sys, f).has_value();
}

bool recalls(const System& sys, AgentId i, const Formula& f) {
  sys.require_agent(i);
  return is_stable(sys, Formula::know(i, f));
}

std::optional<Point> simultaneous_violation(const System& sys,
                                            const ActionAssignment& assignment) {
  assignment.validate(sys);
  if (assignment.pairs.size() < 2)
    throw input_error("simultaneity needs at least two agents");
  std::vector<std::vector<bool>> d;
  d.reserve(assignment.pairs.size());
  for (const auto& [agent, action] : assignment.pairs)
    d.push_back(does_extension(sys, agent, action));
  for (int idx = 0; idx < sys.point_count(); ++idx) {
    bool any = false, all = true;
    for (const auto& ext : d) {
      any = any || ext[idx];
      all = all && ext[idx];
    }
    if (any && !all) return sys.point_at(idx);
  }
  return std::nullopt;
}

bool is_simultaneous(const System& sys, const ActionAssignment& assignment) {
  return !simultaneous_violation(sys, assignment).has_value();
}

std::optional<Point> ordered_violation(const System& sys,
                                       const ActionAssignment& sequence) {
  sequence.validate(sys);
  if (sequence.pairs.size() < 2)
    throw input_error("ordering needs at least two agents");
  for (std::size_t j = 1; j < sequence.pairs.size(); ++j) {
    const auto& [prev_agent, prev_action] = sequence.pairs[j - 1];
    auto v = necessary_violation(sys, Formula::did(prev_agent, prev_action),
                                 sequence.pairs[j].first,
                                 sequence.pairs[j].second);
    if (v) return v;
  }
  return std::nullopt;
}

bool is_ordered(const System& sys, const ActionAssignment& sequence) {
  return !ordered_violation(sys, sequence).has_value();
}

std::optional<int> earliest(const System& sys, int run, const Formula& f) {
  Evaluator ev(sys);
  std::vector<bool> ext = ev.extension(f);
  for (int t = 0; t <= sys.horizon(); ++t)
    if (ext[sys.point_index(Point{run, t})]) return t;
  return std::nullopt;
}

namespace {

CheckItem check_conscious(const System& sys, AgentId i, const Action& a,
                          const std::string& name) {
  CheckItem item{name, true, std::nullopt};
  if (auto v = conscious_violation(sys, i, a)) {
    item.holds = false;
    item.witness = v->first;
  }
  return item;
}

CheckItem check_necessary(const System& sys, const Formula& psi, AgentId i,
                          const Action& a, const std::string& name) {
  CheckItem item{name, true, std::nullopt};
  if (auto v = necessary_violation(sys, psi, i, a)) {
    item.holds = false;
    item.witness = *v;
  }
  return item;
}

std::string agent_action(const System& sys, AgentId i, const Action& a) {
  return sys.agent_name(i) + "," + a.label;
}

// Checks one universal conclusion part "psi_part holds whenever i does a";
// on failure records the first falsifying point in the report.
void conclude_necessary(const System& sys, VerificationReport& report,
                        const Formula& part, AgentId i, const Action& a) {
  if (auto v = necessary_violation(sys, part, i, a)) {
    report.conclusionHolds = false;
    report.counterexamples.push_back(*v);
  }
}

} // namespace

VerificationReport check_kop(const System& sys, AgentId i, const Action& a,
                             const Formula& psi) {
  sys.require_agent(i);
  VerificationReport report;
  report.theorem = TheoremTag::Kop;
  report.hypotheses.push_back(
      check_conscious(sys, i, a, "conscious(" + agent_action(sys, i, a) + ")"));
  report.hypotheses.push_back(
      check_necessary(sys, psi, i, a, "necessary(psi," + agent_action(sys, i, a) + ")"));
  if (!report.hypotheses_hold()) {
    report.note = "hypotheses not satisfied; conclusion not asserted";
    return report;
  }
  report.conclusionHolds = true;
  conclude_necessary(sys, report, Formula::know(i, psi), i, a);
  report.note = report.ok()
                    ? "K_i(psi) is a necessary condition for the action"
                    : "agent performs the action without knowing psi";
  return report;
}

VerificationReport check_ckop(const System& sys, const std::vector<AgentId>& group,
                              const ActionAssignment& assignment, AgentId i,
                              const Formula& psi) {
  assignment.validate(sys);
  std::vector<AgentId> g = group;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.size() < 2)
    throw input_error("common knowledge check needs a group of at least two");
  std::vector<AgentId> assigned;
  for (const auto& [agent, action] : assignment.pairs) assigned.push_back(agent);
  std::sort(assigned.begin(), assigned.end());
  if (assigned != g)
    throw input_error("action assignment must cover exactly the group");
  if (!std::binary_search(g.begin(), g.end(), i))
    throw input_error("distinguished agent must belong to the group");

  const Action* action_of_i = nullptr;
  for (const auto& [agent, action] : assignment.pairs)
    if (agent == i) action_of_i = &action;

  VerificationReport report;
  report.theorem = TheoremTag::Ckop;

  CheckItem sim{"simultaneous", true, std::nullopt};
  if (auto v = simultaneous_violation(sys, assignment)) {
    sim.holds = false;
    sim.witness = *v;
  }
  report.hypotheses.push_back(std::move(sim));
  for (const auto& [agent, action] : assignment.pairs)
    report.hypotheses.push_back(check_conscious(
        sys, agent, action, "conscious(" + agent_action(sys, agent, action) + ")"));
  report.hypotheses.push_back(check_necessary(
      sys, psi, i, *action_of_i,
      "necessary(psi," + agent_action(sys, i, *action_of_i) + ")"));

  if (!report.hypotheses_hold()) {
    report.note = "hypotheses not satisfied; conclusion not asserted";
    return report;
  }

  report.conclusionHolds = true;
  Formula common = Formula::common(g, psi);
  for (const auto& [agent, action] : assignment.pairs)
    conclude_necessary(sys, report, common, agent, action);

  // Simultaneity transfers the precondition to every member's action.
  for (const auto& [agent, action] : assignment.pairs) {
    CheckItem item = check_necessary(
        sys, psi, agent, action,
        "transfer(psi," + agent_action(sys, agent, action) + ")");
    report.subchecks.push_back(std::move(item));
  }

  for (const CheckItem& item : report.subchecks)
    if (!item.holds && item.witness)
      report.counterexamples.push_back(*item.witness);
  std::sort(report.counterexamples.begin(), report.counterexamples.end());
  report.counterexamples.erase(
      std::unique(report.counterexamples.begin(), report.counterexamples.end()),
      report.counterexamples.end());

  report.note = report.ok()
                    ? "C_G(psi) is a necessary condition for every member's action"
                    : "common knowledge of psi fails at some performing point";
  return report;
}

VerificationReport check_nkop(const System& sys, const ActionAssignment& sequence,
                              const Formula& psi) {
  sequence.validate(sys);
  const std::size_t k = sequence.pairs.size();

  VerificationReport report;
  report.theorem = TheoremTag::Nkop;

  if (k >= 2) {
    CheckItem ord{"ordered", true, std::nullopt};
    if (auto v = ordered_violation(sys, sequence)) {
      ord.holds = false;
      ord.witness = *v;
    }
    report.hypotheses.push_back(std::move(ord));
  }
  for (const auto& [agent, action] : sequence.pairs) {
    CheckItem rec{"recalls(" + agent_action(sys, agent, action) + ")", true,
                  std::nullopt};
    if (auto v = stable_violation(
            sys, Formula::know(agent, Formula::did(agent, action)))) {
      rec.holds = false;
      rec.witness = v->second;
    }
    report.hypotheses.push_back(std::move(rec));
  }
  for (const auto& [agent, action] : sequence.pairs)
    report.hypotheses.push_back(check_conscious(
        sys, agent, action, "conscious(" + agent_action(sys, agent, action) + ")"));
  CheckItem stab{"stable(psi)", true, std::nullopt};
  if (auto v = stable_violation(sys, psi)) {
    stab.holds = false;
    stab.witness = v->second;
  }
  report.hypotheses.push_back(std::move(stab));
  report.hypotheses.push_back(check_necessary(
      sys, psi, sequence.pairs[0].first, sequence.pairs[0].second,
      "necessary(psi," +
          agent_action(sys, sequence.pairs[0].first, sequence.pairs[0].second) +
          ")"));

  if (!report.hypotheses_hold()) {
    report.note = "hypotheses not satisfied; conclusion not asserted";
    return report;
  }

  report.conclusionHolds = true;
  Formula nested = psi;
  for (std::size_t j = 0; j < k; ++j) {
    nested = Formula::know(sequence.pairs[j].first, std::move(nested));
    conclude_necessary(sys, report, nested, sequence.pairs[j].first,
                       sequence.pairs[j].second);
  }

  // Performing a_j certifies that a_{j-1} already happened...
  for (std::size_t j = 1; j < k; ++j) {
    CheckItem item{"did_chain(" +
                       agent_action(sys, sequence.pairs[j].first,
                                    sequence.pairs[j].second) +
                       ")",
                   true, std::nullopt};
    Formula impl = Formula::implies(
        Formula::did(sequence.pairs[j].first, sequence.pairs[j].second),
        Formula::did(sequence.pairs[j - 1].first, sequence.pairs[j - 1].second));
    Evaluator ev(sys);
    std::vector<bool> ext = ev.extension(impl);
    for (int idx = 0; idx < sys.point_count(); ++idx)
      if (!ext[idx]) {
        item.holds = false;
        item.witness = sys.point_at(idx);
        break;
      }
    report.subchecks.push_back(std::move(item));
  }
  // ...and own past actions are local facts under recall.
  for (const auto& [agent, action] : sequence.pairs) {
    CheckItem item{"did_local(" + agent_action(sys, agent, action) + ")", true,
                   std::nullopt};
    if (auto v = local_violation(sys, agent, Formula::did(agent, action))) {
      item.holds = false;
      item.witness = *v;
    }
    report.subchecks.push_back(std::move(item));
  }

  for (const CheckItem& item : report.subchecks)
    if (!item.holds && item.witness)
      report.counterexamples.push_back(*item.witness);
  std::sort(report.counterexamples.begin(), report.counterexamples.end());
  report.counterexamples.erase(
      std::unique(report.counterexamples.begin(), report.counterexamples.end()),
      report.counterexamples.end());

  report.note = report.ok()
                    ? "each agent acts knowing the full chain of prior knowledge"
                    : "nested knowledge fails at some performing point";
  return report;
}

} // namespace kop
