#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kop/logic.hpp"

namespace kop {

// Agent/action pairs, one per agent, used by the joint-action checks.
struct ActionAssignment {
  std::vector<std::pair<AgentId, Action>> pairs;

  void validate(const System& sys) const; // distinct in-range agents
};

enum class TheoremTag { Kop, Ckop, Nkop, Predicate };

std::string theorem_tag_name(TheoremTag tag);

// One named universal check. When it fails, witness is the first point
// (lexicographic run, then time) at which it fails.
struct CheckItem {
  std::string name;
  bool holds = false;
  std::optional<Point> witness;
};

// Outcome of a theorem check. The conclusion is only asserted when every
// hypothesis holds; counterexamples list the first falsifying point of
// each conclusion or sub-check part that fails, and are empty whenever the
// hypotheses already failed.
struct VerificationReport {
  TheoremTag theorem = TheoremTag::Predicate;
  std::vector<CheckItem> hypotheses;
  std::optional<bool> conclusionHolds;
  std::vector<CheckItem> subchecks;
  std::vector<Point> counterexamples;
  std::string note;

  bool hypotheses_hold() const;
  bool subchecks_hold() const;
  // Everything gated and asserted came out true.
  bool ok() const;
};

// psi holds whenever agent i performs a.
bool is_necessary_condition(const System& sys, const Formula& psi, AgentId i,
                            const Action& a);
// Performing a is determined by i's local state.
bool is_conscious(const System& sys, AgentId i, const Action& a);
// f -> K_i f is valid: f never holds without agent i knowing it.
bool is_local(const System& sys, AgentId i, const Formula& f);
// Along every run, once f holds it keeps holding.
bool is_stable(const System& sys, const Formula& f);
// Agent i never loses knowledge of f.
bool recalls(const System& sys, AgentId i, const Formula& f);
// All assigned actions happen at exactly the same points.
bool is_simultaneous(const System& sys, const ActionAssignment& assignment);
// Each action in the sequence requires its predecessor to have happened.
bool is_ordered(const System& sys, const ActionAssignment& sequence);

// First time f holds in the given run, if any.
std::optional<int> earliest(const System& sys, int run, const Formula& f);

// Violation finders backing the predicates; used for counterexample
// reporting. Points come out in lexicographic order.
std::optional<Point> necessary_violation(const System& sys, const Formula& psi,
                                         AgentId i, const Action& a);
std::optional<std::pair<Point, Point>> conscious_violation(const System& sys,
                                                           AgentId i,
                                                           const Action& a);
std::optional<Point> local_violation(const System& sys, AgentId i,
                                     const Formula& f);
std::optional<std::pair<Point, Point>> stable_violation(const System& sys,
                                                        const Formula& f);
std::optional<Point> simultaneous_violation(const System& sys,
                                            const ActionAssignment& assignment);
std::optional<Point> ordered_violation(const System& sys,
                                       const ActionAssignment& sequence);

// Knowledge of preconditions: if agent i performs a consciously and psi is
// a necessary condition for that, then K_i psi is one too.
VerificationReport check_kop(const System& sys, AgentId i, const Action& a,
                             const Formula& psi);

// Common knowledge of preconditions: simultaneous conscious joint actions
// by the group turn a necessary condition for one member's action into
// common knowledge for all. Also checks that the condition is necessary
// for every member's action (the transfer along simultaneity).
VerificationReport check_ckop(const System& sys, const std::vector<AgentId>& group,
                              const ActionAssignment& assignment, AgentId i,
                              const Formula& psi);

// Nested knowledge of preconditions along an ordered action sequence with
// recall: agent j must know that j-1 knew that ... agent 1 knew psi.
// Also checks the supporting facts: performing a_j implies a_{j-1} was
// performed, and each "agent j performed a_j" is local to agent j.
VerificationReport check_nkop(const System& sys, const ActionAssignment& sequence,
                              const Formula& psi);

} // namespace kop
