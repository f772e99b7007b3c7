#pragma once

#include <vector>

#include "kop/formula.hpp"
#include "kop/kernel.hpp"

namespace kop {

// Two points are indistinguishable to agent i when i's local state is the
// same at both. This is an equivalence relation for each agent.
bool indistinguishable(const System& sys, Point p, Point q, AgentId i);

// Evaluates formulas over a fixed system by computing each subformula's
// extension (the set of points where it holds) bottom-up. Know marks the
// agent's equivalence classes wholly inside the operand's extension;
// Common marks the wholly-inside connected components of the union of the
// group members' relations.
class Evaluator {
public:
  explicit Evaluator(const System& sys) : sys_(&sys) {}

  const System& system() const { return *sys_; }

  std::vector<bool> extension(const Formula& f) const;
  bool eval(Point p, const Formula& f) const;
  bool valid(const Formula& f) const;
  bool validly_implies(const Formula& f, const Formula& g) const;

  std::vector<bool> common_extension(const std::vector<AgentId>& group,
                                     const Formula& f) const;
  bool eval_common(Point p, const std::vector<AgentId>& group,
                   const Formula& f) const;

  // depth-fold of "everyone in the group knows": depth 1 is E_G f,
  // depth m is E_G applied m times.
  std::vector<bool> nested_everyone_extension(const std::vector<AgentId>& group,
                                              const Formula& f, int depth) const;
  bool nested_everyone(Point p, const std::vector<AgentId>& group,
                       const Formula& f, int depth) const;

  // One application of E_G to an extension.
  std::vector<bool> everyone_extension(const std::vector<AgentId>& group,
                                       const std::vector<bool>& ext) const;

  // Connected components of the union of the group's indistinguishability
  // relations; returns a component id per point.
  std::vector<int> group_components(const std::vector<AgentId>& group) const;

private:
  std::vector<bool> know_extension(AgentId i, const std::vector<bool>& ext) const;
  void require_group(const std::vector<AgentId>& group) const;

  const System* sys_;
};

bool eval(const System& sys, Point p, const Formula& f);
bool eval_common(const System& sys, Point p, const std::vector<AgentId>& group,
                 const Formula& f);
bool nested_everyone(const System& sys, Point p, const std::vector<AgentId>& group,
                     const Formula& f, int depth);
bool valid(const System& sys, const Formula& f);
bool validly_implies(const System& sys, const Formula& f, const Formula& g);

// Tabulates named predicates of (run index, time) into an Interpretation
// covering every point of a run set. Convenience for system builders.
class InterpretationBuilder {
public:
  InterpretationBuilder(int run_count, int horizon)
      : run_count_(run_count), horizon_(horizon) {}

  template <typename Pred> // bool(int run, int time)
  void add(const std::string& name, Pred&& pred) {
    std::vector<bool> table;
    table.reserve(static_cast<std::size_t>(run_count_) * (horizon_ + 1));
    for (int r = 0; r < run_count_; ++r)
      for (int t = 0; t <= horizon_; ++t) table.push_back(pred(r, t));
    interp_.declare(name, std::move(table));
  }

  Interpretation take() { return std::move(interp_); }

private:
  int run_count_;
  int horizon_;
  Interpretation interp_;
};

} // namespace kop
