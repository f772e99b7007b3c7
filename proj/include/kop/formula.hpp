#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kop/kernel.hpp"

namespace kop {

// Immutable formula over primitive propositions, action atoms, boolean
// connectives and the knowledge operators. Or/Implies are sugar over
// Not/And. Shared subtrees are fine: nodes are never mutated.
class Formula {
public:
  enum class Kind { Prop, Does, Did, Not, And, Know, Common };

  static Formula prop(std::string name);
  static Formula does(AgentId agent, Action action);
  static Formula did(AgentId agent, Action action);
  static Formula negate(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);     // !( !l & !r )
  static Formula implies(Formula lhs, Formula rhs);  // !( l & !r )
  static Formula know(AgentId agent, Formula f);
  static Formula common(std::vector<AgentId> group, Formula f);

  Kind kind() const;
  const std::string& prop_name() const;
  AgentId agent() const;
  const Action& action() const;
  const std::vector<AgentId>& group() const; // sorted, duplicate-free
  Formula child() const;                     // Not / Know / Common
  Formula lhs() const;                       // And
  Formula rhs() const;

  // Concrete syntax accepted back by parse_formula.
  std::string to_string() const;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

} // namespace kop
