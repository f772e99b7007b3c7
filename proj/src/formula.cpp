#include "kop/formula.hpp"

#include <algorithm>
#include <sstream>

#include "kop/errors.hpp"

namespace kop {

struct Formula::Node {
  Kind kind;
  std::string prop;
  AgentId agent = 0;
  Action action;
  std::vector<AgentId> group;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::prop(std::string name) {
  if (name.empty()) throw input_error("proposition name must be non-empty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->prop = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::does(AgentId agent, Action action) {
  if (action.label.empty()) throw input_error("action label must be non-empty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Does;
  n->agent = agent;
  n->action = std::move(action);
  return Formula(std::move(n));
}

Formula Formula::did(AgentId agent, Action action) {
  if (action.label.empty()) throw input_error("action label must be non-empty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Did;
  n->agent = agent;
  n->action = std::move(action);
  return Formula(std::move(n));
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return negate(conj(negate(std::move(lhs)), negate(std::move(rhs))));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return negate(conj(std::move(lhs), negate(std::move(rhs))));
}

Formula Formula::know(AgentId agent, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Know;
  n->agent = agent;
  n->lhs = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::common(std::vector<AgentId> group, Formula f) {
  if (group.empty()) throw input_error("common knowledge group must be non-empty");
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Common;
  n->group = std::move(group);
  n->lhs = std::move(f.node_);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::prop_name() const { return node_->prop; }
AgentId Formula::agent() const { return node_->agent; }
const Action& Formula::action() const { return node_->action; }
const std::vector<AgentId>& Formula::group() const { return node_->group; }
Formula Formula::child() const { return Formula(node_->lhs); }
Formula Formula::lhs() const { return Formula(node_->lhs); }
Formula Formula::rhs() const { return Formula(node_->rhs); }

namespace {

// Printed forms parenthesize non-atomic operands of & so the result parses
// back to the same tree without reproducing the full precedence table.
bool atomic_print(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
    case K::Does:
    case K::Did:
    case K::Not:
    case K::Know:
    case K::Common:
      return true;
    case K::And:
      return false;
  }
  return false;
}

void print(const Formula& f, std::ostream& os) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
      os << f.prop_name();
      return;
    case K::Does:
      os << "does[" << f.agent() << "](" << f.action().label << ")";
      return;
    case K::Did:
      os << "did[" << f.agent() << "](" << f.action().label << ")";
      return;
    case K::Not: {
      Formula c = f.child();
      if (atomic_print(c)) {
        os << "!";
        print(c, os);
      } else {
        os << "!(";
        print(c, os);
        os << ")";
      }
      return;
    }
    case K::And: {
      auto side = [&os](const Formula& g) {
        if (atomic_print(g)) {
          print(g, os);
        } else {
          os << "(";
          print(g, os);
          os << ")";
        }
      };
      side(f.lhs());
      os << " & ";
      side(f.rhs());
      return;
    }
    case K::Know: {
      os << "K[" << f.agent() << "] ";
      Formula c = f.child();
      if (atomic_print(c)) {
        print(c, os);
      } else {
        os << "(";
        print(c, os);
        os << ")";
      }
      return;
    }
    case K::Common: {
      os << "C[{";
      const auto& g = f.group();
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (k) os << ",";
        os << g[k];
      }
      os << "}] ";
      Formula c = f.child();
      if (atomic_print(c)) {
        print(c, os);
      } else {
        os << "(";
        print(c, os);
        os << ")";
      }
      return;
    }
  }
}

} // namespace

std::string Formula::to_string() const {
  std::ostringstream os;
  print(*this, os);
  return os.str();
}

} // namespace kop
