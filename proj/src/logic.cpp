#include "kop/logic.hpp"

#include <numeric>

#include "kop/errors.hpp"

namespace kop {

bool indistinguishable(const System& sys, Point p, Point q, AgentId i) {
  sys.require_agent(i);
  const auto& ids = sys.class_ids(i);
  return ids[sys.point_index(p)] == ids[sys.point_index(q)];
}

namespace {

struct Dsu {
  std::vector<int> parent;

  explicit Dsu(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

void Evaluator::require_group(const std::vector<AgentId>& group) const {
  if (group.empty())
    throw input_error("agent group must be non-empty");
  for (AgentId i : group) sys_->require_agent(i);
}

std::vector<bool> Evaluator::know_extension(AgentId i,
                                            const std::vector<bool>& ext) const {
  std::vector<bool> out(ext.size(), false);
  for (const auto& members : sys_->classes(i)) {
    bool all = true;
    for (int idx : members)
      if (!ext[idx]) {
        all = false;
        break;
      }
    if (all)
      for (int idx : members) out[idx] = true;
  }
  return out;
}

std::vector<int> Evaluator::group_components(const std::vector<AgentId>& group) const {
  require_group(group);
  Dsu dsu(sys_->point_count());
  for (AgentId i : group)
    for (const auto& members : sys_->classes(i))
      for (std::size_t k = 1; k < members.size(); ++k)
        dsu.unite(members[0], members[k]);
  std::vector<int> comp(sys_->point_count());
  for (int idx = 0; idx < sys_->point_count(); ++idx) comp[idx] = dsu.find(idx);
  return comp;
}

std::vector<bool> Evaluator::extension(const Formula& f) const {
  const int n = sys_->point_count();
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
      return sys_->interpretation().table(f.prop_name());
    case K::Does: {
      std::vector<bool> out(n);
      for (int idx = 0; idx < n; ++idx)
        out[idx] = does(*sys_, sys_->point_at(idx), f.agent(), f.action());
      return out;
    }
    case K::Did: {
      // prefix-or of does along each run
      std::vector<bool> out(n, false);
      for (int r = 0; r < sys_->run_count(); ++r) {
        bool seen = false;
        for (int t = 0; t <= sys_->horizon(); ++t) {
          Point p{r, t};
          seen = seen || does(*sys_, p, f.agent(), f.action());
          out[sys_->point_index(p)] = seen;
        }
      }
      return out;
    }
    case K::Not: {
      std::vector<bool> out = extension(f.child());
      out.flip();
      return out;
    }
    case K::And: {
      std::vector<bool> out = extension(f.lhs());
      std::vector<bool> right = extension(f.rhs());
      for (int idx = 0; idx < n; ++idx)
        out[idx] = out[idx] && right[idx];
      return out;
    }
    case K::Know: {
      sys_->require_agent(f.agent());
      return know_extension(f.agent(), extension(f.child()));
    }
    case K::Common:
      return common_extension(f.group(), f.child());
  }
  throw input_error("malformed formula");
}

bool Evaluator::eval(Point p, const Formula& f) const {
  return extension(f)[sys_->point_index(p)];
}

bool Evaluator::valid(const Formula& f) const {
  std::vector<bool> ext = extension(f);
  for (bool b : ext)
    if (!b) return false;
  return true;
}

bool Evaluator::validly_implies(const Formula& f, const Formula& g) const {
  std::vector<bool> ef = extension(f);
  std::vector<bool> eg = extension(g);
  for (std::size_t idx = 0; idx < ef.size(); ++idx)
    if (ef[idx] && !eg[idx]) return false;
  return true;
}

std::vector<bool> Evaluator::common_extension(const std::vector<AgentId>& group,
                                              const Formula& f) const {
  // Relations are reflexive, so every chain of "everyone knows" collapses
  // to: f holds on the whole reachable component.
  std::vector<bool> ext = extension(f);
  std::vector<int> comp = group_components(group);
  const int n = sys_->point_count();
  std::vector<bool> comp_ok(n, true);
  for (int idx = 0; idx < n; ++idx)
    if (!ext[idx]) comp_ok[comp[idx]] = false;
  std::vector<bool> out(n);
  for (int idx = 0; idx < n; ++idx) out[idx] = comp_ok[comp[idx]];
  return out;
}

bool Evaluator::eval_common(Point p, const std::vector<AgentId>& group,
                            const Formula& f) const {
  return common_extension(group, f)[sys_->point_index(p)];
}

std::vector<bool> Evaluator::everyone_extension(const std::vector<AgentId>& group,
                                                const std::vector<bool>& ext) const {
  require_group(group);
  std::vector<bool> out(ext.size(), true);
  for (AgentId i : group) {
    std::vector<bool> k = know_extension(i, ext);
    for (std::size_t idx = 0; idx < out.size(); ++idx)
      out[idx] = out[idx] && k[idx];
  }
  return out;
}

std::vector<bool> Evaluator::nested_everyone_extension(
    const std::vector<AgentId>& group, const Formula& f, int depth) const {
  if (depth < 1) throw input_error("nesting depth must be at least 1");
  require_group(group);
  std::vector<bool> ext = extension(f);
  for (int m = 0; m < depth; ++m) {
    std::vector<bool> next = everyone_extension(group, ext);
    if (next == ext) break; // fixed point: further applications are equal
    ext = std::move(next);
  }
  return ext;
}

bool Evaluator::nested_everyone(Point p, const std::vector<AgentId>& group,
                                const Formula& f, int depth) const {
  return nested_everyone_extension(group, f, depth)[sys_->point_index(p)];
}

bool eval(const System& sys, Point p, const Formula& f) {
  return Evaluator(sys).eval(p, f);
}

bool eval_common(const System& sys, Point p, const std::vector<AgentId>& group,
                 const Formula& f) {
  return Evaluator(sys).eval_common(p, group, f);
}

bool nested_everyone(const System& sys, Point p, const std::vector<AgentId>& group,
                     const Formula& f, int depth) {
  return Evaluator(sys).nested_everyone(p, group, f, depth);
}

bool valid(const System& sys, const Formula& f) {
  return Evaluator(sys).valid(f);
}

bool validly_implies(const System& sys, const Formula& f, const Formula& g) {
  return Evaluator(sys).validly_implies(f, g);
}

} // namespace kop
