#include "support/oracles.hpp"

using namespace kop;

namespace koptest {

bool oracle_does(const System& sys, Point p, AgentId i, const Action& a) {
  if (p.time >= sys.horizon()) return false;
  // performed at t iff recorded in every strictly later state of the run
  for (int t = p.time + 1; t <= sys.horizon(); ++t) {
    bool found = false;
    for (const HistoryEvent& e : sys.run(p.run).states[t].env.history)
      if (e.action == a && e.agent == i && e.time == p.time) found = true;
    if (!found) return false;
  }
  return true;
}

bool oracle_did(const System& sys, Point p, AgentId i, const Action& a) {
  for (int t = 0; t <= p.time; ++t)
    if (oracle_does(sys, Point{p.run, t}, i, a)) return true;
  return false;
}

namespace {

bool same_local(const System& sys, int idx_a, int idx_b, AgentId i) {
  Point a = sys.point_at(idx_a);
  Point b = sys.point_at(idx_b);
  return sys.global_state(a).locals[i - 1].value ==
         sys.global_state(b).locals[i - 1].value;
}

} // namespace

std::vector<bool> oracle_extension(const System& sys, const Formula& f) {
  const int n = sys.point_count();
  std::vector<bool> out(n);
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop: {
      for (int idx = 0; idx < n; ++idx)
        out[idx] = sys.interpretation().holds(f.prop_name(), idx);
      return out;
    }
    case K::Does: {
      for (int idx = 0; idx < n; ++idx)
        out[idx] = oracle_does(sys, sys.point_at(idx), f.agent(), f.action());
      return out;
    }
    case K::Did: {
      for (int idx = 0; idx < n; ++idx)
        out[idx] = oracle_did(sys, sys.point_at(idx), f.agent(), f.action());
      return out;
    }
    case K::Not: {
      std::vector<bool> sub = oracle_extension(sys, f.child());
      for (int idx = 0; idx < n; ++idx) out[idx] = !sub[idx];
      return out;
    }
    case K::And: {
      std::vector<bool> l = oracle_extension(sys, f.lhs());
      std::vector<bool> r = oracle_extension(sys, f.rhs());
      for (int idx = 0; idx < n; ++idx) out[idx] = l[idx] && r[idx];
      return out;
    }
    case K::Know: {
      std::vector<bool> sub = oracle_extension(sys, f.child());
      for (int idx = 0; idx < n; ++idx) {
        bool all = true;
        for (int other = 0; other < n; ++other)
          if (same_local(sys, idx, other, f.agent()) && !sub[other]) all = false;
        out[idx] = all;
      }
      return out;
    }
    case K::Common:
      return oracle_nested(sys, f.group(), f.child(), n);
  }
  return out;
}

bool oracle_eval(const System& sys, Point p, const Formula& f) {
  return oracle_extension(sys, f)[sys.point_index(p)];
}

std::vector<bool> oracle_everyone(const System& sys,
                                  const std::vector<AgentId>& group,
                                  const std::vector<bool>& ext) {
  const int n = sys.point_count();
  std::vector<bool> out(n, true);
  for (int idx = 0; idx < n; ++idx)
    for (AgentId i : group) {
      for (int other = 0; other < n; ++other)
        if (same_local(sys, idx, other, i) && !ext[other]) {
          out[idx] = false;
          break;
        }
      if (!out[idx]) break;
    }
  return out;
}

std::vector<bool> oracle_nested(const System& sys,
                                const std::vector<AgentId>& group,
                                const Formula& f, int depth) {
  std::vector<bool> ext = oracle_extension(sys, f);
  for (int m = 0; m < depth; ++m) ext = oracle_everyone(sys, group, ext);
  return ext;
}

bool oracle_common(const System& sys, Point p, const std::vector<AgentId>& group,
                   const Formula& f) {
  return oracle_nested(sys, group, f, sys.point_count())[sys.point_index(p)];
}

} // namespace koptest
