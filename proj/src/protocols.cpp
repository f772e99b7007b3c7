#include "kop/protocols.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kop/errors.hpp"
#include "kop/logic.hpp"

namespace kop {

// --- topology ----------------------------------------------------------

NetworkTopology NetworkTopology::path(int n) {
  NetworkTopology topo;
  topo.agent_count = n;
  for (int i = 1; i < n; ++i) topo.edges.emplace_back(i, i + 1);
  return topo;
}

void NetworkTopology::validate() const {
  if (agent_count < 1) throw input_error("topology needs at least one agent");
  if (!delays.empty() && delays.size() != edges.size())
    throw input_error("delay list does not match edge list");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [a, b] = edges[k];
    if (a < 1 || a > agent_count || b < 1 || b > agent_count)
      throw input_error("edge endpoint out of range");
    if (a == b) throw input_error("self-loop in topology");
    if (!delays.empty() && delays[k] < 1)
      throw input_error("edge delay must be at least 1");
    for (std::size_t m = k + 1; m < edges.size(); ++m) {
      auto [c, d] = edges[m];
      if ((a == c && b == d) || (a == d && b == c))
        throw input_error("duplicate edge in topology");
    }
  }
}

int NetworkTopology::delay(AgentId a, AgentId b) const {
  for (std::size_t k = 0; k < edges.size(); ++k)
    if ((edges[k].first == a && edges[k].second == b) ||
        (edges[k].first == b && edges[k].second == a))
      return delays.empty() ? 1 : delays[k];
  throw input_error("agents " + std::to_string(a) + " and " + std::to_string(b) +
                    " are not connected");
}

std::vector<AgentId> NetworkTopology::neighbors(AgentId a) const {
  std::vector<AgentId> out;
  for (auto [x, y] : edges) {
    if (x == a) out.push_back(y);
    if (y == a) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AgentId> NetworkTopology::parents_toward(AgentId root) const {
  validate();
  if (root < 1 || root > agent_count) throw input_error("root out of range");
  if (static_cast<int>(edges.size()) != agent_count - 1)
    throw input_error("topology must be a tree");
  std::vector<AgentId> parent(agent_count + 1, -1);
  std::vector<AgentId> queue{root};
  parent[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    AgentId cur = queue[head];
    for (AgentId nb : neighbors(cur))
      if (parent[nb] == -1) {
        parent[nb] = cur;
        queue.push_back(nb);
      }
  }
  if (queue.size() != static_cast<std::size_t>(agent_count))
    throw input_error("topology must be connected");
  return parent;
}

std::vector<int> NetworkTopology::distances_from(AgentId a) const {
  validate();
  if (a < 1 || a > agent_count) throw input_error("agent out of range");
  const int inf = 1 << 29;
  std::vector<int> dist(agent_count + 1, inf);
  dist[a] = 0;
  // tiny graphs: relax until settled
  for (int pass = 0; pass < agent_count; ++pass)
    for (std::size_t k = 0; k < edges.size(); ++k) {
      int d = delays.empty() ? 1 : delays[k];
      auto [x, y] = edges[k];
      dist[x] = std::min(dist[x], dist[y] + d);
      dist[y] = std::min(dist[y], dist[x] + d);
    }
  for (int i = 1; i <= agent_count; ++i)
    if (dist[i] >= inf) throw input_error("topology must be connected");
  return dist;
}

// --- arrival window ----------------------------------------------------

ArrivalWindow ArrivalWindow::parse(const std::string& text) {
  ArrivalWindow w;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (w.include_never)
      throw input_error("\"never\" must be the last arrival window entry");
    if (token == "never") {
      w.include_never = true;
    } else if (!token.empty() &&
               token.find_first_not_of("0123456789") == std::string::npos) {
      w.times.push_back(std::stoi(token));
    } else {
      throw input_error("bad arrival window entry: \"" + token + "\"");
    }
  }
  w.validate();
  return w;
}

std::string ArrivalWindow::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k) os << ",";
    os << times[k];
  }
  if (include_never) {
    if (!times.empty()) os << ",";
    os << "never";
  }
  return os.str();
}

void ArrivalWindow::validate() const {
  if (times.empty() && !include_never)
    throw input_error("arrival window must not be empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < 0) throw input_error("arrival times must be non-negative");
    if (k && times[k] <= times[k - 1])
      throw input_error("arrival times must be strictly increasing");
  }
}

// --- generation --------------------------------------------------------

System generate_system(const Protocol& protocol, const Context& context,
                       int horizon, const GenOptions& options) {
  if (horizon < 1) throw input_error("horizon must be at least 1");
  if (!protocol.step) throw input_error("protocol has no step function");
  if (!context.env_choices || !context.transition)
    throw input_error("context is incomplete");
  if (context.initial_states.empty())
    throw input_error("context has no initial states");

  const int n = static_cast<int>(context.initial_states[0].locals.size());
  if (n < 1) throw input_error("initial states must cover at least one agent");
  for (const GlobalState& g : context.initial_states) {
    if (static_cast<int>(g.locals.size()) != n)
      throw input_error("initial states disagree on agent count");
    if (!g.env.history.empty())
      throw input_error("initial states must have empty histories");
  }

  auto over_budget = [&](std::size_t count, int time) {
    if (count > options.run_budget) {
      std::ostringstream os;
      os << "run budget exceeded: " << count << " partial runs at time " << time
         << " (budget " << options.run_budget << ")";
      throw resource_error(os.str());
    }
  };

  std::vector<std::vector<GlobalState>> frontier;
  for (const GlobalState& g : context.initial_states) frontier.push_back({g});
  over_budget(frontier.size(), 0);

  for (int t = 0; t < horizon; ++t) {
    std::vector<std::vector<GlobalState>> next;
    for (const auto& prefix : frontier) {
      const GlobalState& g = prefix.back();

      std::vector<AgentMove> moves;
      moves.reserve(n);
      std::vector<HistoryEvent> new_events;
      for (AgentId i = 1; i <= n; ++i) {
        moves.push_back(protocol.step(i, g.locals[i - 1]));
        if (moves.back().action)
          new_events.push_back(HistoryEvent{*moves.back().action, i, t});
      }
      History grown = g.env.history;
      for (HistoryEvent& e : new_events) grown = grown.with(std::move(e));

      std::vector<std::string> choices = context.env_choices(t, g);
      if (choices.empty())
        throw input_error("context offered no environment choice at time " +
                          std::to_string(t));
      for (const std::string& choice : choices) {
        EnvSnapshot snap = context.transition(g, moves, choice, t);
        if (static_cast<int>(snap.locals.size()) != n)
          throw input_error("transition changed the number of agents");
        auto extended = prefix;
        extended.push_back(
            GlobalState{EnvState{grown, std::move(snap.payload)},
                        std::move(snap.locals)});
        next.push_back(std::move(extended));
        over_budget(next.size() + 0, t);
      }
    }
    frontier = std::move(next);
  }

  std::vector<Run> runs;
  runs.reserve(frontier.size());
  for (auto& states : frontier) runs.push_back(Run{std::move(states), ""});

  if (options.deduplicate) {
    std::vector<Run> unique_runs;
    for (auto& r : runs) {
      bool seen = false;
      for (const auto& u : unique_runs)
        if (u.states == r.states) {
          seen = true;
          break;
        }
      if (!seen) unique_runs.push_back(std::move(r));
    }
    runs = std::move(unique_runs);
  }

  return System(std::move(runs), horizon, n, Interpretation{});
}

// --- shared encodings for the network scenarios -------------------------
//
// local:  "t=<time>|v=<own>|rx=[<time>,<from>,<payload>;...]"
// env:    "<extras>|fly=[<arrive>,<from>,<to>,<payload>;...]"
//
// from/to are agent indices, 0 meaning the environment. Entries are kept
// sorted so equal information means equal strings.

namespace {

struct RxEntry {
  int time = 0;
  int from = 0;
  std::string payload;

  auto operator<=>(const RxEntry&) const = default;
};

struct NetLocal {
  int t = 0;
  std::string v = "-";
  std::vector<RxEntry> rx;
};

struct Flight {
  int arrive = 0;
  int from = 0;
  int to = 0;
  std::string payload;

  auto operator<=>(const Flight&) const = default;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string encode_local(const NetLocal& l) {
  std::ostringstream os;
  os << "t=" << l.t << "|v=" << l.v << "|rx=[";
  for (std::size_t k = 0; k < l.rx.size(); ++k) {
    if (k) os << ";";
    os << l.rx[k].time << "," << l.rx[k].from << "," << l.rx[k].payload;
  }
  os << "]";
  return os.str();
}

NetLocal decode_local(const std::string& s) {
  NetLocal l;
  auto fields = split(s, '|');
  l.t = std::stoi(fields.at(0).substr(2));
  l.v = fields.at(1).substr(2);
  std::string list = fields.at(2).substr(4);
  list.pop_back(); // trailing ']'
  if (!list.empty())
    for (const std::string& entry : split(list, ';')) {
      auto parts = split(entry, ',');
      l.rx.push_back(RxEntry{std::stoi(parts.at(0)), std::stoi(parts.at(1)),
                             parts.at(2)});
    }
  return l;
}

std::string encode_env(const std::string& extras, std::vector<Flight> fly) {
  std::sort(fly.begin(), fly.end());
  std::ostringstream os;
  if (!extras.empty()) os << extras << "|";
  os << "fly=[";
  for (std::size_t k = 0; k < fly.size(); ++k) {
    if (k) os << ";";
    os << fly[k].arrive << "," << fly[k].from << "," << fly[k].to << ","
       << fly[k].payload;
  }
  os << "]";
  return os.str();
}

std::pair<std::string, std::vector<Flight>> decode_env(const std::string& s) {
  auto pos = s.find("fly=[");
  std::string extras = pos == 0 ? "" : s.substr(0, pos - 1);
  std::string list = s.substr(pos + 5);
  list.pop_back();
  std::vector<Flight> fly;
  if (!list.empty())
    for (const std::string& entry : split(list, ';')) {
      auto parts = split(entry, ',');
      fly.push_back(Flight{std::stoi(parts.at(0)), std::stoi(parts.at(1)),
                           std::stoi(parts.at(2)), parts.at(3)});
    }
  return {extras, fly};
}

// Moves messages along: collects sends (delivery after the edge delay),
// delivers everything due at t+1 into the recipients' logs, advances the
// clock. extras_after lets the caller update its own env bookkeeping.
EnvSnapshot net_transition(const GlobalState& g,
                           const std::vector<AgentMove>& moves,
                           std::vector<Flight> injected,
                           const std::string& extras_after,
                           const NetworkTopology& topo, int t) {
  auto [extras, fly] = decode_env(g.env.payload);
  (void)extras;
  for (Flight& f : injected) fly.push_back(std::move(f));
  for (std::size_t i = 0; i < moves.size(); ++i)
    for (const OutMessage& m : moves[i].sends) {
      AgentId from = static_cast<AgentId>(i + 1);
      fly.push_back(Flight{t + topo.delay(from, m.to), from, m.to, m.payload});
    }

  std::vector<NetLocal> locals;
  locals.reserve(g.locals.size());
  for (const LocalState& l : g.locals) locals.push_back(decode_local(l.value));

  std::vector<Flight> remaining;
  for (Flight& f : fly) {
    if (f.arrive == t + 1)
      locals[f.to - 1].rx.push_back(RxEntry{f.arrive, f.from, f.payload});
    else
      remaining.push_back(std::move(f));
  }

  EnvSnapshot snap;
  snap.payload = encode_env(extras_after, std::move(remaining));
  for (NetLocal& l : locals) {
    l.t = t + 1;
    std::sort(l.rx.begin(), l.rx.end());
    snap.locals.push_back(LocalState{encode_local(l)});
  }
  return snap;
}

GlobalState net_initial(const std::string& extras,
                        const std::vector<std::string>& values) {
  GlobalState g;
  g.env.payload = encode_env(extras, {});
  for (const std::string& v : values) {
    NetLocal l;
    l.v = v;
    g.locals.push_back(LocalState{encode_local(l)});
  }
  return g;
}

// One-shot external input: delivered to agent 1 at one of the window
// times, or never. The pending/done flag lives in the env extras.
struct TriggerPlan {
  ArrivalWindow window;
  std::string payload_prefix; // payload is <prefix>_<delivery time>

  std::string extras_waiting() const { return "in=-"; }
  std::string extras_done(int s) const { return "in=" + std::to_string(s); }

  bool delivered(const std::string& extras) const {
    return extras != extras_waiting();
  }

  std::vector<std::string> choices(int t, const GlobalState& g) const {
    auto [extras, fly] = decode_env(g.env.payload);
    (void)fly;
    if (delivered(extras)) return {"hold"};
    bool due = std::find(window.times.begin(), window.times.end(), t) !=
               window.times.end();
    if (!due) return {"hold"};
    bool later = window.include_never ||
                 window.times.back() > t;
    if (later) return {"deliver", "hold"};
    return {"deliver"};
  }

  // extras + injected flights for this step
  std::pair<std::string, std::vector<Flight>> apply(const std::string& extras,
                                                    const std::string& choice,
                                                    int t) const {
    if (choice == "deliver" && !delivered(extras))
      return {extras_done(t),
              {Flight{t + 1, 0, 1, payload_prefix + "_" + std::to_string(t)}}};
    return {extras, {}};
  }

  // delivery time of a run, read off the last state's extras
  std::optional<int> delivery_time(const Run& run) const {
    auto [extras, fly] = decode_env(run.states.back().env.payload);
    (void)fly;
    if (!delivered(extras)) return std::nullopt;
    return std::stoi(extras.substr(3));
  }
};

int require_auto_horizon(int horizon, int fallback) {
  return horizon < 0 ? fallback : horizon;
}

std::vector<Run> relabel(const System& sys,
                         const std::function<std::string(const Run&)>& name) {
  std::vector<Run> runs;
  runs.reserve(sys.run_count());
  for (int r = 0; r < sys.run_count(); ++r) {
    Run run = sys.run(r);
    run.label = name(run);
    runs.push_back(std::move(run));
  }
  return runs;
}

} // namespace

// --- ctm ---------------------------------------------------------------

CtmSystem scenario_ctm(const NetworkTopology& topology, std::vector<int> domain,
                       const std::vector<int>& designated, CtmMode mode,
                       int horizon, const GenOptions& options) {
  topology.validate();
  const int n = topology.agent_count;
  std::vector<AgentId> parent = topology.parents_toward(1);

  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  if (domain.empty()) throw input_error("value domain must not be empty");
  for (int v : domain)
    if (v < 0) throw input_error("domain values must be non-negative");
  if (static_cast<int>(designated.size()) != n)
    throw input_error("designated tuple must list one value per agent");
  for (int v : designated)
    if (!std::binary_search(domain.begin(), domain.end(), v))
      throw input_error("designated value outside the domain: " +
                        std::to_string(v));

  std::vector<int> dist = topology.distances_from(1);
  int ecc = *std::max_element(dist.begin() + 1, dist.end());
  const int T = require_auto_horizon(horizon, ecc + 2);

  // what each agent knows as the maximum so far, at a given time
  auto known_max = [](const NetLocal& l, int upto) {
    int m = std::stoi(l.v);
    for (const RxEntry& e : l.rx)
      if (e.time <= upto) m = std::max(m, std::stoi(e.payload));
    return m;
  };

  Protocol protocol;
  if (mode == CtmMode::ClockedFlood) {
    protocol.step = [parent, known_max](AgentId i, const LocalState& state) {
      AgentMove move;
      if (parent[i] == 0) return move; // the collector only listens
      NetLocal l = decode_local(state.value);
      int now = known_max(l, l.t);
      bool improved = l.t == 0 || now > known_max(l, l.t - 1);
      if (improved)
        move.sends.push_back(OutMessage{parent[i], std::to_string(now)});
      return move;
    };
  } else {
    // each agent reports once, as soon as every subtree report is in
    std::vector<int> send_time(n + 1, 0);
    std::vector<AgentId> order; // leaves first
    for (AgentId i = 1; i <= n; ++i) order.push_back(i);
    std::sort(order.begin(), order.end(), [&dist](AgentId a, AgentId b) {
      return dist[a] > dist[b];
    });
    for (AgentId i : order) {
      if (parent[i] == 0) continue;
      int ready = 0;
      for (AgentId c = 1; c <= n; ++c)
        if (parent[c] == i)
          ready = std::max(ready, send_time[c] + topology.delay(c, i));
      send_time[i] = ready;
    }
    protocol.step = [parent, send_time, known_max](AgentId i,
                                                   const LocalState& state) {
      AgentMove move;
      if (parent[i] == 0) return move;
      NetLocal l = decode_local(state.value);
      if (l.t == send_time[i])
        move.sends.push_back(
            OutMessage{parent[i], std::to_string(known_max(l, l.t))});
      return move;
    };
  }

  Context context;
  std::vector<std::vector<int>> tuples{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> grown;
    for (const auto& tup : tuples)
      for (int v : domain) {
        auto next = tup;
        next.push_back(v);
        grown.push_back(std::move(next));
      }
    tuples = std::move(grown);
  }
  for (const auto& tup : tuples) {
    std::vector<std::string> values;
    for (int v : tup) values.push_back(std::to_string(v));
    context.initial_states.push_back(net_initial("", values));
  }
  context.env_choices = [](int, const GlobalState&) {
    return std::vector<std::string>{"-"};
  };
  context.transition = [topology](const GlobalState& g,
                                  const std::vector<AgentMove>& moves,
                                  const std::string&, int t) {
    return net_transition(g, moves, {}, "", topology, t);
  };

  System bare = generate_system(protocol, context, T, options);

  auto run_values = [](const Run& run) {
    std::vector<int> values;
    for (const LocalState& l : run.states[0].locals)
      values.push_back(std::stoi(decode_local(l.value).v));
    return values;
  };
  auto run_max = [&run_values](const Run& run) {
    auto values = run_values(run);
    return *std::max_element(values.begin(), values.end());
  };

  std::vector<Run> runs = relabel(bare, [&run_values](const Run& run) {
    std::string label = "v";
    auto values = run_values(run);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k) label += "_";
      label += std::to_string(values[k]);
    }
    return label;
  });

  InterpretationBuilder props(static_cast<int>(runs.size()), T);
  for (int v : domain)
    props.add("max_" + std::to_string(v), [&runs, &run_max, v](int r, int) {
      return run_max(runs[r]) == v;
    });

  System valued(std::move(runs), T, n, props.take());

  // agent 1 announces the maximum at the first moment it knows it
  Evaluator ev(valued);
  std::map<int, std::vector<bool>> knows;
  for (int v : domain)
    knows.emplace(v, ev.extension(Formula::know(
                         1, Formula::prop("max_" + std::to_string(v)))));

  std::vector<Run> final_runs;
  for (int r = 0; r < valued.run_count(); ++r) {
    Run run = valued.run(r);
    int v = run_max(run);
    const std::vector<bool>& ext = knows.at(v);
    for (int t = 0; t < T; ++t)
      if (ext[valued.point_index(Point{r, t})]) {
        HistoryEvent print{Action{"print_" + std::to_string(v)}, 1, t};
        for (int u = t + 1; u <= T; ++u)
          run.states[u].env.history = run.states[u].env.history.with(print);
        break;
      }
    final_runs.push_back(std::move(run));
  }

  Interpretation interp;
  {
    InterpretationBuilder again(static_cast<int>(final_runs.size()), T);
    for (int v : domain)
      again.add("max_" + std::to_string(v),
                [&final_runs, &run_max, v](int r, int) {
                  return run_max(final_runs[r]) == v;
                });
    interp = again.take();
  }

  CtmSystem out{System(std::move(final_runs), T, n, std::move(interp)), -1};

  std::string want = "v";
  for (std::size_t k = 0; k < designated.size(); ++k) {
    if (k) want += "_";
    want += std::to_string(designated[k]);
  }
  out.designated_run = *out.system.run_by_label(want);
  return out;
}

// --- firing squad ------------------------------------------------------

System scenario_firing_squad(int n, int relay_delay, const ArrivalWindow& window,
                             int horizon, const GenOptions& options) {
  if (n < 2) throw input_error("firing squad needs at least two agents");
  if (relay_delay < 1) throw input_error("relay delay must be at least 1");
  window.validate();

  NetworkTopology topo = NetworkTopology::path(n);
  topo.delays.assign(topo.edges.size(), relay_delay);

  int last_start = window.times.empty() ? 0 : window.times.back();
  int last_fire = last_start + 1 + (n - 1) * relay_delay;
  const int T = require_auto_horizon(horizon, last_fire + 2);
  if (!window.times.empty() && window.times.back() > T - 1)
    throw input_error("arrival window extends beyond the horizon");

  TriggerPlan plan{window, "go"};

  Protocol protocol;
  protocol.step = [n, relay_delay](AgentId i, const LocalState& state) {
    AgentMove move;
    NetLocal l = decode_local(state.value);
    if (l.rx.empty()) return move;
    const RxEntry& got = l.rx.front();
    int start = std::stoi(got.payload.substr(3)); // go_<s>
    if (l.t == got.time && i < n)
      move.sends.push_back(OutMessage{i + 1, got.payload});
    if (l.t == start + 1 + (n - 1) * relay_delay)
      move.action = Action{"fire_" + std::to_string(i)};
    return move;
  };

  Context context;
  context.initial_states.push_back(
      net_initial(plan.extras_waiting(), std::vector<std::string>(n, "-")));
  context.env_choices = [plan](int t, const GlobalState& g) {
    return plan.choices(t, g);
  };
  context.transition = [plan, topo](const GlobalState& g,
                                    const std::vector<AgentMove>& moves,
                                    const std::string& choice, int t) {
    auto [extras, fly] = decode_env(g.env.payload);
    (void)fly;
    auto [after, injected] = plan.apply(extras, choice, t);
    return net_transition(g, moves, std::move(injected), after, topo, t);
  };

  System bare = generate_system(protocol, context, T, options);

  std::vector<Run> runs = relabel(bare, [&plan](const Run& run) {
    auto s = plan.delivery_time(run);
    return s ? "go_" + std::to_string(*s) : std::string("no_go");
  });

  std::vector<std::optional<int>> starts;
  for (const Run& run : runs) starts.push_back(plan.delivery_time(run));

  InterpretationBuilder props(static_cast<int>(runs.size()), T);
  props.add("psi_go", [&starts](int r, int t) {
    return starts[r].has_value() && t >= *starts[r] + 1;
  });

  return System(std::move(runs), T, n, props.take());
}

// --- lamp --------------------------------------------------------------

System scenario_lamp(bool include_burnt) {
  auto flat = [](const std::string& local, const std::string& env) {
    std::vector<GlobalState> states;
    for (int t = 0; t <= 1; ++t)
      states.push_back(GlobalState{EnvState{History{}, env},
                                   {LocalState{local}}});
    return states;
  };
  std::vector<Run> runs;
  runs.push_back(Run{flat("ON", "lamp=lit"), "on_lit"});
  if (include_burnt) runs.push_back(Run{flat("ON", "lamp=dark"), "on_burnt"});
  runs.push_back(Run{flat("OFF", "lamp=dark"), "off"});

  InterpretationBuilder props(static_cast<int>(runs.size()), 1);
  std::vector<bool> lit;
  for (const Run& r : runs) lit.push_back(r.states[0].env.payload == "lamp=lit");
  props.add("lit", [&lit](int r, int) { return lit[r]; });

  return System(std::move(runs), 1, 1, props.take(), {"switch"});
}

// --- message -----------------------------------------------------------

System scenario_message(bool reliable) {
  const int T = 3;
  auto alice = [](int t, bool sent) {
    return LocalState{"t=" + std::to_string(t) + "|sent=" +
                      (sent && t >= 1 ? "1" : "-")};
  };
  auto bob = [](int t, bool got) {
    return LocalState{"t=" + std::to_string(t) + "|rcv=" +
                      (got && t >= 2 ? "2" : "-")};
  };
  auto make_run = [&](bool sent, bool got, const std::string& label) {
    std::vector<HistoryEvent> events;
    if (sent) events.push_back(HistoryEvent{Action{"send"}, 1, 1});
    Run run;
    run.label = label;
    for (int t = 0; t <= T; ++t) {
      History h;
      if (sent && t >= 2) h = History::from_events(events);
      run.states.push_back(
          GlobalState{EnvState{h, got ? "channel=ok" : "channel=drop"},
                      {alice(t, sent), bob(t, got)}});
    }
    return run;
  };

  std::vector<Run> runs;
  runs.push_back(make_run(true, true, "delivered"));
  if (!reliable) runs.push_back(make_run(true, false, "lost"));
  runs.push_back(make_run(false, false, "silent"));

  InterpretationBuilder props(static_cast<int>(runs.size()), T);
  props.add("delivered",
            [&runs](int r, int t) { return runs[r].label == "delivered" && t >= 2; });

  return System(std::move(runs), T, 2, props.take(), {"alice", "bob"});
}

// --- atm ---------------------------------------------------------------

System scenario_atm(const std::vector<int>& balance_domain, int horizon) {
  if (balance_domain.empty()) throw input_error("balance domain must not be empty");
  std::vector<int> domain = balance_domain;
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  const int T = horizon;
  if (T < 2) throw input_error("horizon must be at least 2");

  NetworkTopology topo; // bank line modeled as environment; no peer edges
  topo.agent_count = 1;

  Protocol protocol;
  protocol.step = [](AgentId, const LocalState& state) {
    AgentMove move;
    NetLocal l = decode_local(state.value);
    if (!l.rx.empty()) {
      const RxEntry& got = l.rx.front();
      int balance = std::stoi(got.payload.substr(4)); // bal_<b>
      if (l.t == got.time && balance >= 1) move.action = Action{"dispense"};
    }
    return move;
  };

  Context context;
  for (int b : domain)
    context.initial_states.push_back(
        net_initial("bal=" + std::to_string(b), {"-"}));
  context.env_choices = [](int t, const GlobalState&) {
    if (t == 0) return std::vector<std::string>{"ok", "fail"};
    return std::vector<std::string>{"-"};
  };
  context.transition = [topo](const GlobalState& g,
                              const std::vector<AgentMove>& moves,
                              const std::string& choice, int t) {
    auto [extras, fly] = decode_env(g.env.payload);
    (void)fly;
    std::vector<Flight> injected;
    if (t == 0 && choice == "ok")
      injected.push_back(Flight{1, 0, 1, "bal_" + extras.substr(4)});
    return net_transition(g, moves, std::move(injected), extras, topo, t);
  };

  System bare = generate_system(protocol, context, T, {});

  auto balance_of = [](const Run& run) {
    auto [extras, fly] = decode_env(run.states[0].env.payload);
    (void)fly;
    return std::stoi(extras.substr(4));
  };
  auto replied = [](const Run& run) {
    return !decode_local(run.states.back().locals[0].value).rx.empty();
  };

  std::vector<Run> runs = relabel(bare, [&](const Run& run) {
    return (replied(run) ? "ok_" : "fail_") + std::to_string(balance_of(run));
  });

  InterpretationBuilder props(static_cast<int>(runs.size()), T);
  props.add("good_credit",
            [&runs, &balance_of](int r, int) { return balance_of(runs[r]) >= 1; });

  return System(std::move(runs), T, 1, props.take(), {"atm"});
}

// --- ordered chain -----------------------------------------------------

System scenario_ordered_chain(int k, const ArrivalWindow& trigger_window,
                              int relay_delay, int horizon,
                              const GenOptions& options) {
  if (k < 1) throw input_error("chain needs at least one agent");
  if (relay_delay < 1) throw input_error("relay delay must be at least 1");
  trigger_window.validate();

  NetworkTopology topo = NetworkTopology::path(k);
  topo.delays.assign(topo.edges.size(), relay_delay);

  int last_start = trigger_window.times.empty() ? 0 : trigger_window.times.back();
  int last_act = last_start + 1 + (k - 1) * relay_delay;
  const int T = require_auto_horizon(horizon, last_act + 2);
  if (!trigger_window.times.empty() && trigger_window.times.back() > T - 1)
    throw input_error("trigger window extends beyond the horizon");

  TriggerPlan plan{trigger_window, "cue"};

  Protocol protocol;
  protocol.step = [k](AgentId i, const LocalState& state) {
    AgentMove move;
    NetLocal l = decode_local(state.value);
    if (l.rx.empty()) return move;
    const RxEntry& got = l.rx.front();
    if (l.t == got.time) {
      move.action = Action{"a" + std::to_string(i)};
      if (i < k) move.sends.push_back(OutMessage{i + 1, got.payload});
    }
    return move;
  };

  Context context;
  context.initial_states.push_back(
      net_initial(plan.extras_waiting(), std::vector<std::string>(k, "-")));
  context.env_choices = [plan](int t, const GlobalState& g) {
    return plan.choices(t, g);
  };
  context.transition = [plan, topo](const GlobalState& g,
                                    const std::vector<AgentMove>& moves,
                                    const std::string& choice, int t) {
    auto [extras, fly] = decode_env(g.env.payload);
    (void)fly;
    auto [after, injected] = plan.apply(extras, choice, t);
    return net_transition(g, moves, std::move(injected), after, topo, t);
  };

  System bare = generate_system(protocol, context, T, options);

  std::vector<Run> runs = relabel(bare, [&plan](const Run& run) {
    auto s = plan.delivery_time(run);
    return s ? "trigger_" + std::to_string(*s) : std::string("no_trigger");
  });

  std::vector<std::optional<int>> starts;
  for (const Run& run : runs) starts.push_back(plan.delivery_time(run));

  InterpretationBuilder props(static_cast<int>(runs.size()), T);
  props.add("psi_input", [&starts](int r, int t) {
    return starts[r].has_value() && t >= *starts[r] + 1;
  });

  return System(std::move(runs), T, k, props.take());
}

} // namespace kop
