#include "kop/sysdoc.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "kop/errors.hpp"

namespace kop {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

} // namespace

std::string render_system(const System& sys) {
  std::ostringstream os;
  os << "AGENTS " << sys.agent_count();
  for (int i = 1; i <= sys.agent_count(); ++i)
    os << " " << quoted(sys.agent_name(i));
  os << "\n";
  os << "HORIZON " << sys.horizon() << "\n";
  os << "PROPS";
  for (const std::string& p : sys.interpretation().props()) os << " " << quoted(p);
  os << "\n";

  for (int r = 0; r < sys.run_count(); ++r) {
    const Run& run = sys.run(r);
    os << "RUN " << r << " " << quoted(run.label) << "\n";
    for (int t = 0; t <= sys.horizon(); ++t) {
      const GlobalState& g = run.states[t];
      os << "STATE " << t << "\n";
      os << "ENV " << quoted(g.env.payload) << "\n";
      for (int i = 1; i <= sys.agent_count(); ++i)
        os << "LOCAL " << i << " " << quoted(g.locals[i - 1].value) << "\n";
      os << "HISTORY " << g.env.history.size() << "\n";
      for (const HistoryEvent& e : g.env.history)
        os << "EVENT " << quoted(e.action.label) << " " << e.agent << " "
           << e.time << "\n";
    }
  }

  const auto& props = sys.interpretation().props();
  os << "INTERP " << props.size() * sys.point_count() << "\n";
  for (const std::string& p : props) {
    const auto& table = sys.interpretation().table(p);
    for (int r = 0; r < sys.run_count(); ++r)
      for (int t = 0; t <= sys.horizon(); ++t)
        os << "ASSIGN " << quoted(p) << " " << r << " " << t << " "
           << (table[sys.point_index(Point{r, t})] ? "T" : "F") << "\n";
  }
  return os.str();
}

namespace {

struct Token {
  enum class Kind { Word, Int, Quoted } kind;
  std::string text;
  long value = 0;
};

class DocParser {
public:
  DocParser(const std::string& text, const std::string& source)
      : source_(source) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines_.push_back(line);
  }

  System parse();

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error(source_ + ":" + std::to_string(lineno_) + ": " + msg);
  }

  // Advances to the next meaningful line and tokenizes it.
  bool next_line() {
    while (cursor_ < lines_.size()) {
      lineno_ = ++cursor_;
      if (tokenize(lines_[cursor_ - 1])) return true;
    }
    lineno_ = lines_.size();
    return false;
  }

  bool tokenize(const std::string& line) {
    tokens_.clear();
    std::size_t p = 0;
    while (p < line.size()) {
      char c = line[p];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++p;
        continue;
      }
      if (c == '#') break;
      if (c == '"') {
        std::string text;
        ++p;
        bool closed = false;
        while (p < line.size()) {
          char d = line[p++];
          if (d == '\\') {
            if (p >= line.size()) fail("dangling escape in quoted token");
            text.push_back(line[p++]);
          } else if (d == '"') {
            closed = true;
            break;
          } else {
            text.push_back(d);
          }
        }
        if (!closed) fail("unterminated quoted token");
        tokens_.push_back(Token{Token::Kind::Quoted, std::move(text), 0});
        continue;
      }
      std::size_t start = p;
      while (p < line.size() && line[p] != ' ' && line[p] != '\t' &&
             line[p] != '\r' && line[p] != '#')
        ++p;
      std::string word = line.substr(start, p - start);
      bool numeric =
          word.find_first_not_of("0123456789") == std::string::npos ||
          (word.size() > 1 && word[0] == '-' &&
           word.find_first_not_of("0123456789", 1) == std::string::npos);
      if (numeric) {
        tokens_.push_back(Token{Token::Kind::Int, word, std::stol(word)});
      } else {
        tokens_.push_back(Token{Token::Kind::Word, std::move(word), 0});
      }
    }
    return !tokens_.empty();
  }

  void expect_line(const std::string& keyword) {
    if (!next_line()) fail("expected " + keyword + " line, got end of input");
    if (tokens_[0].kind != Token::Kind::Word || tokens_[0].text != keyword)
      fail("expected " + keyword + " line");
  }

  bool line_is(const std::string& keyword) const {
    return !tokens_.empty() && tokens_[0].kind == Token::Kind::Word &&
           tokens_[0].text == keyword;
  }

  const Token& arg(std::size_t k) const {
    if (k + 1 >= tokens_.size()) fail("missing argument");
    return tokens_[k + 1];
  }

  long int_arg(std::size_t k) const {
    const Token& t = arg(k);
    if (t.kind != Token::Kind::Int) fail("expected an integer argument");
    return t.value;
  }

  std::string quoted_arg(std::size_t k) const {
    const Token& t = arg(k);
    if (t.kind != Token::Kind::Quoted) fail("expected a quoted token");
    return t.text;
  }

  void end_of_line(std::size_t args_used) const {
    if (tokens_.size() != args_used + 1) fail("unexpected extra arguments");
  }

  std::string source_;
  std::vector<std::string> lines_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
  std::size_t lineno_ = 0;
};

System DocParser::parse() {
  expect_line("AGENTS");
  int n = static_cast<int>(int_arg(0));
  if (n < 1) fail("agent count must be at least one");
  std::vector<std::string> agent_names;
  for (int i = 0; i < n; ++i) agent_names.push_back(quoted_arg(1 + i));
  end_of_line(1 + n);

  expect_line("HORIZON");
  int horizon = static_cast<int>(int_arg(0));
  if (horizon < 0) fail("horizon must be non-negative");
  end_of_line(1);

  expect_line("PROPS");
  std::vector<std::string> props;
  for (std::size_t k = 1; k < tokens_.size(); ++k) {
    if (tokens_[k].kind != Token::Kind::Quoted) fail("expected a quoted token");
    props.push_back(tokens_[k].text);
  }

  std::vector<Run> runs;
  if (!next_line()) fail("expected RUN line, got end of input");
  while (line_is("RUN")) {
    if (static_cast<int>(int_arg(0)) != static_cast<int>(runs.size()))
      fail("run indices must be consecutive from 0");
    Run run;
    run.label = quoted_arg(1);
    end_of_line(2);

    for (int t = 0; t <= horizon; ++t) {
      expect_line("STATE");
      if (static_cast<int>(int_arg(0)) != t)
        fail("expected STATE " + std::to_string(t));
      end_of_line(1);

      expect_line("ENV");
      GlobalState g;
      g.env.payload = quoted_arg(0);
      end_of_line(1);

      for (int i = 1; i <= n; ++i) {
        expect_line("LOCAL");
        if (static_cast<int>(int_arg(0)) != i)
          fail("expected LOCAL " + std::to_string(i));
        g.locals.push_back(LocalState{quoted_arg(1)});
        end_of_line(2);
      }

      expect_line("HISTORY");
      long count = int_arg(0);
      if (count < 0) fail("event count must be non-negative");
      end_of_line(1);
      std::vector<HistoryEvent> events;
      for (long e = 0; e < count; ++e) {
        expect_line("EVENT");
        HistoryEvent ev;
        ev.action.label = quoted_arg(0);
        ev.agent = static_cast<AgentId>(int_arg(1));
        ev.time = static_cast<int>(int_arg(2));
        end_of_line(3);
        if (ev.agent < 1 || ev.agent > n) fail("event agent out of range");
        if (ev.time < 0 || ev.time >= t)
          fail("event time must lie before the state's time");
        events.push_back(std::move(ev));
      }
      g.env.history = History::from_events(std::move(events));
      if (t > 0 && !g.env.history.includes(run.states.back().env.history))
        fail("history loses events recorded at earlier times");
      run.states.push_back(std::move(g));
    }
    runs.push_back(std::move(run));
    if (!next_line()) fail("expected RUN or INTERP line, got end of input");
  }

  if (!line_is("INTERP")) fail("expected RUN or INTERP line");
  long assign_count = int_arg(0);
  end_of_line(1);
  const long points = static_cast<long>(runs.size()) * (horizon + 1);
  if (assign_count != static_cast<long>(props.size()) * points)
    fail("INTERP count must equal props times points (" +
         std::to_string(props.size() * points) + ")");

  std::vector<std::vector<signed char>> tables(
      props.size(), std::vector<signed char>(points, -1));
  auto prop_index = [&](const std::string& name) -> std::size_t {
    for (std::size_t k = 0; k < props.size(); ++k)
      if (props[k] == name) return k;
    fail("assignment to undeclared proposition: " + name);
  };
  for (long a = 0; a < assign_count; ++a) {
    expect_line("ASSIGN");
    std::size_t prop = prop_index(quoted_arg(0));
    long r = int_arg(1);
    long t = int_arg(2);
    const Token& v = arg(3);
    end_of_line(4);
    if (r < 0 || r >= static_cast<long>(runs.size())) fail("run index out of range");
    if (t < 0 || t > horizon) fail("time out of range");
    bool value;
    if (v.kind == Token::Kind::Word && v.text == "T") value = true;
    else if (v.kind == Token::Kind::Word && v.text == "F") value = false;
    else fail("expected T or F");
    signed char& cell = tables[prop][r * (horizon + 1) + t];
    if (cell != -1) fail("duplicate assignment");
    cell = value ? 1 : 0;
  }
  if (next_line()) fail("unexpected content after assignments");

  Interpretation interp;
  for (std::size_t k = 0; k < props.size(); ++k) {
    std::vector<bool> table(points);
    for (long idx = 0; idx < points; ++idx) {
      if (tables[k][idx] == -1)
        throw input_error(source_ + ": proposition \"" + props[k] +
                          "\" is not assigned at every point");
      table[idx] = tables[k][idx] == 1;
    }
    interp.declare(props[k], std::move(table));
  }

  try {
    return System(std::move(runs), horizon, n, std::move(interp),
                  std::move(agent_names));
  } catch (const input_error& e) {
    throw input_error(source_ + ": " + e.what());
  }
}

} // namespace

System parse_system(const std::string& text, const std::string& source) {
  return DocParser(text, source).parse();
}

System load_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str(), path);
}

void write_system_file(const System& sys, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << render_system(sys);
}

} // namespace kop
