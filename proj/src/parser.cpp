#include "kop/parser.hpp"

#include <cctype>
#include <cstdlib>

#include "kop/errors.hpp"

namespace kop {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool take(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool take(const std::string& s) {
    skip_ws();
    if (text.compare(pos, s.size(), s) == 0) {
      pos += s.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw input_error("formula, column " + std::to_string(pos + 1) + ": " + what);
  }

  void expect(char c, const std::string& ctx) {
    if (!take(c)) fail(std::string("expected '") + c + "' " + ctx);
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Identifier or non-negative integer; empty if neither follows.
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && ident_start(text[pos])) {
      while (pos < text.size() && ident_char(text[pos])) ++pos;
    } else {
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    }
    return text.substr(start, pos - start);
  }
};

struct Parser {
  Lexer lex;
  const std::vector<std::string>& agents;

  Parser(const std::string& text, const std::vector<std::string>& agent_names)
      : lex(text), agents(agent_names) {}

  AgentId agent_ref() {
    std::string tok = lex.ident();
    if (tok.empty()) lex.fail("expected an agent index or name");
    try {
      return resolve_agent(tok, agents);
    } catch (const input_error& e) {
      lex.fail(e.what());
    }
  }

  Formula action_atom(bool present) {
    lex.expect('[', "after does/did");
    AgentId i = agent_ref();
    lex.expect(']', "after agent");
    lex.expect('(', "before action label");
    std::string label = lex.ident();
    if (label.empty()) lex.fail("expected an action label");
    lex.expect(')', "after action label");
    return present ? Formula::does(i, Action{label}) : Formula::did(i, Action{label});
  }

  Formula unary() {
    if (lex.take('!')) return Formula::negate(unary());
    if (lex.take('(')) {
      Formula f = formula();
      lex.expect(')', "to close group");
      return f;
    }

    std::size_t mark = lex.pos;
    std::string word = lex.ident();
    if (word.empty()) lex.fail("expected a formula");

    if (word == "K" && lex.peek() == '[') {
      lex.take('[');
      AgentId i = agent_ref();
      lex.expect(']', "after agent");
      return Formula::know(i, unary());
    }
    if (word == "C" && lex.peek() == '[') {
      lex.take('[');
      lex.expect('{', "to open agent group");
      std::vector<AgentId> group;
      group.push_back(agent_ref());
      while (lex.take(',')) group.push_back(agent_ref());
      lex.expect('}', "to close agent group");
      lex.expect(']', "after agent group");
      return Formula::common(std::move(group), unary());
    }
    if (word == "does" && lex.peek() == '[') return action_atom(true);
    if (word == "did" && lex.peek() == '[') return action_atom(false);

    if (!Lexer::ident_start(word[0])) {
      lex.pos = mark;
      lex.fail("expected a formula");
    }
    return Formula::prop(word);
  }

  Formula conj() {
    Formula f = unary();
    while (lex.take('&')) f = Formula::conj(std::move(f), unary());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (true) {
      lex.skip_ws();
      // '|' but not part of '->'-free text; single char, no ambiguity
      if (!lex.take('|')) return f;
      f = Formula::disj(std::move(f), conj());
    }
  }

  Formula formula() {
    Formula f = disj();
    if (lex.take("->")) return Formula::implies(std::move(f), formula());
    return f;
  }
};

} // namespace

AgentId resolve_agent(const std::string& token,
                      const std::vector<std::string>& agent_names) {
  for (std::size_t k = 0; k < agent_names.size(); ++k)
    if (agent_names[k] == token) return static_cast<AgentId>(k + 1);
  if (!token.empty() &&
      std::isdigit(static_cast<unsigned char>(token[0]))) {
    char* end = nullptr;
    long v = std::strtol(token.c_str(), &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<AgentId>(v);
  }
  throw input_error("unknown agent: " + token);
}

Formula parse_formula(const std::string& text,
                      const std::vector<std::string>& agent_names) {
  Parser p(text, agent_names);
  Formula f = p.formula();
  if (!p.lex.eof()) p.lex.fail("unexpected trailing input");
  return f;
}

} // namespace kop
