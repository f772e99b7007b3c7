#pragma once

#include <string>
#include <vector>

#include "kop/formula.hpp"

namespace kop {

// Concrete syntax:
//
//   formula  :=  disj ( "->" formula )?          right-associative
//   disj     :=  conj ( "|" conj )*
//   conj     :=  unary ( "&" unary )*
//   unary    :=  "!" unary
//             |  "K" "[" agent "]" unary
//             |  "C" "[" "{" agent ("," agent)* "}" "]" unary
//             |  "does" "[" agent "]" "(" ident ")"
//             |  "did"  "[" agent "]" "(" ident ")"
//             |  ident
//             |  "(" formula ")"
//
// Precedence: ! binds tightest, then &, then |, then ->. Modal operators
// bind like !. An agent is a 1-based index or one of the supplied names;
// a bare ident is a primitive proposition.
//
// Throws input_error with a column position on malformed input.
Formula parse_formula(const std::string& text,
                      const std::vector<std::string>& agent_names = {});

// Resolves an agent given as index or name. Throws input_error.
AgentId resolve_agent(const std::string& token,
                      const std::vector<std::string>& agent_names);

} // namespace kop
