#pragma once

#include <vector>

#include "kop/formula.hpp"
#include "kop/kernel.hpp"

// Independent second evaluator used to cross-check the main one. It takes
// the textbook route everywhere: action atoms quantify over all later
// states, knowledge scans all point pairs comparing local states directly,
// and common knowledge folds "everyone knows" to the point-count depth.
// Quadratic and worse on purpose; only run it on small systems.
namespace koptest {

bool oracle_does(const kop::System& sys, kop::Point p, kop::AgentId i,
                 const kop::Action& a);
bool oracle_did(const kop::System& sys, kop::Point p, kop::AgentId i,
                const kop::Action& a);

std::vector<bool> oracle_extension(const kop::System& sys, const kop::Formula& f);
bool oracle_eval(const kop::System& sys, kop::Point p, const kop::Formula& f);

std::vector<bool> oracle_everyone(const kop::System& sys,
                                  const std::vector<kop::AgentId>& group,
                                  const std::vector<bool>& ext);
std::vector<bool> oracle_nested(const kop::System& sys,
                                const std::vector<kop::AgentId>& group,
                                const kop::Formula& f, int depth);
bool oracle_common(const kop::System& sys, kop::Point p,
                   const std::vector<kop::AgentId>& group, const kop::Formula& f);

} // namespace koptest
