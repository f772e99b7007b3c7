#pragma once

#include <string>

#include "kop/properties.hpp"

namespace kop {

// Human-readable multi-line report. When sys is given, points carry run
// labels next to their indices.
std::string render_report_text(const VerificationReport& report,
                               const System* sys = nullptr);

// JSON form: {"theorem", "hypotheses":[{"name","holds","witness"?}...],
// "conclusionHolds"?, "subchecks":[...], "counterexamples":[{"run","time"}...],
// "note"}.
std::string render_report_json(const VerificationReport& report);

} // namespace kop
