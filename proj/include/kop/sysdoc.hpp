#pragma once

#include <iosfwd>
#include <string>

#include "kop/kernel.hpp"

namespace kop {

// Plain-text system document. Line-oriented; integers and quoted tokens
// only. Canonical layout, in order:
//
//   AGENTS <n> <name_1> ... <name_n>
//   HORIZON <T>
//   PROPS <p_1> ... <p_m>
//   RUN <index> <label>                    (label may be "")
//   STATE <t>
//   ENV <payload>
//   LOCAL <agent> <value>                  (agents 1..n in order)
//   HISTORY <count>
//   EVENT <action> <agent> <time>          (count lines)
//   ... further STATE blocks, further RUN blocks ...
//   INTERP <count>
//   ASSIGN <prop> <run> <time> T|F         (count lines, total)
//
// Rendering is canonical (events and assignments sorted), so
// render(parse(render(s))) == render(s). The parser additionally accepts
// blank lines and '#' comment lines, and any EVENT/ASSIGN order.
std::string render_system(const System& sys);

// Throws input_error anchored as "<source>:<line>: ..." on bad input.
System parse_system(const std::string& text, const std::string& source = "input");

System load_system_file(const std::string& path);
void write_system_file(const System& sys, const std::string& path);

} // namespace kop
