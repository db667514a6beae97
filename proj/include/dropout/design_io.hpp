#pragma once

#include <iosfwd>
#include <string>

#include "dropout/design.hpp"

namespace dropout::design {

// "DDESIGN 1": line-oriented text, LF, one block per line, sub-blocks
// separated by " | ", points ascending 0-based. Parse errors name lines.
std::string write_ddesign(const Design& D);
Design read_ddesign(std::istream& in);
Design read_ddesign_string(const std::string& text);

// "DMASK 1": same header, then per block one line of n bitstrings joined
// by '|'; bit j of layer i is 1 iff point j is kept.
std::string write_dmask(const Design& D);
Design read_dmask(std::istream& in);

void save_file(const std::string& path, const std::string& content);
std::string load_file(const std::string& path);

}  // namespace dropout::design
