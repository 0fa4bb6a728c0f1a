#pragma once

#include <string>

#include "lfg/group.hpp"

namespace lfg {

/// Parses the "mtable" file format:
///   line 1: `mtable <n>`
///   then n lines of n space-separated base-10 indices.
/// `#`-prefixed comment lines are ignored; identity must be index 0.
/// Throws ParseError(line) or the validate_table taxonomy.
FiniteGroup parse_group_text(const std::string& text);
FiniteGroup parse_group_file(const std::string& path);

std::string format_group(const FiniteGroup& g);
void write_group_file(const FiniteGroup& g, const std::string& path);

}  // namespace lfg
