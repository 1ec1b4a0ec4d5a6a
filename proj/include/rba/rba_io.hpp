#pragma once

#include <iosfwd>
#include <string>

#include "rba/rba.hpp"

namespace rba {

/// Reads the line-oriented ".rba" format:
///
///   rank <r>
///   star <s0> ... <s(r-1)>
///   lambda <i> <j> <k> <value>     (value: integer, p/q, or decimal)
///
/// '#' starts a comment; omitted lambda entries are zero. A single decimal
/// value makes the whole algebra float-mode.
Rba read_rba(std::istream& in);
Rba read_rba_file(const std::string& path);
Rba parse_rba(const std::string& text);

/// Writes nonzero entries in (i,j,k) order; exact values as p/q, floats as
/// shortest round-trip decimals.
void write_rba(std::ostream& out, const Rba& rba, const std::string& comment = {});
std::string format_rba(const Rba& rba, const std::string& comment = {});

}  // namespace rba
