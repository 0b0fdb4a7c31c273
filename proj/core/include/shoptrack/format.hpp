#pragma once

#include <string>

namespace shoptrack {

// Shortest round-trip decimal representation, always '.'-separated and
// locale-independent (std::to_chars underneath). Used by every CSV writer.
std::string format_double(double value);

} // namespace shoptrack
