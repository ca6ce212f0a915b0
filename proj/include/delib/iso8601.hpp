#pragma once
#include <string>

#include "delib/thread_model.hpp"

namespace delib {

// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM]" into epoch seconds.
// Offsets are normalized to UTC; fractional seconds are accepted and
// truncated (the corpus stores second resolution). A zone designator is
// mandatory. Throws SchemaError on anything malformed.
Timestamp parse_iso8601(const std::string& text);

// Canonical form: "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(Timestamp t);

} // namespace delib
