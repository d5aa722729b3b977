// format.hpp: locale-independent number formatting for CSV/JSON output
#pragma once

#include <string>

namespace cct {

// Shortest round-trip form limited to 17 significant digits; "nan"/"inf" for non-finite values.
std::string format_double(double v);

} // namespace cct
