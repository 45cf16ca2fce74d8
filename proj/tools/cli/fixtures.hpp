#pragma once

#include <string>

#include "json.hpp"

namespace cwglt::cli {

/// Recomputes every measured constant the test suites pin, with provenance.
nlohmann::ordered_json derived_fixtures();

void write_fixtures(const std::string& path);

}  // namespace cwglt::cli
