// commands.hpp: One table per front-end command

#pragma once

#include "run_config.hpp"
#include "spinbath/io.hpp"

namespace spinbath::cli {

struct Output {
    io::Table table;
    io::Metadata meta;
};

// Computes the command's table; throws ConfigError for unusable input and
// the numerical error types for failures inside the library.
Output compute(const RunConfig& cfg);

} // namespace spinbath::cli
