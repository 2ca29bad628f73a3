#pragma once

#include <ostream>

#include "cml/csvio.hpp"

namespace cml {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAssertion = 3;
inline constexpr int kExitCache = 4;

// Executes cfg.command; CSV to cfg.csv or `out`, progress to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// argv front end: parses into a RunConfig and calls run().
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cml
