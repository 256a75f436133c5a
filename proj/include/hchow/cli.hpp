/**
 * @file   cli.hpp
 * @brief  The `hchow` command line as a library call.
 *
 * Exit status: 0 when every check passes, 1 when a verification fails (the
 * report carries the certificate), 2 on malformed input or usage errors.
 * The default seed comes from HCHOW_SEED, then 42.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hchow {

// `args` excludes the program name, e.g. {"homology", "data/z_mod_2.hc"}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t default_seed();
std::string default_data_dir();

}  // namespace hchow
