#pragma once

namespace quasiphase {

/// Full command-line surface; returns the process exit code
/// (0 ok, 1 usage error, 2 numerical-tolerance failure).
int cli_main(int argc, char** argv);

}  // namespace quasiphase
