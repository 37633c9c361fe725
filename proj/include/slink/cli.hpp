#pragma once

namespace slink::cli {

/// Entry point behind the `slink` binary; exposed so tests can drive the
/// subcommands in-process. Returns 0 on success, 1 on validation failure,
/// 2 on runtime failure. Diagnostics go to stderr.
int run(int argc, const char* const* argv);

}  // namespace slink::cli
