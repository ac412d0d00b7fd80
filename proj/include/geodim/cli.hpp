#pragma once

namespace geodim {

/// Entry point behind the command-line tool: subcommands generate, perturb,
/// estimate, sweep, fractal, stats. Returns 0 on success, 1 on usage errors,
/// 2 on runtime failures.
int cli_main(int argc, const char* const* argv);

} // namespace geodim
