#pragma once

namespace leh {

enum class Execution { Serial, Parallel };

/// Thread cap from LEH_THREADS (0 when unset or invalid: use every core).
int thread_limit_from_env();

/// Applies LEH_THREADS to the OpenMP runtime, if set.
void apply_thread_limit();

int max_threads();

}  // namespace leh
