#include "leh/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace leh {

int thread_limit_from_env()
{
    const char* raw = std::getenv("LEH_THREADS");
    if (raw == nullptr) {
        return 0;
    }
    int value = 0;
    const char* end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc() || ptr != end || value < 1) {
        return 0;
    }
    return value;
}

void apply_thread_limit()
{
    if (const int limit = thread_limit_from_env(); limit > 0) {
        omp_set_num_threads(limit);
    }
}

int max_threads()
{
    return omp_get_max_threads();
}

}  // namespace leh
