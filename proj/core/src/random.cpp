#include <chrono>
#include <random>
#include <thread>

#include "aucpower/parallel.hpp"
#include "aucpower/random.hpp"

namespace aucpower {

std::uint64_t random_seed() {
    std::random_device rd;
    const std::uint64_t hi = rd();
    const std::uint64_t lo = rd();
    const auto now = static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count());
    return mix64((hi << 32) ^ lo ^ now);
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

}  // namespace aucpower
