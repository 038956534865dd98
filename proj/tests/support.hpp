#pragma once

#include <map>
#include <mutex>

#include "mpv/modpoly.hpp"

namespace testing_support {

/// Phi_N loaded or computed once per test binary.
inline const mpv::BivarPoly& phi(std::uint64_t N) {
    static std::mutex mu;
    static std::map<std::uint64_t, mpv::BivarPoly> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, mpv::load_phi(N, {.ceiling = 29})).first;
    return it->second;
}

}  // namespace testing_support
