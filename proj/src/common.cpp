#include "namebias/common.hpp"

#include <atomic>
#include <iostream>

namespace namebias {

namespace {
std::atomic<bool> g_verbose{false};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace

bool verbose() { return g_verbose.load(); }
void set_verbose(bool on) { g_verbose.store(on); }

void vlog(const std::string& msg) {
    if (g_verbose.load()) {
        std::cerr << "[namebias] " << msg << "\n";
    }
}

std::uint64_t SplitRng::next_below(std::uint64_t n) {
    // Rejection sampling; unbiased and implementation-independent.
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;
    const std::uint64_t limit = UINT64_MAX - rem;
    std::uint64_t r = eng_();
    while (rem != 0 && r > limit) {
        r = eng_();
    }
    return r % n;
}

std::uint64_t derive_child_seed(std::uint64_t seed, std::string_view sample_id,
                                std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV offset basis
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((seed >> (8 * i)) & 0xff);
    h = fnv1a64(std::string_view(buf, 8), h);
    h = fnv1a64(sample_id, h);
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((index >> (8 * i)) & 0xff);
    h = fnv1a64(std::string_view(buf, 8), h);
    return splitmix64(h);
}

}  // namespace namebias
