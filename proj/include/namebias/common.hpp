#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace namebias {

// Bad inputs: missing files, empty pools, malformed flags or configs.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failures while executing a task: pool exhaustion, backend errors.
struct task_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool verbose();
void set_verbose(bool on);
void vlog(const std::string& msg);  // stderr, only when verbose

// Deterministic RNG. std::mt19937_64's output sequence is pinned by the
// standard; the bounded draw and shuffle below avoid
// std::uniform_int_distribution and std::shuffle, whose sequences differ
// across standard-library implementations.
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform draw in [0, n); n must be > 0.
    std::uint64_t next_below(std::uint64_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(next_below(i))]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

// Child seed for (run seed, sample id, variant index), stable across
// platforms and standard libraries.
std::uint64_t derive_child_seed(std::uint64_t seed, std::string_view sample_id,
                                std::uint64_t index);

}  // namespace namebias
