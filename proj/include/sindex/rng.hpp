#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sindex {

// Deterministic helpers layered on mt19937_64 raw draws. The standard
// distributions are implementation-defined, so seeded corpora generated
// through them would differ across standard libraries; these do not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // One Box-Muller draw; the spare is discarded to keep the stream simple.
    double normal();

    // Uniform integer in [0, n).
    std::size_t index(std::size_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

std::vector<double> random_unit_vector(Rng& rng, std::size_t dim);

}  // namespace sindex
