#pragma once

#include <cstdint>
#include <vector>

#include "sindex/dataset.hpp"

namespace sindex {

struct SynthOptions {
    std::size_t questions = 200;
    std::size_t generations = 10;
    std::size_t dim = 48;
    std::uint64_t seed = 42;
};

// Deterministic offline corpus with inline embeddings and truth vectors.
// Four question archetypes repeat in a fixed 20-question pattern:
//   - tight cone: all answers paraphrase the truth (pairwise sim >= 0.96),
//     a handful of exact-duplicate phrasings among them.
//   - cone with outlier: one stray answer far from the truth, the rest a cone.
//   - far modes: several mutually orthogonal wrong answers, each repeated
//     verbatim.
//   - close modes: three wrong-answer modes that overlap enough to merge at
//     loose thresholds (cross-mode sim ~0.75) but separate at 0.95.
// Cone questions label accurate under the 0.95 rule; mode questions label
// hallucinated. Geometry is exact (orthonormal frames, coefficient ladders),
// so scores are reproducible to floating-point precision for a given seed.
std::vector<DatasetRecord> synth_corpus(const SynthOptions& options);

}  // namespace sindex
