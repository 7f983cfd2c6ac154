#include "sindex/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "sindex/rng.hpp"

namespace sindex {

namespace {

enum class Archetype { tight_cone, cone_with_outlier, far_modes, close_modes };

constexpr Archetype A1 = Archetype::tight_cone;
constexpr Archetype A2 = Archetype::cone_with_outlier;
constexpr Archetype H1 = Archetype::far_modes;
constexpr Archetype H2 = Archetype::close_modes;

// 7 : 3 : 5 : 5 per block of 20 questions.
constexpr Archetype kPattern[20] = {A1, H1, A1, H2, A2, H1, A1, H2, A1, H1,
                                    A2, H2, A1, H1, A1, H2, A2, H1, A1, H2};

const char* kSyllables[] = {"ka", "ve", "lor", "mi",  "ra",  "den", "so",  "tal",
                            "ne", "bru", "vi",  "mar", "el",  "dor", "sa",  "lin"};

std::string make_name(Rng& rng) {
    std::string s;
    const std::size_t n = 2 + rng.index(2);
    for (std::size_t i = 0; i < n; ++i) {
        s += kSyllables[rng.index(std::size(kSyllables))];
    }
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string fresh_name(Rng& rng, std::unordered_set<std::string>& used) {
    for (;;) {
        std::string s = make_name(rng);
        if (used.insert(s).second) return s;
    }
}

std::string phrase(const std::string& name, std::size_t variant) {
    std::string base;
    switch (variant % 5) {
        case 0: base = name; break;
        case 1: base = "The answer is " + name + "."; break;
        case 2: base = name + ", as far as I know."; break;
        case 3: base = "It is " + name + "."; break;
        default: base = "I believe it is " + name + "."; break;
    }
    for (std::size_t r = 0; r < variant / 5; ++r) base += " Really.";
    return base;
}

std::string question_text(Rng& rng, const std::string& place) {
    switch (rng.index(5)) {
        case 0: return "What is the capital of " + place + "?";
        case 1: return "Which river runs through " + place + "?";
        case 2: return "Who founded " + place + "?";
        case 3: return "Which mountain overlooks " + place + "?";
        default: return "What is the largest city of " + place + "?";
    }
}

std::vector<std::vector<double>> orthonormal_frame(Rng& rng, std::size_t dim,
                                                   std::size_t count) {
    std::vector<std::vector<double>> frame;
    frame.reserve(count);
    while (frame.size() < count) {
        std::vector<double> v(dim);
        for (auto& x : v) x = rng.normal();
        for (const auto& u : frame) {
            const double proj = std::inner_product(v.begin(), v.end(), u.begin(), 0.0);
            for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * u[i];
        }
        const double norm_sq = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        if (norm_sq < 1e-12) continue;
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& x : v) x *= inv;
        frame.push_back(std::move(v));
    }
    return frame;
}

// Largest-remainder allocation; zero-count groups are dropped.
std::vector<std::size_t> allocate(std::size_t total, const std::vector<double>& props) {
    std::vector<std::size_t> counts(props.size());
    std::vector<std::pair<double, std::size_t>> fractions;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < props.size(); ++i) {
        const double exact = props[i] * static_cast<double>(total);
        counts[i] = static_cast<std::size_t>(exact);
        assigned += counts[i];
        fractions.emplace_back(exact - static_cast<double>(counts[i]), i);
    }
    std::sort(fractions.begin(), fractions.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t r = 0; r < total - assigned; ++r) {
        counts[fractions[r % fractions.size()].second]++;
    }
    std::vector<std::size_t> nonzero;
    for (const std::size_t c : counts) {
        if (c > 0) nonzero.push_back(c);
    }
    return nonzero;
}

std::vector<double> blend(double a_coef, const std::vector<double>& a, double b_coef,
                          const std::vector<double>& b) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a_coef * a[i] + b_coef * b[i];
    return v;
}

// Per-group coefficient ladder for paraphrase cones: products of any two
// distinct rungs stay inside [0.96, 0.985], so cones hold together at a 0.95
// similarity cutoff and split into phrasing groups at 0.99.
double cone_coefficient(std::size_t group, std::size_t group_count) {
    const double spread = group_count > 1
                              ? static_cast<double>(group) /
                                    static_cast<double>(group_count - 1)
                              : 0.0;
    return 0.980 + 0.012 * spread;
}

struct QuestionBuild {
    std::vector<std::string> answers;
    std::vector<std::vector<double>> embeddings;
    std::string canonical;
    std::vector<double> truth;
};

QuestionBuild build_cone(Rng& rng, const std::vector<std::vector<double>>& frame,
                         std::size_t p, bool with_outlier,
                         std::unordered_set<std::string>& used) {
    QuestionBuild q;
    const std::string truth_name = fresh_name(rng, used);
    q.canonical = truth_name;
    q.truth = frame[0];

    const std::size_t cone_size = with_outlier ? p - 1 : p;
    const auto groups =
        with_outlier ? allocate(cone_size, {1.0 / 3, 1.0 / 3, 2.0 / 9, 1.0 / 9})
                     : allocate(cone_size, {0.4, 0.3, 0.2, 0.1});
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double c = cone_coefficient(g, groups.size());
        const std::vector<double> vec =
            blend(c, frame[0], std::sqrt(1.0 - c * c), frame[1 + g]);
        const std::string text = phrase(truth_name, g);
        for (std::size_t n = 0; n < groups[g]; ++n) {
            q.answers.push_back(text);
            q.embeddings.push_back(vec);
        }
    }
    if (with_outlier) {
        const std::string stray = fresh_name(rng, used);
        const double c = 0.55;
        q.answers.push_back("Maybe " + stray + "?");
        q.embeddings.push_back(
            blend(c, frame[0], std::sqrt(1.0 - c * c), frame[1 + groups.size()]));
    }
    return q;
}

QuestionBuild build_far_modes(Rng& rng, const std::vector<std::vector<double>>& frame,
                              std::size_t p, std::unordered_set<std::string>& used) {
    QuestionBuild q;
    q.canonical = fresh_name(rng, used);
    q.truth = frame[0];
    const auto modes = allocate(p, {0.3, 0.3, 0.2, 0.2});
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const std::string wrong = fresh_name(rng, used);
        for (std::size_t n = 0; n < modes[j]; ++n) {
            q.answers.push_back(wrong);
            q.embeddings.push_back(frame[1 + j]);
        }
    }
    return q;
}

QuestionBuild build_close_modes(Rng& rng, const std::vector<std::vector<double>>& frame,
                                std::size_t p, std::unordered_set<std::string>& used) {
    QuestionBuild q;
    q.canonical = fresh_name(rng, used);
    q.truth = frame[0];
    const auto modes = allocate(p, {0.4, 0.3, 0.3});

    // Mode centers share a common component, so cross-mode similarity sits
    // near 0.75: merged below a 0.75-ish cutoff, separate above it.
    const double alpha = 0.879;
    const double beta = std::sqrt(1.0 - alpha * alpha);
    std::size_t member = 0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const std::string wrong = fresh_name(rng, used);
        const std::vector<double> center = blend(alpha, frame[1], beta, frame[2 + j]);
        for (std::size_t local = 0; local < modes[j]; ++local, ++member) {
            const double c =
                0.984 + 0.002 * static_cast<double>(member) /
                            static_cast<double>(p > 1 ? p - 1 : 1);
            q.answers.push_back(phrase(wrong, local));
            q.embeddings.push_back(
                blend(c, center, std::sqrt(1.0 - c * c), frame[5 + member]));
        }
    }
    return q;
}

}  // namespace

std::vector<DatasetRecord> synth_corpus(const SynthOptions& options) {
    if (options.questions == 0) {
        throw std::invalid_argument("synth: questions must be positive");
    }
    if (options.generations < 4) {
        throw std::invalid_argument("synth: need at least 4 generations per question");
    }
    if (options.dim < options.generations + 5) {
        throw std::invalid_argument("synth: dim must be at least generations + 5");
    }

    Rng rng(options.seed);
    std::vector<DatasetRecord> records;
    records.reserve(options.questions);
    const std::size_t p = options.generations;

    for (std::size_t qi = 0; qi < options.questions; ++qi) {
        std::unordered_set<std::string> used;
        const Archetype archetype = kPattern[qi % std::size(kPattern)];
        const auto frame = orthonormal_frame(rng, options.dim, p + 5);

        QuestionBuild build;
        switch (archetype) {
            case Archetype::tight_cone:
                build = build_cone(rng, frame, p, false, used);
                break;
            case Archetype::cone_with_outlier:
                build = build_cone(rng, frame, p, true, used);
                break;
            case Archetype::far_modes:
                build = build_far_modes(rng, frame, p, used);
                break;
            case Archetype::close_modes:
                build = build_close_modes(rng, frame, p, used);
                break;
        }

        std::vector<std::size_t> perm(p);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        rng.shuffle(perm);

        DatasetRecord record;
        char id[16];
        std::snprintf(id, sizeof(id), "q%04zu", qi);
        record.id = id;
        record.question = question_text(rng, fresh_name(rng, used));
        record.canonical_answer = build.canonical;
        record.truth_embedding = std::move(build.truth);
        record.answers.reserve(p);
        record.embeddings.reserve(p);
        for (const std::size_t src : perm) {
            record.answers.push_back(std::move(build.answers[src]));
            record.embeddings.push_back(std::move(build.embeddings[src]));
        }
        if (qi % 7 == 3) {
            record.context = "Reference note: " + record.canonical_answer +
                             " appears in the source passage for this question.";
        }
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace sindex
