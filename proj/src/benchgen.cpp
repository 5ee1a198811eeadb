#include "locomotif/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace locomotif {

void LabeledInstancePool::add_instance(const std::string& class_label,
                                       const TimeSeries& instance) {
    TimeSeries normalized = znormalize(instance);
    if (dims_ == 0) {
        dims_ = normalized.dims();
    } else if (normalized.dims() != dims_) {
        throw std::invalid_argument("all pool instances must share one dimensionality");
    }

    const auto it = std::find(labels_.begin(), labels_.end(), class_label);
    if (it == labels_.end()) {
        labels_.push_back(class_label);
        instances_.emplace_back();
        instances_.back().push_back(std::move(normalized));
    } else {
        instances_[it - labels_.begin()].push_back(std::move(normalized));
    }
}

int kappa_max(int class_count) {
    if (class_count < 5) {
        throw std::invalid_argument(
            "at least 5 classes are required to form two ground-truth motif sets");
    }
    return (class_count + 1) / 3;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_index bound must be positive");
    }
    const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / bound) * bound;
    std::uint64_t x = rng();
    while (x >= limit) {
        x = rng();
    }
    return x % bound;
}

namespace {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 scramble of (base, index)
    std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

GeneratedBenchmark generate_one(const LabeledInstancePool& pool, int occurrences_per_set,
                                std::uint64_t seed) {
    if (occurrences_per_set < 2) {
        throw std::invalid_argument("occurrences_per_set must be at least 2");
    }
    const int c = pool.class_count();

    std::vector<int> eligible;  // classes with enough instances to repeat
    for (int k = 0; k < c; ++k) {
        if (static_cast<int>(pool.instances(k).size()) >= occurrences_per_set) {
            eligible.push_back(k);
        }
    }
    const int structural_bound = (c + 1) / (occurrences_per_set + 1);
    const int kappa_bound = std::min(structural_bound, static_cast<int>(eligible.size()));
    if (kappa_bound < 2) {
        throw std::runtime_error(
            "insufficient classes or instances to generate a benchmark with two motif sets");
    }

    std::mt19937_64 rng(seed);
    const int kappa_prime = 2 + static_cast<int>(uniform_index(rng, kappa_bound - 1));

    seeded_shuffle(eligible, rng);
    const std::vector<int> repeated(eligible.begin(), eligible.begin() + kappa_prime);

    // occurrences_per_set distinct instances of every repeated class
    std::vector<std::pair<int, int>> repeats;  // (class index, instance id)
    for (int cls : repeated) {
        std::vector<int> ids(pool.instances(cls).size());
        std::iota(ids.begin(), ids.end(), 0);
        seeded_shuffle(ids, rng);
        for (int o = 0; o < occurrences_per_set; ++o) {
            repeats.emplace_back(cls, ids[o]);
        }
    }
    seeded_shuffle(repeats, rng);

    // one instance of a distinct non-repeating class between each pair
    std::vector<int> others;
    for (int k = 0; k < c; ++k) {
        if (std::find(repeated.begin(), repeated.end(), k) == repeated.end()) {
            others.push_back(k);
        }
    }
    const int separators_needed = static_cast<int>(repeats.size()) - 1;
    if (static_cast<int>(others.size()) < separators_needed) {
        throw std::runtime_error("insufficient classes to separate the repeated instances");
    }
    seeded_shuffle(others, rng);
    std::vector<std::pair<int, int>> separators;
    for (int t = 0; t < separators_needed; ++t) {
        const int cls = others[t];
        const int id = static_cast<int>(uniform_index(rng, pool.instances(cls).size()));
        separators.emplace_back(cls, id);
    }

    std::vector<std::pair<int, int>> layout;
    for (std::size_t t = 0; t < repeats.size(); ++t) {
        layout.push_back(repeats[t]);
        if (t + 1 < repeats.size()) {
            layout.push_back(separators[t]);
        }
    }

    const int d = pool.dims();
    std::vector<double> samples;
    std::vector<PlacedInstance> provenance;
    std::vector<std::vector<Segment>> gt_per_class(c);
    int cursor = 1;
    for (const auto& [cls, id] : layout) {
        const TimeSeries& inst = pool.instances(cls)[id];
        samples.insert(samples.end(), inst.raw().begin(), inst.raw().end());
        const Segment seg{cursor, cursor + inst.length() - 1};
        provenance.push_back({pool.labels()[cls], id, seg});
        gt_per_class[cls].push_back(seg);
        cursor += inst.length();
    }

    GroundTruth ground_truth;
    std::vector<std::string> repeated_labels;
    for (int cls : repeated) {
        ground_truth.motif_sets.push_back(gt_per_class[cls]);
        repeated_labels.push_back(pool.labels()[cls]);
    }
    std::vector<std::string> separator_labels;
    for (const auto& sep : separators) {
        separator_labels.push_back(pool.labels()[sep.first]);
    }
    return {TimeSeries(std::move(samples), cursor - 1, d), std::move(ground_truth),
            std::move(provenance), std::move(repeated_labels), std::move(separator_labels)};
}

std::vector<GeneratedBenchmark> generate_suite(const LabeledInstancePool& pool, int count,
                                               double validation_fraction, std::uint64_t seed,
                                               int occurrences_per_set) {
    if (count < 1) {
        throw std::invalid_argument("suite size must be at least 1");
    }
    if (validation_fraction < 0.0 || validation_fraction > 1.0) {
        throw std::invalid_argument("validation fraction must lie in [0, 1]");
    }

    std::vector<GeneratedBenchmark> suite;
    suite.reserve(count);

    if (validation_fraction == 0.0) {
        for (int t = 0; t < count; ++t) {
            suite.push_back(generate_one(pool, occurrences_per_set, derive_seed(seed, t)));
        }
        return suite;
    }

    // Per-class instance partition: a seeded shuffle, then the first
    // ceil(fraction * size) instances form the validation subpool.
    std::mt19937_64 rng(derive_seed(seed, 0xf00d));
    LabeledInstancePool validation;
    LabeledInstancePool evaluation;
    for (int cls = 0; cls < pool.class_count(); ++cls) {
        const auto& all = pool.instances(cls);
        std::vector<int> ids(all.size());
        std::iota(ids.begin(), ids.end(), 0);
        seeded_shuffle(ids, rng);
        const std::size_t val_count = static_cast<std::size_t>(
            std::ceil(validation_fraction * static_cast<double>(all.size())));
        for (std::size_t t = 0; t < ids.size(); ++t) {
            auto& target = t < val_count ? validation : evaluation;
            target.add_instance(pool.labels()[cls], all[ids[t]]);
        }
    }

    const int val_series = static_cast<int>(std::llround(validation_fraction * count));
    for (int t = 0; t < val_series; ++t) {
        suite.push_back(generate_one(validation, occurrences_per_set, derive_seed(seed, t)));
    }
    for (int t = val_series; t < count; ++t) {
        suite.push_back(generate_one(evaluation, occurrences_per_set, derive_seed(seed, t)));
    }
    return suite;
}

}  // namespace locomotif
