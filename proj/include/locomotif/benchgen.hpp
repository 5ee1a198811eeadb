#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "locomotif/core.hpp"
#include "locomotif/evaluation.hpp"

namespace locomotif {

/// Labeled time-series instances grouped by class; every instance is
/// z-normalized on insertion. All instances must share one dimensionality.
class LabeledInstancePool {
public:
    void add_instance(const std::string& class_label, const TimeSeries& instance);

    int class_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<TimeSeries>& instances(int class_index) const {
        return instances_[class_index];
    }
    int dims() const { return dims_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<TimeSeries>> instances_;
    int dims_ = 0;
};

struct PlacedInstance {
    std::string class_label;
    int instance_id = 0;
    Segment segment;
};

struct GeneratedBenchmark {
    TimeSeries series;
    GroundTruth ground_truth;                // one motif set per repeated class
    std::vector<PlacedInstance> provenance;  // partitions [1:n]
    std::vector<std::string> repeated_classes;
    std::vector<std::string> separator_classes;
};

/// Maximum number of ground-truth motif sets formable from c classes with
/// two occurrences per set: floor((c+1)/3). Requires c >= 5.
int kappa_max(int class_count);

/// Concatenates occurrences_per_set instances from each of kappa' randomly
/// chosen repeating classes, shuffled, with a single instance of a distinct
/// non-repeating class between every consecutive pair. kappa' is sampled
/// uniformly from [2 : floor((c+1)/(occ+1))], additionally capped by the
/// number of classes holding at least `occurrences_per_set` instances.
GeneratedBenchmark generate_one(const LabeledInstancePool& pool, int occurrences_per_set,
                                std::uint64_t seed);

/// Generates `count` benchmarks. The pool's instances are split per class
/// into a validation subpool (the first ceil(fraction*size) after a seeded
/// shuffle) and an evaluation subpool; round(fraction*count) series come
/// from the validation subpool and lead the returned list. fraction = 0
/// generates everything from the full pool.
std::vector<GeneratedBenchmark> generate_suite(const LabeledInstancePool& pool, int count,
                                               double validation_fraction, std::uint64_t seed,
                                               int occurrences_per_set = 2);

/// Uniform draw from [0, bound) by rejection sampling; depends only on the
/// engine's output stream, so seeded runs reproduce across standard
/// libraries.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

/// Seeded Fisher-Yates shuffle built on uniform_index.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace locomotif
