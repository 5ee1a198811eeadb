#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "locomotif/benchgen.hpp"
#include "oracles.hpp"

using namespace locomotif;

namespace {

LabeledInstancePool tiny_pool(int classes, int instances_per_class, std::uint64_t seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    LabeledInstancePool pool;
    for (int c = 0; c < classes; ++c) {
        for (int k = 0; k < instances_per_class; ++k) {
            pool.add_instance("class_" + std::to_string(c),
                              oracles::random_series(rng, 4 + static_cast<int>(rng() % 3), 1));
        }
    }
    return pool;
}

void check_structure(const GeneratedBenchmark& bench) {
    // provenance partitions [1:n]
    int cursor = 1;
    for (const PlacedInstance& placed : bench.provenance) {
        CHECK(placed.segment.b == cursor);
        cursor = placed.segment.e + 1;
    }
    CHECK(cursor - 1 == bench.series.length());

    // repeated classes alternate with single-use separators
    std::map<std::string, int> counts;
    for (const PlacedInstance& placed : bench.provenance) {
        ++counts[placed.class_label];
    }
    for (std::size_t k = 1; k < bench.provenance.size(); ++k) {
        CHECK(bench.provenance[k].class_label != bench.provenance[k - 1].class_label);
        // strictly alternating repeated/separator layout
        const bool is_separator = counts[bench.provenance[k].class_label] == 1;
        CHECK(is_separator == (k % 2 == 1));
    }
    for (const auto& [label, count] : counts) {
        const bool repeated =
            std::find(bench.repeated_classes.begin(), bench.repeated_classes.end(), label) !=
            bench.repeated_classes.end();
        if (repeated) {
            CHECK(count >= 2);
        } else {
            CHECK(count == 1);
        }
    }

    validate_ground_truth(bench.ground_truth);
    CHECK(bench.ground_truth.motif_sets.size() == bench.repeated_classes.size());
    CHECK(bench.ground_truth.motif_sets.size() >= 2);
}

}  // namespace

TEST_CASE("kappa_max formula and precondition") {
    CHECK(kappa_max(5) == 2);
    CHECK(kappa_max(6) == 2);
    CHECK(kappa_max(8) == 3);
    CHECK_THROWS_AS(kappa_max(4), std::invalid_argument);
}

TEST_CASE("generated benchmarks satisfy the structure constraint") {
    const LabeledInstancePool pool = tiny_pool(5, 3, 7);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GeneratedBenchmark bench = generate_one(pool, 2, seed);
        check_structure(bench);
        // c = 5 forces kappa' = 2
        CHECK(bench.ground_truth.motif_sets.size() == 2);
    }
}

TEST_CASE("placed segments reproduce the source instances exactly") {
    const LabeledInstancePool pool = tiny_pool(6, 3, 11);
    const GeneratedBenchmark bench = generate_one(pool, 2, 3);

    for (const PlacedInstance& placed : bench.provenance) {
        const auto& labels = pool.labels();
        const int cls = static_cast<int>(
            std::find(labels.begin(), labels.end(), placed.class_label) - labels.begin());
        const TimeSeries& source = pool.instances(cls)[placed.instance_id];
        REQUIRE(source.length() == placed.segment.length());
        for (int t = 1; t <= source.length(); ++t) {
            CHECK(bench.series.value(placed.segment.b + t - 1, 0) == source.value(t, 0));
        }
    }
}

TEST_CASE("generation is deterministic in the seed") {
    const LabeledInstancePool pool = tiny_pool(7, 3, 13);
    const GeneratedBenchmark a = generate_one(pool, 2, 99);
    const GeneratedBenchmark b = generate_one(pool, 2, 99);
    CHECK(a.series.raw() == b.series.raw());
    CHECK(a.repeated_classes == b.repeated_classes);
    REQUIRE(a.provenance.size() == b.provenance.size());
    for (std::size_t k = 0; k < a.provenance.size(); ++k) {
        CHECK(a.provenance[k].segment == b.provenance[k].segment);
        CHECK(a.provenance[k].class_label == b.provenance[k].class_label);
        CHECK(a.provenance[k].instance_id == b.provenance[k].instance_id);
    }

    const GeneratedBenchmark c = generate_one(pool, 2, 100);
    CHECK(a.series.raw() != c.series.raw());  // different seed, different draw
}

TEST_CASE("insufficient classes or instances are rejected") {
    CHECK_THROWS_AS(generate_one(tiny_pool(4, 3, 17), 2, 1), std::runtime_error);
    // plenty of classes but only one instance each: nothing can repeat
    CHECK_THROWS_AS(generate_one(tiny_pool(8, 1, 19), 2, 1), std::runtime_error);
    CHECK_THROWS_AS(generate_one(tiny_pool(8, 3, 23), 1, 1), std::invalid_argument);
}

TEST_CASE("three occurrences per set tighten the class requirement") {
    // occ = 3 needs kappa' + 3*kappa' - 1 <= c, so c = 7 admits only kappa' = 2
    const LabeledInstancePool pool = tiny_pool(7, 4, 29);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GeneratedBenchmark bench = generate_one(pool, 3, seed);
        CHECK(bench.ground_truth.motif_sets.size() == 2);
        for (const auto& set : bench.ground_truth.motif_sets) {
            CHECK(set.size() == 3);
        }
        check_structure(bench);
    }
}

TEST_CASE("kappa_prime is sampled uniformly") {
    const LabeledInstancePool pool = tiny_pool(8, 3, 31);
    // c = 8 gives kappa' in {2, 3}
    int twos = 0;
    const int draws = 10000;
    for (int k = 0; k < draws; ++k) {
        const GeneratedBenchmark bench = generate_one(pool, 2, 100000 + k);
        const int kp = static_cast<int>(bench.ground_truth.motif_sets.size());
        REQUIRE(kp >= 2);
        REQUIRE(kp <= 3);
        twos += kp == 2;
    }
    // three standard errors around the uniform expectation
    const double se = std::sqrt(draws * 0.25);
    CHECK(std::abs(twos - draws / 2) <= 3.0 * se);
}

TEST_CASE("generate_suite is deterministic and structurally sound") {
    const LabeledInstancePool pool = tiny_pool(6, 6, 37);
    const auto suite_a = generate_suite(pool, 10, 0.3, 555);
    const auto suite_b = generate_suite(pool, 10, 0.3, 555);
    REQUIRE(suite_a.size() == 10);
    REQUIRE(suite_b.size() == 10);
    for (std::size_t k = 0; k < suite_a.size(); ++k) {
        CHECK(suite_a[k].series.raw() == suite_b[k].series.raw());
        check_structure(suite_a[k]);
    }

    const auto single = generate_suite(pool, 1, 0.0, 1);
    REQUIRE(single.size() == 1);
    check_structure(single[0]);
}

TEST_CASE("suite generation fails when a subpool is too small") {
    // 2 instances per class: a 0.5 split leaves one instance per class in the
    // evaluation subpool, so nothing can repeat there
    const LabeledInstancePool pool = tiny_pool(6, 2, 41);
    CHECK_THROWS_AS(generate_suite(pool, 4, 0.5, 1), std::runtime_error);
}

TEST_CASE("pool construction z-normalizes and checks dimensionality") {
    LabeledInstancePool pool;
    pool.add_instance("a", TimeSeries({1.0, 2.0, 3.0, 4.0}, 4, 1));
    const TimeSeries& stored = pool.instances(0)[0];
    double mean = 0.0;
    for (int t = 1; t <= 4; ++t) {
        mean += stored.value(t, 0);
    }
    CHECK(std::abs(mean) < 1e-9);

    CHECK_THROWS_AS(pool.add_instance("b", TimeSeries({1.0, 2.0, 3.0, 4.0}, 2, 2)),
                    std::invalid_argument);
}
