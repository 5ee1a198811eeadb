#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locomotif/core.hpp"
#include "locomotif/discovery.hpp"
#include "locomotif/evaluation.hpp"

namespace locomotif::io {

/// CSV series file: one row per time step, one column per dimension, with an
/// optional single header row (auto-detected). Must be rectangular with
/// finite values.
TimeSeries read_series_csv(const std::string& path);
void write_series_csv(std::ostream& out, const TimeSeries& ts);
void write_series_csv_file(const std::string& path, const TimeSeries& ts);

/// Single column of 0/1 flags, one per time step, no header.
std::vector<std::uint8_t> read_mask_csv(const std::string& path, int expected_n);

struct MotifSetRecord {
    Segment representative;
    std::vector<Segment> members;
    double fitness = 0.0;
};

struct MotifSetsFile {
    int n = 0;
    std::vector<MotifSetRecord> motif_sets;
};

/// External interval convention is 0-based half-open [start, end); the
/// conversion to the library's 1-based inclusive segments happens here and
/// only here.
std::string motif_sets_to_json(const MotifSetsFile& file);
MotifSetsFile read_motif_sets_json(const std::string& path);

struct GroundTruthFile {
    int n = 0;
    GroundTruth ground_truth;
};

std::string ground_truth_to_json(const GroundTruthFile& file);
GroundTruthFile read_ground_truth_json(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace locomotif::io
