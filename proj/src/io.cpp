#include "locomotif/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace locomotif::io {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? std::string()
                                                   : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

bool parse_double(const std::string& text, double& out) {
    if (text.empty()) {
        return false;
    }
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

Segment segment_from_external(const json& interval, int n, const std::string& what) {
    if (!interval.is_array() || interval.size() != 2 || !interval[0].is_number_integer() ||
        !interval[1].is_number_integer()) {
        throw std::runtime_error(what + ": intervals must be [start, end] integer pairs");
    }
    const long long start = interval[0].get<long long>();
    const long long end = interval[1].get<long long>();
    if (start < 0 || start >= end || end > n) {
        throw std::runtime_error(what + ": interval [" + std::to_string(start) + ", " +
                                 std::to_string(end) + ") is out of range for n=" +
                                 std::to_string(n));
    }
    return {static_cast<int>(start) + 1, static_cast<int>(end)};
}

json segment_to_external(Segment seg) {
    return json::array({seg.b - 1, seg.e});
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return doc;
}

int read_length_field(const json& doc, const std::string& path) {
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
        throw std::runtime_error(path + ": missing or invalid \"n\"");
    }
    return doc["n"].get<int>();
}

}  // namespace

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }

    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_csv_line(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_double(cells[c], row[c])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;  // single header row
                continue;
            }
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": cannot parse value");
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": row width differs from previous rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error(path + ": no data rows");
    }
    try {
        return TimeSeries::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
    char buf[64];
    for (int t = 1; t <= ts.length(); ++t) {
        const auto sample = ts.sample(t);
        for (int dim = 0; dim < ts.dims(); ++dim) {
            std::snprintf(buf, sizeof(buf), "%.17g", sample[dim]);
            if (dim > 0) {
                out << ',';
            }
            out << buf;
        }
        out << '\n';
    }
}

void write_series_csv_file(const std::string& path, const TimeSeries& ts) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_series_csv(out, ts);
}

std::vector<std::uint8_t> read_mask_csv(const std::string& path, int expected_n) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<std::uint8_t> mask;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 1 || (cells[0] != "0" && cells[0] != "1")) {
            throw std::runtime_error(path + ": mask rows must be a single 0 or 1");
        }
        mask.push_back(cells[0] == "1" ? 1 : 0);
    }
    if (static_cast<int>(mask.size()) != expected_n) {
        throw std::runtime_error(path + ": mask length " + std::to_string(mask.size()) +
                                 " does not match series length " + std::to_string(expected_n));
    }
    return mask;
}

std::string motif_sets_to_json(const MotifSetsFile& file) {
    json doc;
    doc["n"] = file.n;
    json sets = json::array();
    for (const MotifSetRecord& record : file.motif_sets) {
        json one;
        one["representative"] = segment_to_external(record.representative);
        json members = json::array();
        for (const Segment& m : record.members) {
            members.push_back(segment_to_external(m));
        }
        one["members"] = members;
        one["fitness"] = record.fitness;
        sets.push_back(one);
    }
    doc["motif_sets"] = sets;
    return doc.dump(2) + "\n";
}

MotifSetsFile read_motif_sets_json(const std::string& path) {
    const json doc = parse_json_file(path);
    MotifSetsFile file;
    file.n = read_length_field(doc, path);
    if (!doc.contains("motif_sets") || !doc["motif_sets"].is_array()) {
        throw std::runtime_error(path + ": missing \"motif_sets\" array");
    }
    for (const json& one : doc["motif_sets"]) {
        MotifSetRecord record;
        if (!one.contains("representative") || !one.contains("members")) {
            throw std::runtime_error(path + ": motif set needs representative and members");
        }
        record.representative = segment_from_external(one["representative"], file.n, path);
        for (const json& m : one["members"]) {
            record.members.push_back(segment_from_external(m, file.n, path));
        }
        if (std::find(record.members.begin(), record.members.end(), record.representative) ==
            record.members.end()) {
            throw std::runtime_error(path + ": representative must be among the members");
        }
        record.fitness = one.value("fitness", 0.0);
        file.motif_sets.push_back(std::move(record));
    }
    return file;
}

std::string ground_truth_to_json(const GroundTruthFile& file) {
    json doc;
    doc["n"] = file.n;
    json sets = json::array();
    for (const auto& set : file.ground_truth.motif_sets) {
        json one = json::array();
        for (const Segment& seg : set) {
            one.push_back(segment_to_external(seg));
        }
        sets.push_back(one);
    }
    doc["gt_motif_sets"] = sets;
    return doc.dump(2) + "\n";
}

GroundTruthFile read_ground_truth_json(const std::string& path) {
    const json doc = parse_json_file(path);
    GroundTruthFile file;
    file.n = read_length_field(doc, path);
    if (!doc.contains("gt_motif_sets") || !doc["gt_motif_sets"].is_array()) {
        throw std::runtime_error(path + ": missing \"gt_motif_sets\" array");
    }
    for (const json& one : doc["gt_motif_sets"]) {
        std::vector<Segment> set;
        for (const json& seg : one) {
            set.push_back(segment_from_external(seg, file.n, path));
        }
        file.ground_truth.motif_sets.push_back(std::move(set));
    }
    try {
        validate_ground_truth(file.ground_truth);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return file;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

}  // namespace locomotif::io
