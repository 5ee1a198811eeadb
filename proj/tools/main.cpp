#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "locomotif/benchgen.hpp"
#include "locomotif/discovery.hpp"
#include "locomotif/evaluation.hpp"
#include "locomotif/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct DiscoverOptions {
    std::string input;
    int l_min = 0;
    int l_max = 0;
    double rho = 0.8;
    std::optional<int> kappa;
    double nu = 0.5;
    bool no_warping = false;
    std::string start_mask_path;
    std::string end_mask_path;
    bool rest_guided = false;
    double var_threshold = 0.0;
    double fraction = 0.33;
    std::string output;
};

int run_discover(const DiscoverOptions& opt) {
    const locomotif::TimeSeries series = locomotif::io::read_series_csv(opt.input);

    locomotif::DiscoveryConfig config;
    config.l_min = opt.l_min;
    config.l_max = opt.l_max;
    config.rho = opt.rho;
    config.kappa = opt.kappa;
    config.nu = opt.nu;
    config.warping = !opt.no_warping;

    if (opt.rest_guided) {
        auto [start, end] = locomotif::guidance_mask_from_rest(series, opt.l_max,
                                                               opt.var_threshold, opt.fraction);
        config.start_mask = std::move(start);
        config.end_mask = std::move(end);
    } else {
        if (!opt.start_mask_path.empty()) {
            config.start_mask = locomotif::io::read_mask_csv(opt.start_mask_path, series.length());
        }
        if (!opt.end_mask_path.empty()) {
            config.end_mask = locomotif::io::read_mask_csv(opt.end_mask_path, series.length());
        }
    }

    const locomotif::DiscoveryResult result = locomotif::discover(series, config);

    locomotif::io::MotifSetsFile file;
    file.n = series.length();
    for (const auto& ms : result.motif_sets) {
        file.motif_sets.push_back({ms.representative, ms.members, ms.fitness});
    }
    const std::string payload = locomotif::io::motif_sets_to_json(file);
    if (opt.output.empty()) {
        std::cout << payload;
    } else {
        locomotif::io::write_text_file(opt.output, payload);
    }
    return 0;
}

struct EvaluateOptions {
    std::string gt_path;
    std::string pred_path;
    bool json_full = false;
};

int run_evaluate(const EvaluateOptions& opt) {
    const auto gt = locomotif::io::read_ground_truth_json(opt.gt_path);
    const auto pred = locomotif::io::read_motif_sets_json(opt.pred_path);
    if (gt.n != pred.n) {
        throw std::runtime_error("series length mismatch: ground truth has n=" +
                                 std::to_string(gt.n) + ", prediction has n=" +
                                 std::to_string(pred.n));
    }

    std::vector<std::vector<locomotif::Segment>> discovered;
    for (const auto& record : pred.motif_sets) {
        discovered.push_back(record.members);
    }

    const auto matrix = locomotif::matching_matrix(gt.ground_truth, discovered);
    const auto metrics = locomotif::precision_recall_f1(matrix);

    json matrix_json = json::array();
    for (const auto& row : matrix.counts) {
        matrix_json.push_back(row);
    }

    if (opt.json_full) {
        json doc;
        doc["precision"] = metrics.precision;
        doc["recall"] = metrics.recall;
        doc["f1"] = metrics.f1;
        doc["matching_matrix"] = matrix_json;
        std::cout << doc.dump(2) << "\n";
    } else {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "{\n  \"precision\": %.6f,\n  \"recall\": %.6f,\n  \"f1\": %.6f,\n",
                      metrics.precision, metrics.recall, metrics.f1);
        std::cout << buf << "  \"matching_matrix\": " << matrix_json.dump() << "\n}\n";
    }
    return 0;
}

struct GenerateOptions {
    std::string instances_dir;
    int count = 1;
    std::uint64_t seed = 0;
    int occurrences = 2;
    std::string output_dir;
};

locomotif::LabeledInstancePool load_pool(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw std::runtime_error(dir + " is not a directory");
    }
    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_directory()) {
            class_dirs.push_back(entry.path());
        }
    }
    std::sort(class_dirs.begin(), class_dirs.end());
    if (class_dirs.empty()) {
        throw std::runtime_error(dir + " contains no per-class subdirectories");
    }

    locomotif::LabeledInstancePool pool;
    for (const auto& class_dir : class_dirs) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(class_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            pool.add_instance(class_dir.filename().string(),
                              locomotif::io::read_series_csv(file.string()));
        }
    }
    return pool;
}

int run_generate(const GenerateOptions& opt) {
    const auto pool = load_pool(opt.instances_dir);
    const auto suite =
        locomotif::generate_suite(pool, opt.count, 0.0, opt.seed, opt.occurrences);

    fs::create_directories(opt.output_dir);
    json manifest = json::array();
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& bench = suite[i];
        const std::string series_path =
            (fs::path(opt.output_dir) / ("series_" + std::to_string(i) + ".csv")).string();
        const std::string gt_path =
            (fs::path(opt.output_dir) / ("gt_" + std::to_string(i) + ".json")).string();

        locomotif::io::write_series_csv_file(series_path, bench.series);
        locomotif::io::write_text_file(
            gt_path, locomotif::io::ground_truth_to_json(
                         {bench.series.length(), bench.ground_truth}));

        json entry;
        entry["index"] = i;
        entry["n"] = bench.series.length();
        entry["kappa_prime"] = bench.ground_truth.motif_sets.size();
        entry["repeated_classes"] = bench.repeated_classes;
        entry["separator_classes"] = bench.separator_classes;
        entry["series_file"] = "series_" + std::to_string(i) + ".csv";
        entry["gt_file"] = "gt_" + std::to_string(i) + ".json";
        manifest.push_back(entry);
    }
    std::cout << manifest.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-warped motif set discovery, evaluation, and benchmark generation"};
    app.require_subcommand(1);

    DiscoverOptions dopt;
    CLI::App* discover = app.add_subcommand(
        "discover", "Discover motif sets in a CSV time series and write them as JSON");
    discover->add_option("--input", dopt.input, "series CSV (rows = time steps)")->required();
    discover->add_option("--lmin", dopt.l_min, "minimum motif length")->required();
    discover->add_option("--lmax", dopt.l_max, "maximum motif length")->required();
    discover->add_option("--rho", dopt.rho, "similarity strictness quantile")
        ->default_val(0.8);
    int kappa_value = -1;
    CLI::Option* kappa_opt =
        discover->add_option("--kappa", kappa_value, "number of motif sets to discover");
    discover->add_option("--nu", dopt.nu, "overlap parameter")->default_val(0.5);
    discover->add_flag("--no-warping", dopt.no_warping, "restrict paths to the strict diagonal");
    CLI::Option* smask = discover->add_option("--start-mask", dopt.start_mask_path,
                                              "CSV of 0/1 allowed start flags, one per step");
    CLI::Option* emask = discover->add_option("--end-mask", dopt.end_mask_path,
                                              "CSV of 0/1 allowed end flags, one per step");
    CLI::Option* guided = discover->add_flag("--rest-guided", dopt.rest_guided,
                                             "derive start/end masks from idle segments");
    CLI::Option* vthr = discover->add_option("--var-threshold", dopt.var_threshold,
                                             "idle-window variance threshold");
    discover->add_option("--fraction", dopt.fraction,
                         "fraction of non-idle samples allowed as endpoints")
        ->default_val(0.33);
    discover->add_option("--output", dopt.output, "output path (default: stdout)");
    guided->excludes(smask)->excludes(emask);
    guided->needs(vthr);
    vthr->needs(guided);

    EvaluateOptions eopt;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Compare predicted motif sets against ground truth");
    evaluate->add_option("--gt", eopt.gt_path, "ground-truth JSON")->required();
    evaluate->add_option("--pred", eopt.pred_path, "predicted motif sets JSON")->required();
    evaluate->add_flag("--json-full", eopt.json_full, "print full-precision metrics");

    GenerateOptions gopt;
    CLI::App* generate = app.add_subcommand(
        "generate", "Generate benchmark series with ground truth from labeled instances");
    generate->add_option("--instances", gopt.instances_dir,
                         "directory of per-class subdirectories of CSV instances")
        ->required();
    generate->add_option("--n", gopt.count, "number of series to generate")->required();
    generate->add_option("--seed", gopt.seed, "random seed")->required();
    generate->add_option("--occurrences", gopt.occurrences, "occurrences per motif set")
        ->default_val(2);
    generate->add_option("--output", gopt.output_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (discover->parsed()) {
            if (kappa_opt->count() > 0) {
                dopt.kappa = kappa_value;
            }
            return run_discover(dopt);
        }
        if (evaluate->parsed()) {
            return run_evaluate(eopt);
        }
        if (generate->parsed()) {
            return run_generate(gopt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
