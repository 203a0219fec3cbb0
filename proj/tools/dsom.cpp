// dsom - diffusion self-organizing maps on the unit hypersphere.
//
// Subcommands: train, kernel, classify, viz, bench. Every command that takes
// --seed is reproducible: identical flags produce byte-identical CSV and PGM
// outputs. Timings and other run metadata land in manifest.json instead.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsom/baseline.hpp"
#include "dsom/classify.hpp"
#include "dsom/diffusion.hpp"
#include "dsom/ingest.hpp"
#include "dsom/io.hpp"
#include "dsom/linalg.hpp"
#include "dsom/parallel.hpp"
#include "dsom/rng.hpp"
#include "dsom/trainer.hpp"
#include "dsom/viz.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

// --------------------------------------------------------------------------
// Data loading shared by train/classify/viz/bench
// --------------------------------------------------------------------------

struct DataFlags {
    std::string images;
    std::string labels;
    std::string synthetic;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
    auto* images = cmd->add_option("--images", flags.images, "IDX image file");
    auto* labels = cmd->add_option("--labels", flags.labels, "IDX label file");
    auto* synth = cmd->add_option(
        "--synthetic", flags.synthetic,
        "Synthetic data spec, e.g. blobs:4x50x16 or blobs:4x50x16:12.5");
    labels->needs(images);
    synth->excludes(images);
    images->excludes(synth);
}

struct BlobSpec {
    std::size_t clusters = 0;
    std::size_t per_cluster = 0;
    std::size_t dim = 0;
    double concentration = 10.0;
};

BlobSpec parse_blob_spec(const std::string& spec) {
    const std::string prefix = "blobs:";
    if (spec.rfind(prefix, 0) != 0)
        throw CLI::ValidationError("--synthetic", "expected blobs:CxPxD[:conc], got " + spec);
    BlobSpec out;
    const std::string body = spec.substr(prefix.size());
    unsigned long c = 0, p = 0, d = 0;
    double conc = 10.0;
    const int got = std::sscanf(body.c_str(), "%lux%lux%lu:%lf", &c, &p, &d, &conc);
    if (got < 3)
        throw CLI::ValidationError("--synthetic", "expected blobs:CxPxD[:conc], got " + spec);
    out.clusters = c;
    out.per_cluster = p;
    out.dim = d;
    out.concentration = conc;
    if (out.clusters == 0 || out.per_cluster == 0 || out.dim < 2)
        throw CLI::ValidationError("--synthetic", "need C >= 1, P >= 1 and D >= 2");
    return out;
}

struct LoadedData {
    dsom::Dataset dataset;
    json manifest;  // source description with checksums
};

LoadedData load_data(const DataFlags& flags, std::uint64_t seed) {
    LoadedData out;
    if (!flags.synthetic.empty()) {
        const BlobSpec spec = parse_blob_spec(flags.synthetic);
        out.dataset = dsom::synthetic_blobs(spec.clusters, spec.per_cluster, spec.dim,
                                            spec.concentration, seed);
        out.manifest = {{"source", "synthetic"},
                        {"spec", flags.synthetic},
                        {"n", out.dataset.n()},
                        {"d", out.dataset.dim()}};
        return out;
    }
    if (flags.images.empty())
        throw CLI::ValidationError(
            "data", "provide --images (with optional --labels) or --synthetic");

    const dsom::Matrix raw = dsom::read_idx_images(flags.images);
    std::vector<int> labels;
    json files = json::object();
    files["images"] = {{"path", flags.images},
                       {"fnv1a64", dsom::fnv1a64_file(flags.images)}};
    if (!flags.labels.empty()) {
        labels = dsom::read_idx_labels(flags.labels);
        if (labels.size() != raw.rows)
            throw std::runtime_error("label count " + std::to_string(labels.size()) +
                                     " does not match image count " +
                                     std::to_string(raw.rows));
        files["labels"] = {{"path", flags.labels},
                           {"fnv1a64", dsom::fnv1a64_file(flags.labels)}};
    }

    dsom::NormalizeResult normalized = dsom::normalize_dataset(raw, labels);
    if (!normalized.dropped_rows.empty())
        std::cerr << "note: dropped " << normalized.dropped_rows.size()
                  << " degenerate rows during normalization\n";
    out.dataset = std::move(normalized.dataset);
    out.manifest = {{"source", "idx"},
                    {"files", files},
                    {"n", out.dataset.n()},
                    {"d", out.dataset.dim()},
                    {"dropped_rows", normalized.dropped_rows.size()}};
    return out;
}

// --------------------------------------------------------------------------
// Schedule parsing: "L/2..2", "10..2", or an explicit list "8,5,2,0"
// --------------------------------------------------------------------------

std::vector<int> parse_schedule(const std::string& text, std::size_t side) {
    auto parse_bound = [&](const std::string& token) -> int {
        if (token == "L/2") return int(side / 2);
        if (token == "L") return int(side);
        return std::stoi(token);
    };
    const auto dots = text.find("..");
    std::vector<int> schedule;
    if (dots != std::string::npos) {
        int from = parse_bound(text.substr(0, dots));
        const int to = parse_bound(text.substr(dots + 2));
        if (from < to)
            throw CLI::ValidationError("--schedule", "range must be decreasing: " + text);
        for (int t = from; t >= to; --t) schedule.push_back(t);
    } else {
        std::stringstream ss(text);
        std::string token;
        while (std::getline(ss, token, ','))
            schedule.push_back(parse_bound(token));
    }
    if (schedule.empty())
        throw CLI::ValidationError("--schedule", "empty schedule: " + text);
    return schedule;
}

dsom::Codebook load_codebook_csv(const std::string& path) {
    dsom::Matrix weights = dsom::read_matrix_csv(path);
    const auto side = std::size_t(std::lround(std::sqrt(double(weights.rows))));
    if (side * side != weights.rows)
        throw std::runtime_error("codebook " + path + " has " +
                                 std::to_string(weights.rows) +
                                 " rows, not a square grid");
    // CSV rows carry six significant digits; restore exact unit norms.
    dsom::normalize_rows(weights);
    return dsom::Codebook{side, std::move(weights)};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// --------------------------------------------------------------------------
// train
// --------------------------------------------------------------------------

struct TrainFlags {
    DataFlags data;
    std::size_t grid_side = 10;
    float diff_coeff = 0.25f;
    float epsilon = 1e-6f;
    std::string schedule = "L/2..2";
    std::string init = "gaussian";
    int max_inner_iters = 500;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir = ".";
};

int run_train(const TrainFlags& flags) {
    dsom::parallel::set_max_threads(flags.threads);
    fs::create_directories(flags.out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    LoadedData data = load_data(flags.data, flags.seed);
    const double ingest_ms = ms_since(t0);

    dsom::TrainConfig cfg;
    cfg.grid_side = flags.grid_side;
    cfg.diff_coeff = flags.diff_coeff;
    cfg.epsilon = flags.epsilon;
    cfg.max_inner_iters = flags.max_inner_iters;
    cfg.seed = flags.seed;
    cfg.init = flags.init == "samples" ? dsom::InitStrategy::sample_draw
                                       : dsom::InitStrategy::random_gaussian;
    cfg.schedule = parse_schedule(flags.schedule, flags.grid_side);

    const auto t1 = std::chrono::steady_clock::now();
    const dsom::TrainResult result = dsom::train(data.dataset, cfg);
    const double train_ms = ms_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    const std::string codebook_path = (fs::path(flags.out_dir) / "codebook.csv").string();
    const std::string history_path = (fs::path(flags.out_dir) / "history.csv").string();
    const std::string manifest_path = (fs::path(flags.out_dir) / "manifest.json").string();
    dsom::write_matrix_csv(result.codebook.weights, codebook_path);

    std::string history_text = "diffusion_steps,iteration,delta\n";
    char line[96];
    for (const dsom::HistoryRecord& rec : result.history.records) {
        std::snprintf(line, sizeof(line), "%d,%d,%.6g\n", rec.diffusion_steps,
                      rec.iteration, double(rec.delta));
        history_text += line;
    }
    write_text(history_path, history_text);

    json schedule_summary = json::array();
    for (std::size_t i = 0; i < result.history.records.size(); ++i) {
        const auto& rec = result.history.records[i];
        const bool last_of_entry = i + 1 == result.history.records.size() ||
                                   result.history.records[i + 1].diffusion_steps !=
                                       rec.diffusion_steps;
        if (last_of_entry)
            schedule_summary.push_back({{"diffusion_steps", rec.diffusion_steps},
                                        {"iterations", rec.iteration},
                                        {"final_delta", rec.delta}});
    }

    json manifest = {
        {"command", "train"},
        {"seed", flags.seed},
        {"threads", dsom::parallel::max_threads()},
        {"config",
         {{"grid_side", cfg.grid_side},
          {"diff_coeff", cfg.diff_coeff},
          {"epsilon", cfg.epsilon},
          {"max_inner_iters", cfg.max_inner_iters},
          {"init", flags.init},
          {"schedule", cfg.schedule}}},
        {"data", data.manifest},
        {"rng_streams", {"init", "init-draw", "blobs"}},
        {"schedule_summary", schedule_summary},
        {"outputs", {codebook_path, history_path}},
    };
    manifest["timings_ms"] = {{"ingest", ingest_ms},
                              {"train", train_ms},
                              {"write", ms_since(t2)}};
    write_text(manifest_path, manifest.dump(2) + "\n");

    std::cout << "trained " << result.codebook.k() << " neurons (grid "
              << cfg.grid_side << "x" << cfg.grid_side << ", d=" << data.dataset.dim()
              << ") on " << data.dataset.n() << " samples in "
              << result.history.records.size() << " passes\n"
              << "codebook: " << codebook_path << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// kernel
// --------------------------------------------------------------------------

struct KernelFlags {
    std::size_t side = 10;
    float coeff = 0.25f;
    int steps = 0;
    std::string center;
    std::string out_dir = ".";
};

int run_kernel(const KernelFlags& flags) {
    fs::create_directories(flags.out_dir);
    const dsom::DiffusionKernel kernel =
        dsom::compute_kernel(flags.side, flags.coeff, flags.steps);

    dsom::GrayscaleMap map;
    map.side = flags.side;
    if (flags.center.empty()) {
        map.values = kernel.values;
    } else {
        unsigned long ci = 0, cj = 0;
        if (std::sscanf(flags.center.c_str(), "%lu,%lu", &ci, &cj) != 2 ||
            ci >= flags.side || cj >= flags.side)
            throw CLI::ValidationError("--center", "expected i,j within the grid");
        map.values = dsom::Matrix(flags.side, flags.side);
        dsom::shifted_flat_row(kernel, dsom::GridCoord{ci, cj}, map.values.data.data());
    }

    const std::string csv_path = (fs::path(flags.out_dir) / "kernel.csv").string();
    const std::string pgm_path = (fs::path(flags.out_dir) / "kernel.pgm").string();
    dsom::write_map_csv(map, csv_path);
    dsom::write_pgm(map, pgm_path);
    std::cout << "kernel side=" << flags.side << " steps=" << flags.steps
              << " coeff=" << flags.coeff << "\n"
              << csv_path << "\n"
              << pgm_path << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// classify
// --------------------------------------------------------------------------

struct ClassifyFlags {
    DataFlags data;
    std::string codebook;
    std::string eval_images;
    std::string eval_labels;
    std::string strategy = "correlation";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir = ".";
};

int run_classify(const ClassifyFlags& flags) {
    dsom::parallel::set_max_threads(flags.threads);
    fs::create_directories(flags.out_dir);
    const dsom::Codebook cb = load_codebook_csv(flags.codebook);

    LoadedData labeling = load_data(flags.data, flags.seed);
    if (!labeling.dataset.has_labels())
        throw std::runtime_error("classify needs labeled data (--labels or --synthetic)");

    const dsom::LabelStrategy strategy = flags.strategy == "vote"
                                             ? dsom::LabelStrategy::majority_vote
                                             : dsom::LabelStrategy::max_correlation;
    const dsom::NeuronLabels nl = dsom::label_neurons(labeling.dataset, cb, strategy);

    dsom::Dataset eval = std::move(labeling.dataset);
    if (!flags.eval_images.empty()) {
        DataFlags eval_flags;
        eval_flags.images = flags.eval_images;
        eval_flags.labels = flags.eval_labels;
        eval = load_data(eval_flags, flags.seed).dataset;
        if (!eval.has_labels())
            throw std::runtime_error("--eval-images needs --eval-labels");
    }

    const auto per_class = dsom::per_class_accuracy(cb, nl, eval);
    std::size_t correct = 0, total = 0;
    std::string csv = "class,total,correct,accuracy\n";
    char line[96];
    for (const dsom::ClassAccuracy& entry : per_class) {
        std::snprintf(line, sizeof(line), "%d,%zu,%zu,%.6g\n", entry.cls, entry.total,
                      entry.correct, double(entry.correct) / double(entry.total));
        csv += line;
        correct += entry.correct;
        total += entry.total;
    }
    const double overall = double(correct) / double(total);
    std::snprintf(line, sizeof(line), "overall,%zu,%zu,%.6g\n", total, correct, overall);
    csv += line;

    const std::string csv_path = (fs::path(flags.out_dir) / "accuracy.csv").string();
    write_text(csv_path, csv);
    std::cout << csv;
    return 0;
}

// --------------------------------------------------------------------------
// viz
// --------------------------------------------------------------------------

struct VizFlags {
    DataFlags data;
    std::string codebook;
    std::size_t tiles = 100;
    std::size_t tile_side = 0;  // 0 = sqrt(d)
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir = ".";
};

int run_viz(const VizFlags& flags) {
    dsom::parallel::set_max_threads(flags.threads);
    fs::create_directories(flags.out_dir);
    const dsom::Codebook cb = load_codebook_csv(flags.codebook);

    const dsom::GrayscaleMap corr = dsom::correlation_map(cb);
    const std::string corr_pgm = (fs::path(flags.out_dir) / "correlation.pgm").string();
    const std::string corr_csv = (fs::path(flags.out_dir) / "correlation.csv").string();
    dsom::write_pgm(corr, corr_pgm);
    dsom::write_map_csv(corr, corr_csv);
    std::cout << "correlation map mean " << corr.mean() << " -> " << corr_pgm << "\n";

    std::size_t tile_side = flags.tile_side;
    if (tile_side == 0)
        tile_side = std::size_t(std::lround(std::sqrt(double(cb.dim()))));
    if (tile_side * tile_side == cb.dim()) {
        const std::size_t count = std::min(flags.tiles, cb.k());
        dsom::Rng rng = dsom::Rng::stream(flags.seed, "picks");
        std::vector<std::size_t> order(cb.k());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = 0; i < count; ++i)
            std::swap(order[i], order[i + std::size_t(rng.next_below(order.size() - i))]);
        order.resize(count);
        const dsom::Montage montage = dsom::neuron_tiles(cb, order, tile_side);
        const std::string tiles_path = (fs::path(flags.out_dir) / "tiles.pgm").string();
        dsom::write_pgm(montage, tiles_path);
        std::cout << count << " neuron tiles -> " << tiles_path << "\n";
    } else {
        std::cerr << "note: dimension " << cb.dim()
                  << " is not a square; skipping the tile montage\n";
    }

    if (!flags.data.images.empty() || !flags.data.synthetic.empty()) {
        LoadedData labeling = load_data(flags.data, flags.seed);
        if (labeling.dataset.has_labels()) {
            const dsom::NeuronLabels nl = dsom::label_neurons(labeling.dataset, cb);
            std::vector<int> classes(nl.labels);
            std::sort(classes.begin(), classes.end());
            classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
            for (int cls : classes) {
                const dsom::GrayscaleMap mask = dsom::class_region_map(nl, cls, cb.side);
                const std::string path =
                    (fs::path(flags.out_dir) / ("class_mask_" + std::to_string(cls) + ".pgm"))
                        .string();
                dsom::write_pgm(mask, path);
            }
            std::cout << classes.size() << " class masks -> " << flags.out_dir << "\n";
        }
    }
    return 0;
}

// --------------------------------------------------------------------------
// bench
// --------------------------------------------------------------------------

struct BenchFlags {
    DataFlags data;
    std::size_t grid_side = 4;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    int online_steps = 5000;
    int batch_epochs = 20;
    std::string out_dir = ".";
};

double mean_max_dot(const dsom::Matrix& x, dsom::Matrix weights) {
    dsom::normalize_rows(weights);
    const dsom::Matrix sims = dsom::matmul_nt(x, weights);
    double sum = 0.0;
    for (std::size_t n = 0; n < sims.rows; ++n) {
        float best = sims.at(n, 0);
        for (std::size_t k = 1; k < sims.cols; ++k) best = std::max(best, sims.at(n, k));
        sum += double(best);
    }
    return sum / double(sims.rows);
}

int run_bench(const BenchFlags& flags) {
    dsom::parallel::set_max_threads(flags.threads);
    fs::create_directories(flags.out_dir);
    LoadedData data = load_data(flags.data, flags.seed);
    const dsom::Dataset& ds = data.dataset;
    const std::size_t side = flags.grid_side;

    struct Row {
        std::string method;
        double train_ms = 0.0;
        double similarity = 0.0;
        double acc = -1.0;
    };
    std::vector<Row> rows;

    auto evaluate = [&](const std::string& name, const dsom::Matrix& weights,
                        double elapsed) {
        Row row{name, elapsed, mean_max_dot(ds.samples, weights), -1.0};
        if (ds.has_labels()) {
            dsom::Matrix unit = weights;
            dsom::normalize_rows(unit);
            dsom::Codebook cb{side, std::move(unit)};
            const dsom::NeuronLabels nl = dsom::label_neurons(ds, cb);
            row.acc = dsom::accuracy(cb, nl, ds);
        }
        rows.push_back(row);
    };

    {
        dsom::TrainConfig cfg;
        cfg.grid_side = side;
        cfg.seed = flags.seed;
        const auto t = std::chrono::steady_clock::now();
        const dsom::TrainResult result = dsom::train(ds, cfg);
        evaluate("dsom", result.codebook.weights, ms_since(t));
    }
    {
        dsom::Matrix weights =
            dsom::init_codebook(side, ds.dim(), dsom::InitStrategy::random_gaussian,
                                flags.seed)
                .weights;
        dsom::OnlineSomConfig cfg;
        cfg.seed = flags.seed;
        cfg.sigma0 = float(side) / 2.0f;
        cfg.max_steps = flags.online_steps;
        // anneal to ~1% of the initial rate across the run
        cfg.theta_alpha = float(std::pow(0.01, 1.0 / double(flags.online_steps)));
        cfg.theta_sigma = cfg.theta_alpha;
        const auto t = std::chrono::steady_clock::now();
        dsom::online_som_train(ds, weights, side, cfg);
        evaluate("online_som", weights, ms_since(t));
    }
    {
        dsom::Matrix weights =
            dsom::init_codebook(side, ds.dim(), dsom::InitStrategy::random_gaussian,
                                flags.seed)
                .weights;
        const auto t = std::chrono::steady_clock::now();
        float sigma = float(side) / 2.0f;
        const float decay = float(
            std::pow(double(0.5f / sigma), 1.0 / double(std::max(1, flags.batch_epochs - 1))));
        for (int e = 0; e < flags.batch_epochs; ++e) {
            weights = dsom::batch_som_epoch(ds.samples, weights, sigma, side);
            sigma *= decay;
        }
        evaluate("batch_som", weights, ms_since(t));
    }
    {
        const auto t = std::chrono::steady_clock::now();
        const dsom::KmeansResult result =
            dsom::spherical_kmeans(ds.samples, side * side, flags.seed, 100);
        evaluate("spherical_kmeans", result.centroids, ms_since(t));
    }

    std::string csv = "method,train_ms,mean_max_dot,accuracy\n";
    char line[160];
    for (const Row& row : rows) {
        if (row.acc >= 0.0)
            std::snprintf(line, sizeof(line), "%s,%.3f,%.6g,%.6g\n", row.method.c_str(),
                          row.train_ms, row.similarity, row.acc);
        else
            std::snprintf(line, sizeof(line), "%s,%.3f,%.6g,\n", row.method.c_str(),
                          row.train_ms, row.similarity);
        csv += line;
    }
    const std::string csv_path = (fs::path(flags.out_dir) / "bench.csv").string();
    write_text(csv_path, csv);
    std::cout << csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion self-organizing maps on the unit hypersphere"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read flag defaults from an INI file");

    TrainFlags train_flags;
    CLI::App* train = app.add_subcommand("train", "train a map and dump codebook/history");
    add_data_flags(train, train_flags.data);
    train->add_option("--grid-side", train_flags.grid_side, "grid side L (K = L^2)")
        ->check(CLI::Range(std::size_t(2), std::size_t(1024)));
    train->add_option("--diff-coeff", train_flags.diff_coeff, "diffusion coefficient")
        ->capture_default_str();
    train->add_option("--epsilon", train_flags.epsilon, "inner-loop stop threshold")
        ->capture_default_str();
    train->add_option("--schedule", train_flags.schedule,
                      "diffusion steps, e.g. L/2..2 or 8,5,2,0")
        ->capture_default_str();
    train->add_option("--init", train_flags.init, "gaussian | samples")
        ->check(CLI::IsMember({"gaussian", "samples"}));
    train->add_option("--max-inner-iters", train_flags.max_inner_iters,
                      "iteration cap per schedule entry")
        ->check(CLI::PositiveNumber);
    train->add_option("--seed", train_flags.seed, "root RNG seed");
    train->add_option("--threads", train_flags.threads, "worker thread cap (0 = hardware)");
    train->add_option("--out-dir", train_flags.out_dir, "output directory");

    KernelFlags kernel_flags;
    CLI::App* kernel = app.add_subcommand("kernel", "dump a diffusion kernel as CSV and PGM");
    kernel->add_option("--side", kernel_flags.side, "grid side L")
        ->required()
        ->check(CLI::Range(std::size_t(2), std::size_t(4096)));
    kernel->add_option("--coeff", kernel_flags.coeff, "diffusion coefficient")
        ->capture_default_str();
    kernel->add_option("--steps", kernel_flags.steps, "diffusion steps T")->required();
    kernel->add_option("--center", kernel_flags.center, "shift the peak to i,j");
    kernel->add_option("--out-dir", kernel_flags.out_dir, "output directory");

    ClassifyFlags classify_flags;
    CLI::App* classify =
        app.add_subcommand("classify", "label neurons and report accuracy");
    add_data_flags(classify, classify_flags.data);
    classify->add_option("--codebook", classify_flags.codebook, "codebook CSV")->required();
    classify->add_option("--eval-images", classify_flags.eval_images,
                         "held-out IDX images (defaults to the labeling set)");
    classify->add_option("--eval-labels", classify_flags.eval_labels,
                         "held-out IDX labels");
    classify->add_option("--label-strategy", classify_flags.strategy, "correlation | vote")
        ->check(CLI::IsMember({"correlation", "vote"}));
    classify->add_option("--seed", classify_flags.seed, "root RNG seed");
    classify->add_option("--threads", classify_flags.threads, "worker thread cap");
    classify->add_option("--out-dir", classify_flags.out_dir, "output directory");

    VizFlags viz_flags;
    CLI::App* viz = app.add_subcommand("viz", "correlation map, class masks, neuron tiles");
    add_data_flags(viz, viz_flags.data);
    viz->add_option("--codebook", viz_flags.codebook, "codebook CSV")->required();
    viz->add_option("--tiles", viz_flags.tiles, "neurons in the montage")
        ->capture_default_str();
    viz->add_option("--tile-side", viz_flags.tile_side,
                    "tile edge in pixels (default sqrt(d))");
    viz->add_option("--seed", viz_flags.seed, "root RNG seed");
    viz->add_option("--threads", viz_flags.threads, "worker thread cap");
    viz->add_option("--out-dir", viz_flags.out_dir, "output directory");

    BenchFlags bench_flags;
    CLI::App* bench = app.add_subcommand(
        "bench", "compare dsom, online/batch som and spherical k-means");
    add_data_flags(bench, bench_flags.data);
    bench->add_option("--grid-side", bench_flags.grid_side, "grid side L")
        ->check(CLI::Range(std::size_t(2), std::size_t(1024)));
    bench->add_option("--online-steps", bench_flags.online_steps, "online SOM steps")
        ->check(CLI::PositiveNumber);
    bench->add_option("--batch-epochs", bench_flags.batch_epochs, "batch SOM epochs")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_flags.seed, "root RNG seed");
    bench->add_option("--threads", bench_flags.threads, "worker thread cap");
    bench->add_option("--out-dir", bench_flags.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return run_train(train_flags);
        if (kernel->parsed()) return run_kernel(kernel_flags);
        if (classify->parsed()) return run_classify(classify_flags);
        if (viz->parsed()) return run_viz(viz_flags);
        if (bench->parsed()) return run_bench(bench_flags);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "dsom: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
