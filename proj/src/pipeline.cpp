#include "surprise/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace surprise::pipeline {

Model parse_model(std::string_view name) {
    if (name == "C" || name == "c") return Model::C;
    if (name == "P" || name == "p") return Model::P;
    if (name == "U" || name == "u") return Model::U;
    if (name == "N" || name == "n") return Model::N;
    throw std::invalid_argument("unknown model: " + std::string(name));
}

std::string_view model_name(Model model) {
    switch (model) {
        case Model::C: return "C";
        case Model::P: return "P";
        case Model::U: return "U";
        case Model::N: return "N";
    }
    return "?";
}

bool combination_allowed(Model model, dist::Kind kind) {
    if (kind == dist::Kind::npmi) return model == Model::N;
    if (model == Model::N) return false;
    if (dist::requires_compositional(kind)) return model == Model::C || model == Model::U;
    // euclidean and cosine run on any vector model
    return true;
}

void validate(const RunConfig& config) {
    if (!combination_allowed(config.model, config.distance)) {
        std::string rule;
        if (config.distance == dist::Kind::npmi && config.model != Model::N)
            rule = "the NPMI distance requires the Model N score model";
        else if (config.model == Model::N)
            rule = "Model N admits only the NPMI distance";
        else
            rule = "compositional distances (jaccard, jensen-shannon, aitchison) apply to "
                   "Models C and U only";
        throw std::invalid_argument("incompatible model/distance: " +
                                    std::string(model_name(config.model)) + " with " +
                                    std::string(dist::kind_name(config.distance)) + " (" + rule +
                                    ")");
    }
    if (config.ratings_path.empty()) throw std::invalid_argument("missing --ratings");
    if (config.model == Model::C && config.descriptions_path.empty())
        throw std::invalid_argument("Model C needs --descriptions");
    if (config.model == Model::P && config.vectors_path.empty())
        throw std::invalid_argument("Model P needs --vectors");
    if (config.top_n < 1) throw std::invalid_argument("--top-n must be positive");
    if (config.sample_size < 1) throw std::invalid_argument("--sample-size must be positive");
    if (config.top_n > config.sample_size)
        throw std::invalid_argument("--top-n cannot exceed --sample-size");
    if (config.knn_k < 1) throw std::invalid_argument("--k must be positive");
    if (config.frame_size < 1) throw std::invalid_argument("--frame-size must be positive");
    if (config.min_common_users < 1)
        throw std::invalid_argument("--min-common-users must be positive");
    if (config.threads < 0) throw std::invalid_argument("--threads cannot be negative");
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << v;
    return ss.str();
}

}  // namespace

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file for digest: " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
    return hex64(h);
}

namespace {

std::string matrix_key(const RunConfig& config) {
    std::ostringstream key;
    key << "model=" << model_name(config.model) << "\ndistance=" << dist::kind_name(config.distance)
        << "\nratings=" << digest_file(config.ratings_path) << '\n';
    if (config.model == Model::C) {
        key << "descriptions=" << digest_file(config.descriptions_path) << '\n';
        key << "stopwords="
            << (config.stopwords_path.empty() ? std::string("builtin")
                                              : digest_file(config.stopwords_path))
            << '\n';
    }
    if (config.model == Model::P) key << "vectors=" << digest_file(config.vectors_path) << '\n';
    return key.str();
}

}  // namespace

std::string matrix_fingerprint(const RunConfig& config) {
    return hex64(fnv1a64(matrix_key(config)));
}

std::string run_fingerprint(const RunConfig& config) {
    std::ostringstream key;
    key << matrix_key(config) << "algorithm=" << rec::algorithm_name(config.algorithm)
        << "\nmode=" << eval::mode_name(config.mode) << "\ntop_n=" << config.top_n
        << "\nsample_size=" << config.sample_size << "\nk=" << config.knn_k
        << "\nframe_size=" << config.frame_size
        << "\nmin_common_users=" << config.min_common_users << "\nseed=" << config.seed << '\n';
    return hex64(fnv1a64(key.str()));
}

RunInputs prepare(const RunConfig& config) {
    validate(config);
    RunInputs inputs;

    io::RatingsFormat format = config.ratings_format ? *config.ratings_format
                                                     : io::infer_format(config.ratings_path);
    std::vector<RatingEvent> log =
        io::parse_ratings(config.ratings_path, format, &inputs.parse_report);

    int threads = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    // Which items have a usable representation decides which events survive;
    // rejected items leave the log before segmentation, as in preprocessing.
    std::vector<ItemId> log_items;
    log_items.reserve(log.size());
    for (const RatingEvent& e : log) log_items.push_back(e.item);
    std::sort(log_items.begin(), log_items.end());
    log_items.erase(std::unique(log_items.begin(), log_items.end()), log_items.end());

    std::filesystem::path cache_dir = config.output_dir / "cache";
    std::filesystem::path cache_file = cache_dir / ("matrix-" + matrix_fingerprint(config) + ".sbdm");

    std::vector<ItemId> represented;
    auto finish_matrix = [&](auto build_fn) {
        if (std::filesystem::exists(cache_file)) {
            inputs.matrix = dist::DistanceMatrix::load(cache_file);
            if (inputs.matrix.items() == represented) {
                inputs.matrix_from_cache = true;
                return;
            }
            inputs.matrix = dist::DistanceMatrix();  // stale cache; rebuild
        }
        inputs.matrix = build_fn();
        std::filesystem::create_directories(cache_dir);
        inputs.matrix.save(cache_file);
    };

    switch (config.model) {
        case Model::C: {
            repr::Catalog catalog = repr::load_descriptions_tsv(config.descriptions_path);
            std::unordered_set<std::string> stopwords =
                config.stopwords_path.empty() ? repr::default_stopwords()
                                              : repr::load_stopwords(config.stopwords_path);
            repr::BuildResult built = repr::build_count_vsm(catalog, stopwords, log_items);
            inputs.rejected = built.rejected;
            represented = built.vectors.ids();
            finish_matrix([&] {
                return dist::DistanceMatrix::build(built.vectors, config.distance, threads);
            });
            break;
        }
        case Model::P: {
            dist::VectorTable vectors = repr::load_dense_vectors(config.vectors_path);
            for (ItemId id : log_items)
                if (!vectors.index_of(id))
                    inputs.rejected.push_back({id, repr::RejectReason::missing_vector});
            // restrict to items that occur in the log
            std::map<ItemId, std::vector<double>> rows;
            for (ItemId id : log_items) {
                auto idx = vectors.index_of(id);
                if (idx) {
                    auto row = vectors.row(*idx);
                    rows.emplace(id, std::vector<double>(row.begin(), row.end()));
                }
            }
            if (rows.empty()) throw DataError("no log item has a vector in the Model P file");
            dist::VectorTable used(rows);
            represented = used.ids();
            finish_matrix(
                [&] { return dist::DistanceMatrix::build(used, config.distance, threads); });
            break;
        }
        case Model::U: {
            std::vector<UserId> users;
            users.reserve(log.size());
            for (const RatingEvent& e : log) users.push_back(e.user);
            std::sort(users.begin(), users.end());
            users.erase(std::unique(users.begin(), users.end()), users.end());
            repr::BuildResult built = repr::build_user_item(log, users, log_items);
            inputs.rejected = built.rejected;
            represented = built.vectors.ids();
            finish_matrix([&] {
                return dist::DistanceMatrix::build(built.vectors, config.distance, threads);
            });
            break;
        }
        case Model::N: {
            repr::NpmiModel model = repr::build_npmi_model(log);
            represented.reserve(model.p_single.size());
            for (const auto& [id, p] : model.p_single) represented.push_back(id);
            std::sort(represented.begin(), represented.end());
            finish_matrix([&] { return dist::DistanceMatrix::build_npmi(model, threads); });
            break;
        }
    }

    inputs.log.reserve(log.size());
    for (const RatingEvent& e : log)
        if (std::binary_search(represented.begin(), represented.end(), e.item))
            inputs.log.push_back(e);
    if (inputs.log.empty()) throw DataError("no rating events survive item rejection");
    return inputs;
}

void write_summary_json(std::ostream& out, const RunConfig& config, const eval::Summary& summary,
                        const std::string& fingerprint) {
    nlohmann::ordered_json j;
    j["model"] = std::string(model_name(config.model));
    j["distance"] = std::string(dist::kind_name(config.distance));
    j["algorithm"] = std::string(rec::algorithm_name(config.algorithm));
    j["mode"] = std::string(eval::mode_name(config.mode));
    j["median"] = summary.median;
    j["mean"] = summary.mean;
    j["stdev"] = summary.stdev;
    j["n_intervals"] = summary.n_intervals;
    j["stdev_degenerate"] = summary.stdev_degenerate;
    j["fingerprint"] = fingerprint;
    out << j.dump(2) << '\n';
}

RunResult run_evaluate(const RunConfig& config, std::ostream& out) {
    RunInputs inputs = prepare(config);
    if (!inputs.parse_report.bad_lines.empty()) {
        const auto& bad = inputs.parse_report.bad_lines;
        std::cerr << "warning: " << bad.size() << " malformed rating line(s) skipped";
        for (std::size_t i = 0; i < bad.size() && i < 5; ++i)
            std::cerr << (i ? "; " : ": ") << "line " << bad[i].first << " (" << bad[i].second
                      << ")";
        if (bad.size() > 5) std::cerr << "; ...";
        std::cerr << "\n";
    }
    if (!inputs.rejected.empty())
        std::cerr << "note: " << inputs.rejected.size()
                  << " item(s) rejected by the representation model\n";

    eval::Params params;
    params.scorer.kind = config.algorithm;
    params.scorer.knn_k = config.knn_k;
    params.mode = config.mode;
    params.top_n = config.top_n;
    params.sample_size = config.sample_size;
    params.frame_size = config.frame_size;
    params.min_common_users = config.min_common_users;
    params.seed = config.seed;
    params.threads = config.threads > 0
                         ? config.threads
                         : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    RunResult result;
    result.series = eval::run_series(inputs.log, inputs.matrix, params);
    result.series.fingerprint = run_fingerprint(config);
    result.summary = eval::summarize(result.series);
    for (const eval::Measurement& m : result.series.measurements)
        if (!m.skipped.empty())
            std::cerr << "warning: interval " << m.interval << " skipped " << m.skipped.size()
                      << " user(s) with empty unknown sets\n";

    std::filesystem::create_directories(config.output_dir);
    result.series_csv = config.output_dir / "series.csv";
    result.summary_json = config.output_dir / "summary.json";
    {
        std::ofstream csv(result.series_csv, std::ios::trunc);
        if (!csv) throw DataError("cannot write " + result.series_csv.string());
        eval::write_series_csv(csv, result.series);
    }
    {
        std::ofstream js(result.summary_json, std::ios::trunc);
        if (!js) throw DataError("cannot write " + result.summary_json.string());
        write_summary_json(js, config, result.summary, result.series.fingerprint);
    }

    out << "Model  Distance        Algorithm  Mode        Median   Mean     St.Dev.  Intervals\n";
    std::ostringstream row;
    row << std::left << std::setw(7) << model_name(config.model) << std::setw(16)
        << dist::kind_name(config.distance) << std::setw(11) << rec::algorithm_name(config.algorithm)
        << std::setw(12) << eval::mode_name(config.mode) << std::fixed << std::setprecision(3)
        << std::setw(9) << result.summary.median << std::setw(9) << result.summary.mean
        << std::setw(9) << result.summary.stdev << result.summary.n_intervals;
    out << row.str() << '\n';
    return result;
}

}  // namespace surprise::pipeline
