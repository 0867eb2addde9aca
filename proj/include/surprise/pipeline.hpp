#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "surprise/evaluation.hpp"
#include "surprise/ratings_io.hpp"
#include "surprise/representations.hpp"

// End-to-end orchestration of one evaluation run: ingest ratings, build the
// representation model, build or reuse the cached distance matrix, run the
// series, write outputs.
namespace surprise::pipeline {

enum class Model { C, P, U, N };

Model parse_model(std::string_view name);
std::string_view model_name(Model model);

struct RunConfig {
    std::filesystem::path ratings_path;
    std::optional<io::RatingsFormat> ratings_format;  // inferred from extension if unset
    std::filesystem::path descriptions_path;          // Model C
    std::filesystem::path vectors_path;               // Model P
    std::filesystem::path stopwords_path;             // optional; bundled list otherwise
    Model model = Model::C;
    dist::Kind distance = dist::Kind::cosine;
    rec::Algorithm algorithm = rec::Algorithm::knn;
    int top_n = 10;
    int sample_size = 1000;
    int knn_k = 50;
    int frame_size = 1500;
    int min_common_users = 30;
    std::uint64_t seed = 1;
    eval::Mode mode = eval::Mode::sampled;
    int threads = 0;  // 0 = hardware concurrency
    std::filesystem::path output_dir = "out";
};

// Model/distance compatibility: the compositional distances (jaccard,
// jensen-shannon, aitchison) apply to Models C and U only; npmi requires
// Model N and Model N admits nothing else. Exactly 13 combinations pass.
bool combination_allowed(Model model, dist::Kind kind);

// Throws std::invalid_argument naming the violated rule (usage errors).
void validate(const RunConfig& config);

// FNV-1a over the canonical config string plus content digests of every
// input file that feeds the run.
std::string run_fingerprint(const RunConfig& config);

// Same, restricted to what determines the distance matrix (model, distance,
// input digests); the matrix cache is keyed by this.
std::string matrix_fingerprint(const RunConfig& config);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string digest_file(const std::filesystem::path& path);

struct RunInputs {
    std::vector<RatingEvent> log;  // filtered to represented items, chronological
    dist::DistanceMatrix matrix;
    std::vector<repr::Rejected> rejected;
    io::ParseReport parse_report;
    bool matrix_from_cache = false;
};

// Parse + model build + matrix (loading the cache under output_dir/cache when
// the fingerprint matches, saving it otherwise).
RunInputs prepare(const RunConfig& config);

struct RunResult {
    eval::SurpriseSeries series;
    eval::Summary summary;
    std::filesystem::path series_csv;
    std::filesystem::path summary_json;
};

// Full evaluate command: prepare, run the series, write series.csv and
// summary.json under output_dir, print the summary row to `out`.
RunResult run_evaluate(const RunConfig& config, std::ostream& out);

void write_summary_json(std::ostream& out, const RunConfig& config, const eval::Summary& summary,
                        const std::string& fingerprint);

}  // namespace surprise::pipeline
