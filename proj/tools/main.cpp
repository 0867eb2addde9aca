// Command-line front door: evaluate | oracle | synth | matrix.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "surprise/kernels.hpp"
#include "surprise/matrix.hpp"
#include "surprise/oracle.hpp"
#include "surprise/pipeline.hpp"
#include "surprise/synth.hpp"

namespace {

using surprise::DataError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct EvaluateFlags {
    surprise::pipeline::RunConfig config;
    std::string format;
    std::string model = "C";
    std::string distance = "cosine";
    std::string algorithm = "knn";
    std::string mode = "sampled";
    std::string config_file;
};

// key=value settings; flags given on the command line win.
void apply_config_file(CLI::App* cmd, EvaluateFlags& flags) {
    std::ifstream in(flags.config_file);
    if (!in) throw DataError("cannot read config file: " + flags.config_file);

    auto set_string = [](std::string* dst) {
        return [dst](const std::string& v) { *dst = v; };
    };
    auto set_path = [](std::filesystem::path* dst) {
        return [dst](const std::string& v) { *dst = v; };
    };
    auto set_int = [](int* dst) {
        return [dst](const std::string& v) { *dst = std::stoi(v); };
    };
    const std::map<std::string, std::function<void(const std::string&)>> setters{
        {"ratings", set_path(&flags.config.ratings_path)},
        {"ratings-format", set_string(&flags.format)},
        {"descriptions", set_path(&flags.config.descriptions_path)},
        {"vectors", set_path(&flags.config.vectors_path)},
        {"stopwords", set_path(&flags.config.stopwords_path)},
        {"model", set_string(&flags.model)},
        {"distance", set_string(&flags.distance)},
        {"algorithm", set_string(&flags.algorithm)},
        {"mode", set_string(&flags.mode)},
        {"top-n", set_int(&flags.config.top_n)},
        {"sample-size", set_int(&flags.config.sample_size)},
        {"k", set_int(&flags.config.knn_k)},
        {"frame-size", set_int(&flags.config.frame_size)},
        {"min-common-users", set_int(&flags.config.min_common_users)},
        {"threads", set_int(&flags.config.threads)},
        {"seed", [&flags](const std::string& v) { flags.config.seed = std::stoull(v); }},
        {"output-dir", set_path(&flags.config.output_dir)},
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        if (cmd->count("--" + key) > 0) continue;  // command line wins
        try {
            it->second(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value '" +
                                        value + "' for " + key);
        }
    }
}

void add_evaluate(CLI::App& app, EvaluateFlags& flags) {
    CLI::App* cmd = app.add_subcommand("evaluate",
                                       "run the one-plus-random surprise evaluation over a log");
    cmd->add_option("--config", flags.config_file, "key=value config file; flags override it");
    cmd->add_option("--ratings", flags.config.ratings_path, "ratings log");
    cmd->add_option("--ratings-format", flags.format, "movielens-dat | csv (default: by extension)");
    cmd->add_option("--descriptions", flags.config.descriptions_path,
                    "item descriptions TSV (Model C)");
    cmd->add_option("--vectors", flags.config.vectors_path, "dense item vectors (Model P)");
    cmd->add_option("--stopwords", flags.config.stopwords_path,
                    "stopword file, one word per line (default: bundled list)");
    cmd->add_option("--model", flags.model, "C | P | U | N")->capture_default_str();
    cmd->add_option("--distance", flags.distance,
                    "euclidean | cosine | jaccard | jensen-shannon | aitchison | npmi")
        ->capture_default_str();
    cmd->add_option("--algorithm", flags.algorithm, "knn | msi | lsi")->capture_default_str();
    cmd->add_option("--top-n", flags.config.top_n, "recommendation list length")
        ->capture_default_str();
    cmd->add_option("--sample-size", flags.config.sample_size, "unknown-item sample per user")
        ->capture_default_str();
    cmd->add_option("--k", flags.config.knn_k, "kNN neighborhood size")->capture_default_str();
    cmd->add_option("--frame-size", flags.config.frame_size, "ratings per timeframe")
        ->capture_default_str();
    cmd->add_option("--min-common-users", flags.config.min_common_users,
                    "common users needed for an eligible interval")
        ->capture_default_str();
    cmd->add_option("--seed", flags.config.seed, "random seed")->capture_default_str();
    cmd->add_option("--mode", flags.mode, "sampled | exhaustive")->capture_default_str();
    cmd->add_option("--threads", flags.config.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    cmd->add_option("--output-dir", flags.config.output_dir, "where series.csv and summary.json go")
        ->capture_default_str();
}

int run_evaluate(EvaluateFlags& flags, CLI::App* cmd) {
    if (!flags.config_file.empty()) apply_config_file(cmd, flags);
    flags.config.model = surprise::pipeline::parse_model(flags.model);
    flags.config.distance = surprise::dist::parse_kind(flags.distance);
    flags.config.algorithm = surprise::rec::parse_algorithm(flags.algorithm);
    flags.config.mode = surprise::eval::parse_mode(flags.mode);
    if (!flags.format.empty())
        flags.config.ratings_format = surprise::io::parse_format(flags.format);
    surprise::pipeline::validate(flags.config);

    surprise::pipeline::RunResult result = surprise::pipeline::run_evaluate(flags.config, std::cout);
    std::cout << "series: " << result.series_csv.string()
              << "\nsummary: " << result.summary_json.string() << "\n";
    return kExitOk;
}

struct OracleFlags {
    int instances = 200;
    int min_size = 5;
    int max_size = 8;
    std::vector<std::string> distances = {"euclidean", "cosine", "jaccard", "jensen-shannon"};
    std::uint64_t seed = 1;
    std::string out_csv;
};

void add_oracle(CLI::App& app, OracleFlags& flags) {
    CLI::App* cmd = app.add_subcommand(
        "oracle", "compare exact potential-surprise bounds against the greedy estimates");
    cmd->add_option("--instances", flags.instances, "random instances per distance")
        ->capture_default_str();
    cmd->add_option("--min-size", flags.min_size, "smallest unknown-set size")
        ->capture_default_str();
    cmd->add_option("--max-size", flags.max_size, "largest unknown-set size (<= 10)")
        ->capture_default_str();
    cmd->add_option("--distances", flags.distances, "distance kinds to validate")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--seed", flags.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", flags.out_csv, "also write the report as CSV");
}

int run_oracle(const OracleFlags& flags) {
    std::vector<surprise::dist::Kind> kinds;
    for (const std::string& name : flags.distances)
        kinds.push_back(surprise::dist::parse_kind(name));
    surprise::oracle::OracleReport report = surprise::oracle::validate_greedy(
        flags.instances, flags.min_size, flags.max_size, kinds, flags.seed);
    surprise::oracle::print_report(std::cout, report);
    if (!flags.out_csv.empty()) {
        std::ofstream out(flags.out_csv, std::ios::trunc);
        if (!out) throw DataError("cannot write " + flags.out_csv);
        surprise::oracle::write_report_csv(out, report);
    }
    return kExitOk;
}

struct SynthFlags {
    surprise::io::SynthConfig config;
    std::string overlap = "chain";
    std::string ratings_out = "synthetic.csv";
    std::string descriptions_out;
    std::string vectors_out;
};

void add_synth(CLI::App& app, SynthFlags& flags) {
    CLI::App* cmd =
        app.add_subcommand("synth", "generate a seeded synthetic rating log and item world");
    cmd->add_option("--users", flags.config.users, "user universe size")->capture_default_str();
    cmd->add_option("--items", flags.config.items, "item universe size")->capture_default_str();
    cmd->add_option("--events", flags.config.events, "rating events")->capture_default_str();
    cmd->add_option("--frame-size", flags.config.frame_size,
                    "frame size the overlap engineering aligns to")
        ->capture_default_str();
    cmd->add_option("--overlap", flags.overlap, "chain | disjoint")->capture_default_str();
    cmd->add_option("--overlap-users", flags.config.overlap_users,
                    "users shared by consecutive frames (chain)")
        ->capture_default_str();
    cmd->add_option("--frame-users", flags.config.frame_users,
                    "users active per frame (0 = derive)")
        ->capture_default_str();
    cmd->add_option("--seed", flags.config.seed, "random seed")->capture_default_str();
    cmd->add_option("--vector-dim", flags.config.vector_dim, "dense vector dimensionality")
        ->capture_default_str();
    cmd->add_option("--desc-terms", flags.config.desc_terms, "terms per description")
        ->capture_default_str();
    cmd->add_option("--out", flags.ratings_out, "ratings CSV path")->capture_default_str();
    cmd->add_option("--descriptions-out", flags.descriptions_out, "also write a descriptions TSV");
    cmd->add_option("--vectors-out", flags.vectors_out, "also write a dense vector file");
}

int run_synth(SynthFlags& flags) {
    flags.config.overlap = surprise::io::parse_overlap(flags.overlap);
    std::vector<surprise::RatingEvent> events = surprise::io::synth_ratings(flags.config);
    surprise::io::write_ratings_csv(flags.ratings_out, events);
    std::cout << "wrote " << events.size() << " events to " << flags.ratings_out << "\n";
    if (!flags.descriptions_out.empty()) {
        surprise::io::write_descriptions_tsv(flags.descriptions_out,
                                             surprise::io::synth_descriptions(flags.config));
        std::cout << "wrote descriptions to " << flags.descriptions_out << "\n";
    }
    if (!flags.vectors_out.empty()) {
        surprise::repr::write_dense_vectors(flags.vectors_out,
                                            surprise::io::synth_vectors(flags.config));
        std::cout << "wrote vectors to " << flags.vectors_out << "\n";
    }
    return kExitOk;
}

struct MatrixFlags {
    EvaluateFlags eval;  // reuse the model/distance/input flags
    std::string out;
    std::string csv;
    std::string file;
};

void add_matrix(CLI::App& app, MatrixFlags& flags, CLI::App** build_cmd, CLI::App** info_cmd,
                CLI::App** export_cmd) {
    CLI::App* cmd = app.add_subcommand("matrix", "build or inspect distance-matrix caches");
    cmd->require_subcommand(1);

    CLI::App* build = cmd->add_subcommand("build", "compute a matrix and write an SBDM cache");
    build->add_option("--ratings", flags.eval.config.ratings_path, "ratings log")->required();
    build->add_option("--ratings-format", flags.eval.format, "movielens-dat | csv");
    build->add_option("--descriptions", flags.eval.config.descriptions_path,
                      "item descriptions TSV (Model C)");
    build->add_option("--vectors", flags.eval.config.vectors_path, "dense item vectors (Model P)");
    build->add_option("--stopwords", flags.eval.config.stopwords_path, "stopword file");
    build->add_option("--model", flags.eval.model, "C | P | U | N")->capture_default_str();
    build->add_option("--distance", flags.eval.distance, "distance kind")->capture_default_str();
    build->add_option("--threads", flags.eval.config.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    build->add_option("--out", flags.out, "SBDM output path")->required();
    build->add_option("--csv", flags.csv, "also export the matrix as CSV");

    CLI::App* info = cmd->add_subcommand("info", "describe an SBDM cache file");
    info->add_option("file", flags.file, "SBDM cache path")->required();

    CLI::App* exp = cmd->add_subcommand("export", "write an SBDM cache as CSV");
    exp->add_option("file", flags.file, "SBDM cache path")->required();
    exp->add_option("--out", flags.csv, "CSV output path (default: stdout)");

    *build_cmd = build;
    *info_cmd = info;
    *export_cmd = exp;
}

int run_matrix_build(MatrixFlags& flags) {
    flags.eval.config.model = surprise::pipeline::parse_model(flags.eval.model);
    flags.eval.config.distance = surprise::dist::parse_kind(flags.eval.distance);
    if (!flags.eval.format.empty())
        flags.eval.config.ratings_format = surprise::io::parse_format(flags.eval.format);
    surprise::pipeline::validate(flags.eval.config);

    surprise::pipeline::RunInputs inputs = surprise::pipeline::prepare(flags.eval.config);
    inputs.matrix.save(flags.out);
    std::cout << "matrix: " << inputs.matrix.size() << " items ("
              << (inputs.matrix_from_cache ? "from cache" : "built") << "), kernels "
              << surprise::kernels::impl_name(surprise::kernels::active()) << "\nwrote " << flags.out
              << "\n";
    if (!flags.csv.empty()) {
        std::ofstream out(flags.csv, std::ios::trunc);
        if (!out) throw DataError("cannot write " + flags.csv);
        inputs.matrix.export_csv(out);
        std::cout << "wrote " << flags.csv << "\n";
    }
    return kExitOk;
}

int run_matrix_info(const MatrixFlags& flags) {
    surprise::dist::DistanceMatrix m = surprise::dist::DistanceMatrix::load(flags.file);
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            double v = m.at_index(i, j);
            if (first || v < lo) lo = v;
            if (first || v > hi) hi = v;
            first = false;
        }
    std::cout << "items: " << m.size() << "\n";
    if (!m.items().empty())
        std::cout << "id range: " << m.items().front() << " .. " << m.items().back() << "\n";
    if (!first) std::cout << "off-diagonal range: [" << lo << ", " << hi << "]\n";
    return kExitOk;
}

int run_matrix_export(const MatrixFlags& flags) {
    surprise::dist::DistanceMatrix m = surprise::dist::DistanceMatrix::load(flags.file);
    if (flags.csv.empty()) {
        m.export_csv(std::cout);
    } else {
        std::ofstream out(flags.csv, std::ios::trunc);
        if (!out) throw DataError("cannot write " + flags.csv);
        m.export_csv(out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded normalised-surprise evaluation for recommender logs"};
    app.require_subcommand(1);

    EvaluateFlags evaluate_flags;
    OracleFlags oracle_flags;
    SynthFlags synth_flags;
    MatrixFlags matrix_flags;
    CLI::App* matrix_build = nullptr;
    CLI::App* matrix_info = nullptr;
    CLI::App* matrix_export = nullptr;

    add_evaluate(app, evaluate_flags);
    add_oracle(app, oracle_flags);
    add_synth(app, synth_flags);
    add_matrix(app, matrix_flags, &matrix_build, &matrix_info, &matrix_export);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("evaluate"))
            return run_evaluate(evaluate_flags, app.get_subcommand("evaluate"));
        if (app.got_subcommand("oracle")) return run_oracle(oracle_flags);
        if (app.got_subcommand("synth")) return run_synth(synth_flags);
        if (app.got_subcommand("matrix")) {
            if (matrix_build->parsed()) return run_matrix_build(matrix_flags);
            if (matrix_info->parsed()) return run_matrix_info(matrix_flags);
            if (matrix_export->parsed()) return run_matrix_export(matrix_flags);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
