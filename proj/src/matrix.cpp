#include "surprise/matrix.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "surprise/kernels.hpp"

namespace surprise::dist {

namespace {

constexpr char kMagic[4] = {'S', 'B', 'D', 'M'};
constexpr std::uint32_t kFormatVersion = 1;

int clamp_threads(int threads, std::size_t rows) {
    if (threads < 1) threads = 1;
    if (static_cast<std::size_t>(threads) > rows) threads = static_cast<int>(rows ? rows : 1);
    return threads;
}

std::string join_ids(const std::vector<ItemId>& ids, std::size_t limit = 8) {
    std::string out;
    for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
        if (i) out += ", ";
        out += std::to_string(ids[i]);
    }
    if (ids.size() > limit) out += ", ...";
    return out;
}

void format_double(std::ostream& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

std::optional<std::size_t> DistanceMatrix::index_of(ItemId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

double DistanceMatrix::operator()(ItemId a, ItemId b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia) throw std::invalid_argument("item " + std::to_string(a) + " not in distance matrix");
    if (!ib) throw std::invalid_argument("item " + std::to_string(b) + " not in distance matrix");
    return at_index(*ia, *ib);
}

template <typename PairFn>
void DistanceMatrix::fill_parallel(const PairFn& pair_distance, int threads) {
    const std::size_t n = ids_.size();
    d_.assign(n * n, 0.0);
    threads = clamp_threads(threads, n);

    // Interleaved rows balance the shrinking upper triangle; each row's cells
    // (i, j) and their mirrors (j, i) are written by exactly one worker.
    auto work = [&](std::size_t start) {
        for (std::size_t i = start; i < n; i += static_cast<std::size_t>(threads)) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double v = pair_distance(i, j);
                d_[i * n + j] = v;
                d_[j * n + i] = v;
            }
        }
    };
    if (threads == 1) {
        work(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<std::size_t>(t));
    for (auto& th : pool) th.join();
}

DistanceMatrix DistanceMatrix::build(const VectorTable& vectors, Kind kind, int threads) {
    DistanceMatrix m;
    m.ids_ = vectors.ids();
    const std::size_t n = m.ids_.size();
    const std::size_t dim = vectors.dim();

    // Upfront validation so failures name the offending items instead of
    // surfacing mid-build from a worker thread.
    std::vector<ItemId> bad;
    for (std::size_t i = 0; i < n; ++i) {
        auto row = vectors.row(i);
        bool ok = true;
        switch (kind) {
            case Kind::cosine: {
                ok = kernels::dot(row.data(), row.data(), dim) > 0.0;
                break;
            }
            case Kind::jaccard:
            case Kind::jensen_shannon:
            case Kind::aitchison: {
                double sum = 0.0;
                for (double v : row) {
                    if (v < 0.0) ok = false;
                    sum += v;
                }
                if (sum <= 0.0) ok = false;
                break;
            }
            case Kind::euclidean:
            case Kind::npmi: break;
        }
        for (double v : row)
            if (!std::isfinite(v)) ok = false;
        if (!ok) bad.push_back(m.ids_[i]);
    }
    if (!bad.empty())
        throw std::invalid_argument(std::string("items unusable under ") +
                                    std::string(kind_name(kind)) + ": " + join_ids(bad));

    switch (kind) {
        case Kind::euclidean: {
            m.fill_parallel(
                [&](std::size_t i, std::size_t j) {
                    return std::sqrt(kernels::l2sq(vectors.row(i).data(), vectors.row(j).data(), dim));
                },
                threads);
            break;
        }
        case Kind::cosine: {
            std::vector<double> norm(n);
            for (std::size_t i = 0; i < n; ++i)
                norm[i] = std::sqrt(kernels::dot(vectors.row(i).data(), vectors.row(i).data(), dim));
            m.fill_parallel(
                [&](std::size_t i, std::size_t j) {
                    double c = kernels::dot(vectors.row(i).data(), vectors.row(j).data(), dim) /
                               (norm[i] * norm[j]);
                    if (c > 1.0) c = 1.0;
                    if (c < -1.0) c = -1.0;
                    return 1.0 - c;
                },
                threads);
            break;
        }
        case Kind::jaccard: {
            m.fill_parallel(
                [&](std::size_t i, std::size_t j) {
                    double lo, hi;
                    kernels::minmax_sums(vectors.row(i).data(), vectors.row(j).data(), dim, &lo, &hi);
                    return 1.0 - lo / hi;
                },
                threads);
            break;
        }
        case Kind::jensen_shannon: {
            // closure once per item; the pairwise loop stays scalar (logs).
            std::vector<double> probs(n * dim);
            for (std::size_t i = 0; i < n; ++i) {
                auto row = vectors.row(i);
                double sum = 0.0;
                for (double v : row) sum += v;
                for (std::size_t c = 0; c < dim; ++c) probs[i * dim + c] = row[c] / sum;
            }
            m.fill_parallel(
                [&](std::size_t i, std::size_t j) {
                    return jensen_shannon({&probs[i * dim], dim}, {&probs[j * dim], dim});
                },
                threads);
            break;
        }
        case Kind::aitchison: {
            // smooth zeros, then clr once; pairwise Aitchison is plain l2 in
            // clr space.
            std::vector<double> clrs(n * dim);
            for (std::size_t i = 0; i < n; ++i) {
                auto row = vectors.row(i);
                std::vector<double> comp = bmt_smooth(row);
                std::vector<double> c = clr(comp);
                std::copy(c.begin(), c.end(), clrs.begin() + static_cast<std::ptrdiff_t>(i * dim));
            }
            m.fill_parallel(
                [&](std::size_t i, std::size_t j) {
                    return std::sqrt(kernels::l2sq(&clrs[i * dim], &clrs[j * dim], dim));
                },
                threads);
            break;
        }
        case Kind::npmi:
            throw std::invalid_argument("npmi matrices are built from an NPMI model");
    }
    return m;
}

DistanceMatrix DistanceMatrix::build_npmi(const repr::NpmiModel& model, int threads) {
    DistanceMatrix m;
    m.ids_.reserve(model.p_single.size());
    for (const auto& [id, p] : model.p_single) m.ids_.push_back(id);
    std::sort(m.ids_.begin(), m.ids_.end());
    m.fill_parallel(
        [&](std::size_t i, std::size_t j) { return npmi_distance(m.ids_[i], m.ids_[j], model); },
        threads);
    return m;
}

void DistanceMatrix::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write distance matrix cache: " + path.string());
    const std::uint32_t n = static_cast<std::uint32_t>(ids_.size());
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kFormatVersion), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(ids_.data()),
              static_cast<std::streamsize>(ids_.size() * sizeof(ItemId)));
    for (std::size_t i = 0; i < ids_.size(); ++i)
        out.write(reinterpret_cast<const char*>(&d_[i * ids_.size() + i + 1]),
                  static_cast<std::streamsize>((ids_.size() - i - 1) * sizeof(double)));
    if (!out) throw DataError("short write to distance matrix cache: " + path.string());
}

DistanceMatrix DistanceMatrix::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read distance matrix cache: " + path.string());
    char magic[4];
    std::uint32_t version = 0, n = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("not a distance matrix cache: " + path.string());
    if (version != kFormatVersion)
        throw DataError("unsupported cache version " + std::to_string(version) + ": " +
                        path.string());
    DistanceMatrix m;
    m.ids_.resize(n);
    in.read(reinterpret_cast<char*>(m.ids_.data()),
            static_cast<std::streamsize>(n * sizeof(ItemId)));
    if (!in) throw DataError("truncated distance matrix cache: " + path.string());
    for (std::size_t i = 1; i < m.ids_.size(); ++i)
        if (m.ids_[i - 1] >= m.ids_[i])
            throw DataError("cache item ids are not strictly sorted: " + path.string());
    m.d_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        in.read(reinterpret_cast<char*>(&m.d_[i * n + i + 1]),
                static_cast<std::streamsize>((n - i - 1) * sizeof(double)));
        for (std::size_t j = i + 1; j < n; ++j) m.d_[j * n + i] = m.d_[i * n + j];
    }
    if (!in) throw DataError("truncated distance matrix cache: " + path.string());
    return m;
}

void DistanceMatrix::export_csv(std::ostream& out) const {
    const std::size_t n = ids_.size();
    out << "item_id";
    for (ItemId id : ids_) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << ids_[i];
        for (std::size_t j = 0; j < n; ++j) {
            out << ',';
            format_double(out, d_[i * n + j]);
        }
        out << '\n';
    }
}

}  // namespace surprise::dist
