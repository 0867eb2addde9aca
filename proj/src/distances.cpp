#include "surprise/distances.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "surprise/kernels.hpp"

namespace surprise::dist {

Kind parse_kind(std::string_view name) {
    if (name == "euclidean") return Kind::euclidean;
    if (name == "cosine") return Kind::cosine;
    if (name == "jaccard") return Kind::jaccard;
    if (name == "jensen-shannon" || name == "jensen_shannon") return Kind::jensen_shannon;
    if (name == "aitchison") return Kind::aitchison;
    if (name == "npmi") return Kind::npmi;
    throw std::invalid_argument("unknown distance: " + std::string(name));
}

std::string_view kind_name(Kind kind) {
    switch (kind) {
        case Kind::euclidean: return "euclidean";
        case Kind::cosine: return "cosine";
        case Kind::jaccard: return "jaccard";
        case Kind::jensen_shannon: return "jensen-shannon";
        case Kind::aitchison: return "aitchison";
        case Kind::npmi: return "npmi";
    }
    return "?";
}

bool requires_compositional(Kind kind) {
    return kind == Kind::jaccard || kind == Kind::jensen_shannon || kind == Kind::aitchison;
}

VectorTable::VectorTable(const std::map<ItemId, std::vector<double>>& rows) {
    ids_.reserve(rows.size());
    for (const auto& [id, vec] : rows) {
        if (ids_.empty()) {
            dim_ = vec.size();
        } else if (vec.size() != dim_) {
            throw std::invalid_argument("inconsistent vector dimensionality for item " +
                                        std::to_string(id));
        }
        ids_.push_back(id);
    }
    data_.reserve(ids_.size() * dim_);
    for (const auto& [id, vec] : rows) data_.insert(data_.end(), vec.begin(), vec.end());
}

std::optional<std::size_t> VectorTable::index_of(ItemId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

std::span<const double> VectorTable::row_of(ItemId id) const {
    auto idx = index_of(id);
    if (!idx) throw std::invalid_argument("no vector for item " + std::to_string(id));
    return row(*idx);
}

namespace {

void require_same_dim(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()));
}

bool identical(std::span<const double> x, std::span<const double> y) {
    return x.data() == y.data() ||
           std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

}  // namespace

double euclidean(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y);
    return std::sqrt(kernels::l2sq(x.data(), y.data(), x.size()));
}

double cosine(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y);
    double nx = kernels::dot(x.data(), x.data(), x.size());
    double ny = kernels::dot(y.data(), y.data(), y.size());
    if (nx == 0.0 || ny == 0.0)
        throw std::invalid_argument("cosine distance is undefined for a zero vector");
    if (identical(x, y)) return 0.0;
    double c = kernels::dot(x.data(), y.data(), x.size()) / (std::sqrt(nx) * std::sqrt(ny));
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return 1.0 - c;
}

double weighted_jaccard(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < 0.0 || y[i] < 0.0)
            throw std::invalid_argument("weighted Jaccard requires non-negative components");
    double lo, hi;
    kernels::minmax_sums(x.data(), y.data(), x.size(), &lo, &hi);
    if (hi == 0.0)
        throw std::invalid_argument("weighted Jaccard is undefined for two zero vectors");
    return 1.0 - lo / hi;
}

double jensen_shannon(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0 || y[i] < 0.0)
            throw std::invalid_argument("Jensen-Shannon requires non-negative components");
        sx += x[i];
        sy += y[i];
    }
    if (sx == 0.0 || sy == 0.0)
        throw std::invalid_argument("Jensen-Shannon is undefined for a zero vector");
    // 0 log 0 := 0; log base 2 puts the divergence in [0, 1].
    constexpr double inv_ln2 = 1.4426950408889634074;
    double kp = 0.0, kq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = x[i] / sx;
        double q = y[i] / sy;
        double m = 0.5 * (p + q);
        if (p > 0.0) kp += p * std::log(p / m) * inv_ln2;
        if (q > 0.0) kq += q * std::log(q / m) * inv_ln2;
    }
    double v = 0.5 * (kp + kq);
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    return v;
}

std::vector<double> clr(std::span<const double> x) {
    std::vector<double> out(x.size());
    double mean_log = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0))
            throw std::invalid_argument(
                "clr requires strictly positive components; smooth zeros with bmt_smooth first");
        out[i] = std::log(x[i]);
        mean_log += out[i];
    }
    mean_log /= static_cast<double>(x.size());
    for (double& v : out) v -= mean_log;
    return out;
}

double aitchison(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y);
    std::vector<double> cx = clr(x);
    std::vector<double> cy = clr(y);
    return std::sqrt(kernels::l2sq(cx.data(), cy.data(), cx.size()));
}

std::vector<double> bmt_smooth(std::span<const double> counts) {
    const std::size_t dims = counts.size();
    if (dims == 0) throw std::invalid_argument("bmt_smooth: empty vector");
    double n = 0.0;
    std::size_t zeros = 0;
    for (double c : counts) {
        if (c < 0.0) throw std::invalid_argument("bmt_smooth requires non-negative counts");
        if (c == 0.0) ++zeros;
        n += c;
    }
    if (n == 0.0) throw std::invalid_argument("bmt_smooth: all-zero vector");

    std::vector<double> out(dims);
    if (zeros == 0) {
        for (std::size_t i = 0; i < dims; ++i) out[i] = counts[i] / n;
        return out;
    }
    // Perks prior: s = 1, t_i = 1/D; zero parts get t_i*s/(n+s), the rest
    // shrink so the whole still sums to 1.
    double r = (1.0 / static_cast<double>(dims)) / (n + 1.0);
    double shrink = 1.0 - r * static_cast<double>(zeros);
    for (std::size_t i = 0; i < dims; ++i)
        out[i] = counts[i] == 0.0 ? r : (counts[i] / n) * shrink;
    return out;
}

double npmi_distance(ItemId i, ItemId j, const repr::NpmiModel& model) {
    if (!model.contains(i))
        throw std::invalid_argument("item " + std::to_string(i) + " absent from NPMI model");
    if (!model.contains(j))
        throw std::invalid_argument("item " + std::to_string(j) + " absent from NPMI model");
    if (i == j) return 0.0;
    double pj = model.joint(i, j);
    if (pj <= 0.0) return 1.0;   // never co-consumed
    if (pj >= 1.0) return 0.0;   // perfect co-occurrence
    double npmi = std::log(pj / (model.single(i) * model.single(j))) / (-std::log(pj));
    if (npmi > 1.0) npmi = 1.0;
    if (npmi < -1.0) npmi = -1.0;
    return (1.0 - npmi) / 2.0;
}

double vector_distance(Kind kind, std::span<const double> x, std::span<const double> y) {
    switch (kind) {
        case Kind::euclidean: return euclidean(x, y);
        case Kind::cosine: return cosine(x, y);
        case Kind::jaccard: return weighted_jaccard(x, y);
        case Kind::jensen_shannon: return jensen_shannon(x, y);
        case Kind::aitchison: return aitchison(x, y);
        case Kind::npmi: break;
    }
    throw std::invalid_argument("npmi is not a vector distance; use npmi_distance");
}

}  // namespace surprise::dist
