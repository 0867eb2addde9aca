#include "surprise/representations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "surprise/stemmer.hpp"

namespace surprise::repr {

namespace {

bool parse_u32(std::string_view s, std::uint32_t& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

std::string_view reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::missing_description: return "missing-description";
        case RejectReason::too_short: return "too-short";
        case RejectReason::zero_vector: return "zero-vector";
        case RejectReason::unrated: return "unrated";
        case RejectReason::missing_vector: return "missing-vector";
    }
    return "?";
}

Catalog load_descriptions_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read descriptions file: " + path.string());
    Catalog catalog;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tab = line.find('\t');
        std::uint32_t id = 0;
        if (tab == std::string::npos || !parse_u32(std::string_view(line).substr(0, tab), id))
            throw DataError("malformed descriptions line " + std::to_string(lineno) + ": " +
                            path.string());
        catalog[id] = line.substr(tab + 1);
    }
    return catalog;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read stopword file: " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

std::vector<std::string> tokenize(const std::string& text,
                                  const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> out;
    std::string token;
    auto flush = [&] {
        if (!token.empty() && !stopwords.count(token)) out.push_back(stem_english(token));
        token.clear();
    };
    for (unsigned char ch : text) {
        if (ch >= 'A' && ch <= 'Z')
            token += static_cast<char>(ch - 'A' + 'a');
        else if (ch >= 'a' && ch <= 'z')
            token += static_cast<char>(ch);
        else
            flush();
    }
    flush();
    return out;
}

BuildResult build_count_vsm(const Catalog& catalog,
                            const std::unordered_set<std::string>& stopwords,
                            const std::vector<ItemId>& items, int min_terms) {
    BuildResult result;

    // per-item stem counts for the survivors of the length rule
    std::map<ItemId, std::map<std::string, int>> docs;
    for (ItemId id : items) {
        auto it = catalog.find(id);
        if (it == catalog.end()) {
            result.rejected.push_back({id, RejectReason::missing_description});
            continue;
        }
        std::vector<std::string> terms = tokenize(it->second, stopwords);
        if (static_cast<int>(terms.size()) < min_terms) {
            result.rejected.push_back({id, RejectReason::too_short});
            continue;
        }
        auto& counts = docs[id];
        for (auto& t : terms) ++counts[t];
    }
    if (docs.empty()) throw DataError("no items survive the description pipeline");

    std::map<std::string, int> df;
    for (const auto& [id, counts] : docs)
        for (const auto& [term, n] : counts) ++df[term];

    // sorted vocabulary fixes the dimension order
    std::map<std::string, std::size_t> vocab_index;
    std::vector<double> idf;
    idf.reserve(df.size());
    for (const auto& [term, n] : df) {
        vocab_index.emplace(term, vocab_index.size());
        idf.push_back(std::log(static_cast<double>(docs.size()) / static_cast<double>(n)));
    }

    std::map<ItemId, std::vector<double>> rows;
    for (const auto& [id, counts] : docs) {
        std::vector<double> v(vocab_index.size(), 0.0);
        bool nonzero = false;
        for (const auto& [term, n] : counts) {
            std::size_t col = vocab_index.at(term);
            v[col] = static_cast<double>(n) * idf[col];
            if (v[col] > 0.0) nonzero = true;
        }
        if (!nonzero) {
            result.rejected.push_back({id, RejectReason::zero_vector});
            continue;
        }
        rows.emplace(id, std::move(v));
    }
    if (rows.empty()) throw DataError("every surviving item has an all-zero tf-idf vector");
    result.vectors = dist::VectorTable(rows);
    return result;
}

dist::VectorTable load_dense_vectors(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read vectors file: " + path.string());
    std::map<ItemId, std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0, dim = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string id_field;
        ss >> id_field;
        std::uint32_t id = 0;
        if (!parse_u32(id_field, id))
            throw DataError("vectors line " + std::to_string(lineno) + ": bad item id '" +
                            id_field + "'");
        std::vector<double> v;
        std::string field;
        while (ss >> field) {
            double x = 0.0;
            auto res = std::from_chars(field.data(), field.data() + field.size(), x);
            if (res.ec != std::errc() || res.ptr != field.data() + field.size())
                throw DataError("vectors line " + std::to_string(lineno) + ": non-numeric field '" +
                                field + "'");
            v.push_back(x);
        }
        if (v.empty())
            throw DataError("vectors line " + std::to_string(lineno) + ": no components");
        if (dim == 0) dim = v.size();
        if (v.size() != dim)
            throw DataError("vectors line " + std::to_string(lineno) + ": expected " +
                            std::to_string(dim) + " components, got " + std::to_string(v.size()));
        if (!rows.emplace(id, std::move(v)).second)
            throw DataError("vectors line " + std::to_string(lineno) + ": duplicate item id " +
                            std::to_string(id));
    }
    if (rows.empty()) throw DataError("vectors file has no rows: " + path.string());
    return dist::VectorTable(rows);
}

void write_dense_vectors(const std::filesystem::path& path, const dist::VectorTable& vectors) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write vectors file: " + path.string());
    char buf[32];
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        out << vectors.ids()[i];
        for (double v : vectors.row(i)) {
            auto res = std::to_chars(buf, buf + sizeof(buf), v);
            out << ' ';
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

BuildResult build_user_item(const std::vector<RatingEvent>& ratings,
                            const std::vector<UserId>& users, const std::vector<ItemId>& items) {
    if (users.empty()) throw std::invalid_argument("build_user_item: empty user universe");
    std::vector<UserId> sorted_users = users;
    std::sort(sorted_users.begin(), sorted_users.end());
    sorted_users.erase(std::unique(sorted_users.begin(), sorted_users.end()), sorted_users.end());

    auto user_index = [&](UserId u) -> std::ptrdiff_t {
        auto it = std::lower_bound(sorted_users.begin(), sorted_users.end(), u);
        if (it == sorted_users.end() || *it != u) return -1;
        return it - sorted_users.begin();
    };

    std::map<ItemId, std::vector<double>> rows;
    for (const RatingEvent& e : ratings) {
        std::ptrdiff_t col = user_index(e.user);
        if (col < 0) continue;
        auto [it, inserted] = rows.try_emplace(e.item);
        if (inserted) it->second.assign(sorted_users.size(), 0.0);
        it->second[static_cast<std::size_t>(col)] = static_cast<double>(e.rating);
    }

    BuildResult result;
    for (ItemId id : items)
        if (!rows.count(id)) result.rejected.push_back({id, RejectReason::unrated});
    if (rows.empty()) throw DataError("no rated items; user-item model is empty");
    result.vectors = dist::VectorTable(rows);
    return result;
}

NpmiModel build_npmi_model(const std::vector<RatingEvent>& ratings) {
    if (ratings.empty()) throw std::invalid_argument("build_npmi_model: empty ratings");

    std::map<UserId, std::vector<ItemId>> exposure;
    for (const RatingEvent& e : ratings) exposure[e.user].push_back(e.item);

    NpmiModel model;
    model.user_count = static_cast<std::uint32_t>(exposure.size());
    const double total = static_cast<double>(model.user_count);

    std::unordered_map<ItemId, std::uint32_t> single;
    std::unordered_map<std::uint64_t, std::uint32_t> joint;
    for (auto& [user, items] : exposure) {
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        for (std::size_t i = 0; i < items.size(); ++i) {
            ++single[items[i]];
            for (std::size_t j = i + 1; j < items.size(); ++j)
                ++joint[NpmiModel::pair_key(items[i], items[j])];
        }
    }
    for (const auto& [id, n] : single) model.p_single[id] = static_cast<double>(n) / total;
    for (const auto& [key, n] : joint) model.p_joint[key] = static_cast<double>(n) / total;
    return model;
}

}  // namespace surprise::repr
