#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "surprise/distances.hpp"
#include "surprise/npmi_model.hpp"
#include "surprise/types.hpp"

namespace surprise::repr {

// Item id -> description text.
using Catalog = std::map<ItemId, std::string>;

// UTF-8 TSV, one `item_id<TAB>description` per line.
Catalog load_descriptions_tsv(const std::filesystem::path& path);

// One lowercase word per line; blank lines ignored.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

// The bundled English list (data/stopwords_en.txt carries the same words).
const std::unordered_set<std::string>& default_stopwords();

enum class RejectReason { missing_description, too_short, zero_vector, unrated, missing_vector };
std::string_view reject_reason_name(RejectReason reason);

struct Rejected {
    ItemId id;
    RejectReason reason;
};

struct BuildResult {
    dist::VectorTable vectors;
    std::vector<Rejected> rejected;
};

// Lowercased tokens of `text`, split on non-letters, minus stopwords, each
// Snowball-stemmed. Exposed for tests.
std::vector<std::string> tokenize(const std::string& text,
                                  const std::unordered_set<std::string>& stopwords);

// Model C: count-based VSM. Items with no description or with fewer than
// `min_terms` term occurrences after stopword removal are rejected; survivors
// become tf-idf vectors over the sorted stem vocabulary (tf = raw count,
// idf = ln(N/df)). Items whose weights are all zero are rejected too.
BuildResult build_count_vsm(const Catalog& catalog,
                            const std::unordered_set<std::string>& stopwords,
                            const std::vector<ItemId>& items, int min_terms = 13);

// Model P: precomputed dense vectors, `item_id v1 v2 ... vD` per line.
dist::VectorTable load_dense_vectors(const std::filesystem::path& path);
void write_dense_vectors(const std::filesystem::path& path, const dist::VectorTable& vectors);

// Model U: one component per user in `users`, holding that user's rating of
// the item (0 when unrated; the chronologically last rating wins on
// duplicates). Items of `items` that never occur in `ratings` are rejected.
BuildResult build_user_item(const std::vector<RatingEvent>& ratings,
                            const std::vector<UserId>& users, const std::vector<ItemId>& items);

// Model N: exposure = the user rated the item, any star value.
NpmiModel build_npmi_model(const std::vector<RatingEvent>& ratings);

}  // namespace surprise::repr
