#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "surprise/types.hpp"

namespace surprise::io {

enum class RatingsFormat { movielens_dat, csv };

RatingsFormat parse_format(std::string_view name);

// .dat -> movielens-dat, .csv -> csv; anything else is an error.
RatingsFormat infer_format(const std::filesystem::path& path);

struct ParseReport {
    std::size_t total_lines = 0;
    std::size_t valid = 0;
    std::vector<std::pair<std::size_t, std::string>> bad_lines;  // (line number, reason)
};

// Reads `UserID::MovieID::Rating::Timestamp` lines (movielens-dat) or a
// `user,item,rating,timestamp` headed CSV. Malformed lines are collected in
// the report; zero valid lines is an error. Output is sorted by
// (timestamp, user, item).
std::vector<RatingEvent> parse_ratings(const std::filesystem::path& path, RatingsFormat format,
                                       ParseReport* report = nullptr);

void write_ratings_csv(const std::filesystem::path& path, const std::vector<RatingEvent>& events);

}  // namespace surprise::io
