#include "surprise/ratings_io.hpp"

#include <charconv>
#include <fstream>

namespace surprise::io {

RatingsFormat parse_format(std::string_view name) {
    if (name == "movielens-dat") return RatingsFormat::movielens_dat;
    if (name == "csv") return RatingsFormat::csv;
    throw std::invalid_argument("unknown ratings format: " + std::string(name));
}

RatingsFormat infer_format(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    if (ext == ".dat") return RatingsFormat::movielens_dat;
    if (ext == ".csv") return RatingsFormat::csv;
    throw std::invalid_argument("cannot infer ratings format from '" + path.string() +
                                "'; pass --ratings-format");
}

namespace {

bool split(std::string_view line, std::string_view sep, std::string_view out[4]) {
    std::size_t pos = 0;
    for (int f = 0; f < 3; ++f) {
        std::size_t next = line.find(sep, pos);
        if (next == std::string_view::npos) return false;
        out[f] = line.substr(pos, next - pos);
        pos = next + sep.size();
    }
    out[3] = line.substr(pos);
    return out[3].find(sep) == std::string_view::npos;
}

template <typename T>
bool parse_num(std::string_view s, T& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_line(std::string_view line, std::string_view sep, RatingEvent& e, std::string& why) {
    std::string_view fields[4];
    if (!split(line, sep, fields)) {
        why = "expected 4 fields";
        return false;
    }
    if (!parse_num(fields[0], e.user)) {
        why = "bad user id";
        return false;
    }
    if (!parse_num(fields[1], e.item)) {
        why = "bad item id";
        return false;
    }
    if (!parse_num(fields[2], e.rating) || e.rating < 1 || e.rating > 5) {
        why = "rating outside 1..5";
        return false;
    }
    if (!parse_num(fields[3], e.timestamp) || e.timestamp < 0) {
        why = "bad timestamp";
        return false;
    }
    return true;
}

}  // namespace

std::vector<RatingEvent> parse_ratings(const std::filesystem::path& path, RatingsFormat format,
                                       ParseReport* report) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read ratings file: " + path.string());

    const std::string_view sep = format == RatingsFormat::movielens_dat ? "::" : ",";
    std::vector<RatingEvent> events;
    ParseReport local;
    ParseReport& rep = report ? *report : local;

    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        ++rep.total_lines;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (format == RatingsFormat::csv && first) {
            first = false;
            if (line == "user,item,rating,timestamp") continue;
            // headerless CSV is tolerated; fall through and parse the line
        }
        first = false;
        if (line.empty()) continue;
        RatingEvent e;
        std::string why;
        if (parse_line(line, sep, e, why)) {
            events.push_back(e);
            ++rep.valid;
        } else {
            rep.bad_lines.emplace_back(rep.total_lines, why);
        }
    }
    if (events.empty()) throw DataError("no valid rating events in " + path.string());
    std::sort(events.begin(), events.end(), chronological_less);
    return events;
}

void write_ratings_csv(const std::filesystem::path& path, const std::vector<RatingEvent>& events) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write ratings file: " + path.string());
    out << "user,item,rating,timestamp\n";
    for (const RatingEvent& e : events)
        out << e.user << ',' << e.item << ',' << e.rating << ',' << e.timestamp << '\n';
}

}  // namespace surprise::io
