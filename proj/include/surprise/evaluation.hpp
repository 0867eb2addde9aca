#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "surprise/matrix.hpp"
#include "surprise/recommenders.hpp"
#include "surprise/types.hpp"

// Chronological segmentation into fixed-size timeframes, the adapted
// one-plus-random measurement over eligible intervals, and time-series
// summarization.
namespace surprise::eval {

struct Timeframe {
    int index = 0;           // 1-based ordinal
    std::size_t begin = 0;   // event range [begin, end) in the source log
    std::size_t end = 0;
    std::vector<UserId> users;  // sorted distinct
};

// An interval spans frames 1..end_frame. eval_users are the users common to
// frames end_frame-1 and end_frame that have a 5-star rating inside frame
// end_frame.
struct EligibleInterval {
    int end_frame = 0;
    std::vector<UserId> eval_users;  // sorted
};

struct Segmentation {
    std::vector<Timeframe> frames;
    std::vector<EligibleInterval> intervals;
};

// Frames hold exactly frame_size events each; the trailing partial frame is
// dropped. `log` must already be sorted chronologically.
Segmentation segment(const std::vector<RatingEvent>& log, int frame_size, int min_common_users);

enum class Mode { sampled, exhaustive };
Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode mode);

struct Measurement {
    int interval = 0;   // 1-based position in the series
    int end_frame = 0;
    std::vector<std::pair<UserId, double>> per_user;  // sorted by user id
    double mean = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    int n_users = 0;
    std::vector<UserId> skipped;  // users with an empty unknown set
};

struct Params {
    rec::Scorer scorer;
    Mode mode = Mode::sampled;
    int top_n = 10;
    int sample_size = 1000;
    int frame_size = 1500;
    int min_common_users = 30;
    int threads = 1;
    std::uint64_t seed = 1;
};

struct SurpriseSeries {
    std::vector<Measurement> measurements;
    std::string fingerprint;
};

// One-plus-random measurement of a single interval. The item universe is
// every item whose first rating falls inside the interval; per user, the
// exposure set is what they rated inside the interval. Per-user draws come
// from seeds derived per (end_frame, user), so results are independent of
// the thread count and of which other users are measured.
Measurement evaluate_interval(const std::vector<RatingEvent>& log, const Segmentation& seg,
                              const EligibleInterval& interval, const dist::DistanceMatrix& matrix,
                              const Params& params);

// Segment, then measure every eligible interval in order. Every item in `log`
// must be covered by `matrix`.
SurpriseSeries run_series(const std::vector<RatingEvent>& log, const dist::DistanceMatrix& matrix,
                          const Params& params);

struct Summary {
    double median = 0.0;
    double mean = 0.0;
    double stdev = 0.0;  // sample standard deviation over interval means
    int n_intervals = 0;
    bool stdev_degenerate = false;  // single measurement: stdev reported as 0
};

Summary summarize(const SurpriseSeries& series);

// interval,end_frame,n_users,mean_ssn,min_ssn,max_ssn
void write_series_csv(std::ostream& out, const SurpriseSeries& series);

}  // namespace surprise::eval
