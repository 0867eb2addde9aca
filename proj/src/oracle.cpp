#include "surprise/oracle.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "surprise/rng.hpp"

namespace surprise::oracle {

std::uint64_t arrangement_count(std::size_t n, int k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) {
        count *= static_cast<std::uint64_t>(n - static_cast<std::size_t>(i));
        if (count > kMaxArrangements) return kMaxArrangements + 1;
    }
    return count;
}

namespace {

struct Instance {
    std::vector<std::array<double, 2>> points;  // index 0 is the exposed item
};

Instance random_instance(Rng& rng, int min_size, int max_size) {
    int n = min_size + static_cast<int>(rng.bounded(
                static_cast<std::uint64_t>(max_size - min_size + 1)));
    Instance inst;
    inst.points.resize(static_cast<std::size_t>(n) + 1);
    for (auto& p : inst.points) {
        p[0] = rng.unit();
        p[1] = rng.unit();
    }
    return inst;
}

}  // namespace

OracleReport validate_greedy(int instance_count, int min_size, int max_size,
                             const std::vector<dist::Kind>& kinds, std::uint64_t seed) {
    if (instance_count < 1) throw std::domain_error("validate_greedy: need at least 1 instance");
    if (min_size < 1 || max_size < min_size)
        throw std::domain_error("validate_greedy: bad size range");
    if (static_cast<std::size_t>(max_size) > kMaxExactItems)
        throw std::domain_error("validate_greedy: sizes above the exact enumeration cap of " +
                                std::to_string(kMaxExactItems));

    OracleReport report;
    report.instances = instance_count;
    report.min_size = min_size;
    report.max_size = max_size;
    report.seed = seed;
    for (dist::Kind kind : kinds) {
        OracleRow row;
        row.kind = kind;
        report.rows.push_back(row);
    }

    Rng rng(seed);
    for (int t = 0; t < instance_count; ++t) {
        Instance inst = random_instance(rng, min_size, max_size);
        const std::size_t n = inst.points.size();

        std::vector<ItemId> unknown_ids;
        for (std::size_t i = 1; i < n; ++i) unknown_ids.push_back(static_cast<ItemId>(i));
        ItemSet unknown = ItemSet::from_sorted(unknown_ids);
        ItemSet exposed = ItemSet::from_sorted({0});

        for (OracleRow& row : report.rows) {
            const bool shift = row.kind == dist::Kind::jaccard ||
                               row.kind == dist::Kind::jensen_shannon;
            auto metric = [&](ItemId a, ItemId b) {
                std::array<double, 2> pa = inst.points[a];
                std::array<double, 2> pb = inst.points[b];
                if (shift) {
                    pa = {pa[0] + 0.01, pa[1] + 0.01};
                    pb = {pb[0] + 0.01, pb[1] + 0.01};
                }
                return dist::vector_distance(row.kind, pa, pb);
            };

            SurpriseBounds exact = exact_bounds(unknown, exposed, metric);
            SurpriseBounds greedy =
                greedy_bounds(unknown, exposed, metric, static_cast<int>(unknown.size()));

            double max_gap = exact.max_value - greedy.max_value;
            double min_gap = greedy.min_value - exact.min_value;
            row.exact_max_mean += exact.max_value;
            row.greedy_max_mean += greedy.max_value;
            row.exact_min_mean += exact.min_value;
            row.greedy_min_mean += greedy.min_value;
            row.max_gap_mean += max_gap;
            row.min_gap_mean += min_gap;
            row.max_gap_peak = std::max(row.max_gap_peak, max_gap);
            row.min_gap_peak = std::max(row.min_gap_peak, min_gap);
            if (max_gap > kEpsilon) ++row.max_gap_count;
            if (min_gap > kEpsilon) ++row.min_gap_count;
            if (max_gap < -kEpsilon || min_gap < -kEpsilon) ++row.sandwich_violations;
            ++row.instances;
        }
    }

    for (OracleRow& row : report.rows) {
        double n = static_cast<double>(row.instances);
        row.exact_max_mean /= n;
        row.greedy_max_mean /= n;
        row.exact_min_mean /= n;
        row.greedy_min_mean /= n;
        row.max_gap_mean /= n;
        row.min_gap_mean /= n;
    }
    return report;
}

void print_report(std::ostream& out, const OracleReport& report) {
    out << "greedy validation: " << report.instances << " instances, |N_u| in ["
        << report.min_size << ", " << report.max_size << "], seed " << report.seed << "\n";
    out << std::left << std::setw(16) << "Distance" << std::right << std::setw(10) << "S_pmax"
        << std::setw(10) << "~S_pmax" << std::setw(10) << "S_pmin" << std::setw(10) << "~S_pmin"
        << std::setw(12) << "max0gap%" << std::setw(12) << "min0gap%" << std::setw(11)
        << "violations" << "\n";
    for (const OracleRow& row : report.rows) {
        double zero_max = 100.0 * (row.instances - row.max_gap_count) / row.instances;
        double zero_min = 100.0 * (row.instances - row.min_gap_count) / row.instances;
        out << std::left << std::setw(16) << dist::kind_name(row.kind) << std::right
            << std::fixed << std::setprecision(3) << std::setw(10) << row.exact_max_mean
            << std::setw(10) << row.greedy_max_mean << std::setw(10) << row.exact_min_mean
            << std::setw(10) << row.greedy_min_mean << std::setprecision(1) << std::setw(11)
            << zero_max << '%' << std::setw(11) << zero_min << '%' << std::setw(11)
            << row.sandwich_violations << "\n";
        out.unsetf(std::ios::fixed);
        out << std::setprecision(6);
    }
}

void write_report_csv(std::ostream& out, const OracleReport& report) {
    auto emit = [&out](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, res.ptr - buf);
    };
    out << "distance,s_pmax,s_pmax_greedy,s_pmin,s_pmin_greedy\n";
    for (const OracleRow& row : report.rows) {
        out << dist::kind_name(row.kind) << ',';
        emit(row.exact_max_mean);
        out << ',';
        emit(row.greedy_max_mean);
        out << ',';
        emit(row.exact_min_mean);
        out << ',';
        emit(row.greedy_min_mean);
        out << '\n';
    }
}

}  // namespace surprise::oracle
