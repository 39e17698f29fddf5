#include "exmort/rebase.hpp"

#include "exmort/errors.hpp"

#include <algorithm>

namespace exmort {

namespace {

RebaseRow make_row(Quarter q, std::string band, double old_count, double new_count) {
    RebaseRow row;
    row.quarter = q;
    row.age_band = std::move(band);
    row.old_count = old_count;
    row.new_count = new_count;
    row.abs_diff = new_count - old_count;
    if (old_count > 0.0) {
        row.rel_defined = true;
        row.rel_diff_pct = 100.0 * (new_count - old_count) / old_count;
    } else {
        row.rel_defined = false;
        row.rel_diff_pct = 0.0;
    }
    return row;
}

} // namespace

RebaseDiff rebase_diff(const PopulationSeries& old_pop, const PopulationSeries& new_pop) {
    const int first = std::max(old_pop.first_quarter().index(), new_pop.first_quarter().index());
    const int last = std::min(old_pop.last_quarter().index(), new_pop.last_quarter().index());
    if (first > last)
        throw Error(ErrorKind::NoOverlap, "vintages '" + old_pop.vintage_label() + "' (" +
                                              old_pop.first_quarter().str() + ".." +
                                              old_pop.last_quarter().str() + ") and '" +
                                              new_pop.vintage_label() + "' (" +
                                              new_pop.first_quarter().str() + ".." +
                                              new_pop.last_quarter().str() +
                                              ") share no quarter");

    RebaseDiff diff;
    diff.old_label = old_pop.vintage_label();
    diff.new_label = new_pop.vintage_label();

    for (int qi = first; qi <= last; ++qi) {
        const Quarter q = Quarter::from_index(qi);
        diff.quarters.push_back(q);
        const StratumValues& oldc = old_pop.counts(q);
        const StratumValues& newc = new_pop.counts(q);

        double old_total = 0.0, new_total = 0.0;
        for (int b = 0; b < kNumAgeBands; ++b) {
            double ob = 0.0, nb = 0.0;
            for (int s = 0; s < kNumSexes; ++s) {
                const auto idx = static_cast<std::size_t>(b * kNumSexes + s);
                ob += oldc[idx];
                nb += newc[idx];
            }
            old_total += ob;
            new_total += nb;
            diff.rows.push_back(make_row(q, age_band_token(static_cast<AgeBand>(b)), ob, nb));
        }
        diff.rows.push_back(make_row(q, "total", old_total, new_total));
    }
    return diff;
}

SensitivityResult excess_sensitivity(const DeathsSeries& deaths, const PopulationSeries& old_pop,
                                     const PopulationSeries& new_pop, const ModelSpec& spec,
                                     YearRange window, int draws, std::uint64_t seed) {
    auto run = [&](const PopulationSeries& pop) {
        try {
            return run_qpr(spec, deaths, pop, window, draws, seed, Aggregation::Total);
        } catch (const Error& e) {
            throw Error(e.kind(), "vintage '" + pop.vintage_label() + "': " + e.message());
        }
    };

    SensitivityResult out;
    QprResult old_run = run(old_pop);
    QprResult new_run = run(new_pop);
    out.old_report = std::move(old_run.report);
    out.new_report = std::move(new_run.report);

    const ExcessRow& o = out.old_report.rows.front();
    const ExcessRow& n = out.new_report.rows.front();
    out.delta_excess = n.excess - o.excess;
    out.delta_excess_pct = n.excess_pct - o.excess_pct;
    return out;
}

} // namespace exmort
