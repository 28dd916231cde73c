#include "cellcast/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "cellcast/error.hpp"
#include "cellcast/log.hpp"
#include "cellcast/table.hpp"

namespace cellcast {

void SimPlan::validate() const
{
    if (replications == 0)
        throw ParameterError("replications must be >= 1");
    const double expected_cells = params.lambda_b() * window.area();
    if (expected_cells < kMinExpectedCells && !override_window)
        throw ParameterError("window too small: lambda_b * area = " + format_real(expected_cells) +
                             " < " + format_real(kMinExpectedCells) +
                             " (enlarge the window or set the override flag)");
}

void CellTally::merge(const CellTally& other)
{
    cells += other.cells;
    subscribers += other.subscribers;
    saved += other.saved;
    wasted += other.wasted;
    if (histogram.size() < other.histogram.size())
        histogram.resize(other.histogram.size(), 0);
    for (std::size_t k = 0; k < other.histogram.size(); ++k)
        histogram[k] += other.histogram[k];
}

CellTally tally_counts(std::span<const std::uint64_t> counts)
{
    CellTally t;
    t.cells = counts.size();
    for (auto k : counts) {
        t.subscribers += k;
        if (k == 0)
            ++t.wasted;
        else
            t.saved += k - 1;
        if (t.histogram.size() <= k)
            t.histogram.resize(k + 1, 0);
        ++t.histogram[k];
    }
    return t;
}

namespace {

struct ReplicationResult
{
    CellTally tally;
    std::uint64_t bs_redraws = 0;
};

ReplicationResult run_replication(const SimPlan& plan, std::uint64_t rep)
{
    const RandomStream root(plan.master_seed, rep);
    RandomStream bs_rng = root.substream(0);
    RandomStream mu_rng = root.substream(1);
    RandomStream thin_rng = root.substream(2);

    std::size_t redraws = 0;
    const auto bss = sample_bs_nonempty(plan.params.lambda_b(), plan.window, bs_rng, &redraws);
    // lambda_u = 0 leaves an empty user pattern (sample_ppp requires density > 0).
    const PointPattern users = plan.params.lambda_u() > 0.0
                                   ? sample_ppp(plan.params.lambda_u(), plan.window, Role::MU, mu_rng)
                                   : PointPattern(Role::MU, plan.window);
    const auto subscribers = thin(users, plan.params.alpha(), thin_rng);
    const auto census = assign_nearest(subscribers, bss);
    return {tally_counts(census.counts), redraws};
}

struct MeanAndError
{
    double mean;
    double se;
};

// Pooled per-cell mean, with the standard error of the per-replication means.
MeanAndError summarize(std::uint64_t pooled_sum, std::uint64_t pooled_cells,
                       const std::vector<double>& rep_means)
{
    MeanAndError out{static_cast<double>(pooled_sum) / static_cast<double>(pooled_cells),
                     std::numeric_limits<double>::quiet_NaN()};
    const auto r = rep_means.size();
    if (r < 2)
        return out;
    double m = 0.0;
    for (double v : rep_means)
        m += v;
    m /= static_cast<double>(r);
    double ss = 0.0;
    for (double v : rep_means)
        ss += (v - m) * (v - m);
    out.se = std::sqrt(ss / static_cast<double>(r - 1) / static_cast<double>(r));
    return out;
}

} // namespace

EstimateReport run_plan(const SimPlan& plan)
{
    plan.validate();
    const std::uint64_t reps = plan.replications;
    std::vector<ReplicationResult> results(reps);

    unsigned workers = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, reps));
    if (workers <= 1) {
        for (std::uint64_t r = 0; r < reps; ++r)
            results[r] = run_replication(plan, r);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t r = next++; r < reps; r = next++)
                    results[r] = run_replication(plan, r);
            });
        }
    }

    // Aggregate in replication index order so the report is bit-stable.
    CellTally pooled;
    std::uint64_t redraws = 0;
    std::vector<double> k_means, saved_means, wasted_means;
    for (const auto& res : results) {
        pooled.merge(res.tally);
        redraws += res.bs_redraws;
        const double n = static_cast<double>(res.tally.cells);
        k_means.push_back(static_cast<double>(res.tally.subscribers) / n);
        saved_means.push_back(static_cast<double>(res.tally.saved) / n);
        wasted_means.push_back(static_cast<double>(res.tally.wasted) / n);
    }

    const auto k = summarize(pooled.subscribers, pooled.cells, k_means);
    const auto s = summarize(pooled.saved, pooled.cells, saved_means);
    const auto w = summarize(pooled.wasted, pooled.cells, wasted_means);
    EstimateReport rep{plan.params, reps, pooled.cells, k.mean, k.se, s.mean, s.se, w.mean, w.se,
                       {}, redraws};
    rep.pmf_hist.reserve(pooled.histogram.size());
    for (auto c : pooled.histogram)
        rep.pmf_hist.push_back(static_cast<double>(c) / static_cast<double>(pooled.cells));
    return rep;
}

std::vector<SweepRow> sweep_alpha(const SimPlan& base, std::span<const double> alphas)
{
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        SimPlan plan = base;
        plan.params = base.params.with_alpha(a);
        auto report = run_plan(plan);
        rows.push_back({a, std::move(report), avg_saved(plan.params), avg_wasted(plan.params)});
    }
    return rows;
}

double empirical_pmf_distance(const EstimateReport& report, const ModelParams& params)
{
    const double a = report.params.mu();
    const double b = params.mu();
    if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
        throw ParameterError("report was produced for mu = " + format_real(a) +
                             ", not mu = " + format_real(b));

    const auto n = report.pmf_hist.size();
    const auto analytic = subscriber_pmf_recurrence(b, n == 0 ? 0 : static_cast<std::int64_t>(n) - 1);
    double abs_diff = 0.0;
    double covered = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        abs_diff += std::abs(report.pmf_hist[k] - analytic[k]);
        covered += analytic[k];
    }
    const double tail = std::max(0.0, 1.0 - covered);
    return 0.5 * (abs_diff + tail);
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows)
{
    os << "alpha,mean_k,mean_k_se,saved,saved_se,wasted,wasted_se,analytic_saved,analytic_wasted,cells\n";
    for (const auto& r : rows) {
        const auto& e = r.report;
        write_row(os, {format_real(r.alpha), format_real(e.mean_k), format_real(e.mean_k_se),
                       format_real(e.saved_mean), format_real(e.saved_se),
                       format_real(e.wasted_mean), format_real(e.wasted_se),
                       format_real(r.analytic_saved), format_real(r.analytic_wasted),
                       std::to_string(e.cells_observed)});
    }
}

} // namespace cellcast
