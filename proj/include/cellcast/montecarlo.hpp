#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cellcast/analytic.hpp"
#include "cellcast/geometry.hpp"

namespace cellcast {

/// Smallest admissible expected BS count per realization (lambda_b * area).
inline constexpr double kMinExpectedCells = 100.0;

struct SimPlan
{
    ModelParams params;
    Window window;
    std::uint64_t replications = 1;
    std::uint64_t master_seed = 0;
    bool override_window = false;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws ParameterError on replications == 0 or a window below the
    /// minimum-cells rule without `override_window`.
    void validate() const;
};

/// Per-cell resource accounting for one realization.
struct CellTally
{
    std::uint64_t cells = 0;
    std::uint64_t subscribers = 0;  ///< sum of k
    std::uint64_t saved = 0;        ///< sum of max(k - 1, 0)
    std::uint64_t wasted = 0;       ///< number of cells with k = 0
    std::vector<std::uint64_t> histogram;  ///< histogram[k] = cells holding k

    void merge(const CellTally& other);
};

CellTally tally_counts(std::span<const std::uint64_t> counts);

struct EstimateReport
{
    ModelParams params;
    std::uint64_t replications = 0;
    std::uint64_t cells_observed = 0;
    double mean_k = 0.0;
    double mean_k_se = 0.0;
    double saved_mean = 0.0;
    double saved_se = 0.0;
    double wasted_mean = 0.0;
    double wasted_se = 0.0;
    std::vector<double> pmf_hist;  ///< empirical P[K = k], k = 0..max observed
    std::uint64_t bs_redraws = 0;  ///< empty BS patterns discarded
};

/// Simulates `plan.replications` independent realizations and pools every
/// cell with equal weight. Standard errors come from the spread of the
/// per-replication means (NaN when only one replication is run).
EstimateReport run_plan(const SimPlan& plan);

struct SweepRow
{
    double alpha;
    EstimateReport report;
    double analytic_saved;
    double analytic_wasted;
};

std::vector<SweepRow> sweep_alpha(const SimPlan& base, std::span<const double> alphas);

/// Total-variation distance between the report's histogram and the
/// subscriber PMF, counting analytic mass beyond the observed support.
double empirical_pmf_distance(const EstimateReport& report, const ModelParams& params);

/// `alpha,mean_k,mean_k_se,saved,saved_se,wasted,wasted_se,analytic_saved,analytic_wasted,cells`
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

} // namespace cellcast
