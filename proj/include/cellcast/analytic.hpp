#pragma once

#include <cstdint>
#include <vector>

namespace cellcast {

/// Shape parameter of the gamma law fitted to Poisson-Voronoi cell areas,
/// with Gamma(3.5) = 15*sqrt(pi)/8 cached.
struct VoronoiShape
{
    static constexpr double c = 3.5;
    static constexpr double gamma_c = 3.32335097044784255118;
    static constexpr double log_gamma_c = 1.20097360234707422482;
    static constexpr double c_log_c = 4.38467038973378798491; // 3.5 * ln 3.5
};

/// Densities and audience rating of the live-streaming model.
class ModelParams
{
  public:
    /// Throws ParameterError unless lambda_b > 0, lambda_u >= 0 and
    /// alpha in [0, 1].
    ModelParams(double lambda_b, double lambda_u, double alpha);

    double lambda_b() const { return lambda_b_; }
    double lambda_u() const { return lambda_u_; }
    double alpha() const { return alpha_; }

    /// Mean subscribers per cell, alpha * lambda_u / lambda_b.
    double mu() const { return alpha_ * lambda_u_ / lambda_b_; }

    ModelParams with_alpha(double alpha) const { return {lambda_b_, lambda_u_, alpha}; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

  private:
    double lambda_b_;
    double lambda_u_;
    double alpha_;
};

/// Gamma-approximation density of the area of a typical Voronoi cell.
/// Evaluated in log space. Throws on x < 0 or lambda_b <= 0.
double cell_size_pdf(double x, double lambda_b);

/// P[K = k], subscribers in a typical cell, as a function of the mean mu.
/// Log-gamma evaluation; mu = 0 is the point mass at k = 0.
double subscriber_pmf(std::int64_t k, double mu);
double subscriber_pmf(std::int64_t k, const ModelParams& params);

/// P[0..k_max] by the ratio recurrence
///   P[k+1] / P[k] = (k + 3.5) / (k + 1) * mu / (mu + 3.5).
std::vector<double> subscriber_pmf_recurrence(double mu, std::int64_t k_max);

/// Truncated PMF with a certified bound on the omitted upper tail.
struct PmfSeries
{
    std::vector<double> probs;  ///< probs[k] = P[K = k]
    double tail_bound = 0.0;    ///< upper bound on sum_{j >= probs.size()} P[K = j]

    double total() const;       ///< compensated sum of probs
    double mean() const;        ///< compensated sum of k * probs[k]
};

/// Sums the recurrence until both the omitted mass and its contribution to
/// the mean are bounded by `tail_tol` (capped at k = 10^6).
PmfSeries subscriber_pmf_series(double mu, double tail_tol = 1e-12);

double expected_subscribers(const ModelParams& params);

/// Mean radio resources saved per cell by broadcasting: mu + P[K=0] - 1.
double avg_saved(double mu);
double avg_saved(const ModelParams& params);

/// Mean radio resources wasted per cell: P[K=0] = (1 + mu/3.5)^-3.5.
double avg_wasted(double mu);
double avg_wasted(const ModelParams& params);

} // namespace cellcast
