#include "cellcast/analytic.hpp"

#include <cmath>
#include <limits>

#include "cellcast/error.hpp"
#include "cellcast/table.hpp"

namespace cellcast {

namespace {

constexpr double kShape = VoronoiShape::c;
constexpr std::int64_t kMaxSeriesTerms = 1'000'000;

void check_mu(double mu)
{
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw ParameterError("mean subscribers per cell must be finite and >= 0, got " +
                             format_real(mu));
}

/// Neumaier compensated accumulator.
class CompensatedSum
{
  public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace

ModelParams::ModelParams(double lambda_b, double lambda_u, double alpha)
    : lambda_b_(lambda_b), lambda_u_(lambda_u), alpha_(alpha)
{
    if (!(lambda_b > 0.0) || !std::isfinite(lambda_b))
        throw ParameterError("lambda_b must be positive, got " + format_real(lambda_b));
    if (!(lambda_u >= 0.0) || !std::isfinite(lambda_u))
        throw ParameterError("lambda_u must be >= 0, got " + format_real(lambda_u));
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ParameterError("alpha must lie in [0, 1], got " + format_real(alpha));
}

double cell_size_pdf(double x, double lambda_b)
{
    if (!(x >= 0.0))
        throw ParameterError("cell area must be >= 0, got " + format_real(x));
    if (!(lambda_b > 0.0))
        throw ParameterError("lambda_b must be positive, got " + format_real(lambda_b));
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 0.0;
    const double log_f = VoronoiShape::c_log_c - VoronoiShape::log_gamma_c +
                         kShape * std::log(lambda_b) + (kShape - 1.0) * std::log(x) -
                         kShape * lambda_b * x;
    return std::exp(log_f);
}

double subscriber_pmf(std::int64_t k, double mu)
{
    if (k < 0)
        throw ParameterError("subscriber count must be >= 0, got " + std::to_string(k));
    check_mu(mu);
    if (mu == 0.0)
        return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    const double log_p = VoronoiShape::c_log_c + std::lgamma(kd + kShape) -
                         VoronoiShape::log_gamma_c - std::lgamma(kd + 1.0) + kd * std::log(mu) -
                         (kd + kShape) * std::log(mu + kShape);
    return std::exp(log_p);
}

double subscriber_pmf(std::int64_t k, const ModelParams& params)
{
    return subscriber_pmf(k, params.mu());
}

std::vector<double> subscriber_pmf_recurrence(double mu, std::int64_t k_max)
{
    check_mu(mu);
    if (k_max < 0)
        throw ParameterError("k_max must be >= 0");
    std::vector<double> p(static_cast<std::size_t>(k_max) + 1, 0.0);
    if (mu == 0.0) {
        p[0] = 1.0;
        return p;
    }
    // Extended precision keeps the accumulated product error well below
    // one double ulp over ~10^4 steps.
    using ext = long double;
    const ext shape = kShape;
    const ext q = static_cast<ext>(mu) / (static_cast<ext>(mu) + shape);
    ext cur = std::pow(shape / (static_cast<ext>(mu) + shape), shape);
    p[0] = static_cast<double>(cur);
    for (std::int64_t k = 0; k < k_max; ++k) {
        const ext kd = static_cast<ext>(k);
        cur *= ((kd + shape) / (kd + 1.0L)) * q;
        p[static_cast<std::size_t>(k) + 1] = static_cast<double>(cur);
    }
    return p;
}

double PmfSeries::total() const
{
    CompensatedSum s;
    for (double v : probs)
        s.add(v);
    return s.value();
}

double PmfSeries::mean() const
{
    CompensatedSum s;
    for (std::size_t k = 0; k < probs.size(); ++k)
        s.add(static_cast<double>(k) * probs[k]);
    return s.value();
}

PmfSeries subscriber_pmf_series(double mu, double tail_tol)
{
    check_mu(mu);
    PmfSeries out;
    if (mu == 0.0) {
        out.probs = {1.0};
        return out;
    }
    using ext = long double;
    const ext shape = kShape;
    const ext q = static_cast<ext>(mu) / (static_cast<ext>(mu) + shape);
    ext p = std::pow(shape / (static_cast<ext>(mu) + shape), shape);
    out.probs.push_back(static_cast<double>(p));
    for (std::int64_t k = 0; k < kMaxSeriesTerms; ++k) {
        const ext kd = static_cast<ext>(k);
        // Ratio P[k+1]/P[k]; decreasing in k, so once below one it bounds
        // every later ratio and the tail is dominated by a geometric series.
        const ext ratio = ((kd + shape) / (kd + 1.0L)) * q;
        p *= ratio;
        const ext next_ratio = ((kd + 1.0L + shape) / (kd + 2.0L)) * q;
        if (next_ratio < 1.0L) {
            const ext bound = p / (1.0L - next_ratio);
            // sum_{i>=0} (m + i) P[m] r^i, the omitted contribution to the mean.
            const ext m = kd + 1.0L;
            const ext mean_bound =
                p * (m / (1.0L - next_ratio) + next_ratio / ((1.0L - next_ratio) * (1.0L - next_ratio)));
            if (bound < tail_tol && mean_bound < tail_tol) {
                out.tail_bound = static_cast<double>(bound);
                return out;
            }
        }
        out.probs.push_back(static_cast<double>(p));
    }
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
}

double expected_subscribers(const ModelParams& params) { return params.mu(); }

double avg_wasted(double mu)
{
    check_mu(mu);
    return std::pow(1.0 + mu / kShape, -kShape);
}

double avg_saved(double mu)
{
    return (mu - 1.0) + avg_wasted(mu);
}

double avg_wasted(const ModelParams& params) { return avg_wasted(params.mu()); }
double avg_saved(const ModelParams& params) { return avg_saved(params.mu()); }

} // namespace cellcast
