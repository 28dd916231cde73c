#pragma once

#include <optional>

#include "cellcast/analytic.hpp"

namespace cellcast {

/// Monetary side of the broadcast decision. Only the ratio cb / vr matters
/// for decisions; units are abstract.
class EconParams
{
  public:
    /// vr: value of one radio resource (> 0); cb: broadcast implementation
    /// cost (>= 0); beta: fraction of subscribers that actually switch to
    /// the broadcast channel, in [0, 1].
    EconParams(double vr, double cb, double beta = 1.0);

    double vr() const { return vr_; }
    double cb() const { return cb_; }
    double beta() const { return beta_; }

  private:
    double vr_;
    double cb_;
    double beta_;
};

/// Audience rating seen by the broadcast channel: alpha * beta.
ModelParams effective_params(const ModelParams& model, const EconParams& econ);

/// Average cost reduction per cell, vr * (mu' - 1) - cb with
/// mu' = alpha * beta * lambda_u / lambda_b.
double cost_reduction(const ModelParams& model, const EconParams& econ);

/// Same quantity assembled from the resource averages,
/// vr * saved - vr * wasted - cb, evaluated at alpha * beta.
double cost_reduction_from_resources(const ModelParams& model, const EconParams& econ);

/// Audience rating at which the cost reduction is zero,
/// (lambda_b / lambda_u) * (cb / vr + 1) / beta. Empty when that rating
/// exceeds one, or when lambda_u or beta is zero.
std::optional<double> breakeven_alpha(double lambda_b, double lambda_u, const EconParams& econ);

enum class Delivery { Unicast, Broadcast };

struct Decision
{
    Delivery delivery;
    double cost_reduction;
};

/// Broadcast only when the cost reduction is strictly positive.
Decision decide(const ModelParams& model, const EconParams& econ);

const char* to_string(Delivery d);

} // namespace cellcast
