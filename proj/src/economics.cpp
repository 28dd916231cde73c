#include "cellcast/economics.hpp"

#include <cmath>

#include "cellcast/error.hpp"
#include "cellcast/table.hpp"

namespace cellcast {

EconParams::EconParams(double vr, double cb, double beta) : vr_(vr), cb_(cb), beta_(beta)
{
    if (!(vr > 0.0) || !std::isfinite(vr))
        throw ParameterError("vr must be positive, got " + format_real(vr));
    if (!(cb >= 0.0) || !std::isfinite(cb))
        throw ParameterError("cb must be >= 0, got " + format_real(cb));
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ParameterError("beta must lie in [0, 1], got " + format_real(beta));
}

ModelParams effective_params(const ModelParams& model, const EconParams& econ)
{
    return model.with_alpha(model.alpha() * econ.beta());
}

double cost_reduction(const ModelParams& model, const EconParams& econ)
{
    const double mu = effective_params(model, econ).mu();
    return econ.vr() * (mu - 1.0) - econ.cb();
}

double cost_reduction_from_resources(const ModelParams& model, const EconParams& econ)
{
    const auto eff = effective_params(model, econ);
    return econ.vr() * avg_saved(eff) - econ.vr() * avg_wasted(eff) - econ.cb();
}

std::optional<double> breakeven_alpha(double lambda_b, double lambda_u, const EconParams& econ)
{
    if (!(lambda_b > 0.0))
        throw ParameterError("lambda_b must be positive, got " + format_real(lambda_b));
    if (!(lambda_u > 0.0) || econ.beta() == 0.0)
        return std::nullopt;
    const double a = (lambda_b / lambda_u) * (econ.cb() / econ.vr() + 1.0) / econ.beta();
    if (a > 1.0)
        return std::nullopt;
    return a;
}

Decision decide(const ModelParams& model, const EconParams& econ)
{
    const double cr = cost_reduction(model, econ);
    return {cr > 0.0 ? Delivery::Broadcast : Delivery::Unicast, cr};
}

const char* to_string(Delivery d)
{
    return d == Delivery::Broadcast ? "broadcast" : "unicast";
}

} // namespace cellcast
