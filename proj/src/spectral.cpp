#include "cyberdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cyberdyn/error.hpp"

namespace cyberdyn {

void DynamicsParams::validate() const
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw InvalidArgument("beta must be in [0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidArgument("gamma must be in [0, 1]");
}

std::string_view regime_name(Regime regime) noexcept
{
    switch (regime) {
    case Regime::DieOut: return "DieOut";
    case Regime::Persist: return "Persist";
    case Regime::Critical: return "Critical";
    }
    return "Critical";
}

Regime regime_from_name(std::string_view name)
{
    for (auto r : {Regime::DieOut, Regime::Persist, Regime::Critical})
        if (regime_name(r) == name)
            return r;
    throw InvalidArgument("unknown regime '" + std::string(name) + "'");
}

SpectralResult spectral_radius(const Graph& g, const SpectralOptions& options)
{
    if (!(options.tol > 0.0))
        throw InvalidArgument("tol must be > 0");
    const std::size_t n = g.node_count();
    if (n == 0)
        return {};

    std::vector<double> v(n, 1.0);
    std::vector<double> w(n);
    double mu = 0.0;
    double residual = 0.0;
    for (std::size_t it = 1; it <= options.max_iter; ++it) {
        // w = (A + I) v
        for (std::size_t i = 0; i < n; ++i) {
            double acc = v[i];
            for (NodeId j : g.neighbors(static_cast<NodeId>(i)))
                acc += v[j];
            w[i] = acc;
        }
        double vw = 0.0;
        double vv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            vw += v[i] * w[i];
            vv += v[i] * v[i];
        }
        mu = vw / vv;
        residual = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(w[i] - mu * v[i]));
            scale = std::max(scale, std::abs(w[i]));
        }
        if (residual <= options.tol)
            return {std::max(0.0, mu - 1.0), it, residual};
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / scale;
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(options.max_iter) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           std::max(0.0, mu - 1.0), options.max_iter, residual);
}

ThresholdVerdict classify(double lambda1, const DynamicsParams& params, double critical_tol)
{
    params.validate();
    if (!(params.gamma > 0.0))
        throw InvalidArgument("gamma must be > 0");
    if (!(critical_tol >= 0.0))
        throw InvalidArgument("critical_tol must be >= 0");
    ThresholdVerdict verdict;
    verdict.lambda1 = lambda1;
    verdict.ratio = params.beta / params.gamma;
    verdict.margin = verdict.ratio - lambda1;
    if (verdict.margin > critical_tol)
        verdict.regime = Regime::DieOut;
    else if (verdict.margin < -critical_tol)
        verdict.regime = Regime::Persist;
    else
        verdict.regime = Regime::Critical;
    return verdict;
}

ThresholdVerdict threshold_verdict(const Graph& g, const DynamicsParams& params, double critical_tol,
                                   const SpectralOptions& options)
{
    params.validate();
    if (!(params.gamma > 0.0))
        throw InvalidArgument("gamma must be > 0");
    return classify(spectral_radius(g, options).lambda1, params, critical_tol);
}

} // namespace cyberdyn
