#pragma once

#include <cstddef>
#include <string_view>

#include "cyberdyn/graph.hpp"

namespace cyberdyn {

struct SpectralOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
};

struct SpectralResult {
    double lambda1 = 0.0;
    std::size_t iterations = 0;
    /// Infinity norm of (A + I)v - mu v for the final unit-infinity-norm iterate v.
    double residual = 0.0;

    friend bool operator==(const SpectralResult&, const SpectralResult&) = default;
};

/// Cure probability `beta` per compromised node and step; compromise probability `gamma`
/// per edge and step. A composite system is evaluated with the same record as its parts.
struct DynamicsParams {
    double beta = 0.0;
    double gamma = 0.0;

    /// Throws InvalidArgument unless both lie in [0, 1].
    void validate() const;

    friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

enum class Regime { DieOut, Persist, Critical };

std::string_view regime_name(Regime regime) noexcept;
/// Inverse of regime_name; throws InvalidArgument on unknown names.
Regime regime_from_name(std::string_view name);

struct ThresholdVerdict {
    Regime regime = Regime::Critical;
    double lambda1 = 0.0;
    double ratio = 0.0;  // beta / gamma
    double margin = 0.0; // ratio - lambda1

    friend bool operator==(const ThresholdVerdict&, const ThresholdVerdict&) = default;
};

inline constexpr double kDefaultCriticalTol = 1e-9;

/// Largest adjacency eigenvalue by power iteration on A + I from the all-ones vector.
///
/// Deterministic. The shift makes the iteration matrix primitive on every connected
/// component, so bipartite graphs converge too; lambda1(A + I) = lambda1(A) + 1.
/// Throws ConvergenceError if the residual is still above `tol` after `max_iter` steps.
SpectralResult spectral_radius(const Graph& g, const SpectralOptions& options = {});

/// Classifies margin = beta/gamma - lambda1 with a Critical band |margin| <= critical_tol.
ThresholdVerdict classify(double lambda1, const DynamicsParams& params, double critical_tol = kDefaultCriticalTol);

/// Requires gamma > 0 (InvalidArgument otherwise).
ThresholdVerdict threshold_verdict(const Graph& g, const DynamicsParams& params,
                                   double critical_tol = kDefaultCriticalTol,
                                   const SpectralOptions& options = {});

} // namespace cyberdyn
