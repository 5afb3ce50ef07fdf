#pragma once

#include <span>
#include <vector>

#include "ewagg/types.hpp"

namespace ewagg {

/// Probability weights over the members of an EstimatorFamily.
/// Continuous densities are evaluated at the grid nodes and renormalized.
class Prior {
public:
    enum class Kind { DiscreteUniform, DiscreteWeighted, Sparsity, PinskerDensity };

    static Prior uniform(std::size_t size);
    /// Nonnegative weights, at least one positive; normalized on construction.
    static Prior weighted(Vector weights);
    /// pi(lambda) proportional to prod_m (1 + (lambda_m / tau)^2)^{-2} at each grid point.
    static Prior sparsity(const std::vector<std::vector<double>>& grid, double tau);
    /// pi(alpha, w) proportional to
    ///   2 s^{-alpha/(2 alpha + 2 gamma + 1)} / (1 + s^{-alpha/(2 alpha + 2 gamma + 1)} w)^3 e^{-alpha}
    /// at each (alpha, w) pair. gamma = 0 with s = n / sigma^2 is the
    /// homoscedastic prior; s = n with gamma > 0 the heteroscedastic one.
    static Prior pinsker_density(std::span<const double> alpha, std::span<const double> w,
                                 double scale, double gamma = 0.0);
    /// Unnormalized density value of the Pinsker prior.
    static double pinsker_density_value(double alpha, double w, double scale, double gamma);

    Kind kind() const { return kind_; }
    std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
    const Vector& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[static_cast<Index>(i)]; }

private:
    Prior(Kind kind, Vector weights);
    Kind kind_;
    Vector weights_;
};

}  // namespace ewagg
