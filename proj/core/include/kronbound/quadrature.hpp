#pragma once

#include <functional>

namespace kronbound {

struct QuadratureSettings {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;

    /// Throws InvalidArgument unless tolerances are positive and
    /// max_subdivisions >= 1.
    void validate() const;
};

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// One 15-point Gauss-Kronrod panel on [a, b]. `error` is |K15 - G7|.
IntegralEstimate gauss_kronrod15(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod on a finite interval: the panel with the
/// largest error estimate is bisected until the summed error is below
/// max(abs_tol, rel_tol * |value|) or max_subdivisions panels are in use.
/// On exhaustion the best estimate is returned with converged = false.
/// A non-finite integrand sample throws QuadratureError.
IntegralEstimate integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSettings& settings = {});

/// Integral over [0, inf) through the map w = s / (1 - s), s in (0, 1).
IntegralEstimate integrate_half_line(const Integrand& f, const QuadratureSettings& settings = {});

/// Integral over the whole real line of an even integrand: twice the
/// half-line value. Only w >= 0 is sampled.
IntegralEstimate integrate_real_line(const Integrand& f, const QuadratureSettings& settings = {});

} // namespace kronbound
