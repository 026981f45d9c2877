#include "kronbound/quadrature.hpp"

#include "kronbound/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace kronbound {

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414484569301, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377325, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.10479001032225018383987632254152,  0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,  0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,  0.20948214108472782801299917489171};

constexpr std::array<double, 4> kGaussWeights = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

double sample(const Integrand& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "quadrature: non-finite integrand value " << v << " at x = " << x;
        throw QuadratureError(msg.str());
    }
    return v;
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

} // namespace

void QuadratureSettings::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw InvalidArgument("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw InvalidArgument("quadrature needs max_subdivisions >= 1");
}

IntegralEstimate gauss_kronrod15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = sample(f, center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = sample(f, center - dx) + sample(f, center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    IntegralEstimate out;
    out.value = kronrod * half;
    out.error = std::abs((kronrod - gauss) * half);
    out.panels = 1;
    out.converged = true;
    return out;
}

IntegralEstimate integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSettings& settings) {
    settings.validate();
    if (!(std::isfinite(a) && std::isfinite(b))) throw InvalidArgument("quadrature: non-finite limits");

    auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::vector<Panel> heap;
    heap.reserve(static_cast<std::size_t>(settings.max_subdivisions) + 1);
    {
        const auto first = gauss_kronrod15(f, a, b);
        heap.push_back({a, b, first.value, first.error});
    }

    // Final sum in endpoint order, so the value does not depend on heap layout.
    auto ordered_totals = [&heap] {
        std::vector<const Panel*> ordered;
        ordered.reserve(heap.size());
        for (const auto& p : heap) ordered.push_back(&p);
        std::sort(ordered.begin(), ordered.end(),
                  [](const Panel* x, const Panel* y) { return x->a < y->a; });
        double value = 0.0, error = 0.0;
        for (const Panel* p : ordered) {
            value += p->value;
            error += p->error;
        }
        return std::pair{value, error};
    };
    auto finish = [&](bool converged) {
        const auto [value, error] = ordered_totals();
        return IntegralEstimate{value, error, static_cast<int>(heap.size()), converged};
    };

    double running_value = heap.front().value;
    double running_error = heap.front().error;
    while (true) {
        const double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(running_value));
        if (running_error <= tol) {
            auto result = finish(true);
            // The ordered sum can differ from the running one in the last bits.
            result.converged =
                result.error <= std::max(settings.abs_tol, settings.rel_tol * std::abs(result.value));
            if (result.converged) return result;
        }
        if (static_cast<int>(heap.size()) >= settings.max_subdivisions) return finish(false);

        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            return finish(false);
        }
        const auto left = gauss_kronrod15(f, worst.a, mid);
        const auto right = gauss_kronrod15(f, mid, worst.b);
        heap.push_back({worst.a, mid, left.value, left.error});
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back({mid, worst.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end(), by_error);
        running_value += left.value + right.value - worst.value;
        running_error += left.error + right.error - worst.error;
    }
}

IntegralEstimate integrate_half_line(const Integrand& f, const QuadratureSettings& settings) {
    // Gauss-Kronrod nodes are interior, so s = 1 is never evaluated.
    const Integrand mapped = [&f](double s) {
        const double one_minus = 1.0 - s;
        const double w = s / one_minus;
        return f(w) / (one_minus * one_minus);
    };
    return integrate_interval(mapped, 0.0, 1.0, settings);
}

IntegralEstimate integrate_real_line(const Integrand& f, const QuadratureSettings& settings) {
    // Halve the absolute target so the doubled error still meets abs_tol.
    QuadratureSettings half_settings = settings;
    half_settings.abs_tol *= 0.5;
    auto half = integrate_half_line(f, half_settings);
    half.value *= 2.0;
    half.error *= 2.0;
    return half;
}

} // namespace kronbound
