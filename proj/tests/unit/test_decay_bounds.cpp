#include "kronbound/banded.hpp"
#include "kronbound/decay_bounds.hpp"
#include "kronbound/errors.hpp"
#include "kronbound/exact_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace kronbound;
using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

// |((i w I + M)^{-1})_{row, col}| by complex Gaussian elimination (no pivoting
// needed: i w I + M has a positive definite Hermitian part).
double resolvent_entry(const BandedSymmetricMatrix& m, double omega, int row, int col) {
    const int n = m.order();
    std::vector<std::vector<cplx>> a(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.entry(i + 1, j + 1) + (i == j ? cplx(0.0, omega) : 0.0);
    std::vector<cplx> rhs(static_cast<std::size_t>(n), 0.0);
    rhs[static_cast<std::size_t>(col - 1)] = 1.0;
    for (int p = 0; p < n; ++p)
        for (int r = p + 1; r < n; ++r) {
            const cplx f = a[r][p] / a[p][p];
            for (int c = p; c < n; ++c) a[r][c] -= f * a[p][c];
            rhs[r] -= f * rhs[p];
        }
    std::vector<cplx> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        cplx s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return std::abs(x[static_cast<std::size_t>(row - 1)]);
}

// Integrand of the integral bounds written directly from the definitions
// (complex moduli, R from alpha, r from R), integrated by Simpson's rule
// after w = tan(theta). Independent of the library's quadrature and of its
// cancellation-free geometry.
double oracle_integral_bound(double lmin, double lmax, int dr, int dc, int b) {
    const double width = lmax - lmin;
    auto r_and_R = [&](double w) {
        const cplx l1(lmin, w), l2(lmax, w);
        const double alpha = (std::abs(l1) + std::abs(l2)) / std::abs(l2 - l1);
        const double R = alpha + std::sqrt(alpha * alpha - 1.0);
        return std::pair{R * R / ((R * R - 1.0) * (R * R - 1.0)), R};
    };
    const double er = static_cast<double>(dr) / b, ec = static_cast<double>(dc) / b;
    auto f = [&](double w) {
        const auto [r, R] = r_and_R(w);
        if (dr != 0 && dc != 0) return 64.0 / (width * width) * r * r * std::pow(R, -(er + ec - 2.0));
        return 8.0 / width / std::hypot(lmin, w) * r * std::pow(R, -(er + ec - 1.0));
    };
    const long panels = 200'000;
    const double h = (pi / 2.0) / panels;
    auto g = [&](double theta) {
        if (theta >= pi / 2.0) return 0.0;
        const double c = std::cos(theta);
        return f(std::tan(theta)) / (c * c);
    };
    double s = g(0.0) + g(pi / 2.0);
    for (long i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * g(h * static_cast<double>(i));
    return 2.0 * (s * h / 3.0) / (2.0 * pi);
}

const SpectralInterval kSpec13(1.0, 3.0);

} // namespace

TEST(Geometry, RealPoint) {
    const auto g = geometry_at(kSpec13, 0.0);
    EXPECT_DOUBLE_EQ(g.alpha, 2.0);
    EXPECT_NEAR(g.R, 2.0 + std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(g.beta_R, std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(g.psi, 0.0, 1e-15);
    EXPECT_NEAR(g.B, 1.0 / 3.0, 1e-15);
    EXPECT_EQ(g.lambda1, cplx(1.0, 0.0));
    EXPECT_EQ(g.lambda2, cplx(3.0, 0.0));
    EXPECT_EQ(g.a, cplx(2.0, 0.0));
}

TEST(Geometry, ImaginaryShift) {
    const auto g = geometry_at(kSpec13, 2.0);
    EXPECT_NEAR(g.alpha, 2.9208096264818895, 1e-14);
    EXPECT_NEAR(g.R, 5.6650998578803972, 1e-13);
    EXPECT_NEAR(g.B, 0.12621472747393488, 1e-14);
    EXPECT_NEAR(g.beta_R, 2.7442902313985077, 1e-14);
}

TEST(Geometry, LargeFrequencyAsymptotics) {
    for (auto spec : {kSpec13, SpectralInterval(0.04, 1.96), SpectralInterval(2.0, 50.0)}) {
        const double omega = 1e6;
        const auto g = geometry_at(spec, omega);
        const double alpha_lead = 2.0 * omega / spec.width();
        EXPECT_NEAR(g.alpha / alpha_lead, 1.0, 1e-3);
        EXPECT_NEAR(g.R / (2.0 * g.alpha), 1.0, 1e-3);
    }
}

TEST(Geometry, DegenerateSpectrumRejected) {
    EXPECT_THROW(geometry_at(SpectralInterval(2.0, 2.0), 0.5), InapplicableBound);
}

TEST(Geometry, InvariantsOverRandomSamples) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> lo(0.01, 1.0), span(0.1, 10.0), w(0.0, 100.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double lmin = lo(rng);
        const SpectralInterval spec(lmin, lmin + span(rng));
        const double omega = trial % 10 == 0 ? 0.0 : w(rng);
        const auto g = geometry_at(spec, omega);
        ASSERT_GT(g.R, 1.0);
        EXPECT_NEAR(g.alpha_R * g.alpha_R - g.beta_R * g.beta_R, 1.0, 1e-12 * g.alpha_R * g.alpha_R);
        EXPECT_NEAR(g.alpha_R + g.beta_R, g.R, 1e-15 * g.R);
        // Definitions through R itself.
        EXPECT_NEAR(g.alpha_R, 0.5 * (g.R + 1.0 / g.R), 1e-13 * g.alpha_R);
        EXPECT_NEAR(g.beta_R, 0.5 * (g.R - 1.0 / g.R), 1e-12 * g.beta_R);
        const double c = g.a.real() / g.alpha_R, s = g.a.imag() / g.beta_R;
        EXPECT_LE(std::abs(c), 1.0 + 1e-14);
        EXPECT_LE(std::abs(s), 1.0 + 1e-14);
        EXPECT_NEAR(c * c + s * s, 1.0, 1e-12);
        const double direct = g.R * g.R / ((g.R * g.R - 1.0) * (g.R * g.R - 1.0));
        const double alpha_form = 1.0 / (4.0 * (g.alpha * g.alpha - 1.0));
        EXPECT_NEAR(direct / alpha_form, 1.0, 1e-13);
        EXPECT_NEAR(g.r_ratio() / direct, 1.0, 1e-13);
        EXPECT_LE(g.B, 1.0 / (g.beta_R * g.beta_R) * (1.0 + 1e-14));
    }
}

TEST(Freund, Examples) {
    const auto g = geometry_at(kSpec13, 0.0);
    EXPECT_NEAR(freund_entry_bound(g, 1, 1), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(freund_entry_bound(g, 2, 1), 0.089316397477040902, 1e-15);
    EXPECT_NEAR(freund_entry_bound(g, 2, 2), 1.0 / 3.0, 1e-15);
    EXPECT_THROW(freund_entry_bound(g, 0, 1), InapplicableBound);
    EXPECT_THROW(freund_entry_bound(g, 1, 0), InvalidArgument);
}

TEST(Freund, EqualityWitnessAtRealPoint) {
    const auto m = make_preset("fd-laplacian", 2);
    const auto spec = extreme_eigenvalues(m);
    const double exact = resolvent_entry(m, 0.0, 1, 2);
    EXPECT_NEAR(exact, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(freund_entry_bound(geometry_at(spec, 0.0), 1, 1), exact, 1e-12);
}

TEST(Freund, SimplifiedDominatesFull) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> lo(0.01, 2.0), span(0.01, 5.0), w(0.0, 50.0);
    std::uniform_int_distribution<int> d(1, 30), bw(1, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        const double lmin = lo(rng);
        const auto g = geometry_at(SpectralInterval(lmin, lmin + span(rng)), w(rng));
        const int dist = d(rng), b = bw(rng);
        const double full = freund_entry_bound(g, dist, b, FreundMode::Full);
        const double simple = freund_entry_bound(g, dist, b, FreundMode::Simplified);
        ASSERT_GT(full, 0.0);
        ASSERT_GE(simple, full * (1.0 - 1e-14));
    }
}

TEST(Freund, DominatesShiftedResolventEntries) {
    for (auto p : {Preset::FdLaplacian, Preset::Legendre, Preset::NinePoint}) {
        const auto m = scale_by_diagonal(make_preset(p, 8));
        const auto spec = extreme_eigenvalues(m);
        for (double omega : {0.0, 0.1, 1.0, 10.0}) {
            const auto g = geometry_at(spec, omega);
            for (int row = 1; row <= 8; ++row)
                for (int col = 1; col <= 8; ++col) {
                    const double exact = resolvent_entry(m, omega, row, col);
                    if (row == col) {
                        EXPECT_LE(exact, resolvent_diagonal_bound(spec, omega) * (1 + 1e-12));
                        continue;
                    }
                    EXPECT_LE(exact, freund_entry_bound(g, std::abs(row - col), m.bandwidth()) * (1 + 1e-12))
                        << preset_name(p) << " w=" << omega << " (" << row << "," << col << ")";
                }
        }
    }
}

TEST(ResolventDiagonal, Examples) {
    EXPECT_DOUBLE_EQ(resolvent_diagonal_bound(SpectralInterval(1.0, 2.0), 0.0), 1.0);
    EXPECT_NEAR(resolvent_diagonal_bound(SpectralInterval(1.0, 2.0), std::sqrt(3.0)), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(resolvent_diagonal_bound(SpectralInterval(0.5, 2.0), 0.0), 2.0);
}

TEST(IntegralBound, DiagonalCaseIsClosedForm) {
    const auto spec = extreme_eigenvalues(scale_by_diagonal(make_preset("dd", 10)));
    const auto est = integral_entry_bound(spec, 37, 37, 10, 1);
    EXPECT_EQ(est.value, 1.0 / (2.0 * spec.lambda_min()));
    EXPECT_NEAR(est.value, 0.96106991557162733, 1e-12);
    EXPECT_EQ(est.panels, 0);
    EXPECT_EQ(est.error, 0.0);
}

TEST(IntegralBound, SmallLaplacianFrozenValues) {
    const auto spec = extreme_eigenvalues(make_preset("fd-laplacian", 2));
    // BothDiffer, n2 = 0 and OneEqual, n1 = 0; exact entries 1/24 and 2/24.
    const auto both = integral_entry_bound(spec, 4, 1, 2, 1);
    EXPECT_NEAR(both.value, 0.044629404790076695, 1e-9 * 0.0446);
    EXPECT_GE(both.value, 1.0 / 24.0);
    const auto one = integral_entry_bound(spec, 2, 1, 2, 1);
    EXPECT_NEAR(one.value, 0.14346030990076078, 1e-9 * 0.143);
    EXPECT_GE(one.value, 1.0 / 12.0);
}

TEST(IntegralBound, MatchesIndependentSimpsonOracle) {
    struct Case {
        double lmin, lmax;
        int dr, dc, b;
    };
    const Case cases[] = {{1, 3, 2, 2, 1}, {1, 3, 3, 1, 1}, {1, 3, 0, 4, 1}, {0.0405, 1.9595, 1, 3, 1},
                          {0.0405, 1.9595, 0, 1, 1}, {0.0335, 2.08, 1, 1, 2}, {0.0335, 2.08, 0, 3, 2},
                          {0.52, 1.48, 6, 5, 1}};
    for (const auto& c : cases) {
        const SpectralInterval spec(c.lmin, c.lmax);
        const auto est = integral_entry_bound(spec, classify_distances(c.dr, c.dc), c.b);
        const double oracle = oracle_integral_bound(c.lmin, c.lmax, c.dr, c.dc, c.b);
        EXPECT_TRUE(est.converged);
        EXPECT_NEAR(est.value, oracle, 1e-8 * oracle) << c.lmin << " " << c.dr << "," << c.dc << " b=" << c.b;
    }
    // mpmath reference values for spec (1, 3).
    EXPECT_NEAR(integral_entry_bound(kSpec13, classify_distances(2, 2), 1).value, 0.0024193913634417899, 1e-9 * 0.0024);
    EXPECT_NEAR(integral_entry_bound(kSpec13, classify_distances(0, 4), 1).value, 0.0017784549651057741, 1e-9 * 0.0018);
}

TEST(IntegralBound, DependsOnlyOnTotalDistanceForTridiagonal) {
    const auto a = integral_entry_bound(kSpec13, classify_distances(2, 2), 1);
    const auto b = integral_entry_bound(kSpec13, classify_distances(3, 1), 1);
    EXPECT_NEAR(a.value, b.value, 1e-12 * a.value);
}

TEST(IntegralBound, Errors) {
    EXPECT_THROW(integral_entry_bound(kSpec13, 1, 2, 2, 0), InvalidArgument);
    EXPECT_THROW(integral_entry_bound(kSpec13, 0, 2, 2, 1), InvalidArgument);
    EXPECT_THROW(integral_entry_bound(SpectralInterval(1.0, 1.0), 1, 2, 2, 1), InapplicableBound);
    EXPECT_NO_THROW(integral_entry_bound(SpectralInterval(1.0, 1.0), 2, 2, 2, 1));
}

TEST(ExplicitBound, Examples) {
    EXPECT_NEAR(explicit_entry_bound(kSpec13, classify_distances(2, 2)), 0.11475506210984939, 1e-15);
    EXPECT_NEAR(explicit_entry_bound(kSpec13, classify_distances(0, 2)), 0.38490017945975051, 1e-15);
    EXPECT_THROW(explicit_entry_bound(kSpec13, classify_distances(1, 1)), InapplicableBound);
    EXPECT_THROW(explicit_entry_bound(kSpec13, classify_distances(0, 1)), InapplicableBound);
    EXPECT_THROW(explicit_entry_bound(kSpec13, classify_distances(0, 0)), InapplicableBound);
}

TEST(ExplicitBound, LargeDistancesStayFinite) {
    const SpectralInterval spec(0.04, 1.96);
    for (int d : {50, 200, 1000}) {
        const double v = explicit_entry_bound(spec, classify_distances(d, d));
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_GT(v, 0.0);
    }
}

TEST(AsymptoticBound, Examples) {
    EXPECT_NEAR(asymptotic_entry_bound(kSpec13, classify_distances(2, 2)), 1.1180339887498948, 1e-15);
    EXPECT_NEAR(asymptotic_entry_bound(kSpec13, classify_distances(2, 0)), 4.7434164902525690, 1e-14);
    const double eight = asymptotic_entry_bound(kSpec13, classify_distances(5, 5));
    EXPECT_NEAR(eight, 0.55901699437494742, 1e-15);
    EXPECT_NEAR(eight, 0.5 * asymptotic_entry_bound(kSpec13, classify_distances(2, 2)), 1e-15);
    EXPECT_THROW(asymptotic_entry_bound(kSpec13, classify_distances(0, 0)), InapplicableBound);
}

TEST(AsymptoticBound, DominatesExplicitWhenLambdaMaxAtLeastOne) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lo(0.01, 0.99), span(0.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double lmin = lo(rng);
        const SpectralInterval spec(lmin, std::max(1.0, lmin) + span(rng));
        for (int dr = 0; dr < 12; ++dr)
            for (int dc = 0; dc < 12; ++dc) {
                const auto sep = classify_distances(dr, dc);
                if (!sep.mesh_distance() || *sep.mesh_distance() <= 0) continue;
                ASSERT_LE(explicit_entry_bound(spec, sep), asymptotic_entry_bound(spec, sep) * (1 + 1e-8));
            }
    }
}

TEST(BoundConstants, Values) {
    const auto c = bound_constants(kSpec13);
    EXPECT_NEAR(c.gamma0_case_i, std::sqrt(10.0) / 2.0, 1e-15);
    EXPECT_NEAR(c.gamma0_case_ii, 3.0 * std::sqrt(10.0) / 2.0, 1e-15);
    EXPECT_EQ(c.gamma0, c.gamma0_case_ii);
}

TEST(Demko, SmallLaplacian) {
    const SpectralInterval spec_S(2.0, 6.0);
    const auto c = demko_constants(spec_S, 4.0);
    EXPECT_NEAR(c.kappa, 3.0, 1e-15);
    EXPECT_NEAR(c.q, 0.26794919243112271, 1e-15);
    EXPECT_NEAR(c.gamma * 1.0 / 4.0, 0.62200846792814622, 1e-15);
    const double bound = demko_bound(spec_S, 2, 3, 4.0);
    EXPECT_NEAR(bound, 0.086273015034173587, 1e-15);
    EXPECT_GE(bound, 1.0 / 24.0);
}

TEST(Demko, IdentityAndZeroDistance) {
    const SpectralInterval unit(1.0, 1.0);
    EXPECT_EQ(demko_constants(unit, 1.0).q, 0.0);
    EXPECT_EQ(demko_bound(unit, 1, 1, 1.0), 0.0);
    EXPECT_EQ(demko_bound(unit, 1, 0, 1.0), demko_constants(unit, 1.0).gamma);
    const SpectralInterval spec_S(2.0, 6.0);
    EXPECT_DOUBLE_EQ(demko_bound(spec_S, 2, 0, 4.0), demko_constants(spec_S, 4.0).gamma / 4.0);
    EXPECT_THROW(demko_bound(spec_S, 0, 1, 4.0), InvalidArgument);
    EXPECT_THROW(demko_bound(spec_S, 1, 1, 0.0), InvalidArgument);
}

TEST(Sylvester, ReducesToEqualMatrixCase) {
    const SylvesterSpectraPair pair{kSpec13, kSpec13};
    const auto syl = sylvester_integral_bound(pair, 2, 2);
    const auto eq = integral_entry_bound(kSpec13, classify_distances(2, 2), 1);
    EXPECT_NEAR(syl.value, eq.value, 1e-12 * eq.value);
}

TEST(Sylvester, EnvelopeOfAssembledOperator) {
    const auto m1 = make_preset("fd-laplacian", 2);        // spectrum (1, 3)
    const auto m2 = make_tridiagonal(2, 3.0, -1.0);       // spectrum (2, 4)
    const SylvesterSpectraPair pair{extreme_eigenvalues(m1), extreme_eigenvalues(m2)};
    EXPECT_NEAR(pair.delta12(), 4.0, 1e-14);
    const auto bound = sylvester_integral_bound(pair, 1, 1);
    EXPECT_NEAR(bound.value, 0.021204708641931269, 1e-9 * 0.0212);
    const auto column = inverse_column(assemble_kronecker_sum(m1, m2), 1);
    EXPECT_NEAR(column[3], 0.019047619047619049, 1e-15);
    EXPECT_GE(bound.value, std::abs(column[3]));
}

TEST(Sylvester, PrefactorScalesInverselyWithDelta) {
    const SylvesterSpectraPair narrow{SpectralInterval(1, 3), SpectralInterval(2, 4)};
    const SylvesterSpectraPair wide{SpectralInterval(1, 3), SpectralInterval(2, 6)};
    EXPECT_DOUBLE_EQ(64.0 / wide.delta12(), 0.5 * (64.0 / narrow.delta12()));
}

TEST(Sylvester, Errors) {
    const SylvesterSpectraPair pair{kSpec13, kSpec13};
    EXPECT_THROW(sylvester_integral_bound(pair, 0, 2), InapplicableBound);
    EXPECT_THROW(sylvester_integral_bound(pair, 2, 0), InapplicableBound);
    EXPECT_THROW(sylvester_integral_bound({kSpec13, SpectralInterval(2, 2)}, 1, 1), InapplicableBound);
}

TEST(CholeskyFactorBound, Examples) {
    const auto sep4 = classify_distances(0, 5);  // OneEqual, n1 = 4
    EXPECT_NEAR(inverse_cholesky_factor_bound(kSpec13, sep4, 2), 4.7434164902525690, 1e-14);
    const auto sep16 = classify_distances(9, 9);  // BothDiffer, n2 = 16
    EXPECT_NEAR(inverse_cholesky_factor_bound(kSpec13, sep16, 2), 2.3717082451262845, 1e-14);
    EXPECT_THROW(inverse_cholesky_factor_bound(kSpec13, classify_distances(0, 0), 2), InapplicableBound);
    EXPECT_THROW(inverse_cholesky_factor_bound(kSpec13, classify_distances(1, 1), 2), InapplicableBound);
}

TEST(CholeskyFactorBound, DominatesFactorInverse) {
    for (int n : {2, 4, 6}) {
        const auto m = make_preset("fd-laplacian", n);
        const auto spec = extreme_eigenvalues(m);
        const auto factor = cholesky(assemble_kronecker_sum(m, m));
        int checked = 0;
        for (std::int64_t t = 1; t <= n * n; ++t) {
            const auto col = inverse_transpose_factor_column(factor, t);
            for (std::int64_t k = 1; k <= t; ++k) {
                const auto sep = mesh_separation(k, t, n);
                const auto nd = sep.mesh_distance();
                if (!nd || *nd <= 0) continue;
                ++checked;
                EXPECT_LE(std::abs(col[static_cast<std::size_t>(k - 1)]),
                          inverse_cholesky_factor_bound(spec, sep, n * m.bandwidth()));
            }
        }
        if (n == 2) EXPECT_EQ(checked, 0);
        else EXPECT_GT(checked, 0);
    }
}
