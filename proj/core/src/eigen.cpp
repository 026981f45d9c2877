#include "kronbound/eigen.hpp"

#include "kronbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kronbound {

TridiagonalForm householder_tridiagonalize(DenseMatrix a) {
    if (!a.square()) throw InvalidArgument("tridiagonalize: matrix is not square");
    const std::size_t n = a.rows();
    TridiagonalForm out;
    out.diag.resize(n);
    out.offdiag.assign(n > 0 ? n - 1 : 0, 0.0);

    std::vector<double> v(n), p(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Annihilate a(k+2:n, k) with a reflector acting on rows/cols k+1..n-1.
        double norm = 0.0;
        for (std::size_t r = k + 1; r < n; ++r) norm = std::hypot(norm, a(r, k));
        if (norm == 0.0) {
            out.offdiag[k] = 0.0;
            continue;
        }
        const double x0 = a(k + 1, k);
        const double alpha = x0 >= 0.0 ? -norm : norm;
        for (std::size_t r = k + 1; r < n; ++r) v[r] = a(r, k);
        v[k + 1] -= alpha;
        double vnorm = 0.0;
        for (std::size_t r = k + 1; r < n; ++r) vnorm = std::hypot(vnorm, v[r]);
        if (vnorm == 0.0) {
            out.offdiag[k] = a(k + 1, k);
            continue;
        }
        for (std::size_t r = k + 1; r < n; ++r) v[r] /= vnorm;

        // B <- H B H = B - 2 (v w^T + w v^T), w = Bv - (v^T B v) v
        double kk = 0.0;
        for (std::size_t r = k + 1; r < n; ++r) {
            double s = 0.0;
            for (std::size_t c = k + 1; c < n; ++c) s += a(r, c) * v[c];
            p[r] = s;
            kk += v[r] * s;
        }
        for (std::size_t r = k + 1; r < n; ++r) p[r] -= kk * v[r];
        for (std::size_t r = k + 1; r < n; ++r)
            for (std::size_t c = k + 1; c < n; ++c)
                a(r, c) -= 2.0 * (v[r] * p[c] + p[r] * v[c]);

        out.offdiag[k] = alpha;
        for (std::size_t r = k + 2; r < n; ++r) {
            a(r, k) = 0.0;
            a(k, r) = 0.0;
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = alpha;
    }
    for (std::size_t i = 0; i < n; ++i) out.diag[i] = a(i, i);
    if (n >= 2) out.offdiag[n - 2] = a(n - 1, n - 2);
    return out;
}

std::vector<double> tridiagonal_eigenvalues(TridiagonalForm t) {
    auto& d = t.diag;
    const int n = static_cast<int>(d.size());
    if (n == 0) return {};
    if (static_cast<int>(t.offdiag.size()) != n - 1)
        throw InvalidArgument("tridiagonal_eigenvalues: off-diagonal must have n-1 entries");

    // e[i] couples d[i] and d[i+1]; e[n-1] is a sentinel zero.
    std::vector<double> e(t.offdiag);
    e.push_back(0.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 60;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == max_iter)
                throw Error("tridiagonal_eigenvalues: QL iteration did not converge");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& a) {
    return tridiagonal_eigenvalues(householder_tridiagonalize(a));
}

} // namespace kronbound
