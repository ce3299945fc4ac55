// oracles.hpp -- test-only brute-force references, kept independent of the
// production solver path.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace test_oracle {

// Cyclic Jacobi rotations on the full dense symmetric matrix, eigenvalues
// only. Quadratically convergent; stops once the off-diagonal Frobenius norm
// falls below 1e-12 of the matrix norm.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    double norm2 = 0.0;
    for (double v : a) norm2 += v * v;
    const double stop = 1e-12 * std::sqrt(norm2);

    bool converged = (n == 1);
    for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
        double off2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off2 += at(i, j) * at(i, j);
        if (std::sqrt(2.0 * off2) <= stop) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(p, k) = at(k, p);
                    at(k, q) = s * akp + c * akq;
                    at(q, k) = at(k, q);
                }
            }
        }
    }
    if (!converged) {
        // final check after the sweep budget
        double off2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off2 += at(i, j) * at(i, j);
        if (std::sqrt(2.0 * off2) > stop)
            throw std::runtime_error("jacobi oracle failed to converge");
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace test_oracle
