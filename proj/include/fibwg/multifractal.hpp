// multifractal.hpp -- box-counting singularity spectrum f(alpha) of a
// probability measure over lattice sites.
#pragma once

#include <span>
#include <vector>

namespace fibwg::multifractal {

/// Nonnegative site weights summing to 1 within 1e-12.
class ProbabilityMeasure {
public:
    explicit ProbabilityMeasure(std::vector<double> weights);
    /// mu_j = |psi_j|^2 of a normalized state.
    static ProbabilityMeasure from_state(std::span<const double> psi);

    const std::vector<double>& mu() const { return mu_; }
    int size() const { return static_cast<int>(mu_.size()); }

private:
    std::vector<double> mu_;
};

/// ln Z(q, l) with Z = sum_k P_k^q over boxes of size l tiling the lattice
/// (ceil(N/l) boxes, the last possibly partial; empty boxes are dropped).
/// Evaluated in log space: ln Z = M + ln sum exp(q ln P_k - M), M the max.
double log_partition(const ProbabilityMeasure& measure, int box_size, double moment);

/// Dyadic box sizes 2, 4, 8, ... up to N/8.
std::vector<int> dyadic_box_sizes(int n_sites);

struct TauCurve {
    std::vector<double> q;
    std::vector<double> tau;         // per-q slope of ln Z vs ln l
    std::vector<double> tau_stderr;  // regression standard error of the slope
};

/// Scaling exponents tau(q) from linear regression over the given box sizes
/// (at least 4 scales required).
TauCurve tau(const ProbabilityMeasure& measure, const std::vector<int>& box_sizes,
             const std::vector<double>& q_grid);

struct SingularitySpectrum {
    std::vector<double> q;
    std::vector<double> tau;
    std::vector<double> tau_stderr;
    std::vector<double> alpha;  // d tau / d q, central differences
    std::vector<double> f;      // q alpha - tau
    // Interior points where tau fails concavity beyond 3 standard errors;
    // a diagnostics signal, not an error.
    int concavity_warnings = 0;
};

/// Full pipeline: tau, then alpha by finite differences (one-sided at the
/// endpoints) and f by the Legendre formula. The q grid must be uniform and
/// symmetric about 0.
SingularitySpectrum singularity_spectrum(const ProbabilityMeasure& measure,
                                         const std::vector<int>& box_sizes,
                                         const std::vector<double>& q_grid);

/// -8 .. 8 in steps of 0.25.
std::vector<double> default_q_grid();

}  // namespace fibwg::multifractal
