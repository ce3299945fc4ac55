// multifractal.cpp
#include "fibwg/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fibwg/errors.hpp"
#include "fibwg/linefit.hpp"

namespace fibwg::multifractal {

ProbabilityMeasure::ProbabilityMeasure(std::vector<double> weights) : mu_(std::move(weights)) {
    if (mu_.empty()) throw std::invalid_argument("measure must be nonempty");
    double sum = 0.0;
    for (double v : mu_) {
        if (v < 0.0) throw std::invalid_argument("measure weights must be nonnegative");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("measure must be normalized to 1 within 1e-12");
}

ProbabilityMeasure ProbabilityMeasure::from_state(std::span<const double> psi) {
    std::vector<double> mu(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) mu[j] = psi[j] * psi[j];
    return ProbabilityMeasure(std::move(mu));
}

namespace {

// ln P_k for the nonempty boxes of size l.
std::vector<double> log_box_probabilities(const ProbabilityMeasure& measure, int box_size) {
    if (box_size < 2) throw std::invalid_argument("box size must be at least 2");
    const auto& mu = measure.mu();
    const int n = measure.size();
    std::vector<double> log_p;
    log_p.reserve((n + box_size - 1) / box_size);
    for (int start = 0; start < n; start += box_size) {
        const int stop = std::min(start + box_size, n);
        double p = 0.0;
        for (int j = start; j < stop; ++j) p += mu[j];
        if (p > 0.0) log_p.push_back(std::log(p));
    }
    if (log_p.empty()) throw Error("log_partition: measure vanishes in every box");
    return log_p;
}

double log_sum_exp_moments(const std::vector<double>& log_p, double moment) {
    double m = -std::numeric_limits<double>::infinity();
    for (double lp : log_p) m = std::max(m, moment * lp);
    double s = 0.0;
    for (double lp : log_p) s += std::exp(moment * lp - m);
    return m + std::log(s);
}

}  // namespace

double log_partition(const ProbabilityMeasure& measure, int box_size, double moment) {
    return log_sum_exp_moments(log_box_probabilities(measure, box_size), moment);
}

std::vector<int> dyadic_box_sizes(int n_sites) {
    std::vector<int> sizes;
    for (int l = 2; 8 * l <= n_sites; l *= 2) sizes.push_back(l);
    return sizes;
}

TauCurve tau(const ProbabilityMeasure& measure, const std::vector<int>& box_sizes,
             const std::vector<double>& q_grid) {
    if (box_sizes.size() < 4) throw Error("tau: need at least 4 box sizes");
    if (q_grid.empty()) throw std::invalid_argument("tau: empty q grid");

    std::vector<std::vector<double>> log_p_per_scale;
    std::vector<double> log_l;
    log_p_per_scale.reserve(box_sizes.size());
    for (int l : box_sizes) {
        log_p_per_scale.push_back(log_box_probabilities(measure, l));
        log_l.push_back(std::log(static_cast<double>(l)));
    }

    TauCurve curve;
    curve.q = q_grid;
    curve.tau.resize(q_grid.size());
    curve.tau_stderr.resize(q_grid.size());
    std::vector<double> log_z(box_sizes.size());
    for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
        for (std::size_t il = 0; il < box_sizes.size(); ++il)
            log_z[il] = log_sum_exp_moments(log_p_per_scale[il], q_grid[iq]);
        const auto fit = detail::fit_line(log_l, log_z);
        curve.tau[iq] = fit.slope;
        curve.tau_stderr[iq] = fit.slope_stderr;
    }
    return curve;
}

SingularitySpectrum singularity_spectrum(const ProbabilityMeasure& measure,
                                         const std::vector<int>& box_sizes,
                                         const std::vector<double>& q_grid) {
    if (q_grid.size() < 3)
        throw std::invalid_argument("singularity spectrum: q grid too small");
    const double step = q_grid[1] - q_grid[0];
    for (std::size_t i = 0; i + 1 < q_grid.size(); ++i)
        if (std::fabs((q_grid[i + 1] - q_grid[i]) - step) > 1e-9 * std::fabs(step))
            throw std::invalid_argument("singularity spectrum: q grid must be uniform");
    if (std::fabs(q_grid.front() + q_grid.back()) > 1e-9)
        throw std::invalid_argument("singularity spectrum: q grid must be symmetric about 0");

    const TauCurve tc = tau(measure, box_sizes, q_grid);
    SingularitySpectrum spec;
    spec.q = tc.q;
    spec.tau = tc.tau;
    spec.tau_stderr = tc.tau_stderr;
    const std::size_t n = tc.q.size();
    spec.alpha.resize(n);
    spec.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            spec.alpha[i] = (tc.tau[1] - tc.tau[0]) / step;
        else if (i == n - 1)
            spec.alpha[i] = (tc.tau[n - 1] - tc.tau[n - 2]) / step;
        else
            spec.alpha[i] = (tc.tau[i + 1] - tc.tau[i - 1]) / (2.0 * step);
        spec.f[i] = tc.q[i] * spec.alpha[i] - tc.tau[i];
    }
    // tau should be concave; count interior violations beyond 3 sigma.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double second = tc.tau[i - 1] - 2.0 * tc.tau[i] + tc.tau[i + 1];
        const double sigma = std::sqrt(tc.tau_stderr[i - 1] * tc.tau_stderr[i - 1] +
                                       4.0 * tc.tau_stderr[i] * tc.tau_stderr[i] +
                                       tc.tau_stderr[i + 1] * tc.tau_stderr[i + 1]);
        if (second > 3.0 * sigma && second > 1e-12) spec.concavity_warnings += 1;
    }
    return spec;
}

std::vector<double> default_q_grid() {
    std::vector<double> grid;
    grid.reserve(65);
    for (int i = -32; i <= 32; ++i) grid.push_back(0.25 * i);
    return grid;
}

}  // namespace fibwg::multifractal
