// dynamics.cpp
#include "fibwg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fibwg/errors.hpp"
#include "fibwg/spectral.hpp"

namespace fibwg::dynamics {

namespace {

// Shared engine: V column-major with dim x dim, eigenvalues ev, initial
// amplitudes c_i in the eigenbasis. Basis indices >= first_emitter are
// emitter rows.
PopulationTrace run_trace(const spectral::EigenDecomposition& dec,
                          const std::vector<double>& coeff, int first_emitter,
                          const std::vector<double>& times) {
    const int dim = dec.dim;
    const int n_emitters = dim - first_emitter;
    PopulationTrace trace;
    trace.times = times;
    trace.emitter_population.assign(n_emitters, std::vector<double>(times.size(), 0.0));
    trace.photon_population.assign(times.size(), 0.0);
    trace.norm_error.assign(times.size(), 0.0);

    std::vector<double> re(dim), im(dim), wr(dim), wi(dim);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const double t = times[ti];
        for (int i = 0; i < dim; ++i) {
            wr[i] = coeff[i] * std::cos(dec.eigenvalues[i] * t);
            wi[i] = -coeff[i] * std::sin(dec.eigenvalues[i] * t);
        }
        std::fill(re.begin(), re.end(), 0.0);
        std::fill(im.begin(), im.end(), 0.0);
        for (int i = 0; i < dim; ++i) {
            const double* col = dec.eigenvectors.data() + static_cast<std::size_t>(i) * dim;
            const double cr = wr[i], ci = wi[i];
            for (int r = 0; r < dim; ++r) {
                re[r] += cr * col[r];
                im[r] += ci * col[r];
            }
        }
        double photon = 0.0;
        for (int r = 0; r < first_emitter; ++r) photon += re[r] * re[r] + im[r] * im[r];
        double total = photon;
        for (int j = 0; j < n_emitters; ++j) {
            const int r = first_emitter + j;
            const double p = re[r] * re[r] + im[r] * im[r];
            trace.emitter_population[j][ti] = p;
            total += p;
        }
        trace.photon_population[ti] = photon;
        trace.norm_error[ti] = std::fabs(std::sqrt(total) - 1.0);
    }
    return trace;
}

}  // namespace

std::vector<double> uniform_times(double t_max, int samples) {
    if (samples < 2 || !(t_max > 0.0))
        throw std::invalid_argument("uniform_times: need t_max > 0 and at least 2 samples");
    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i)
        times[i] = t_max * static_cast<double>(i) / (samples - 1);
    return times;
}

PopulationTrace evolve_exact(const lattice::SingleExcitationHamiltonian& h,
                             const std::vector<double>& initial,
                             const std::vector<double>& times, int dense_cap) {
    if (h.dim() > dense_cap)
        throw Error("evolve_exact: dimension exceeds the dense-solve cap");
    if (initial.size() != static_cast<std::size_t>(h.dim()))
        throw std::invalid_argument("evolve_exact: initial state dimension mismatch");
    double norm2 = 0.0;
    for (double v : initial) norm2 += v * v;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw std::invalid_argument("evolve_exact: initial state must be normalized");

    const auto dec = spectral::eigensolve(h);
    std::vector<double> coeff(h.dim(), 0.0);
    for (int i = 0; i < h.dim(); ++i) {
        const auto v = dec.eigenvector(i);
        double acc = 0.0;
        for (int r = 0; r < h.dim(); ++r) acc += v[r] * initial[r];
        coeff[i] = acc;
    }
    return run_trace(dec, coeff, h.site_count(), times);
}

PopulationTrace evolve_exact(const lattice::SingleExcitationHamiltonian& h,
                             lattice::BasisLabel initial, const std::vector<double>& times,
                             int dense_cap) {
    const int idx = h.index_of(initial);
    if (idx < 0) throw Error("evolve_exact: unknown initial basis label");
    std::vector<double> psi0(h.dim(), 0.0);
    psi0[idx] = 1.0;
    return evolve_exact(h, psi0, times, dense_cap);
}

PopulationTrace evolve_effective(const effective::EffectiveHamiltonian& k, int initial_emitter,
                                 const std::vector<double>& times) {
    if (initial_emitter < 0 || initial_emitter >= k.n_emitters)
        throw std::invalid_argument("evolve_effective: initial emitter out of range");
    const auto dec = spectral::eigensolve_dense(k.coupling, k.n_emitters, false, true);
    std::vector<double> coeff(k.n_emitters, 0.0);
    for (int i = 0; i < k.n_emitters; ++i)
        coeff[i] = dec.eigenvector(i)[initial_emitter];
    return run_trace(dec, coeff, 0, times);
}

DeviationReport compare(const PopulationTrace& exact, const PopulationTrace& effective) {
    if (exact.times != effective.times)
        throw Error("compare: traces use different time grids");
    if (exact.emitter_population.size() != effective.emitter_population.size())
        throw Error("compare: traces cover different emitter rosters");

    DeviationReport report;
    const std::size_t ne = exact.emitter_population.size();
    report.max_deviation.assign(ne, 0.0);
    report.at_time.assign(ne, 0.0);
    for (std::size_t j = 0; j < ne; ++j) {
        for (std::size_t ti = 0; ti < exact.times.size(); ++ti) {
            const double d = std::fabs(exact.emitter_population[j][ti] -
                                       effective.emitter_population[j][ti]);
            if (d > report.max_deviation[j]) {
                report.max_deviation[j] = d;
                report.at_time[j] = exact.times[ti];
            }
        }
        report.overall = std::max(report.overall, report.max_deviation[j]);
    }
    return report;
}

}  // namespace fibwg::dynamics
