#include <doctest.h>

#include <cmath>
#include <vector>

#include "fibwg/dynamics.hpp"
#include "fibwg/effective.hpp"
#include "fibwg/errors.hpp"
#include "fibwg/words.hpp"
#include "test_helpers.hpp"

using namespace fibwg;
using namespace fibwg::words;
using namespace fibwg::dynamics;
using fibwg::lattice::EmitterKind;
using fibwg::lattice::EmitterSpec;
using fibwg::lattice::emitter_label;

namespace {

constexpr double kPi = 3.14159265358979323846;

HoppingSequence fib12(std::size_t len = 300, double tb = 0.2) {
    return {generate_at_least({1, 2}, len), 1.0, tb};
}

HoppingSequence fib11(std::size_t len = 300, double tb = 0.2) {
    return {generate_at_least({1, 1}, len), 1.0, tb};
}

}  // namespace

TEST_CASE("decoupled emitter keeps its excitation") {
    const auto seq = fib12();
    std::vector<EmitterSpec> ems{{EmitterKind::Local, 20, 0, 0.0, 0.0}};
    const auto h = lattice::build_coupled(seq, 64, ems);
    const auto trace = evolve_exact(h, emitter_label(0), uniform_times(50.0, 200));
    for (double p : trace.emitter_population[0]) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact evolution is unitary and bounded") {
    const auto seq = fib12();
    std::vector<EmitterSpec> ems{{EmitterKind::Local, 21, 0, 0.3, 0.0}};
    const auto h = lattice::build_coupled(seq, 80, ems);
    const auto trace = evolve_exact(h, emitter_label(0), uniform_times(200.0, 500));
    for (std::size_t ti = 0; ti < trace.times.size(); ++ti) {
        CHECK(trace.norm_error[ti] <= 1e-10);
        const double p = trace.emitter_population[0][ti];
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-10);
        CHECK(trace.photon_population[ti] + p == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("time reversal returns to the initial state") {
    const auto seq = fib11();
    std::vector<EmitterSpec> ems{{EmitterKind::Giant, 5, 6, 0.1, 0.0}};
    const auto h = lattice::build_coupled(seq, 55, ems);
    const double t = 37.5;
    // evolve the basis state forward, then the result backward, via the
    // spectral amplitudes reconstructed at +t and -t
    const auto dec = spectral::eigensolve(h);
    const int dim = h.dim();
    std::vector<double> psi0(dim, 0.0);
    psi0[h.index_of(emitter_label(0))] = 1.0;
    std::vector<double> c(dim);
    for (int i = 0; i < dim; ++i) {
        double acc = 0.0;
        const auto v = dec.eigenvector(i);
        for (int r = 0; r < dim; ++r) acc += v[r] * psi0[r];
        c[i] = acc;
    }
    // forward then backward: amplitudes pick up exp(-iEt) exp(+iEt) = 1
    std::vector<double> re(dim, 0.0), im(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        const double cr = c[i] * std::cos(dec.eigenvalues[i] * t);
        const double ci = -c[i] * std::sin(dec.eigenvalues[i] * t);
        // backward evolution of the coefficient
        const double br = cr * std::cos(dec.eigenvalues[i] * t) - ci * std::sin(dec.eigenvalues[i] * t);
        const double bi = cr * std::sin(dec.eigenvalues[i] * t) + ci * std::cos(dec.eigenvalues[i] * t);
        const auto v = dec.eigenvector(i);
        for (int r = 0; r < dim; ++r) {
            re[r] += br * v[r];
            im[r] += bi * v[r];
        }
    }
    for (int r = 0; r < dim; ++r) {
        CHECK(std::fabs(re[r] - psi0[r]) <= 1e-9);
        CHECK(std::fabs(im[r]) <= 1e-9);
    }
}

TEST_CASE("single local emitter on a gapped host barely decays") {
    const auto seq = fib12();
    std::vector<EmitterSpec> ems{{EmitterKind::Local, 71, 0, 0.05, 0.0}};
    const auto h = lattice::build_coupled(seq, 144, ems);
    const auto trace = evolve_exact(h, emitter_label(0), uniform_times(1000.0, 2000));
    double worst = 0.0;
    for (double p : trace.emitter_population[0]) worst = std::max(worst, 1.0 - p);
    // frozen from this deterministic pipeline; the bound-state protection
    // keeps the dip at the few-per-mille scale ~ (g/t_a)^2
    CHECK(worst == doctest::Approx(0.00989052865886).epsilon(1e-6));
    CHECK(worst < 4.0 * 0.05 * 0.05);
}

TEST_CASE("effective transfer through an equal-coupling chain") {
    const auto seq = fib11(300);
    std::vector<EmitterSpec> ems;
    for (int n0 : {34, 39, 40}) ems.push_back({EmitterKind::Giant, n0, 6, 0.05, 0.0});
    const auto k = effective::build_effective(seq, 144, ems);
    const double ta = 0.05 * 0.05;
    CHECK(k(0, 1) == doctest::Approx(ta).epsilon(1e-12));
    CHECK(k(1, 2) == doctest::Approx(ta).epsilon(1e-12));
    CHECK(k(0, 2) == 0.0);
    const double t_star = kPi / (std::sqrt(2.0) * ta);
    const auto times = uniform_times(2.0 * t_star, 4001);  // t_star on the grid
    const auto trace = evolve_effective(k, 0, times);
    CHECK(trace.emitter_population[2][2000] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(trace.emitter_population[0][2000] == doctest::Approx(0.0).epsilon(1e-9));
    // the excitation passes through the middle emitter, peaking at half the
    // transfer time with population 1/2
    CHECK(trace.emitter_population[1][1000] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("a vanishing effective pair exchanges only through the mediator") {
    const auto seq = fib12(300);
    std::vector<EmitterSpec> ems;
    for (int n : {10, 13, 15}) ems.push_back({EmitterKind::Local, n, 0, 0.05, 0.0});
    const auto k = effective::build_effective(seq, 144, ems);
    REQUIRE(k(1, 2) == 0.0);
    // start on emitter 2 (site 13): population on emitter 3 (site 15) grows
    // only at fourth order in time, through emitter 1
    const double scale = 0.0025;
    const auto times = uniform_times(0.2 / scale, 21);
    const auto trace = evolve_effective(k, 1, times);
    for (std::size_t ti = 1; ti < times.size(); ++ti) {
        const double x = times[ti] * scale;
        CHECK(trace.emitter_population[2][ti] <= 0.1 * x * x * x * x);
    }
}

TEST_CASE("zero coupling matrix freezes the populations") {
    const auto seq = fib11(300);
    std::vector<EmitterSpec> ems{{EmitterKind::Giant, 2, 2, 0.05, 0.0},
                                 {EmitterKind::Giant, 10, 2, 0.05, 0.0}};
    const auto k = effective::build_effective(seq, 144, ems);
    const auto trace = evolve_effective(k, 0, uniform_times(1e4, 50));
    for (std::size_t ti = 0; ti < trace.times.size(); ++ti) {
        CHECK(trace.emitter_population[0][ti] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(trace.emitter_population[1][ti] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("compare: identical traces, mismatched grids") {
    const auto seq = fib12(300);
    std::vector<EmitterSpec> ems{{EmitterKind::Local, 10, 0, 0.05, 0.0},
                                 {EmitterKind::Local, 13, 0, 0.05, 0.0}};
    const auto k = effective::build_effective(seq, 144, ems);
    const auto times = uniform_times(100.0, 64);
    const auto a = evolve_effective(k, 0, times);
    const auto b = evolve_effective(k, 0, times);
    const auto rep = compare(a, b);
    CHECK(rep.overall == 0.0);
    const auto other = evolve_effective(k, 0, uniform_times(100.0, 65));
    CHECK_THROWS_AS(compare(a, other), Error);
}

TEST_CASE("effective model converges to the exact dynamics as g shrinks") {
    const auto seq = fib12(300);
    double previous = 1e9;
    for (double g : {0.1, 0.05, 0.01}) {
        std::vector<EmitterSpec> ems;
        for (int n : {10, 13, 15}) ems.push_back({EmitterKind::Local, n, 0, g, 0.0});
        const auto k = effective::build_effective(seq, 144, ems);
        const auto h = lattice::build_coupled(seq, 144, ems);
        const double ta = g * g;
        const auto times = uniform_times(20.0 * kPi / (std::sqrt(2.0) * ta), 2000);
        const auto exact = evolve_exact(h, emitter_label(0), times);
        const auto effective_trace = evolve_effective(k.normalized(), 0, times);
        const double dev = compare(exact, effective_trace).overall;
        CHECK(dev < previous);
        previous = dev;
    }
    CHECK(previous < 1e-3);  // g = 0.001 regime is far below this already at 0.01
}

TEST_CASE("vanishing-coupling limit: effective and exact traces agree closely") {
    const auto seq = fib12(300);
    const double g = 1e-3, ta = g * g;
    std::vector<EmitterSpec> ems;
    for (int n : {10, 13, 15}) ems.push_back({EmitterKind::Local, n, 0, g, 0.0});
    const auto k = effective::build_effective(seq, 144, ems);
    const auto h = lattice::build_coupled(seq, 144, ems);
    const auto times = uniform_times(5.0 * kPi / (std::sqrt(2.0) * ta), 800);
    const auto exact = evolve_exact(h, emitter_label(0), times);
    const auto eff = evolve_effective(k.normalized(), 0, times);
    CHECK(compare(exact, eff).overall < 1e-4);
}

namespace {

// Minimum over time of the excitation weight inside the union of emitter
// rows and bound-state cloud sites, starting from the first emitter.
double min_inside_weight(const HoppingSequence& seq, double g) {
    std::vector<EmitterSpec> ems;
    for (int n0 : {34, 39, 40}) ems.push_back({EmitterKind::Giant, n0, 6, g, 0.0});
    const auto h = lattice::build_coupled(seq, 144, ems);
    const auto k = effective::build_effective(seq, 144, ems);
    const auto times = uniform_times(20.0 * kPi / (std::sqrt(2.0) * g * g), 200);
    const auto dec = spectral::eigensolve(h);
    std::vector<bool> inside(h.dim(), false);
    for (int j = 0; j < 3; ++j) {
        inside[h.index_of(emitter_label(j))] = true;
        for (const auto& [site, amp] : k.states[j].photon_amplitudes()) inside[site] = true;
    }
    std::vector<double> c(h.dim());
    std::vector<double> psi0(h.dim(), 0.0);
    psi0[h.index_of(emitter_label(0))] = 1.0;
    for (int i = 0; i < h.dim(); ++i) {
        const auto v = dec.eigenvector(i);
        double acc = 0.0;
        for (int r = 0; r < h.dim(); ++r) acc += v[r] * psi0[r];
        c[i] = acc;
    }
    double worst = 1.0;
    for (double t : times) {
        std::vector<double> re(h.dim(), 0.0), im(h.dim(), 0.0);
        for (int i = 0; i < h.dim(); ++i) {
            const double cr = c[i] * std::cos(dec.eigenvalues[i] * t);
            const double ci = -c[i] * std::sin(dec.eigenvalues[i] * t);
            const auto v = dec.eigenvector(i);
            for (int r = 0; r < h.dim(); ++r) {
                re[r] += cr * v[r];
                im[r] += ci * v[r];
            }
        }
        double weight = 0.0;
        for (int r = 0; r < h.dim(); ++r)
            if (inside[r]) weight += re[r] * re[r] + im[r] * im[r];
        worst = std::min(worst, weight);
    }
    return worst;
}

}  // namespace

TEST_CASE("decoherence-free subspace leakage stays within an O(g^2) envelope") {
    const auto seq = fib11(300);
    // The prefactor is strongly g-dependent: the dressed doublet sweeps
    // through band clusters of the fractal spectrum as g changes (at
    // g = 0.05 it sits right on one, at 0.025 in a gap), so only the
    // uniform quadratic envelope is asserted.
    for (double g : {0.05, 0.025, 0.01}) {
        const double leak = 1.0 - min_inside_weight(seq, g);
        CHECK(leak <= 60.0 * g * g);
    }
}

TEST_CASE("dimension cap is enforced") {
    const auto seq = fib12(300);
    const auto h = lattice::build_coupled(seq, 64, {});
    CHECK_THROWS_AS(evolve_exact(h, std::vector<double>(64, 0.0), uniform_times(1.0, 2), 16),
                    Error);
}

TEST_CASE("initial state validation") {
    const auto seq = fib12(300);
    const auto h = lattice::build_coupled(seq, 32, {});
    std::vector<double> bad(32, 0.5);
    CHECK_THROWS_AS(evolve_exact(h, bad, uniform_times(1.0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(evolve_exact(h, emitter_label(3), uniform_times(1.0, 4)), Error);
}
