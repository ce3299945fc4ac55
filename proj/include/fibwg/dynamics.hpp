// dynamics.hpp -- single-excitation time evolution by full spectral
// decomposition, exact vs effective.
#pragma once

#include <vector>

#include "fibwg/effective.hpp"
#include "fibwg/lattice.hpp"

namespace fibwg::dynamics {

/// Dense-solve dimension cap for exact evolution.
inline constexpr int kDenseSolveCap = 8192;

struct PopulationTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> emitter_population;  // [emitter][time index]
    std::vector<double> photon_population;                // per time index
    std::vector<double> norm_error;                       // | ||psi(t)|| - 1 |
};

std::vector<double> uniform_times(double t_max, int samples);

/// |psi(t)> = sum_i exp(-i E_i t) <v_i|psi(0)> |v_i> from the full spectral
/// decomposition; unitary to rounding at every sample. The initial state must
/// be normalized.
PopulationTrace evolve_exact(const lattice::SingleExcitationHamiltonian& h,
                             const std::vector<double>& initial,
                             const std::vector<double>& times,
                             int dense_cap = kDenseSolveCap);
PopulationTrace evolve_exact(const lattice::SingleExcitationHamiltonian& h,
                             lattice::BasisLabel initial, const std::vector<double>& times,
                             int dense_cap = kDenseSolveCap);

/// Same evolution on the emitter-only space of the effective coupling matrix.
PopulationTrace evolve_effective(const effective::EffectiveHamiltonian& k, int initial_emitter,
                                 const std::vector<double>& times);

struct DeviationReport {
    std::vector<double> max_deviation;  // per emitter
    std::vector<double> at_time;        // where the maximum occurs
    double overall = 0.0;
};

/// Per-emitter maximum |p_exact - p_effective| over a shared time grid.
DeviationReport compare(const PopulationTrace& exact, const PopulationTrace& effective);

}  // namespace fibwg::dynamics
