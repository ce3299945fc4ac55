// bound_states.hpp -- closed-form vacancy-like dressed states (VDS): exact
// zero-energy atom-photon eigenstates seeded by giant emitters on Fibonacci
// hosts and by local emitters on gapped hosts.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fibwg/lattice.hpp"
#include "fibwg/words.hpp"

namespace fibwg::bound_states {

/// One photonic amplitude in exact ledger form:
/// value = sign * prefactor * rho^exponent, with prefactor = g / t_a.
/// Keeping signs and integer exponents (rather than floats) makes existence
/// checks and position maps exact, independent of the numeric value of rho.
struct PhotonTerm {
    int site = 0;
    int sign = 1;
    long long exponent = 0;
};

/// A dressed state |e> + cloud at unit atomic amplitude, with the
/// normalization kept separately: N = sqrt(1 + |cloud|^2) ~ 1 + O(g^2).
struct DressedState {
    lattice::EmitterSpec emitter;   // the seeding emitter
    int host_sites = 0;
    double rho = 1.0;
    double prefactor = 0.0;         // g / t_a
    std::vector<PhotonTerm> terms;  // ascending site order
    double norm = 1.0;

    double atomic_amplitude() const { return 1.0 / norm; }
    /// Raw amplitude of one term (atomic amplitude 1).
    double cloud_amplitude(const PhotonTerm& t) const;
    /// (site, amplitude) pairs of the normalized photonic part.
    std::vector<std::pair<int, double>> photon_amplitudes() const;
    /// Normalized state on the coupled basis {sites 0..N-1, emitter}.
    std::vector<double> coupled_vector() const;
};

/// Exact existence check for a giant-emitter VDS with coupling points at
/// first_site and first_site + leg_distance, on resonance. Evaluated purely
/// in integer arithmetic: the interior amplitudes are rho powers whose
/// exponents ladder up from the hopping word, and the condition reduces to a
/// parity requirement on leg_distance plus equality of rho exponents at the
/// two coupling bonds. No floating-point tolerance is involved.
struct GiantVdsCondition {
    int first_site = 0;
    int leg_distance = 0;
    bool satisfied = false;
    std::string reason;                // set when unsatisfied
    std::vector<long long> exponents;  // k_n: interior amplitude (-1)^{n+1} rho^{k_n}, k_0 = 0
};

GiantVdsCondition giant_vds_condition(const words::HoppingSequence& seq, int first_site,
                                      int leg_distance);

/// The dressed state itself; requires the condition to be satisfied. The
/// photonic cloud lives strictly between the coupling points, on sites
/// first_site + 1, + 3, ..., and vanishes at both coupling points.
DressedState giant_vds(const words::HoppingSequence& seq, int first_site, int leg_distance,
                       double g);

/// All first coupling points on a chain of n_sites admitting a giant VDS at
/// the given leg distance. Empty unless leg_distance = 2 (mod 4). The result
/// depends only on the word, not on the value of rho.
std::vector<int> allowed_positions(const words::HoppingSequence& seq, int leg_distance,
                                   int n_sites);

/// True when the first n_hops bonds carry 'B' only at odd indices -- the
/// structural property behind the central gap (p odd, q even) and behind the
/// local closed forms below.
bool is_gapped_word(const words::SymbolWord& word, std::size_t n_hops);

/// Local-emitter VDS at site n_j of a gapped host (even site count, t_b < t_a,
/// B bonds only at odd indices). The cloud is chiral: an odd-site emitter
/// dresses even sites to its left, an even-site emitter odd sites to its
/// right, with amplitudes rho^beta counting the t_B bonds crossed. For a
/// gapless host the formal state hybridizes with the band and construction is
/// refused unless allow_gapless is set.
DressedState local_vds(const words::HoppingSequence& seq, int site, double g, int n_sites,
                       bool allow_gapless = false);

struct ResidualReport {
    double eigen_residual = 0.0;    // ||(H - delta I) |Psi>||_2
    double tolerance = 0.0;         // 1e-10 ||H||_F
    double vacancy_residual = 0.0;  // photonic part under the vacancy Hamiltonian
    bool pass = false;
};

/// Verifies the eigenstate property on the coupled Hamiltonian (built with
/// the seeding emitter only) and the vacancy characterization: the photonic
/// part must be a zero mode of the waveguide with the coupling site removed
/// (for giants, the symmetric combination of the two coupling sites).
ResidualReport vds_verify(const DressedState& state,
                          const lattice::SingleExcitationHamiltonian& coupled);

}  // namespace fibwg::bound_states
