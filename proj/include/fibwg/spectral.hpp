// spectral.hpp -- dense symmetric eigensolver and spectral observables
// (DOS, integrated DOS, central gap, IPR scaling).
#pragma once

#include <span>
#include <vector>

#include "fibwg/lattice.hpp"

namespace fibwg::spectral {

/// Sorted eigenvalues with (optionally) orthonormal eigenvectors.
/// Eigenvectors are stored column-major: column i pairs with eigenvalue i.
struct EigenDecomposition {
    int dim = 0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // column-major; empty when values-only

    bool has_vectors() const { return !eigenvectors.empty(); }
    std::span<const double> eigenvector(int i) const {
        return {eigenvectors.data() + static_cast<std::size_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }
};

/// Householder reduction to tridiagonal form followed by implicit-shift QL
/// iteration. `matrix` is dense row-major and is consumed. When
/// `assume_tridiagonal` the reduction is skipped and the band is read off
/// directly. Throws fibwg::Error if the QL iteration fails to converge.
EigenDecomposition eigensolve_dense(std::vector<double> matrix, int dim,
                                    bool assume_tridiagonal = false,
                                    bool with_vectors = true);

EigenDecomposition eigensolve(const lattice::SingleExcitationHamiltonian& h);

/// Eigenvalues only; skips the transform accumulation (much faster).
std::vector<double> eigenvalues_of(const lattice::SingleExcitationHamiltonian& h);

struct DosCurve {
    std::vector<double> bin_edges;  // bins + 1 entries
    std::vector<double> counts;     // states per bin
    std::vector<double> density;    // counts / (D * bin width)
    // Exact staircase: fraction of states at or below each sorted eigenvalue.
    std::vector<double> staircase_energy;
    std::vector<double> staircase_value;
};

DosCurve dos(const EigenDecomposition& decomp, int bins);

/// E+ - E- across zero energy; 0 if no state on either side or any level is
/// within the gap floor 1e-8 of zero.
double central_gap(std::span<const double> sorted_eigenvalues);
double central_gap(const EigenDecomposition& decomp);

struct GapCell {
    int p = 0;
    int q = 0;
    double gap = 0.0;
    bool gapped = false;
};

struct GapMapResult {
    std::vector<GapCell> cells;  // row-major over (p, q)
    double threshold = 0.0;      // 10 x median level spacing of the uniform reference near E = 0
    int n_sites = 0;             // even site count used per cell
    double t_b = 0.0;
};

/// Central-gap scan over substitution parameters 1..p_max x 1..q_max at fixed
/// t_b (t_a = 1). Site counts are rounded up to even to avoid the chiral
/// zero mode of odd chains.
GapMapResult gap_map(int p_max, int q_max, double t_b, int n_sites, int threads = 1);

/// Sum of |psi|^4 for a state normalized to 1 within 1e-10.
double ipr(std::span<const double> state);

struct IprScaling {
    std::vector<int> sizes;
    std::vector<double> mean_ipr;  // averaged over all eigenstates
    double slope = 0.0;            // log(mean IPR) vs log(N)
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Eigensolves `base` at each size and fits the log-log IPR scaling.
/// Sizes must be ascending with at least 4 points.
IprScaling ipr_scaling(const lattice::WaveguideSpec& base, const std::vector<int>& sizes,
                       int threads = 1);

}  // namespace fibwg::spectral
