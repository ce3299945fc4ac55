// lattice.hpp -- single-excitation Hamiltonians for waveguide models and
// their emitter-coupled extensions.
#pragma once

#include <string>
#include <vector>

#include "fibwg/words.hpp"

namespace fibwg::lattice {

enum class Model { Uniform, Ssh, Fibonacci, Aah };
enum class Boundary { Open, Periodic };

/// (sqrt(5) - 1) / 2, the canonical irrational modulation for the AAH model.
inline constexpr double kInverseGoldenMean = 0.61803398874989484820;

/// Rational AAH modulation F_{k-1}/F_k for a chain whose length equals the
/// Fibonacci number F_k; throws std::invalid_argument otherwise. Useful for
/// commensurate periodic boundaries.
double aah_rational_beta(int n_sites);

/// All energies are in units of t_a (conventionally 1). The rotating frame
/// at the bare resonator frequency is used throughout: site diagonals are 0
/// except for the AAH cosine modulation.
struct WaveguideSpec {
    Model model = Model::Uniform;
    int n_sites = 2;
    double t_a = 1.0;
    double t_b = 1.0;
    Boundary boundary = Boundary::Open;
    // Fibonacci substitution parameters
    int p = 1;
    int q = 1;
    // AAH parameters: diagonal 2 v cos(2 pi beta n + phi), hopping t_a
    double v = 0.0;
    double beta = kInverseGoldenMean;
    double phi = 0.0;
};

enum class EmitterKind { Local, Giant };

/// A two-level emitter. Local emitters couple with strength g to one site;
/// giant emitters couple with g to the two sites `site` and `site + leg_distance`
/// (two-legged only). `delta` is the detuning from the resonator frequency.
struct EmitterSpec {
    EmitterKind kind = EmitterKind::Local;
    int site = 0;
    int leg_distance = 0;  // giant only
    double g = 0.0;
    double delta = 0.0;
};

struct BasisLabel {
    enum class Kind { Site, Emitter };
    Kind kind = Kind::Site;
    int index = 0;
    bool operator==(const BasisLabel&) const = default;
};

inline BasisLabel site_label(int n) { return {BasisLabel::Kind::Site, n}; }
inline BasisLabel emitter_label(int j) { return {BasisLabel::Kind::Emitter, j}; }

/// Real symmetric matrix on the basis {resonator sites} + {emitter excited
/// states}. Dense row-major storage; `is_tridiagonal` marks bandwidth <= 1
/// so eigensolves can skip the Householder reduction.
class SingleExcitationHamiltonian {
public:
    SingleExcitationHamiltonian(int n_sites, int n_emitters);

    int dim() const { return dim_; }
    int site_count() const { return n_sites_; }
    int emitter_count() const { return dim_ - n_sites_; }

    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    /// Sets (i, j) and (j, i); builder use.
    void set_sym(int i, int j, double value);

    bool is_tridiagonal() const { return tridiagonal_; }
    void set_tridiagonal(bool flag) { tridiagonal_ = flag; }
    /// Recompute the flag from the actual sparsity pattern.
    void rescan_tridiagonal();

    BasisLabel label(int i) const { return labels_[i]; }
    const std::vector<BasisLabel>& labels() const { return labels_; }
    void relabel(std::vector<BasisLabel> labels);
    /// Flat index of a label, or -1 if absent.
    int index_of(BasisLabel l) const;

    double frobenius_norm() const;
    double trace() const;
    const std::vector<double>& data() const { return a_; }

    const std::vector<std::string>& warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

private:
    int dim_;
    int n_sites_;
    bool tridiagonal_ = false;
    std::vector<double> a_;
    std::vector<BasisLabel> labels_;
    std::vector<std::string> warnings_;
};

/// The hopping word and energies realized by a spec (open boundary: N - 1
/// bonds; periodic: N bonds, the last being the wrap-around).
words::HoppingSequence hopping_sequence(const WaveguideSpec& spec);

SingleExcitationHamiltonian build_waveguide(const WaveguideSpec& spec);

/// Bare chain of `n_sites` with bonds taken from the first n_sites - 1
/// hoppings of `seq` (open boundary).
SingleExcitationHamiltonian build_waveguide(const words::HoppingSequence& seq, int n_sites);

SingleExcitationHamiltonian build_coupled(const WaveguideSpec& spec,
                                          const std::vector<EmitterSpec>& emitters);
SingleExcitationHamiltonian build_coupled(const words::HoppingSequence& seq, int n_sites,
                                          const std::vector<EmitterSpec>& emitters);

/// Copy of `h` with the rows/columns of the given labels removed. Surviving
/// rows keep their original labels.
SingleExcitationHamiltonian vacancy(const SingleExcitationHamiltonian& h,
                                    const std::vector<BasisLabel>& removed);

/// Basis rotation replacing rows a, b by (a + b)/sqrt(2) and (a - b)/sqrt(2).
/// Combined with `vacancy` this removes the effective site seen by a giant
/// emitter.
SingleExcitationHamiltonian rotate_pair(const SingleExcitationHamiltonian& h, int a, int b);

}  // namespace fibwg::lattice
