// effective.hpp -- photon-mediated emitter-emitter Hamiltonian assembled from
// dressed-state overlaps, and its block-structure analysis.
#pragma once

#include <string>
#include <vector>

#include "fibwg/bound_states.hpp"
#include "fibwg/lattice.hpp"
#include "fibwg/spectral.hpp"
#include "fibwg/words.hpp"

namespace fibwg::effective {

/// Real symmetric emitter-emitter coupling matrix. Rows are ordered by
/// coupling position; `states[j]` is the dressed state that produced column j.
/// The diagonal vanishes exactly on resonance: each cloud has zero amplitude
/// at its own coupling points.
struct EffectiveHamiltonian {
    int n_emitters = 0;
    std::vector<double> coupling;  // row-major
    std::vector<lattice::EmitterSpec> roster;
    std::vector<bound_states::DressedState> states;
    double host_t_a = 1.0;
    double host_t_b = 1.0;
    int host_sites = 0;

    double operator()(int i, int j) const {
        return coupling[static_cast<std::size_t>(i) * n_emitters + j];
    }
    double rho() const { return host_t_b / host_t_a; }

    /// Projection onto the normalized dressed basis: couplings divided by
    /// the norms of the two states involved. The raw matrix carries the
    /// exact g^2/t multiples; this projection is the generator that tracks
    /// the exact emitter dynamics (the difference is O(g^2) per entry and
    /// accumulates over many transfer periods).
    EffectiveHamiltonian normalized() const;
};

/// Couples emitter i to the cloud of emitter j: the matrix element is the
/// overlap of i's coupling footprint (one site for local emitters, both legs
/// for giant ones) with the photonic part of the dressed state seeded by j.
/// Every emitter must individually admit a VDS and sit on resonance.
/// Hermiticity is asserted, not imposed.
EffectiveHamiltonian build_effective(const words::HoppingSequence& seq, int n_sites,
                                     std::vector<lattice::EmitterSpec> emitters,
                                     bool allow_gapless = false);

struct BlockReport {
    struct Block {
        int start = 0;  // first emitter index of the block
        int size = 0;
        char kind = 'B';  // 'A' = coupled quartet, 'B' = isolated emitter
    };
    std::vector<Block> blocks;
    std::string word;  // one letter per block
    bool word_is_fibonacci_factor = false;
    double quartet_t_a = 0.0;  // g^2 / t_a
    double quartet_t_b = 0.0;  // g^2 / t_b
};

/// Decomposes the coupling matrix of a full set of allowed giant positions
/// into quartet blocks and isolated emitters, verifies each quartet
/// entrywise, verifies that consecutive blocks touch through a single
/// g^2/t_a link, and checks the block word against the Fibonacci word.
/// Throws fibwg::Error on an unrecognized block shape.
BlockReport fibonacci_block_structure(const EffectiveHamiltonian& k);

struct EffectiveDos {
    spectral::DosCurve dos;
    std::vector<double> ipr;  // one value per eigenstate of the coupling matrix
};

EffectiveDos effective_dos(const EffectiveHamiltonian& k, int bins);

}  // namespace fibwg::effective
