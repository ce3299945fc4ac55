// effective.cpp
#include "fibwg/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fibwg/errors.hpp"

namespace fibwg::effective {

namespace {

// Overlap of emitter i's coupling footprint with the raw (unit atomic
// amplitude) cloud of state j.
double footprint_overlap(const lattice::EmitterSpec& probe,
                         const bound_states::DressedState& state) {
    double acc = 0.0;
    for (const auto& t : state.terms) {
        if (t.site == probe.site) acc += state.cloud_amplitude(t);
        if (probe.kind == lattice::EmitterKind::Giant &&
            t.site == probe.site + probe.leg_distance)
            acc += state.cloud_amplitude(t);
    }
    return acc;
}

}  // namespace

EffectiveHamiltonian EffectiveHamiltonian::normalized() const {
    EffectiveHamiltonian out = *this;
    for (int i = 0; i < n_emitters; ++i)
        for (int j = 0; j < n_emitters; ++j)
            out.coupling[static_cast<std::size_t>(i) * n_emitters + j] /=
                states[i].norm * states[j].norm;
    return out;
}

EffectiveHamiltonian build_effective(const words::HoppingSequence& seq, int n_sites,
                                     std::vector<lattice::EmitterSpec> emitters,
                                     bool allow_gapless) {
    if (emitters.empty()) throw std::invalid_argument("build_effective: no emitters");
    for (const auto& em : emitters)
        if (em.delta != 0.0)
            throw std::invalid_argument("build_effective: dressed-state couplings hold on resonance");

    std::stable_sort(emitters.begin(), emitters.end(),
                     [](const auto& a, const auto& b) { return a.site < b.site; });

    EffectiveHamiltonian k;
    k.n_emitters = static_cast<int>(emitters.size());
    k.roster = emitters;
    k.host_t_a = seq.t_a();
    k.host_t_b = seq.t_b();
    k.host_sites = n_sites;
    k.states.reserve(emitters.size());
    for (const auto& em : emitters) {
        if (em.kind == lattice::EmitterKind::Giant)
            k.states.push_back(bound_states::giant_vds(seq, em.site, em.leg_distance, em.g));
        else
            k.states.push_back(bound_states::local_vds(seq, em.site, em.g, n_sites, allow_gapless));
    }

    const int ne = k.n_emitters;
    k.coupling.assign(static_cast<std::size_t>(ne) * ne, 0.0);
    for (int i = 0; i < ne; ++i) {
        for (int j = 0; j < ne; ++j) {
            if (i == j) continue;  // clouds vanish at their own coupling points
            k.coupling[static_cast<std::size_t>(i) * ne + j] =
                -emitters[i].g * footprint_overlap(emitters[i], k.states[j]);
        }
    }

    // Hermiticity must come out of the overlaps themselves.
    double scale = 0.0;
    for (double v : k.coupling) scale = std::max(scale, std::fabs(v));
    scale = std::max(scale, 1.0);
    for (int i = 0; i < ne; ++i)
        for (int j = i + 1; j < ne; ++j)
            if (std::fabs(k(i, j) - k(j, i)) > 1e-12 * scale)
                throw Error("build_effective: coupling matrix failed the Hermiticity check");
    return k;
}

BlockReport fibonacci_block_structure(const EffectiveHamiltonian& k) {
    const int ne = k.n_emitters;
    if (ne == 0) throw std::invalid_argument("fibonacci_block_structure: empty matrix");
    const double g = k.roster.front().g;
    for (const auto& em : k.roster) {
        if (em.kind != lattice::EmitterKind::Giant)
            throw Error("fibonacci_block_structure: expects a giant-emitter roster");
        if (em.g != g)
            throw Error("fibonacci_block_structure: expects a uniform coupling strength");
    }

    BlockReport report;
    report.quartet_t_a = g * g / k.host_t_a;
    report.quartet_t_b = g * g / k.host_t_b;
    const double ta = report.quartet_t_a;
    const double tb = report.quartet_t_b;
    const double tc = -k.rho() * ta;
    const double tol = 1e-12 * ta;

    // Cut between consecutive emitters wherever exactly one coupling crosses
    // and it is the nearest-neighbor one; isolated groups (no crossing at
    // all) are cuts too.
    std::vector<int> cut_after;
    for (int i = 0; i + 1 < ne; ++i) {
        int crossing = 0;
        bool only_adjacent = true;
        for (int a = 0; a <= i; ++a)
            for (int b = i + 1; b < ne; ++b)
                if (std::fabs(k(a, b)) > tol) {
                    ++crossing;
                    if (!(a == i && b == i + 1)) only_adjacent = false;
                }
        if (crossing == 0) {
            cut_after.push_back(i);
        } else if (crossing == 1 && only_adjacent) {
            if (std::fabs(std::fabs(k(i, i + 1)) - ta) > tol)
                throw Error("fibonacci_block_structure: inter-block link is not g^2/t_a");
            cut_after.push_back(i);
        }
    }

    int start = 0;
    std::size_t next_cut = 0;
    while (start < ne) {
        int stop = ne - 1;
        if (next_cut < cut_after.size()) {
            stop = cut_after[next_cut];
            ++next_cut;
        }
        const int size = stop - start + 1;
        BlockReport::Block block;
        block.start = start;
        block.size = size;
        if (size == 1) {
            block.kind = 'B';
        } else if (size == 4) {
            const double want[4][4] = {{0.0, ta, 0.0, tc},
                                       {ta, 0.0, tb, 0.0},
                                       {0.0, tb, 0.0, ta},
                                       {tc, 0.0, ta, 0.0}};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    if (std::fabs(k(start + r, start + c) - want[r][c]) > tol)
                        throw Error("fibonacci_block_structure: quartet does not match the "
                                    "expected coupling pattern");
            block.kind = 'A';
        } else {
            throw Error("fibonacci_block_structure: unrecognized block shape of size " +
                        std::to_string(size));
        }
        report.blocks.push_back(block);
        report.word.push_back(block.kind);
        start = stop + 1;
    }

    // The block word must alternate like the Fibonacci word itself:
    // check it occurs as a factor of a long reference word.
    const std::size_t need = std::max<std::size_t>(4096, 8 * report.word.size());
    const auto reference = words::generate_at_least({1, 1}, need);
    report.word_is_fibonacci_factor =
        report.word.size() <= 1 ||
        reference.symbols.find(report.word) != std::string::npos;
    return report;
}

EffectiveDos effective_dos(const EffectiveHamiltonian& k, int bins) {
    EffectiveDos out;
    const auto dec = spectral::eigensolve_dense(k.coupling, k.n_emitters, false, true);
    out.dos = spectral::dos(dec, bins);
    out.ipr.reserve(k.n_emitters);
    for (int i = 0; i < k.n_emitters; ++i) out.ipr.push_back(spectral::ipr(dec.eigenvector(i)));
    return out;
}

}  // namespace fibwg::effective
