// bound_states.cpp
#include "fibwg/bound_states.hpp"

#include <cmath>
#include <stdexcept>

#include "fibwg/errors.hpp"

namespace fibwg::bound_states {

namespace {

int b_at(const words::HoppingSequence& seq, int i) { return seq.is_b(i) ? 1 : 0; }

}  // namespace

double DressedState::cloud_amplitude(const PhotonTerm& t) const {
    return t.sign * prefactor * std::pow(rho, static_cast<double>(t.exponent));
}

std::vector<std::pair<int, double>> DressedState::photon_amplitudes() const {
    std::vector<std::pair<int, double>> amps;
    amps.reserve(terms.size());
    for (const auto& t : terms) amps.emplace_back(t.site, cloud_amplitude(t) / norm);
    return amps;
}

std::vector<double> DressedState::coupled_vector() const {
    std::vector<double> v(host_sites + 1, 0.0);
    for (const auto& t : terms) v[t.site] = cloud_amplitude(t) / norm;
    v[host_sites] = 1.0 / norm;
    return v;
}

GiantVdsCondition giant_vds_condition(const words::HoppingSequence& seq, int first_site,
                                      int leg_distance) {
    GiantVdsCondition cond;
    cond.first_site = first_site;
    cond.leg_distance = leg_distance;
    cond.exponents = {0};

    const int last_site = static_cast<int>(seq.site_count()) - 1;
    if (leg_distance < 1) throw std::invalid_argument("leg distance must be positive");
    if (first_site < 0 || first_site + leg_distance > last_site)
        throw Error("giant emitter coupling points out of range");

    if (leg_distance % 2 != 0) {
        cond.reason = "an odd number of interior sites is required (even leg distance)";
        return cond;
    }
    const int m = leg_distance / 2;
    long long k = 0;
    for (int n = 1; n < m; ++n) {
        k += b_at(seq, first_site + 2 * n - 1) - b_at(seq, first_site + 2 * n);
        cond.exponents.push_back(k);
    }
    if (m % 2 == 0) {
        cond.reason = "the interior sign alternation closes only for leg distance 2 mod 4";
        return cond;
    }
    const long long lhs = b_at(seq, first_site);
    const long long rhs = k + b_at(seq, first_site + leg_distance - 1);
    if (lhs != rhs) {
        cond.reason = "rho exponents do not match at the two coupling bonds";
        return cond;
    }
    cond.satisfied = true;
    return cond;
}

DressedState giant_vds(const words::HoppingSequence& seq, int first_site, int leg_distance,
                       double g) {
    const auto cond = giant_vds_condition(seq, first_site, leg_distance);
    if (!cond.satisfied)
        throw Error("giant VDS condition unsatisfied: " + cond.reason);

    DressedState state;
    state.emitter = {lattice::EmitterKind::Giant, first_site, leg_distance, g, 0.0};
    state.host_sites = static_cast<int>(seq.site_count());
    state.rho = seq.rho();
    state.prefactor = g / seq.t_a();
    const long long b0 = b_at(seq, first_site);
    for (std::size_t n = 0; n < cond.exponents.size(); ++n) {
        PhotonTerm t;
        t.site = first_site + 2 * static_cast<int>(n) + 1;
        t.sign = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
        t.exponent = cond.exponents[n] - b0;
        state.terms.push_back(t);
    }
    double cloud2 = 0.0;
    for (const auto& t : state.terms) {
        const double a = state.cloud_amplitude(t);
        cloud2 += a * a;
    }
    state.norm = std::sqrt(1.0 + cloud2);
    return state;
}

std::vector<int> allowed_positions(const words::HoppingSequence& seq, int leg_distance,
                                   int n_sites) {
    if (leg_distance < 1) throw std::invalid_argument("leg distance must be positive");
    if (n_sites < 2 || static_cast<std::size_t>(n_sites) > seq.site_count())
        throw std::invalid_argument("allowed_positions: invalid chain length");
    std::vector<int> positions;
    if (leg_distance % 4 != 2) return positions;
    for (int n0 = 0; n0 + leg_distance <= n_sites - 1; ++n0) {
        if (giant_vds_condition(seq, n0, leg_distance).satisfied) positions.push_back(n0);
    }
    return positions;
}

bool is_gapped_word(const words::SymbolWord& word, std::size_t n_hops) {
    for (std::size_t i = 0; i < n_hops; i += 2)
        if (word.is_b(i)) return false;
    return true;
}

DressedState local_vds(const words::HoppingSequence& seq, int site, double g, int n_sites,
                       bool allow_gapless) {
    if (n_sites < 4 || static_cast<std::size_t>(n_sites) > seq.site_count())
        throw std::invalid_argument("local_vds: invalid chain length");
    if (site < 2 || site > n_sites - 3)
        throw Error("local_vds: emitter must sit in the bulk (two sites off each edge)");

    const std::size_t n_hops = static_cast<std::size_t>(n_sites) - 1;
    const bool gapped =
        (n_sites % 2 == 0) && seq.rho() < 1.0 && is_gapped_word(seq.word(), n_hops);
    if (!gapped && !allow_gapless)
        throw Error(
            "local_vds: host is gapless (needs an even chain, t_b < t_a and B bonds only "
            "at odd indices); the formal state would hybridize -- override to construct "
            "it anyway");

    DressedState state;
    state.emitter = {lattice::EmitterKind::Local, site, 0, g, 0.0};
    state.host_sites = n_sites;
    state.rho = seq.rho();
    state.prefactor = g / seq.t_a();

    if (site % 2 == 1) {
        // cloud on even sites to the left, down to site 0
        const int count = (site - 1) / 2 + 1;
        for (int n = count - 1; n >= 0; --n) {
            PhotonTerm t;
            t.site = site - 1 - 2 * n;
            t.sign = (n % 2 == 0) ? -1 : 1;
            t.exponent = static_cast<long long>(seq.b_count(t.site, site - 1));
            state.terms.push_back(t);
        }
    } else {
        // cloud on odd sites to the right, up to the last site reachable
        const int count = (n_sites - 2 - site) / 2 + 1;
        for (int n = 0; n < count; ++n) {
            PhotonTerm t;
            t.site = site + 1 + 2 * n;
            t.sign = (n % 2 == 0) ? -1 : 1;
            t.exponent = static_cast<long long>(seq.b_count(site + 1, t.site));
            state.terms.push_back(t);
        }
    }
    double cloud2 = 0.0;
    for (const auto& t : state.terms) {
        const double a = state.cloud_amplitude(t);
        cloud2 += a * a;
    }
    state.norm = std::sqrt(1.0 + cloud2);
    return state;
}

ResidualReport vds_verify(const DressedState& state,
                          const lattice::SingleExcitationHamiltonian& coupled) {
    if (coupled.site_count() != state.host_sites || coupled.emitter_count() != 1)
        throw std::invalid_argument(
            "vds_verify: Hamiltonian must hold the host chain plus the seeding emitter");

    ResidualReport report;
    report.tolerance = 1e-10 * coupled.frobenius_norm();

    const auto v = state.coupled_vector();
    const int dim = coupled.dim();
    const double delta = state.emitter.delta;
    double res2 = 0.0;
    for (int r = 0; r < dim; ++r) {
        double acc = 0.0;
        for (int c = 0; c < dim; ++c) acc += coupled(r, c) * v[c];
        acc -= delta * v[r];
        res2 += acc * acc;
    }
    report.eigen_residual = std::sqrt(res2);

    // Vacancy characterization: remove the coupling site (for giants, the
    // symmetric combination of the two legs) from the bare waveguide and
    // check the photonic part is annihilated.
    auto waveguide = lattice::vacancy(coupled, {lattice::emitter_label(0)});
    lattice::SingleExcitationHamiltonian vac(1, 0);
    if (state.emitter.kind == lattice::EmitterKind::Giant) {
        const int a = state.emitter.site;
        const int b = state.emitter.site + state.emitter.leg_distance;
        const auto rotated = lattice::rotate_pair(waveguide, a, b);
        vac = lattice::vacancy(rotated, {lattice::site_label(a)});
    } else {
        vac = lattice::vacancy(waveguide, {lattice::site_label(state.emitter.site)});
    }
    // photonic amplitudes indexed by surviving original site labels
    std::vector<double> psi(vac.dim(), 0.0);
    for (const auto& [site, amp] : state.photon_amplitudes()) {
        const int idx = vac.index_of(lattice::site_label(site));
        if (idx >= 0) psi[idx] = amp;
    }
    double vres2 = 0.0;
    for (int r = 0; r < vac.dim(); ++r) {
        double acc = 0.0;
        for (int c = 0; c < vac.dim(); ++c) acc += vac(r, c) * psi[c];
        vres2 += acc * acc;
    }
    report.vacancy_residual = std::sqrt(vres2);

    report.pass = report.eigen_residual <= report.tolerance &&
                  report.vacancy_residual <= 1e-10 * vac.frobenius_norm();
    return report;
}

}  // namespace fibwg::bound_states
