// lattice.cpp
#include "fibwg/lattice.hpp"

#include <cmath>
#include <stdexcept>

#include "fibwg/errors.hpp"

namespace fibwg::lattice {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_spec(const WaveguideSpec& spec) {
    if (spec.n_sites < 2) throw std::invalid_argument("waveguide needs at least 2 sites");
    if (!(spec.t_a > 0.0)) throw std::invalid_argument("t_a must be positive");
    if ((spec.model == Model::Ssh || spec.model == Model::Fibonacci) && !(spec.t_b > 0.0))
        throw std::invalid_argument("t_b must be positive");
    if (spec.model == Model::Fibonacci && spec.boundary == Boundary::Periodic)
        throw std::invalid_argument("fibonacci waveguides have effectively open boundaries");
    if (spec.boundary == Boundary::Periodic && spec.n_sites < 3)
        throw std::invalid_argument("periodic boundary requires at least 3 sites");
}

}  // namespace

double aah_rational_beta(int n_sites) {
    long long fkm1 = 1, fk = 1;  // F_1, F_2
    while (fk < n_sites) {
        const long long next = fkm1 + fk;
        fkm1 = fk;
        fk = next;
    }
    if (fk != n_sites)
        throw std::invalid_argument("rational AAH modulation requires a Fibonacci chain length");
    return static_cast<double>(fkm1) / static_cast<double>(fk);
}

SingleExcitationHamiltonian::SingleExcitationHamiltonian(int n_sites, int n_emitters)
    : dim_(n_sites + n_emitters),
      n_sites_(n_sites),
      a_(static_cast<std::size_t>(dim_) * dim_, 0.0) {
    labels_.reserve(dim_);
    for (int n = 0; n < n_sites; ++n) labels_.push_back(site_label(n));
    for (int j = 0; j < n_emitters; ++j) labels_.push_back(emitter_label(j));
}

void SingleExcitationHamiltonian::set_sym(int i, int j, double value) {
    a_[static_cast<std::size_t>(i) * dim_ + j] = value;
    a_[static_cast<std::size_t>(j) * dim_ + i] = value;
}

void SingleExcitationHamiltonian::rescan_tridiagonal() {
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 2; j < dim_; ++j)
            if ((*this)(i, j) != 0.0) {
                tridiagonal_ = false;
                return;
            }
    tridiagonal_ = true;
}

void SingleExcitationHamiltonian::relabel(std::vector<BasisLabel> labels) {
    if (labels.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("relabel: label count must match dimension");
    labels_ = std::move(labels);
}

int SingleExcitationHamiltonian::index_of(BasisLabel l) const {
    for (int i = 0; i < dim_; ++i)
        if (labels_[i] == l) return i;
    return -1;
}

double SingleExcitationHamiltonian::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SingleExcitationHamiltonian::trace() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
    return s;
}

words::HoppingSequence hopping_sequence(const WaveguideSpec& spec) {
    validate_spec(spec);
    const std::size_t n_hops = static_cast<std::size_t>(
        spec.boundary == Boundary::Periodic ? spec.n_sites : spec.n_sites - 1);
    switch (spec.model) {
        case Model::Uniform:
        case Model::Aah:
            return {words::SymbolWord(std::string(n_hops, 'A')), spec.t_a, spec.t_a};
        case Model::Ssh: {
            std::string w(n_hops, 'A');
            for (std::size_t i = 1; i < n_hops; i += 2) w[i] = 'B';
            return {words::SymbolWord(std::move(w)), spec.t_a, spec.t_b};
        }
        case Model::Fibonacci:
            return {words::generate_at_least({spec.p, spec.q}, n_hops), spec.t_a, spec.t_b};
    }
    throw std::invalid_argument("unknown waveguide model");
}

SingleExcitationHamiltonian build_waveguide(const words::HoppingSequence& seq, int n_sites) {
    if (n_sites < 2) throw std::invalid_argument("waveguide needs at least 2 sites");
    if (seq.hop_count() < static_cast<std::size_t>(n_sites - 1))
        throw std::invalid_argument("hopping sequence shorter than requested chain");
    SingleExcitationHamiltonian h(n_sites, 0);
    for (int n = 0; n + 1 < n_sites; ++n) h.set_sym(n, n + 1, seq.hopping(n));
    h.set_tridiagonal(true);
    return h;
}

SingleExcitationHamiltonian build_waveguide(const WaveguideSpec& spec) {
    validate_spec(spec);
    const words::HoppingSequence seq = hopping_sequence(spec);
    SingleExcitationHamiltonian h = build_waveguide(seq, spec.n_sites);
    if (spec.boundary == Boundary::Periodic) {
        h.set_sym(spec.n_sites - 1, 0, seq.hopping(spec.n_sites - 1));
        h.set_tridiagonal(false);
    }
    if (spec.model == Model::Aah) {
        for (int n = 0; n < spec.n_sites; ++n)
            h.set_sym(n, n, 2.0 * spec.v * std::cos(2.0 * kPi * spec.beta * n + spec.phi));
    }
    return h;
}

namespace {

SingleExcitationHamiltonian attach_emitters(SingleExcitationHamiltonian waveguide,
                                            const std::vector<EmitterSpec>& emitters) {
    const int n_sites = waveguide.site_count();
    const int n_e = static_cast<int>(emitters.size());
    for (const auto& em : emitters) {
        if (em.kind == EmitterKind::Local) {
            if (em.site < 0 || em.site >= n_sites)
                throw Error("emitter site out of range");
        } else {
            if (em.leg_distance < 1)
                throw std::invalid_argument("giant emitter needs a positive leg distance");
            if (em.site < 0 || em.site + em.leg_distance > n_sites - 1)
                throw Error("giant emitter leg out of range");
        }
    }

    SingleExcitationHamiltonian h(n_sites, n_e);
    for (int i = 0; i < n_sites; ++i)
        for (int j = i; j < n_sites; ++j)
            if (waveguide(i, j) != 0.0) h.set_sym(i, j, waveguide(i, j));

    for (int j = 0; j < n_e; ++j) {
        const auto& em = emitters[j];
        const int row = n_sites + j;
        h.set_sym(row, em.site, em.g);
        if (em.kind == EmitterKind::Giant) h.set_sym(row, em.site + em.leg_distance, em.g);
        h.set_sym(row, row, em.delta);
        for (int i = 0; i < j; ++i) {
            const auto& other = emitters[i];
            if (other.kind == em.kind && other.site == em.site &&
                (em.kind == EmitterKind::Local || other.leg_distance == em.leg_distance)) {
                h.add_warning("co-located emitters " + std::to_string(i) + " and " +
                              std::to_string(j));
            }
        }
    }
    h.set_tridiagonal(n_e == 0 && waveguide.is_tridiagonal());
    for (const auto& w : waveguide.warnings()) h.add_warning(w);
    return h;
}

}  // namespace

SingleExcitationHamiltonian build_coupled(const WaveguideSpec& spec,
                                          const std::vector<EmitterSpec>& emitters) {
    return attach_emitters(build_waveguide(spec), emitters);
}

SingleExcitationHamiltonian build_coupled(const words::HoppingSequence& seq, int n_sites,
                                          const std::vector<EmitterSpec>& emitters) {
    return attach_emitters(build_waveguide(seq, n_sites), emitters);
}

SingleExcitationHamiltonian vacancy(const SingleExcitationHamiltonian& h,
                                    const std::vector<BasisLabel>& removed) {
    std::vector<bool> drop(h.dim(), false);
    for (const auto& label : removed) {
        const int idx = h.index_of(label);
        if (idx < 0) throw Error("vacancy: unknown basis label");
        drop[idx] = true;
    }
    std::vector<int> keep;
    for (int i = 0; i < h.dim(); ++i)
        if (!drop[i]) keep.push_back(i);

    int sites = 0, ems = 0;
    std::vector<BasisLabel> labels;
    labels.reserve(keep.size());
    for (int i : keep) {
        labels.push_back(h.label(i));
        (h.label(i).kind == BasisLabel::Kind::Site ? sites : ems) += 1;
    }

    SingleExcitationHamiltonian out(sites, ems);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = r; c < keep.size(); ++c)
            out.set_sym(static_cast<int>(r), static_cast<int>(c), h(keep[r], keep[c]));
    out.relabel(std::move(labels));
    out.rescan_tridiagonal();
    return out;
}

SingleExcitationHamiltonian rotate_pair(const SingleExcitationHamiltonian& h, int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= h.dim() || b >= h.dim())
        throw std::invalid_argument("rotate_pair: invalid index pair");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    SingleExcitationHamiltonian out = h;
    for (int j = 0; j < h.dim(); ++j) {
        if (j == a || j == b) continue;
        out.set_sym(a, j, (h(a, j) + h(b, j)) * inv_sqrt2);
        out.set_sym(b, j, (h(a, j) - h(b, j)) * inv_sqrt2);
    }
    out.set_sym(a, a, 0.5 * (h(a, a) + h(b, b)) + h(a, b));
    out.set_sym(b, b, 0.5 * (h(a, a) + h(b, b)) - h(a, b));
    out.set_sym(a, b, 0.5 * (h(a, a) - h(b, b)));
    out.rescan_tridiagonal();
    return out;
}

}  // namespace fibwg::lattice
