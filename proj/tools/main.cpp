// fibwg command-line tool: deterministic, scriptable access to every
// pipeline. All outputs are built in memory and written in one shot, so a
// failing run leaves no partial files.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fibwg/bound_states.hpp"
#include "fibwg/dynamics.hpp"
#include "fibwg/effective.hpp"
#include "fibwg/errors.hpp"
#include "fibwg/lattice.hpp"
#include "fibwg/multifractal.hpp"
#include "fibwg/spectral.hpp"
#include "fibwg/words.hpp"

using json = nlohmann::json;
using namespace fibwg;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
}

void summary(const std::string& line) { std::cerr << line << "\n"; }

struct ModelOptions {
    std::string model = "uniform";
    int n_sites = 64;
    double t_a = 1.0;
    double t_b = 1.0;
    std::string boundary = "open";
    int p = 1;
    int q = 1;
    double v = 0.0;
    double beta = lattice::kInverseGoldenMean;
    bool beta_rational = false;
    double phi = 0.0;

    lattice::WaveguideSpec spec() const {
        lattice::WaveguideSpec s;
        if (model == "uniform") s.model = lattice::Model::Uniform;
        else if (model == "ssh") s.model = lattice::Model::Ssh;
        else if (model == "fibonacci") s.model = lattice::Model::Fibonacci;
        else if (model == "aah") s.model = lattice::Model::Aah;
        else throw std::invalid_argument("unknown model: " + model);
        s.n_sites = n_sites;
        s.t_a = t_a;
        s.t_b = t_b;
        s.boundary = boundary == "periodic" ? lattice::Boundary::Periodic
                                            : lattice::Boundary::Open;
        s.p = p;
        s.q = q;
        s.v = v;
        s.beta = beta_rational ? lattice::aah_rational_beta(n_sites) : beta;
        s.phi = phi;
        return s;
    }
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--model", m.model, "uniform, ssh, fibonacci or aah");
    cmd->add_option("--N", m.n_sites, "number of resonators");
    cmd->add_option("--tA", m.t_a, "hopping on A bonds (energy unit)");
    cmd->add_option("--tB", m.t_b, "hopping on B bonds");
    cmd->add_option("--boundary", m.boundary, "open or periodic");
    cmd->add_option("--p", m.p, "substitution parameter p");
    cmd->add_option("--q", m.q, "substitution parameter q");
    cmd->add_option("--V", m.v, "AAH modulation strength");
    cmd->add_option("--beta", m.beta, "AAH modulation frequency");
    cmd->add_flag("--beta-rational", m.beta_rational,
                  "use the Fibonacci rational approximant F_{k-1}/F_k for beta");
    cmd->add_option("--phi", m.phi, "AAH phase offset");
}

std::vector<lattice::EmitterSpec> parse_emitters(const std::string& text) {
    std::vector<lattice::EmitterSpec> out;
    const json j = json::parse(text);
    for (const auto& e : j) {
        lattice::EmitterSpec em;
        const std::string kind = e.at("kind");
        em.kind = kind == "giant" ? lattice::EmitterKind::Giant : lattice::EmitterKind::Local;
        em.site = e.at("n");
        em.leg_distance = e.value("d", 0);
        em.g = e.at("g");
        em.delta = e.value("delta", 0.0);
        out.push_back(em);
    }
    return out;
}

words::HoppingSequence host_sequence(int p, int q, int n_sites, double t_a, double t_b) {
    return {words::generate_at_least({p, q}, static_cast<std::size_t>(n_sites) - 1), t_a, t_b};
}

std::vector<lattice::EmitterSpec> roster_from_positions(const std::string& kind,
                                                        const std::vector<int>& positions,
                                                        int d, double g) {
    std::vector<lattice::EmitterSpec> ems;
    for (int n : positions) {
        if (kind == "giant")
            ems.push_back({lattice::EmitterKind::Giant, n, d, g, 0.0});
        else
            ems.push_back({lattice::EmitterKind::Local, n, 0, g, 0.0});
    }
    return ems;
}

// ---------------------------------------------------------------- sequence
struct SequenceArgs {
    int p = 1, q = 1;
    int k = -1;
    int length = 0;
    int census = 0;
    std::string format = "text";
    std::string output = "-";
};

int run_sequence(const SequenceArgs& a) {
    const words::SubstitutionRule rule{a.p, a.q};
    std::ostringstream text;
    json j;
    if (a.census > 0) {
        const auto census = words::stable_census(rule, static_cast<std::size_t>(a.census));
        if (a.format == "json") {
            j = {{"schema", "fibwg.sequence.census.v1"},
                 {"p", a.p},
                 {"q", a.q},
                 {"length", a.census},
                 {"stable", census.stable},
                 {"generation", census.generation},
                 {"factors", census.factors}};
        } else {
            for (const auto& f : census.factors) text << f << "\n";
            text << "# stable=" << (census.stable ? "true" : "false")
                 << " generation=" << census.generation << "\n";
        }
        summary("sequence: census of length " + std::to_string(a.census) + " has " +
                std::to_string(census.factors.size()) + " factors");
    } else {
        words::SymbolWord word;
        if (a.k >= 0)
            word = words::generate(rule, a.k);
        else if (a.length > 0)
            word = words::generate_at_least(rule, static_cast<std::size_t>(a.length));
        else
            throw std::invalid_argument("sequence: give --k, --length or --census");
        if (a.format == "json") {
            j = {{"schema", "fibwg.sequence.v1"}, {"p", a.p},      {"q", a.q},
                 {"generation", word.generation}, {"length", word.size()},
                 {"word", word.symbols}};
        } else {
            text << word.symbols << "\n";
        }
        summary("sequence: (" + std::to_string(a.p) + "," + std::to_string(a.q) +
                ") word of length " + std::to_string(word.size()));
    }
    write_output(a.output, a.format == "json" ? j.dump(2) + "\n" : text.str());
    return 0;
}

// ---------------------------------------------------------------- spectrum
struct SpectrumArgs {
    ModelOptions model;
    int bins = 200;
    std::string dos_file;
    std::string matrix_file;
    std::string emitters_json;
    std::string format = "csv";
    std::string output = "-";
};

int run_spectrum(const SpectrumArgs& a) {
    auto h = a.emitters_json.empty()
                 ? lattice::build_waveguide(a.model.spec())
                 : lattice::build_coupled(a.model.spec(), parse_emitters(a.emitters_json));
    for (const auto& w : h.warnings()) summary("warning: " + w);
    if (!a.matrix_file.empty()) {
        std::ostringstream csv;
        for (int i = 0; i < h.dim(); ++i) {
            for (int j = 0; j < h.dim(); ++j) {
                if (j) csv << ",";
                csv << fmt(h(i, j));
            }
            csv << "\n";
        }
        write_output(a.matrix_file, csv.str());
    }
    const auto dec = spectral::eigensolve(h);
    const auto curve = spectral::dos(dec, a.bins);

    std::string main_out;
    if (a.format == "json") {
        json j = {{"schema", "fibwg.spectrum.v1"},
                  {"dim", dec.dim},
                  {"eigenvalues", dec.eigenvalues},
                  {"integrated", curve.staircase_value},
                  {"dos_edges", curve.bin_edges},
                  {"dos_density", curve.density},
                  {"central_gap", spectral::central_gap(dec)}};
        main_out = j.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "index,energy,integrated\n";
        for (int i = 0; i < dec.dim; ++i)
            csv << i << "," << fmt(curve.staircase_energy[i]) << ","
                << fmt(curve.staircase_value[i]) << "\n";
        main_out = csv.str();
    }
    write_output(a.output, main_out);
    if (!a.dos_file.empty()) {
        std::ostringstream csv;
        csv << "bin_lo,bin_hi,density\n";
        for (std::size_t b = 0; b < curve.density.size(); ++b)
            csv << fmt(curve.bin_edges[b]) << "," << fmt(curve.bin_edges[b + 1]) << ","
                << fmt(curve.density[b]) << "\n";
        write_output(a.dos_file, csv.str());
    }
    summary("spectrum: " + std::to_string(dec.dim) + " levels, central gap " +
            fmt(spectral::central_gap(dec)));
    return 0;
}

// ---------------------------------------------------------------- gapmap
struct GapmapArgs {
    int pmax = 6, qmax = 6;
    double t_b = 0.2;
    int n_sites = 600;
    int threads = 1;
    std::string format = "csv";
    std::string output = "-";
};

int run_gapmap(const GapmapArgs& a) {
    const auto result = spectral::gap_map(a.pmax, a.qmax, a.t_b, a.n_sites, a.threads);
    std::string out;
    if (a.format == "json") {
        json cells = json::array();
        for (const auto& c : result.cells)
            cells.push_back({{"p", c.p}, {"q", c.q}, {"gap", c.gap}, {"gapped", c.gapped}});
        json j = {{"schema", "fibwg.gapmap.v1"},
                  {"n_sites", result.n_sites},
                  {"t_b", result.t_b},
                  {"threshold", result.threshold},
                  {"cells", cells}};
        out = j.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "p,q,gap,gapped\n";
        for (const auto& c : result.cells)
            csv << c.p << "," << c.q << "," << fmt(c.gap) << "," << (c.gapped ? 1 : 0) << "\n";
        out = csv.str();
    }
    write_output(a.output, out);
    summary("gapmap: " + std::to_string(result.cells.size()) + " cells at N = " +
            std::to_string(result.n_sites) + ", threshold " + fmt(result.threshold));
    return 0;
}

// ---------------------------------------------------------------- ipr
struct IprArgs {
    ModelOptions model;
    std::vector<int> sizes;
    int threads = 1;
    std::string format = "csv";
    std::string output = "-";
};

int run_ipr(const IprArgs& a) {
    const auto fit = spectral::ipr_scaling(a.model.spec(), a.sizes, a.threads);
    std::string out;
    if (a.format == "json") {
        json j = {{"schema", "fibwg.ipr.v1"},      {"sizes", fit.sizes},
                  {"mean_ipr", fit.mean_ipr},      {"slope", fit.slope},
                  {"intercept", fit.intercept},    {"slope_stderr", fit.slope_stderr}};
        out = j.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "N,mean_ipr\n";
        for (std::size_t i = 0; i < fit.sizes.size(); ++i)
            csv << fit.sizes[i] << "," << fmt(fit.mean_ipr[i]) << "\n";
        out = csv.str();
    }
    write_output(a.output, out);
    summary("ipr: fitted slope " + fmt(fit.slope) + " +- " + fmt(fit.slope_stderr));
    return 0;
}

// ---------------------------------------------------------------- multifractal
struct MultifractalArgs {
    ModelOptions model;
    int state_index = -1;
    int site_state = -1;
    double q_max = 8.0;
    double q_step = 0.25;
    std::string format = "csv";
    std::string output = "-";
};

int run_multifractal(const MultifractalArgs& a) {
    const auto spec = a.model.spec();
    std::vector<double> state;
    if (a.site_state >= 0) {
        if (a.site_state >= spec.n_sites)
            throw std::invalid_argument("multifractal: site state out of range");
        state.assign(spec.n_sites, 0.0);
        state[a.site_state] = 1.0;
    } else {
        if (a.state_index < 0 || a.state_index >= spec.n_sites)
            throw std::invalid_argument("multifractal: state index out of range");
        const auto dec = spectral::eigensolve(lattice::build_waveguide(spec));
        const auto v = dec.eigenvector(a.state_index);
        state.assign(v.begin(), v.end());
    }
    const auto measure = multifractal::ProbabilityMeasure::from_state(state);
    std::vector<double> q_grid;
    for (double q = -a.q_max; q <= a.q_max + 1e-12; q += a.q_step) q_grid.push_back(q);
    const auto ss = multifractal::singularity_spectrum(
        measure, multifractal::dyadic_box_sizes(spec.n_sites), q_grid);

    std::string out;
    if (a.format == "json") {
        json j = {{"schema", "fibwg.multifractal.v1"},
                  {"q", ss.q},
                  {"tau", ss.tau},
                  {"tau_stderr", ss.tau_stderr},
                  {"alpha", ss.alpha},
                  {"f", ss.f},
                  {"concavity_warnings", ss.concavity_warnings}};
        out = j.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "q,tau,tau_stderr,alpha,f\n";
        for (std::size_t i = 0; i < ss.q.size(); ++i)
            csv << fmt(ss.q[i]) << "," << fmt(ss.tau[i]) << "," << fmt(ss.tau_stderr[i]) << ","
                << fmt(ss.alpha[i]) << "," << fmt(ss.f[i]) << "\n";
        out = csv.str();
    }
    write_output(a.output, out);
    if (ss.concavity_warnings > 0)
        summary("warning: " + std::to_string(ss.concavity_warnings) +
                " non-concave tau points beyond 3 sigma");
    summary("multifractal: alpha in [" + fmt(*std::min_element(ss.alpha.begin(), ss.alpha.end())) +
            ", " + fmt(*std::max_element(ss.alpha.begin(), ss.alpha.end())) + "]");
    return 0;
}

// ---------------------------------------------------------------- vds
struct VdsArgs {
    std::string kind = "giant";
    int p = 1, q = 1;
    int n_sites = 233;
    double t_a = 1.0, t_b = 0.2;
    double g = 0.05;
    int n0 = 5;
    int d = 6;
    int site = 10;
    bool allow_gapless = false;
    std::string format = "json";
    std::string output = "-";
};

int run_vds(const VdsArgs& a) {
    const auto seq = host_sequence(a.p, a.q, a.n_sites, a.t_a, a.t_b);
    bound_states::DressedState state;
    if (a.kind == "giant")
        state = bound_states::giant_vds(seq, a.n0, a.d, a.g);
    else if (a.kind == "local")
        state = bound_states::local_vds(seq, a.site, a.g, a.n_sites, a.allow_gapless);
    else
        throw std::invalid_argument("vds: kind must be giant or local");

    const auto h = lattice::build_coupled(seq, a.n_sites, {state.emitter});
    const auto report = bound_states::vds_verify(state, h);

    std::string out;
    if (a.format == "json") {
        json amps = json::array();
        for (const auto& [site, value] : state.photon_amplitudes())
            amps.push_back({{"site", site}, {"value", value}});
        json j = {{"schema", "fibwg.vds.v1"},
                  {"kind", a.kind},
                  {"epsilon", state.atomic_amplitude()},
                  {"amplitudes", amps},
                  {"norm", state.norm},
                  {"residual", report.eigen_residual},
                  {"vacancy_residual", report.vacancy_residual},
                  {"pass", report.pass}};
        out = j.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "site,value\n";
        for (const auto& [site, value] : state.photon_amplitudes())
            csv << site << "," << fmt(value) << "\n";
        out = csv.str();
    }
    write_output(a.output, out);
    summary("vds: " + std::to_string(state.terms.size()) + " photonic amplitudes, residual " +
            fmt(report.eigen_residual) + (report.pass ? " (pass)" : " (fail)"));
    return 0;
}

// ---------------------------------------------------------------- vds-map
struct VdsMapArgs {
    int p = 1, q = 1;
    int n_sites = 233;
    int dmax = 14;
    std::string format = "csv";
    std::string output = "-";
};

int run_vds_map(const VdsMapArgs& a) {
    const auto seq = host_sequence(a.p, a.q, a.n_sites, 1.0, 0.5);
    std::ostringstream csv;
    csv << "d,n0,allowed\n";
    json rows = json::array();
    for (int d = 1; d <= a.dmax; ++d) {
        std::vector<bool> allowed(a.n_sites, false);
        for (int n0 : bound_states::allowed_positions(seq, d, a.n_sites)) allowed[n0] = true;
        for (int n0 = 0; n0 + d <= a.n_sites - 1; ++n0) {
            if (a.format == "json")
                rows.push_back({{"d", d}, {"n0", n0}, {"allowed", allowed[n0]}});
            else
                csv << d << "," << n0 << "," << (allowed[n0] ? 1 : 0) << "\n";
        }
    }
    std::string out;
    if (a.format == "json") {
        json j = {{"schema", "fibwg.vdsmap.v1"},
                  {"p", a.p},
                  {"q", a.q},
                  {"n_sites", a.n_sites},
                  {"cells", rows}};
        out = j.dump(2) + "\n";
    } else {
        out = csv.str();
    }
    write_output(a.output, out);
    summary("vds-map: distances 1.." + std::to_string(a.dmax) + " on N = " +
            std::to_string(a.n_sites));
    return 0;
}

// ---------------------------------------------------------------- effective
struct EffectiveArgs {
    std::string kind = "giant";
    int p = 1, q = 1;
    int n_sites = 233;
    double t_a = 1.0, t_b = 0.2;
    double g = 0.05;
    int d = 6;
    std::vector<int> positions;
    bool all_allowed = false;
    bool allow_gapless = false;
    bool normalized = false;
    std::string blocks_file;
    std::string output = "-";
};

int run_effective(const EffectiveArgs& a) {
    const auto seq = host_sequence(a.p, a.q, a.n_sites, a.t_a, a.t_b);
    std::vector<int> positions = a.positions;
    if (a.all_allowed) {
        if (a.kind != "giant")
            throw std::invalid_argument("effective: --all-allowed applies to giant emitters");
        positions = bound_states::allowed_positions(seq, a.d, a.n_sites);
    }
    if (positions.empty()) throw std::invalid_argument("effective: no emitter positions given");
    const auto raw = effective::build_effective(
        seq, a.n_sites, roster_from_positions(a.kind, positions, a.d, a.g), a.allow_gapless);
    const auto k = a.normalized ? raw.normalized() : raw;

    std::ostringstream csv;
    for (int i = 0; i < k.n_emitters; ++i) {
        for (int j = 0; j < k.n_emitters; ++j) {
            if (j) csv << ",";
            csv << fmt(k(i, j));
        }
        csv << "\n";
    }
    write_output(a.output, csv.str());

    if (!a.blocks_file.empty()) {
        // block structure is defined on the raw overlap couplings
        const auto report = effective::fibonacci_block_structure(raw);
        json blocks = json::array();
        for (const auto& b : report.blocks)
            blocks.push_back({{"start", b.start}, {"size", b.size},
                              {"kind", std::string(1, b.kind)}});
        json j = {{"schema", "fibwg.effective.blocks.v1"},
                  {"blocks", blocks},
                  {"word", report.word},
                  {"word_is_fibonacci_factor", report.word_is_fibonacci_factor},
                  {"t_a", report.quartet_t_a},
                  {"t_b", report.quartet_t_b}};
        write_output(a.blocks_file, j.dump(2) + "\n");
    }
    summary("effective: " + std::to_string(k.n_emitters) + " emitters");
    return 0;
}

// ---------------------------------------------------------------- dynamics
struct DynamicsArgs {
    std::string kind = "giant";
    int p = 1, q = 1;
    int n_sites = 144;
    double t_a = 1.0, t_b = 0.2;
    double g = 0.05;
    int d = 6;
    std::vector<int> positions;
    int initial = 1;  // 1-based emitter index
    double t_max = 0.0;
    int samples = 2000;
    bool allow_gapless = false;
    std::string output = "-";
};

int run_dynamics(const DynamicsArgs& a) {
    if (a.positions.empty()) throw std::invalid_argument("dynamics: no emitter positions given");
    const auto seq = host_sequence(a.p, a.q, a.n_sites, a.t_a, a.t_b);
    const auto roster = roster_from_positions(a.kind, a.positions, a.d, a.g);
    const auto k = effective::build_effective(seq, a.n_sites, roster, a.allow_gapless);
    const auto h = lattice::build_coupled(seq, a.n_sites, k.roster);

    const double coupling_scale = a.g * a.g / a.t_a;
    const double t_max =
        a.t_max > 0.0 ? a.t_max : 20.0 * 3.14159265358979323846 / (std::sqrt(2.0) * coupling_scale);
    const auto times = dynamics::uniform_times(t_max, a.samples);
    if (a.initial < 1 || a.initial > k.n_emitters)
        throw std::invalid_argument("dynamics: initial emitter out of range");
    const auto exact = dynamics::evolve_exact(h, lattice::emitter_label(a.initial - 1), times);
    // the dressed-basis projection is the generator that tracks the exact
    // emitter populations
    const auto eff = dynamics::evolve_effective(k.normalized(), a.initial - 1, times);
    const auto report = dynamics::compare(exact, eff);

    std::ostringstream csv;
    csv << "time";
    for (int j = 1; j <= k.n_emitters; ++j) csv << ",exact_p" << j;
    for (int j = 1; j <= k.n_emitters; ++j) csv << ",eff_p" << j;
    for (int j = 1; j <= k.n_emitters; ++j) csv << ",dev_p" << j;
    csv << "\n";
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        csv << fmt(times[ti]);
        for (int j = 0; j < k.n_emitters; ++j)
            csv << "," << fmt(exact.emitter_population[j][ti]);
        for (int j = 0; j < k.n_emitters; ++j)
            csv << "," << fmt(eff.emitter_population[j][ti]);
        for (int j = 0; j < k.n_emitters; ++j)
            csv << ","
                << fmt(std::fabs(exact.emitter_population[j][ti] -
                                 eff.emitter_population[j][ti]));
        csv << "\n";
    }
    write_output(a.output, csv.str());
    summary("dynamics: max deviation " + fmt(report.overall));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aperiodic waveguide QED toolkit: Lucas hopping words, spectra, "
                 "multifractal analysis, dressed bound states, effective emitter models"};
    app.set_config("--config");
    app.require_subcommand(1);

    SequenceArgs seq_args;
    auto* seq_cmd = app.add_subcommand("sequence", "generate substitution words and censuses");
    seq_cmd->add_option("--p", seq_args.p);
    seq_cmd->add_option("--q", seq_args.q);
    seq_cmd->add_option("--k", seq_args.k, "generation count");
    seq_cmd->add_option("--length", seq_args.length, "truncate to this length");
    seq_cmd->add_option("--census", seq_args.census, "emit the factor census of this length");
    seq_cmd->add_option("--format", seq_args.format, "text or json");
    seq_cmd->add_option("-o,--output", seq_args.output);

    SpectrumArgs spec_args;
    auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues, DOS and integrated DOS");
    add_model_options(spec_cmd, spec_args.model);
    spec_cmd->add_option("--bins", spec_args.bins);
    spec_cmd->add_option("--dos", spec_args.dos_file, "write the histogram to this CSV file");
    spec_cmd->add_option("--matrix", spec_args.matrix_file,
                         "write the dense Hamiltonian to this CSV file");
    spec_cmd->add_option("--emitters-json", spec_args.emitters_json,
                         "couple emitters, e.g. [{\"kind\":\"local\",\"n\":3,\"g\":0.1}]");
    spec_cmd->add_option("--format", spec_args.format, "csv or json");
    spec_cmd->add_option("-o,--output", spec_args.output);

    GapmapArgs gap_args;
    auto* gap_cmd = app.add_subcommand("gapmap", "central gap over substitution parameters");
    gap_cmd->add_option("--pmax", gap_args.pmax);
    gap_cmd->add_option("--qmax", gap_args.qmax);
    gap_cmd->add_option("--tB", gap_args.t_b);
    gap_cmd->add_option("--N", gap_args.n_sites);
    gap_cmd->add_option("--threads", gap_args.threads);
    gap_cmd->add_option("--format", gap_args.format, "csv or json");
    gap_cmd->add_option("-o,--output", gap_args.output);

    IprArgs ipr_args;
    auto* ipr_cmd = app.add_subcommand("ipr", "inverse participation ratio scaling");
    add_model_options(ipr_cmd, ipr_args.model);
    ipr_cmd->add_option("--sizes", ipr_args.sizes, "ascending chain lengths")->required()->delimiter(',');
    ipr_cmd->add_option("--threads", ipr_args.threads);
    ipr_cmd->add_option("--format", ipr_args.format, "csv or json");
    ipr_cmd->add_option("-o,--output", ipr_args.output);

    MultifractalArgs mf_args;
    auto* mf_cmd = app.add_subcommand("multifractal", "box-counting singularity spectrum");
    add_model_options(mf_cmd, mf_args.model);
    mf_cmd->add_option("--state-index", mf_args.state_index,
                       "eigenstate index in the ascending-energy list (0-based)");
    mf_cmd->add_option("--site-state", mf_args.site_state,
                       "analyze a single-site state instead of an eigenstate");
    mf_cmd->add_option("--qmax", mf_args.q_max);
    mf_cmd->add_option("--qstep", mf_args.q_step);
    mf_cmd->add_option("--format", mf_args.format, "csv or json");
    mf_cmd->add_option("-o,--output", mf_args.output);

    VdsArgs vds_args;
    auto* vds_cmd = app.add_subcommand("vds", "construct and verify a dressed bound state");
    vds_cmd->add_option("--kind", vds_args.kind, "giant or local");
    vds_cmd->add_option("--p", vds_args.p);
    vds_cmd->add_option("--q", vds_args.q);
    vds_cmd->add_option("--N", vds_args.n_sites);
    vds_cmd->add_option("--tA", vds_args.t_a);
    vds_cmd->add_option("--tB", vds_args.t_b);
    vds_cmd->add_option("--g", vds_args.g);
    vds_cmd->add_option("--n0", vds_args.n0, "first coupling point (giant)");
    vds_cmd->add_option("--d", vds_args.d, "leg distance (giant)");
    vds_cmd->add_option("--n", vds_args.site, "coupling site (local)");
    vds_cmd->add_flag("--allow-gapless", vds_args.allow_gapless);
    vds_cmd->add_option("--format", vds_args.format, "json or csv");
    vds_cmd->add_option("-o,--output", vds_args.output);

    VdsMapArgs map_args;
    auto* map_cmd = app.add_subcommand("vds-map", "allowed giant coupling positions per distance");
    map_cmd->add_option("--p", map_args.p);
    map_cmd->add_option("--q", map_args.q);
    map_cmd->add_option("--N", map_args.n_sites);
    map_cmd->add_option("--dmax", map_args.dmax);
    map_cmd->add_option("--format", map_args.format, "csv or json");
    map_cmd->add_option("-o,--output", map_args.output);

    EffectiveArgs eff_args;
    auto* eff_cmd = app.add_subcommand("effective", "photon-mediated emitter coupling matrix");
    eff_cmd->add_option("--kind", eff_args.kind, "giant or local");
    eff_cmd->add_option("--p", eff_args.p);
    eff_cmd->add_option("--q", eff_args.q);
    eff_cmd->add_option("--N", eff_args.n_sites);
    eff_cmd->add_option("--tA", eff_args.t_a);
    eff_cmd->add_option("--tB", eff_args.t_b);
    eff_cmd->add_option("--g", eff_args.g);
    eff_cmd->add_option("--d", eff_args.d, "leg distance (giant)");
    eff_cmd->add_option("--positions", eff_args.positions, "emitter coupling positions")->delimiter(',');
    eff_cmd->add_flag("--all-allowed", eff_args.all_allowed,
                      "use every allowed giant position on the chain");
    eff_cmd->add_flag("--allow-gapless", eff_args.allow_gapless);
    eff_cmd->add_flag("--normalized", eff_args.normalized,
                      "emit the dressed-basis projection instead of the raw couplings");
    eff_cmd->add_option("--blocks", eff_args.blocks_file, "write the block report to this file");
    eff_cmd->add_option("-o,--output", eff_args.output);

    DynamicsArgs dyn_args;
    auto* dyn_cmd = app.add_subcommand("dynamics", "exact vs effective emitter populations");
    dyn_cmd->add_option("--kind", dyn_args.kind, "giant or local");
    dyn_cmd->add_option("--p", dyn_args.p);
    dyn_cmd->add_option("--q", dyn_args.q);
    dyn_cmd->add_option("--N", dyn_args.n_sites);
    dyn_cmd->add_option("--tA", dyn_args.t_a);
    dyn_cmd->add_option("--tB", dyn_args.t_b);
    dyn_cmd->add_option("--g", dyn_args.g);
    dyn_cmd->add_option("--d", dyn_args.d, "leg distance (giant)");
    dyn_cmd->add_option("--positions", dyn_args.positions, "emitter coupling positions")
        ->required()
        ->delimiter(',');
    dyn_cmd->add_option("--initial", dyn_args.initial, "initially excited emitter (1-based)");
    dyn_cmd->add_option("--tmax", dyn_args.t_max, "override the default time window");
    dyn_cmd->add_option("--samples", dyn_args.samples);
    dyn_cmd->add_flag("--allow-gapless", dyn_args.allow_gapless);
    dyn_cmd->add_option("-o,--output", dyn_args.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*seq_cmd) return run_sequence(seq_args);
        if (*spec_cmd) return run_spectrum(spec_args);
        if (*gap_cmd) return run_gapmap(gap_args);
        if (*ipr_cmd) return run_ipr(ipr_args);
        if (*mf_cmd) return run_multifractal(mf_args);
        if (*vds_cmd) return run_vds(vds_args);
        if (*map_cmd) return run_vds_map(map_args);
        if (*eff_cmd) return run_effective(eff_args);
        if (*dyn_cmd) return run_dynamics(dyn_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
