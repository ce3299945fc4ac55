// spectral.cpp
#include "fibwg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "fibwg/errors.hpp"
#include "fibwg/linefit.hpp"

namespace fibwg::spectral {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form.
// `a` is n x n row-major; on return, if `accumulate`, it holds the orthogonal
// transform Q (row-major) with Q^T A Q tridiagonal. d receives the diagonal
// and e the subdiagonal in e[1..n-1].
void householder_reduce(std::vector<double>& a, int n, std::vector<double>& d,
                        std::vector<double>& e, bool accumulate) {
    auto A = [&](int r, int c) -> double& {
        return a[static_cast<std::size_t>(r) * n + c];
    };
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    std::vector<double> w(n, 0.0);

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0.0) {
                e[i] = A(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                const double g0 = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g0;
                h -= f * g0;
                A(i, l) = f - g0;

                // w = (active block) * u, accumulated over the stored lower triangle
                for (int j = 0; j <= l; ++j) w[j] = 0.0;
                for (int r = 0; r <= l; ++r) {
                    const double* row = &a[static_cast<std::size_t>(r) * n];
                    const double ur = A(i, r);
                    double acc = 0.0;
                    for (int k = 0; k < r; ++k) {
                        acc += row[k] * A(i, k);
                        w[k] += row[k] * ur;
                    }
                    w[r] += acc + row[r] * ur;
                }
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (accumulate) A(j, i) = A(i, j) / h;
                    w[j] /= h;
                    f += w[j] * A(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) w[j] -= hh * A(i, j);
                // rank-2 update of the active block (lower triangle)
                for (int j = 0; j <= l; ++j) {
                    const double fj = A(i, j);
                    const double gj = w[j];
                    double* row = &a[static_cast<std::size_t>(j) * n];
                    const double* ui = &a[static_cast<std::size_t>(i) * n];
                    for (int k = 0; k <= j; ++k) row[k] -= fj * w[k] + gj * ui[k];
                }
            }
        } else {
            e[i] = A(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;

    if (accumulate) {
        for (int i = 0; i < n; ++i) {
            const int l = i;
            if (d[i] != 0.0) {
                for (int j = 0; j < l; ++j) w[j] = 0.0;
                for (int k = 0; k < l; ++k) {
                    const double uk = A(i, k);
                    const double* rowk = &a[static_cast<std::size_t>(k) * n];
                    for (int j = 0; j < l; ++j) w[j] += uk * rowk[j];
                }
                for (int k = 0; k < l; ++k) {
                    const double vk = A(k, i);
                    double* rowk = &a[static_cast<std::size_t>(k) * n];
                    for (int j = 0; j < l; ++j) rowk[j] -= w[j] * vk;
                }
            }
            d[i] = A(i, i);
            A(i, i) = 1.0;
            for (int j = 0; j < l; ++j) {
                A(j, i) = 0.0;
                A(i, j) = 0.0;
            }
        }
    } else {
        for (int i = 0; i < n; ++i) d[i] = A(i, i);
    }
}

// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
// On entry e holds the subdiagonal in e[1..n-1]. If z is non-null it is an
// n x n column-major matrix whose columns are rotated along; column i ends
// up as the eigenvector of d[i].
void ql_implicit(std::vector<double>& d, std::vector<double>& e, double* z, int n) {
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw Error("eigensolve: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool underflow = false;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        double* zi = z + static_cast<std::size_t>(i) * n;
                        double* zi1 = z + static_cast<std::size_t>(i + 1) * n;
                        for (int k = 0; k < n; ++k) {
                            f = zi1[k];
                            zi1[k] = s * zi[k] + c * f;
                            zi[k] = c * zi[k] - s * f;
                        }
                    }
                }
                if (underflow && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_ascending(EigenDecomposition& dec) {
    const int n = dec.dim;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dec.eigenvalues[a] < dec.eigenvalues[b]; });
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = dec.eigenvalues[order[i]];
    dec.eigenvalues = std::move(ev);
    if (dec.has_vectors()) {
        std::vector<double> vecs(dec.eigenvectors.size());
        for (int i = 0; i < n; ++i)
            std::copy_n(dec.eigenvectors.data() + static_cast<std::size_t>(order[i]) * n, n,
                        vecs.data() + static_cast<std::size_t>(i) * n);
        dec.eigenvectors = std::move(vecs);
    }
}

// Deterministic parallel map over [0, count): worker w handles indices
// w, w + n_threads, ... and writes results only at its own indices.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w]() {
            for (int i = w; i < count; i += threads) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

EigenDecomposition eigensolve_dense(std::vector<double> matrix, int dim,
                                    bool assume_tridiagonal, bool with_vectors) {
    if (dim < 1) throw std::invalid_argument("eigensolve: empty matrix");
    if (matrix.size() != static_cast<std::size_t>(dim) * dim)
        throw std::invalid_argument("eigensolve: size mismatch");

    EigenDecomposition dec;
    dec.dim = dim;
    std::vector<double> d(dim), e(dim, 0.0);

    if (assume_tridiagonal) {
        for (int i = 0; i < dim; ++i) {
            d[i] = matrix[static_cast<std::size_t>(i) * dim + i];
            if (i > 0) e[i] = matrix[static_cast<std::size_t>(i) * dim + (i - 1)];
        }
        if (with_vectors) {
            dec.eigenvectors.assign(static_cast<std::size_t>(dim) * dim, 0.0);
            for (int i = 0; i < dim; ++i)
                dec.eigenvectors[static_cast<std::size_t>(i) * dim + i] = 1.0;
        }
    } else {
        householder_reduce(matrix, dim, d, e, with_vectors);
        if (with_vectors) {
            // transpose the accumulated transform into column-major storage
            dec.eigenvectors.resize(static_cast<std::size_t>(dim) * dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c)
                    dec.eigenvectors[static_cast<std::size_t>(c) * dim + r] =
                        matrix[static_cast<std::size_t>(r) * dim + c];
        }
    }

    ql_implicit(d, e, with_vectors ? dec.eigenvectors.data() : nullptr, dim);
    dec.eigenvalues = std::move(d);
    sort_ascending(dec);
    return dec;
}

EigenDecomposition eigensolve(const lattice::SingleExcitationHamiltonian& h) {
    return eigensolve_dense(h.data(), h.dim(), h.is_tridiagonal(), true);
}

std::vector<double> eigenvalues_of(const lattice::SingleExcitationHamiltonian& h) {
    return eigensolve_dense(h.data(), h.dim(), h.is_tridiagonal(), false).eigenvalues;
}

DosCurve dos(const EigenDecomposition& decomp, int bins) {
    if (bins < 2) throw std::invalid_argument("dos: need at least 2 bins");
    const auto& ev = decomp.eigenvalues;
    const int n = decomp.dim;
    DosCurve curve;

    const double e_min = ev.front();
    const double e_max = ev.back();
    const double span = (e_max > e_min) ? (e_max - e_min) : 1.0;
    const double lo = (e_max > e_min) ? e_min : e_min - 0.5;

    curve.bin_edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        curve.bin_edges[b] = lo + span * static_cast<double>(b) / bins;
    curve.counts.assign(bins, 0.0);
    for (double v : ev) {
        int b = static_cast<int>((v - lo) / span * bins);
        b = std::clamp(b, 0, bins - 1);
        curve.counts[b] += 1.0;
    }
    const double width = span / bins;
    curve.density.resize(bins);
    for (int b = 0; b < bins; ++b) curve.density[b] = curve.counts[b] / (n * width);

    curve.staircase_energy = ev;
    curve.staircase_value.resize(n);
    for (int i = 0; i < n; ++i)
        curve.staircase_value[i] = static_cast<double>(i + 1) / n;
    return curve;
}

double central_gap(std::span<const double> sorted_eigenvalues) {
    constexpr double kGapFloor = 1e-8;
    double e_minus = 0.0, e_plus = 0.0;
    bool have_minus = false, have_plus = false;
    for (double v : sorted_eigenvalues) {
        if (std::fabs(v) < kGapFloor) return 0.0;
        if (v < 0.0) {
            e_minus = v;  // keeps the largest negative (input is ascending)
            have_minus = true;
        } else if (!have_plus) {
            e_plus = v;
            have_plus = true;
        }
    }
    if (!have_minus || !have_plus) return 0.0;
    return e_plus - e_minus;
}

double central_gap(const EigenDecomposition& decomp) {
    return central_gap(std::span<const double>(decomp.eigenvalues));
}

GapMapResult gap_map(int p_max, int q_max, double t_b, int n_sites, int threads) {
    if (p_max < 1 || q_max < 1) throw std::invalid_argument("gap_map: p_max, q_max >= 1");
    if (n_sites < 16) throw std::invalid_argument("gap_map: chain too short");

    GapMapResult result;
    result.n_sites = n_sites + (n_sites % 2);  // even chains only
    result.t_b = t_b;

    // Classification threshold: ten times the median level spacing near
    // E = 0 of the uniform chain at the same length.
    {
        lattice::WaveguideSpec uni;
        uni.model = lattice::Model::Uniform;
        uni.n_sites = result.n_sites;
        const auto ev = eigenvalues_of(lattice::build_waveguide(uni));
        std::vector<double> spacings;
        for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
            if (std::fabs(ev[i]) <= 0.5 && std::fabs(ev[i + 1]) <= 0.5)
                spacings.push_back(ev[i + 1] - ev[i]);
        }
        if (spacings.empty()) throw Error("gap_map: no uniform reference levels near E = 0");
        std::sort(spacings.begin(), spacings.end());
        result.threshold = 10.0 * spacings[spacings.size() / 2];
    }

    const int n_cells = p_max * q_max;
    result.cells.resize(n_cells);
    parallel_for_index(n_cells, threads, [&](int idx) {
        const int p = idx / q_max + 1;
        const int q = idx % q_max + 1;
        const auto word = words::generate_at_least({p, q}, result.n_sites - 1);
        const words::HoppingSequence seq(word, 1.0, t_b);
        const auto ev = eigenvalues_of(lattice::build_waveguide(seq, result.n_sites));
        GapCell cell;
        cell.p = p;
        cell.q = q;
        cell.gap = central_gap(std::span<const double>(ev));
        cell.gapped = cell.gap > result.threshold;
        result.cells[idx] = cell;
    });
    return result;
}

double ipr(std::span<const double> state) {
    double norm2 = 0.0;
    for (double v : state) norm2 += v * v;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw Error("ipr: state is not normalized");
    double s = 0.0;
    for (double v : state) s += v * v * v * v;
    return s;
}

IprScaling ipr_scaling(const lattice::WaveguideSpec& base, const std::vector<int>& sizes,
                       int threads) {
    if (sizes.size() < 4)
        throw std::invalid_argument("ipr_scaling: need at least 4 sizes");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i] >= sizes[i + 1])
            throw std::invalid_argument("ipr_scaling: sizes must be ascending");

    IprScaling out;
    out.sizes = sizes;
    out.mean_ipr.assign(sizes.size(), 0.0);

    parallel_for_index(static_cast<int>(sizes.size()), threads, [&](int idx) {
        lattice::WaveguideSpec spec = base;
        spec.n_sites = sizes[idx];
        const auto dec = eigensolve(lattice::build_waveguide(spec));
        double sum = 0.0;
        for (int i = 0; i < dec.dim; ++i) sum += ipr(dec.eigenvector(i));
        out.mean_ipr[idx] = sum / dec.dim;
    });

    std::vector<double> lx(sizes.size()), ly(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        lx[i] = std::log(static_cast<double>(sizes[i]));
        ly[i] = std::log(out.mean_ipr[i]);
    }
    const auto fit = detail::fit_line(lx, ly);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.slope_stderr = fit.slope_stderr;
    return out;
}

}  // namespace fibwg::spectral
