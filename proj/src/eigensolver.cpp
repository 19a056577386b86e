#include "znlab/eigensolver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "znlab/errors.hpp"

namespace znlab {

namespace {

Complex dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm(const std::vector<Complex>& a) { return std::sqrt(std::abs(dot(a, a))); }

void axpy(const Complex& alpha, const std::vector<Complex>& x, std::vector<Complex>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::vector<Complex>& x, double s) {
    for (auto& v : x) v *= s;
}

void orthogonalize(std::vector<Complex>& v, const std::vector<std::vector<Complex>>& basis) {
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) axpy(-dot(b, v), b, v);
}

std::vector<Complex> random_unit_vector(std::int64_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> v(n);
    for (auto& c : v) c = Complex(dist(rng), dist(rng));
    const double nv = norm(v);
    scale(v, 1.0 / nv);
    return v;
}

EigenResult solve_dense(const SparseMatrix& h, const EigenOptions& opts) {
    const auto n = h.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    h.for_each([&m](std::int64_t r, std::int64_t c, Complex v) { m(r, c) += v; });
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0);

    EigenResult res;
    res.method = "dense";
    const int k = std::min<std::int64_t>(opts.k, n);
    res.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
    if (opts.want_vectors) {
        res.eigenvectors.resize(k);
        for (int j = 0; j < k; ++j) {
            res.eigenvectors[j].resize(n);
            for (std::int64_t i = 0; i < n; ++i) res.eigenvectors[j][i] = solver.eigenvectors()(i, j);
        }
    }
    res.clusters = cluster_eigenvalues(res.eigenvalues, opts.cluster_tolerance);
    return res;
}

// One deflated Lanczos run: lowest Ritz pair orthogonal to `locked`.
struct LanczosPair {
    double value;
    std::vector<Complex> vector;
    double residual;
    int iterations;
};

LanczosPair lanczos_lowest(const SparseMatrix& h, const std::vector<std::vector<Complex>>& locked,
                           const EigenOptions& opts, std::mt19937_64& rng) {
    const auto n = h.size();
    std::vector<std::vector<Complex>> basis;
    std::vector<double> alpha, beta;

    std::vector<Complex> v = random_unit_vector(n, rng);
    orthogonalize(v, locked);
    double nv = norm(v);
    if (nv < 1e-8) {
        v = random_unit_vector(n, rng);
        orthogonalize(v, locked);
        nv = norm(v);
    }
    scale(v, 1.0 / nv);
    basis.push_back(v);

    std::vector<Complex> w(n);
    int its = 0;
    const int max_m = static_cast<int>(std::min<std::int64_t>(opts.max_iterations, n));
    double best_residual = std::numeric_limits<double>::infinity();

    for (int m = 0; m < max_m; ++m) {
        h.multiply(basis.back(), w);
        ++its;
        alpha.push_back(dot(basis.back(), w).real());
        axpy(Complex(-alpha.back(), 0.0), basis.back(), w);
        if (m > 0) axpy(Complex(-beta.back(), 0.0), basis[m - 1], w);
        orthogonalize(w, locked);
        orthogonalize(w, basis);
        const double b = norm(w);

        // Ritz values of the current tridiagonal.
        const int mm = m + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mm, mm);
        for (int i = 0; i < mm; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < mm) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
        const double theta = tri.eigenvalues()(0);
        const double s_last = tri.eigenvectors()(mm - 1, 0);
        const double residual = std::abs(b * s_last);
        best_residual = std::min(best_residual, residual);

        const bool exhausted = b < 1e-12;  // invariant subspace reached
        if (residual < opts.tolerance || exhausted || m == max_m - 1) {
            if (residual < opts.tolerance || exhausted) {
                std::vector<Complex> ritz(n, Complex(0.0, 0.0));
                for (int i = 0; i < mm; ++i)
                    axpy(Complex(tri.eigenvectors()(i, 0), 0.0), basis[i], ritz);
                orthogonalize(ritz, locked);
                const double nr = norm(ritz);
                if (nr > 1e-12) {
                    scale(ritz, 1.0 / nr);
                    return {theta, std::move(ritz), residual, its};
                }
            }
            break;
        }
        scale(w, 1.0 / b);
        beta.push_back(b);
        basis.push_back(w);
    }
    throw SolverError("Lanczos did not converge", best_residual);
}

EigenResult solve_lanczos(const SparseMatrix& h, const EigenOptions& opts) {
    EigenResult res;
    res.method = "lanczos";
    std::mt19937_64 rng(opts.seed);
    std::vector<std::vector<Complex>> locked;
    const int k = static_cast<int>(std::min<std::int64_t>(opts.k, h.size()));
    for (int j = 0; j < k; ++j) {
        auto pair = lanczos_lowest(h, locked, opts, rng);
        res.iterations += pair.iterations;
        res.max_residual = std::max(res.max_residual, pair.residual);
        res.eigenvalues.push_back(pair.value);
        locked.push_back(std::move(pair.vector));
    }
    // Deflation returns values one degenerate copy at a time; enforce order.
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&res](int a, int b) { return res.eigenvalues[a] < res.eigenvalues[b]; });
    std::vector<double> vals(k);
    std::vector<std::vector<Complex>> vecs(k);
    for (int i = 0; i < k; ++i) {
        vals[i] = res.eigenvalues[perm[i]];
        vecs[i] = std::move(locked[perm[i]]);
    }
    res.eigenvalues = std::move(vals);
    if (opts.want_vectors) res.eigenvectors = std::move(vecs);
    res.clusters = cluster_eigenvalues(res.eigenvalues, opts.cluster_tolerance);
    return res;
}

}  // namespace

std::vector<DegeneracyCluster> cluster_eigenvalues(const std::vector<double>& values,
                                                   double tolerance) {
    std::vector<DegeneracyCluster> clusters;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        if (!clusters.empty() &&
            values[i] - values[clusters.back().first + clusters.back().count - 1] <= tolerance) {
            auto& c = clusters.back();
            c.mean = (c.mean * c.count + values[i]) / (c.count + 1);
            ++c.count;
        } else {
            clusters.push_back({i, 1, values[i]});
        }
    }
    return clusters;
}

EigenResult solve_lowest(const SparseMatrix& h, const EigenOptions& opts) {
    if (opts.k < 1) throw DomainError("requested eigenpair count must be >= 1");
    if (h.size() <= opts.dense_threshold) return solve_dense(h, opts);
    return solve_lanczos(h, opts);
}

}  // namespace znlab
