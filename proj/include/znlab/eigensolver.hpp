#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "znlab/sparse_matrix.hpp"

namespace znlab {

struct EigenOptions {
    int k = 1;                      // number of lowest eigenpairs
    double tolerance = 1e-10;       // residual tolerance per eigenpair
    double cluster_tolerance = 1e-8;
    int max_iterations = 2000;      // Lanczos steps per eigenpair
    std::int64_t dense_threshold = 2048;
    std::uint64_t seed = 20240915;  // start-vector seed
    bool want_vectors = true;
};

struct DegeneracyCluster {
    int first = 0;  // index into eigenvalues
    int count = 0;
    double mean = 0.0;
};

struct EigenResult {
    std::vector<double> eigenvalues;               // ascending, k lowest
    std::vector<std::vector<Complex>> eigenvectors;
    std::vector<DegeneracyCluster> clusters;
    std::string method;       // "dense" or "lanczos"
    int iterations = 0;       // total matrix applications
    double max_residual = 0.0;
};

/// Lowest-k eigenpairs of a Hermitian sparse matrix. Below the dense
/// threshold a full dense solve is used; above it a Lanczos iteration with
/// full reorthogonalization and deflation of converged vectors, which
/// resolves degenerate levels one copy at a time.
EigenResult solve_lowest(const SparseMatrix& h, const EigenOptions& opts);

std::vector<DegeneracyCluster> cluster_eigenvalues(const std::vector<double>& values,
                                                   double tolerance);

}  // namespace znlab
