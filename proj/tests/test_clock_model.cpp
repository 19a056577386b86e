#include <cmath>

#include "doctest.h"
#include "support/dense_reference.hpp"
#include "znlab/clock_model.hpp"

using namespace znlab;

TEST_SUITE("clock") {

TEST_CASE("clock and shift matrices satisfy the defining relations") {
    for (int n = 2; n <= 5; ++n) {
        const Eigen::MatrixXcd w = testing::clock_matrix(n);
        const Eigen::MatrixXcd v = testing::shift_matrix(n);
        const Complex omega = std::polar(1.0, 2.0 * M_PI / n);

        Eigen::MatrixXcd wn = Eigen::MatrixXcd::Identity(n, n);
        Eigen::MatrixXcd vn = Eigen::MatrixXcd::Identity(n, n);
        for (int i = 0; i < n; ++i) {
            wn = wn * w;
            vn = vn * v;
        }
        CHECK((wn - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((vn - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((v * w - omega * w * v).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((v * w.adjoint() - std::conj(omega) * w.adjoint() * v).cwiseAbs().maxCoeff() <
              1e-13);

        // Distinct sites commute: two-site Kronecker factors.
        auto kron = [n](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
            Eigen::MatrixXcd out(n * n, n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) out.block(i * n, j * n, n, n) = a(i, j) * b;
            return out;
        };
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
        CHECK((kron(v, id) * kron(id, w) - kron(id, w) * kron(v, id)).cwiseAbs().maxCoeff() <
              1e-13);
    }
}

TEST_CASE("field-dominated ground state is the uniform clock vacuum") {
    for (int n : {2, 3, 4}) {
        ClockModelSpec spec;
        spec.order = n;
        spec.l1 = spec.l2 = 2;
        spec.lambda1 = 0.0;
        spec.lambda2 = 1.3;
        spec.charge_sector = -1;
        const SpectrumResult res = clock_spectrum(spec, 2);
        CHECK(res.eigenvalues[0] == doctest::Approx(-2.0 * spec.lambda2 * 4).epsilon(1e-13));
        CHECK(res.clusters[0].count == 1);  // unique ground state
    }
}

TEST_CASE("single-site excitation energy") {
    for (int n : {2, 3, 4, 6, 8}) {
        ClockModelSpec spec;
        spec.order = n;
        spec.l1 = spec.l2 = 2;
        spec.lambda1 = 0.0;
        spec.lambda2 = 1.0;
        spec.charge_sector = -1;
        const SpectrumResult res = clock_spectrum(spec, 2 + 2 * n);
        REQUIRE(res.clusters.size() >= 2);
        const double gap = res.clusters[1].mean - res.clusters[0].mean;
        CHECK(gap == doctest::Approx(2.0 * (1.0 - std::cos(2.0 * M_PI / n))).epsilon(1e-12));
    }
}

TEST_CASE("gap decreases monotonically with the group order") {
    double prev = 1e9;
    for (int n : {2, 3, 4, 6, 8}) {
        ClockModelSpec spec;
        spec.order = n;
        spec.l1 = spec.l2 = 2;
        spec.lambda1 = 0.0;
        spec.lambda2 = 1.0;
        spec.charge_sector = -1;
        const SpectrumResult res = clock_spectrum(spec, 2 + 2 * n);
        const double gap = res.clusters[1].mean - res.clusters[0].mean;
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("kinetic-dominated ground space is the N shift eigenstates") {
    for (int n : {2, 3}) {
        ClockModelSpec spec;
        spec.order = n;
        spec.l1 = spec.l2 = 2;
        spec.lambda1 = 1.0;
        spec.lambda2 = 0.0;
        spec.charge_sector = -1;
        const SpectrumResult res = clock_spectrum(spec, n + 2, 1e-8);
        CHECK(res.clusters[0].count == n);
    }
}

TEST_CASE("hermitian with twists and disorder") {
    ClockModelSpec spec;
    spec.order = 3;
    spec.l1 = spec.l2 = 2;
    spec.lambda1 = 0.7;
    spec.lambda2 = 0.9;
    spec.twist_a = 1;
    spec.twist_b = 2;
    spec.tau_exponents = {0, 1, 2, 1};
    ClockBasis basis(spec);
    const SparseMatrix h = build_clock_hamiltonian(basis);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(h.size(), h.size());
    h.for_each([&m](std::int64_t r, std::int64_t c, Complex v) { m(r, c) += v; });
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

}  // TEST_SUITE
