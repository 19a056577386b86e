#include <random>

#include "doctest.h"
#include "support/dense_reference.hpp"
#include "znlab/pauli_string.hpp"
#include "znlab/torus_lattice.hpp"

using namespace znlab;

TEST_SUITE("torus") {

TEST_CASE("counts") {
    const auto l22 = TorusLattice::build(2, 2);
    CHECK(l22.num_links() == 8);
    CHECK(l22.num_plaquettes() == 4);
    CHECK(l22.num_sites() == 4);
    const auto l32 = TorusLattice::build(3, 2);
    CHECK(l32.num_links() == 12);
    CHECK(l32.num_plaquettes() == 6);
    CHECK_THROWS_AS(TorusLattice::build(1, 5), DomainError);
}

TEST_CASE("every link sits in two plaquettes with opposite orientation") {
    const auto lat = TorusLattice::build(3, 4);
    std::vector<int> pos_count(lat.num_links(), 0), neg_count(lat.num_links(), 0);
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        for (const auto& step : lat.plaquette_boundary(p)) {
            (step.sign > 0 ? pos_count : neg_count)[step.link]++;
            CHECK((step.sign > 0 ? lat.plaquette_pos(step.link) : lat.plaquette_neg(step.link)) ==
                  p);
        }
    }
    for (int l = 0; l < lat.num_links(); ++l) {
        CHECK(pos_count[l] == 1);
        CHECK(neg_count[l] == 1);
    }
}

TEST_CASE("reference cycle crossings") {
    for (auto [l1, l2] : {std::pair{2, 2}, {3, 3}, {4, 3}}) {
        const auto lat = TorusLattice::build(l1, l2);
        auto shared = [](const std::vector<PathStep>& a, const std::vector<PathStep>& b) {
            int count = 0;
            for (const auto& s : a)
                for (const auto& t : b)
                    if (s.link == t.link) ++count;
            return count;
        };
        CHECK(shared(lat.cycle_a_z(), lat.cycle_b_x()) == 1);
        CHECK(shared(lat.cycle_a_z(), lat.cycle_a_x()) == 0);
        CHECK(shared(lat.cycle_b_z(), lat.cycle_a_x()) == 1);
        CHECK(shared(lat.cycle_b_z(), lat.cycle_b_x()) == 0);
    }
}

TEST_CASE("staircase paths") {
    const auto lat = TorusLattice::build(3, 3);
    const auto empty = lat.path_between(4, 4);
    CHECK(empty.steps.empty());
    CHECK(empty.closed());

    const auto single = lat.path_between(lat.site_index(0, 0), lat.site_index(1, 0));
    REQUIRE(single.steps.size() == 1);
    CHECK(single.steps[0].link == lat.link_index(lat.site_index(0, 0), 1));
    CHECK(single.steps[0].sign == 1);

    // Full wrap on the dual lattice: closed loop of length L1.
    auto wrap = lat.dual_path_between(0, 0);
    CHECK(wrap.steps.empty());
    LatticePath loop = lat.dual_path_between(0, lat.site_index(2, 0));
    LatticePath last = lat.dual_path_between(lat.site_index(2, 0), 0);
    loop.steps.insert(loop.steps.end(), last.steps.begin(), last.steps.end());
    loop.end = 0;
    CHECK(loop.steps.size() == 3);
    CHECK(loop.closed());
}

TEST_CASE("crossing exponent") {
    const auto lat = TorusLattice::build(4, 4);

    // Plaquette boundary against a dual path terminating inside it.
    LatticePath boundary;
    boundary.kind = LatticePath::Kind::Original;
    const int p = lat.site_index(1, 1);
    boundary.start = boundary.end = p;
    for (const auto& step : lat.plaquette_boundary(p)) boundary.steps.push_back(step);
    const auto into = lat.dual_path_between(lat.site_index(3, 1), p);
    CHECK(std::abs(TorusLattice::crossing_exponent(boundary, into)) == 1);

    // Geometrically disjoint paths.
    const auto far_path = lat.dual_path_between(lat.site_index(3, 3), lat.site_index(3, 3));
    CHECK(TorusLattice::crossing_exponent(boundary, far_path) == 0);

    // Reference a-cycle against the dual b-cycle.
    LatticePath a_cycle;
    a_cycle.kind = LatticePath::Kind::Original;
    a_cycle.start = a_cycle.end = 0;
    for (const auto& step : lat.cycle_a_z()) a_cycle.steps.push_back(step);
    LatticePath dual_b;
    dual_b.kind = LatticePath::Kind::Dual;
    dual_b.start = dual_b.end = 0;
    for (const auto& step : lat.cycle_b_x()) dual_b.steps.push_back(step);
    CHECK(std::abs(TorusLattice::crossing_exponent(a_cycle, dual_b)) == 1);
}

TEST_CASE("crossing exponent is deformation invariant") {
    const auto lat = TorusLattice::build(4, 4);
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> site(0, lat.num_sites() - 1);
    for (int rep = 0; rep < 50; ++rep) {
        const int a = site(rng), b = site(rng), c = site(rng), d = site(rng);
        LatticePath z_path = lat.path_between(a, b);
        const LatticePath dual = lat.dual_path_between(c, d);
        const int before = TorusLattice::crossing_exponent(z_path, dual);
        // Deform by a plaquette boundary away from the dual path's endpoints.
        int p = site(rng);
        if (p == c || p == d) continue;
        for (const auto& step : lat.plaquette_boundary(p)) z_path.steps.push_back(step);
        const int after = TorusLattice::crossing_exponent(z_path, dual);
        CHECK(before == after);
    }
}

TEST_CASE("star and plaquette products cover the lattice trivially") {
    for (int n : {2, 3, 5}) {
        const auto lat = TorusLattice::build(3, 3);
        PauliString stars(n);
        for (int s = 0; s < lat.num_sites(); ++s)
            stars = multiply(stars, testing::star_string(lat, n, s));
        CHECK(stars.is_identity());
        PauliString plaqs(n);
        for (int p = 0; p < lat.num_plaquettes(); ++p)
            plaqs = multiply(plaqs, testing::plaquette_string(lat, n, p));
        CHECK(plaqs.is_identity());
    }
}

TEST_CASE("closed pattern decomposition reproduces the pattern") {
    const auto lat = TorusLattice::build(3, 4);
    std::mt19937_64 rng(5150);
    for (int n : {2, 3, 5}) {
        std::uniform_int_distribution<int> coeff(0, n - 1);
        for (int rep = 0; rep < 40; ++rep) {
            LinkPattern pattern;
            std::vector<int> want(lat.num_plaquettes());
            for (auto& c : want) c = coeff(rng);
            for (int p = 0; p < lat.num_plaquettes(); ++p)
                for (const auto& step : lat.plaquette_boundary(p))
                    pattern[step.link] += want[p] * step.sign;
            const int na = coeff(rng), nb = coeff(rng);
            for (const auto& s : lat.cycle_a_z()) pattern[s.link] += na * s.sign;
            for (const auto& s : lat.cycle_b_z()) pattern[s.link] += nb * s.sign;

            const auto dec = lat.decompose_closed(pattern, n);
            CHECK(dec.winding_a == na);
            CHECK(dec.winding_b == nb);
            // Coefficients agree up to the constant shift on the dual lattice.
            const int shift = ZnPhase::normalize(dec.plaquette_coeff[0] - want[0], n);
            for (int p = 0; p < lat.num_plaquettes(); ++p)
                CHECK(ZnPhase::normalize(want[p] + shift, n) == dec.plaquette_coeff[p]);
        }
    }
}

TEST_CASE("flux solve reproduces the target") {
    const auto lat = TorusLattice::build(3, 3);
    std::mt19937_64 rng(99);
    for (int n : {2, 3, 4}) {
        std::uniform_int_distribution<int> coeff(0, n - 1);
        for (int rep = 0; rep < 40; ++rep) {
            std::vector<int> target(lat.num_plaquettes());
            long long sum = 0;
            for (std::size_t i = 0; i + 1 < target.size(); ++i) {
                target[i] = coeff(rng);
                sum += target[i];
            }
            target.back() = ZnPhase::normalize(-sum, n);
            LinkPattern zeta;
            int obstruction = 0;
            REQUIRE(lat.link_pattern_with_flux(target, n, zeta, obstruction));
            const auto flux = lat.flux_of(zeta);
            for (int p = 0; p < lat.num_plaquettes(); ++p)
                CHECK(ZnPhase::normalize(flux[p] - target[p], n) == 0);
        }
        // Nonzero total flux is obstructed.
        std::vector<int> bad(lat.num_plaquettes(), 0);
        bad[0] = 1;
        LinkPattern zeta;
        int obstruction = 0;
        CHECK_FALSE(lat.link_pattern_with_flux(bad, n, zeta, obstruction));
        CHECK(obstruction == 1);
    }
}

}  // TEST_SUITE
