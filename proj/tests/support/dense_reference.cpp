#include "support/dense_reference.hpp"

#include <cmath>

namespace znlab::testing {

Eigen::MatrixXcd clock_matrix(int n) {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) z(k, k) = std::polar(1.0, 2.0 * M_PI * k / n);
    return z;
}

Eigen::MatrixXcd shift_matrix(int n) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) x((k - 1 + n) % n, k) = 1.0;
    return x;
}

Eigen::MatrixXcd link_matrix(int n, int z_exp, int x_exp) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd z = clock_matrix(n), x = shift_matrix(n);
    for (int i = 0; i < ((z_exp % n) + n) % n; ++i) m = m * z;
    for (int i = 0; i < ((x_exp % n) + n) % n; ++i) m = m * x;
    return m;
}

namespace {

// Factor a generalized permutation matrix as phase * Z^a X^b, by direct
// comparison against all canonical candidates.
bool factor_link_matrix(const Eigen::MatrixXcd& m, int n, int& z_exp, int& x_exp,
                        Complex& phase) {
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const Eigen::MatrixXcd cand = link_matrix(n, a, b);
            // Find a nonzero reference entry.
            int r = -1, c = -1;
            for (int i = 0; i < n && r < 0; ++i)
                for (int j = 0; j < n && r < 0; ++j)
                    if (std::abs(cand(i, j)) > 0.5) {
                        r = i;
                        c = j;
                    }
            const Complex ratio = m(r, c) / cand(r, c);
            if (std::abs(std::abs(ratio) - 1.0) > 1e-9) continue;
            if ((m - ratio * cand).cwiseAbs().maxCoeff() < 1e-9) {
                z_exp = a;
                x_exp = b;
                phase = ratio;
                return true;
            }
        }
    }
    return false;
}

int phase_to_exponent(Complex phase, int n) {
    const double angle = std::arg(phase) * n / (2.0 * M_PI);
    const int k = static_cast<int>(std::llround(angle));
    if (std::abs(angle - k) > 1e-6) throw DomainError("phase is not a Z_N element");
    return ZnPhase::normalize(k, n);
}

}  // namespace

PauliString matrix_multiply_oracle(const PauliString& a, const PauliString& b) {
    const int n = a.order();
    std::map<int, int> links;
    for (const auto& [l, e] : a.z_powers()) links[l] = 1;
    for (const auto& [l, e] : a.x_powers()) links[l] = 1;
    for (const auto& [l, e] : b.z_powers()) links[l] = 1;
    for (const auto& [l, e] : b.x_powers()) links[l] = 1;

    PauliString out(n);
    Complex phase = a.phase().value() * b.phase().value();
    for (const auto& [link, unused] : links) {
        const Eigen::MatrixXcd prod = link_matrix(n, a.z_power(link), a.x_power(link)) *
                                      link_matrix(n, b.z_power(link), b.x_power(link));
        int z = 0, x = 0;
        Complex link_phase(1.0, 0.0);
        if (!factor_link_matrix(prod, n, z, x, link_phase))
            throw DomainError("per-link product is not a canonical string");
        phase *= link_phase;
        if (z) out = multiply(out, PauliString::z_on(n, link, z));
        if (x) out = multiply(out, PauliString::x_on(n, link, x));
    }
    out.multiply_phase(ZnPhase(n, phase_to_exponent(phase, n)));
    out.set_fermion_parity(a.fermion_parity() ^ b.fermion_parity());
    return out;
}

int matrix_commutation_oracle(const PauliString& a, const PauliString& b) {
    const int n = a.order();
    std::map<int, int> links;
    for (const auto& [l, e] : a.z_powers()) links[l] = 1;
    for (const auto& [l, e] : a.x_powers()) links[l] = 1;
    for (const auto& [l, e] : b.z_powers()) links[l] = 1;
    for (const auto& [l, e] : b.x_powers()) links[l] = 1;
    Complex ratio(1.0, 0.0);
    for (const auto& [link, unused] : links) {
        const Eigen::MatrixXcd ma = link_matrix(n, a.z_power(link), a.x_power(link));
        const Eigen::MatrixXcd mb = link_matrix(n, b.z_power(link), b.x_power(link));
        const Eigen::MatrixXcd ab = ma * mb, ba = mb * ma;
        int r = -1, c = -1;
        for (int i = 0; i < n && r < 0; ++i)
            for (int j = 0; j < n && r < 0; ++j)
                if (std::abs(ba(i, j)) > 1e-12) {
                    r = i;
                    c = j;
                }
        ratio *= ab(r, c) / ba(r, c);
    }
    return phase_to_exponent(ratio, n);
}

Eigen::MatrixXcd kron_matrix(const PauliString& s, const std::vector<int>& links) {
    const int n = s.order();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1) * s.phase().value();
    for (const int link : links) {
        const Eigen::MatrixXcd lm = link_matrix(n, s.z_power(link), s.x_power(link));
        Eigen::MatrixXcd next(m.rows() * n, m.cols() * n);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) next.block(i * n, j * n, n, n) = m(i, j) * lm;
        m = std::move(next);
    }
    return m;
}

LinkSpaceOracle::LinkSpaceOracle(const TorusLattice& lattice, int order)
    : lat_(&lattice), n_(order) {
    configs_ = 1;
    for (int l = 0; l < lat_->num_links(); ++l) {
        configs_ *= n_;
        if (configs_ > (1LL << 26)) throw CapacityError("link space too large for the oracle", 0);
    }
}

int LinkSpaceOracle::clock_value(std::int64_t config, int link) const {
    for (int l = 0; l < link; ++l) config /= n_;
    return static_cast<int>(config % n_);
}

LinkState LinkSpaceOracle::apply_to_config(const PauliString& s, std::int64_t config) const {
    // Decode, shift by the X powers, accumulate Z phases on the shifted values.
    std::vector<int> k(lat_->num_links());
    std::int64_t c = config;
    for (int l = 0; l < lat_->num_links(); ++l) {
        k[l] = static_cast<int>(c % n_);
        c /= n_;
    }
    for (const auto& [link, b] : s.x_powers()) k[link] = ZnPhase::normalize(k[link] - b, n_);
    long long phase = s.phase().exponent();
    for (const auto& [link, a] : s.z_powers()) phase += static_cast<long long>(a) * k[link];
    std::int64_t out = 0;
    for (int l = lat_->num_links() - 1; l >= 0; --l) out = out * n_ + k[l];
    LinkState state;
    state[out] = std::polar(1.0, 2.0 * M_PI * ZnPhase::normalize(phase, n_) / n_);
    return state;
}

LinkState LinkSpaceOracle::apply(const PauliString& s, const LinkState& state) const {
    LinkState out;
    for (const auto& [config, amp] : state)
        for (const auto& [config2, amp2] : apply_to_config(s, config)) out[config2] += amp * amp2;
    return out;
}

FluxBasisState LinkSpaceOracle::label_of(std::int64_t config) const {
    FluxBasisState label;
    label.order = n_;
    label.fluxes.assign(lat_->num_plaquettes(), 0);
    std::vector<int> k(lat_->num_links());
    std::int64_t c = config;
    for (int l = 0; l < lat_->num_links(); ++l) {
        k[l] = static_cast<int>(c % n_);
        c /= n_;
    }
    for (int p = 0; p < lat_->num_plaquettes(); ++p) {
        long long f = 0;
        for (const auto& step : lat_->plaquette_boundary(p)) f += step.sign * k[step.link];
        label.fluxes[p] = ZnPhase::normalize(f, n_);
    }
    long long za = 0, zb = 0;
    for (const auto& step : lat_->cycle_a_z()) za += step.sign * k[step.link];
    for (const auto& step : lat_->cycle_b_z()) zb += step.sign * k[step.link];
    label.z_a = ZnPhase::normalize(za, n_);
    label.z_b = ZnPhase::normalize(zb, n_);
    return label;
}

std::vector<int> LinkSpaceOracle::label_key(const FluxBasisState& label) const {
    std::vector<int> key = label.fluxes;
    key.push_back(label.z_a);
    key.push_back(label.z_b);
    return key;
}

void LinkSpaceOracle::build_orbits() {
    if (orbits_built_) return;
    for (std::int64_t c = 0; c < configs_; ++c) orbits_[label_key(label_of(c))].push_back(c);
    orbits_built_ = true;
}

std::int64_t LinkSpaceOracle::label_count() {
    build_orbits();
    return static_cast<std::int64_t>(orbits_.size());
}

std::int64_t LinkSpaceOracle::orbit_size(const FluxBasisState& label) {
    build_orbits();
    return static_cast<std::int64_t>(orbits_.at(label_key(label)).size());
}

LinkState LinkSpaceOracle::physical_vector(const FluxBasisState& label) {
    build_orbits();
    const auto& orbit = orbits_.at(label_key(label));
    LinkState v;
    const double amp = 1.0 / std::sqrt(static_cast<double>(orbit.size()));
    for (const auto c : orbit) v[c] = amp;
    return v;
}

PauliString star_string(const TorusLattice& lat, int n, int site) {
    PauliString s(n);
    s = multiply(s, PauliString::x_on(n, lat.link_index(site, 1), 1));
    s = multiply(s, PauliString::x_on(n, lat.link_index(site, 2), 1));
    s = multiply(s, PauliString::x_on(n, lat.link_index(lat.site_shift(site, -1, 0), 1), -1));
    s = multiply(s, PauliString::x_on(n, lat.link_index(lat.site_shift(site, 0, -1), 2), -1));
    return s;
}

PauliString plaquette_string(const TorusLattice& lat, int n, int plaq) {
    PauliString s(n);
    for (const auto& step : lat.plaquette_boundary(plaq))
        s = multiply(s, PauliString::z_on(n, step.link, step.sign));
    return s;
}

PauliString LinkSpaceOracle::star_operator(int site) const { return star_string(*lat_, n_, site); }

PauliString LinkSpaceOracle::plaquette_operator(int plaq) const {
    return plaquette_string(*lat_, n_, plaq);
}

LinkState LinkSpaceOracle::apply_hamiltonian(const GaugeModelSpec& spec,
                                             const LinkState& state) const {
    LinkState out;
    auto add = [&out](const LinkState& part, Complex scale) {
        for (const auto& [c, a] : part) out[c] += scale * a;
    };
    if (spec.lambda1 != 0.0) {
        for (int link = 0; link < lat_->num_links(); ++link) {
            add(apply(PauliString::x_on(n_, link, 1), state), -spec.lambda1);
            add(apply(PauliString::x_on(n_, link, -1), state), -spec.lambda1);
        }
    }
    for (int p = 0; p < lat_->num_plaquettes(); ++p) {
        const Complex tau = std::polar(1.0, 2.0 * M_PI * spec.tau_exponent(p) / n_);
        add(apply(plaquette_operator(p), state), -spec.lambda2 * tau);
        add(apply(inverse(plaquette_operator(p)), state), -spec.lambda2 * std::conj(tau));
    }
    if (spec.mass != 0.0)
        add(state, spec.mass * static_cast<double>(spec.static_charges.size()));
    return out;
}

Complex inner(const LinkState& a, const LinkState& b) {
    Complex acc(0.0, 0.0);
    for (const auto& [c, amp] : a) {
        auto it = b.find(c);
        if (it != b.end()) acc += std::conj(amp) * it->second;
    }
    return acc;
}

Eigen::MatrixXcd LinkSpaceOracle::physical_hamiltonian(const GaugeModelSpec& spec) {
    build_orbits();
    PhysicalBasis basis(spec);
    const std::int64_t dim = basis.dimension();

    // Charged sectors are reached by the canonical charging string.
    PauliString charging(n_);
    if (!spec.static_charges.empty()) {
        FluxAlgebra algebra(*lat_, n_);
        for (const auto& [link, e] : algebra.charging_pattern(spec.static_charges))
            charging = multiply(charging, PauliString::z_on(n_, link, e));
    }

    std::vector<LinkState> columns(dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        FluxBasisState label = basis.state_of(j);
        label.charges.clear();
        columns[j] = physical_vector(label);
        if (!spec.static_charges.empty()) columns[j] = apply(charging, columns[j]);
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        const LinkState hv = apply_hamiltonian(spec, columns[j]);
        for (std::int64_t i = 0; i < dim; ++i) h(i, j) = inner(columns[i], hv);
    }
    return h;
}

}  // namespace znlab::testing
