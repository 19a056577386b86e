#include "znlab/pauli_string.hpp"

#include <sstream>

namespace znlab {

void PauliString::add_z(int link, int e) {
    const int v = ZnPhase::normalize(z_power(link) + e, order_);
    if (v == 0)
        z_.erase(link);
    else
        z_[link] = v;
}

void PauliString::add_x(int link, int e) {
    const int v = ZnPhase::normalize(x_power(link) + e, order_);
    if (v == 0)
        x_.erase(link);
    else
        x_[link] = v;
}

PauliString PauliString::z_on(int order, int link, int exponent) {
    PauliString s(order);
    s.add_z(link, exponent);
    return s;
}

PauliString PauliString::x_on(int order, int link, int exponent) {
    PauliString s(order);
    s.add_x(link, exponent);
    return s;
}

PauliString PauliString::z_string(int order, const LatticePath& path, int exponent) {
    if (path.kind != LatticePath::Kind::Original)
        throw GeometryError("z_string requires an original-lattice path");
    PauliString s(order);
    for (const auto& step : path.steps) s.add_z(step.link, exponent * step.sign);
    return s;
}

PauliString PauliString::x_string(int order, const LatticePath& path, int exponent) {
    if (path.kind != LatticePath::Kind::Dual)
        throw GeometryError("x_string requires a dual-lattice path");
    PauliString s(order);
    for (const auto& step : path.steps) s.add_x(step.link, exponent * step.sign);
    return s;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.order() != b.order())
        throw OrderMismatchError("cannot multiply strings of different group order");
    PauliString c(a.order());
    c.phase_ = a.phase_ * b.phase_;
    c.parity_ = (a.parity_ + b.parity_) % 2;
    c.z_ = a.z_;
    c.x_ = a.x_;
    // a's X block must move right past b's Z block: X^ax Z^bz = w^{ax*bz} Z^bz X^ax.
    for (const auto& [link, bz] : b.z_) {
        const int ax = a.x_power(link);
        if (ax != 0) c.phase_ *= ZnPhase(a.order(), ax * bz);
        c.add_z(link, bz);
    }
    for (const auto& [link, bx] : b.x_) c.add_x(link, bx);
    return c;
}

PauliString inverse(const PauliString& s) {
    PauliString inv(s.order());
    inv.multiply_phase(s.phase().inverse());
    inv.set_fermion_parity(s.fermion_parity());
    // (Z^a X^b)^-1 = X^-b Z^-a = w^{a*b} Z^-a X^-b per link.
    for (const auto& [link, a] : s.z_powers()) {
        const int b = s.x_power(link);
        if (b != 0) inv.multiply_phase(ZnPhase(s.order(), a * b));
    }
    for (const auto& [link, a] : s.z_powers())
        inv = multiply(inv, PauliString::z_on(s.order(), link, -a));
    for (const auto& [link, b] : s.x_powers())
        inv = multiply(inv, PauliString::x_on(s.order(), link, -b));
    return inv;
}

PauliString PauliString::dagger() const {
    return inverse(*this);
}

CommutationPhase commutation_phase(const PauliString& a, const PauliString& b) {
    if (a.order() != b.order())
        throw OrderMismatchError("cannot commute strings of different group order");
    long long e = 0;
    for (const auto& [link, ax] : a.x_powers()) e += static_cast<long long>(ax) * b.z_power(link);
    for (const auto& [link, az] : a.z_powers()) e -= static_cast<long long>(az) * b.x_power(link);
    CommutationPhase out{ZnPhase(a.order(), ZnPhase::normalize(e, a.order())),
                         (a.fermion_parity() * b.fermion_parity()) % 2 == 1 ? -1 : 1};
    return out;
}

std::string PauliString::str() const {
    std::ostringstream os;
    os << "w^" << phase_.exponent();
    if (parity_) os << " (odd)";
    for (const auto& [link, e] : z_) os << " Z[" << link << "]^" << e;
    for (const auto& [link, e] : x_) os << " X[" << link << "]^" << e;
    if (z_.empty() && x_.empty()) os << " 1";
    return os.str();
}

}  // namespace znlab
