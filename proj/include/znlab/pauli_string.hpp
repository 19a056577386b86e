#pragma once

#include <map>
#include <string>

#include "znlab/torus_lattice.hpp"
#include "znlab/zn_phase.hpp"

namespace znlab {

/// Result of reordering two strings: a*b = phase * (-1)^{parity product} * b*a.
/// The root-of-unity part and the fermionic sign are reported separately;
/// for even group order the sign can be folded into the exponent (-1 = w^{N/2}),
/// for odd order it cannot.
struct CommutationPhase {
    ZnPhase phase;
    int fermion_sign = 1;

    ZnPhase folded() const {
        if (fermion_sign > 0) return phase;
        if (phase.order() % 2 != 0)
            throw DomainError("fermionic sign is not an element of odd-order Z_N");
        return phase * ZnPhase(phase.order(), phase.order() / 2);
    }
};

/// Product of clock (Z) and shift (X) powers on lattice links with a global
/// Z_N phase and a fermion parity bit for attached matter operators.
///
/// Canonical form: per link the Z power is written left of the X power, links
/// with both exponents zero are absent from the maps. Operators on distinct
/// links commute, so the string equals
///     w^{phase} * (prod_l Z_l^{z_l}) * (prod_l X_l^{x_l}).
class PauliString {
  public:
    explicit PauliString(int order) : order_(order), phase_(order, 0) {
        if (order < 2) throw DomainError("group order must be >= 2");
    }

    static PauliString identity(int order) { return PauliString(order); }
    static PauliString z_on(int order, int link, int exponent = 1);
    static PauliString x_on(int order, int link, int exponent = 1);

    /// Z^exponent along an original-lattice path (oriented per step).
    static PauliString z_string(int order, const LatticePath& path, int exponent = 1);
    /// X^exponent on the links crossed by a dual-lattice path (signed per step).
    static PauliString x_string(int order, const LatticePath& path, int exponent = 1);

    int order() const { return order_; }
    const std::map<int, int>& z_powers() const { return z_; }
    const std::map<int, int>& x_powers() const { return x_; }
    const ZnPhase& phase() const { return phase_; }
    int fermion_parity() const { return parity_; }

    int z_power(int link) const { return power(z_, link); }
    int x_power(int link) const { return power(x_, link); }

    bool is_identity() const {
        return z_.empty() && x_.empty() && phase_.exponent() == 0 && parity_ == 0;
    }

    PauliString& multiply_phase(const ZnPhase& p) {
        phase_ *= p;
        return *this;
    }
    PauliString& set_fermion_parity(int parity) {
        parity_ = ((parity % 2) + 2) % 2;
        return *this;
    }

    PauliString dagger() const;

    friend bool operator==(const PauliString& a, const PauliString& b) {
        return a.order_ == b.order_ && a.z_ == b.z_ && a.x_ == b.x_ &&
               a.phase_ == b.phase_ && a.parity_ == b.parity_;
    }

    std::string str() const;

  private:
    static int power(const std::map<int, int>& m, int link) {
        auto it = m.find(link);
        return it == m.end() ? 0 : it->second;
    }
    void add_z(int link, int e);
    void add_x(int link, int e);

    int order_;
    std::map<int, int> z_, x_;
    ZnPhase phase_;
    int parity_ = 0;

    friend PauliString multiply(const PauliString&, const PauliString&);
};

/// Canonical-form product a*b. Moving each X^a past each Z^b on the same link
/// contributes phase exponent +a*b. Fermion parities add mod 2; no
/// anticommutation sign arises because operand order is preserved.
PauliString multiply(const PauliString& a, const PauliString& b);

PauliString inverse(const PauliString& s);

/// Phase f with a*b = f * (b*a): exponent sum_l (a.x*b.z - a.z*b.x) mod N,
/// with the fermionic sign (-1)^{a.parity * b.parity} reported separately.
CommutationPhase commutation_phase(const PauliString& a, const PauliString& b);

}  // namespace znlab
