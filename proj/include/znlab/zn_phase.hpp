#pragma once

#include <cmath>
#include <complex>

#include "znlab/errors.hpp"

namespace znlab {

/// A root of unity exp(2*pi*i*exponent/order) stored as exact integer data.
/// The exponent is always kept in the canonical range [0, order).
class ZnPhase {
  public:
    ZnPhase(int order, int exponent) : order_(order), exp_(normalize(exponent, order)) {
        if (order < 2) throw DomainError("group order must be >= 2");
    }

    static ZnPhase one(int order) { return ZnPhase(order, 0); }

    int order() const { return order_; }
    int exponent() const { return exp_; }

    ZnPhase& operator*=(const ZnPhase& other) {
        require_same_order(other);
        exp_ = normalize(exp_ + other.exp_, order_);
        return *this;
    }
    friend ZnPhase operator*(ZnPhase a, const ZnPhase& b) { return a *= b; }

    ZnPhase inverse() const { return ZnPhase(order_, -exp_); }

    ZnPhase pow(int k) const {
        long long e = static_cast<long long>(exp_) * k % order_;
        return ZnPhase(order_, static_cast<int>(e));
    }

    std::complex<double> value() const {
        return std::polar(1.0, 2.0 * M_PI * exp_ / order_);
    }

    friend bool operator==(const ZnPhase& a, const ZnPhase& b) {
        return a.order_ == b.order_ && a.exp_ == b.exp_;
    }
    friend bool operator!=(const ZnPhase& a, const ZnPhase& b) { return !(a == b); }

    static int normalize(long long e, int order) {
        long long r = e % order;
        if (r < 0) r += order;
        return static_cast<int>(r);
    }

  private:
    void require_same_order(const ZnPhase& other) const {
        if (order_ != other.order_)
            throw OrderMismatchError("cannot combine phases of different group order");
    }

    int order_;
    int exp_;
};

}  // namespace znlab
