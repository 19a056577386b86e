#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "znlab/errors.hpp"

namespace znlab {

using Complex = std::complex<double>;

/// Compressed-sparse-row Hermitian matrix. Entries are stored fully (both
/// triangles); the builder sums duplicate coordinates.
class SparseMatrix {
  public:
    explicit SparseMatrix(std::int64_t n = 0) : n_(n), row_ptr_(n + 1, 0) {}

    std::int64_t size() const { return n_; }
    std::int64_t nonzeros() const { return static_cast<std::int64_t>(val_.size()); }

    static SparseMatrix from_triplets(std::int64_t n,
                                      std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> t) {
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                                    : std::get<1>(a) < std::get<1>(b);
        });
        SparseMatrix m(n);
        m.row_ptr_.assign(n + 1, 0);
        std::size_t i = 0;
        while (i < t.size()) {
            std::size_t j = i + 1;
            Complex v = std::get<2>(t[i]);
            while (j < t.size() && std::get<0>(t[j]) == std::get<0>(t[i]) &&
                   std::get<1>(t[j]) == std::get<1>(t[i])) {
                v += std::get<2>(t[j]);
                ++j;
            }
            if (std::abs(v.real()) > 0.0 || std::abs(v.imag()) > 0.0) {
                m.col_.push_back(std::get<1>(t[i]));
                m.val_.push_back(v);
                ++m.row_ptr_[std::get<0>(t[i]) + 1];
            }
            i = j;
        }
        for (std::int64_t r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
        return m;
    }

    void multiply(const Complex* x, Complex* y) const {
        for (std::int64_t r = 0; r < n_; ++r) {
            Complex acc(0.0, 0.0);
            for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
                acc += val_[k] * x[col_[k]];
            y[r] = acc;
        }
    }

    void multiply(const std::vector<Complex>& x, std::vector<Complex>& y) const {
        y.resize(n_);
        multiply(x.data(), y.data());
    }

    Complex coeff(std::int64_t r, std::int64_t c) const {
        for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            if (col_[k] == c) return val_[k];
        return Complex(0.0, 0.0);
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::int64_t r = 0; r < n_; ++r)
            for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
                fn(r, col_[k], val_[k]);
    }

  private:
    std::int64_t n_;
    std::vector<std::int64_t> row_ptr_;
    std::vector<std::int64_t> col_;
    std::vector<Complex> val_;
};

}  // namespace znlab
