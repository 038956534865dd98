#pragma once

#include <cstdint>
#include <vector>

#include "mpv/arith.hpp"

namespace mpv {

/// Univariate polynomial over F_p, coefficients from the constant term up.
/// The leading stored coefficient is nonzero unless the polynomial is zero.
class FpPoly {
public:
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    /// Reduce integer coefficients modulo p.
    static FpPoly reduce(std::uint64_t p, const std::vector<Int>& coeffs);

    std::uint64_t p() const { return p_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Index of the lowest nonzero coefficient (order of vanishing at X = 0);
    /// -1 for the zero polynomial.
    int ord() const;

    std::uint64_t operator()(std::uint64_t x) const;
    /// f(X + a).
    FpPoly taylor_shift(std::uint64_t a) const;

private:
    void trim();

    std::uint64_t p_;
    std::vector<std::uint64_t> coeffs_;
};

}  // namespace mpv
