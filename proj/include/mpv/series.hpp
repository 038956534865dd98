#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpv/arith.hpp"

namespace mpv {

/// Integer Laurent series in q, known exactly for exponents in [lead, prec).
///
/// Storage is dense: coeffs()[k] is the coefficient of q^(lead + k) and
/// coeffs().size() == prec - lead. Operations never extend precision; the
/// result precision of every operation is the largest one justified by its
/// inputs.
class IntSeries {
public:
    IntSeries() = default;
    IntSeries(std::int64_t lead, std::vector<Int> coeffs, std::int64_t prec);

    /// The series consisting of the given coefficients starting at `lead`,
    /// known up to (excluding) exponent `prec`; missing entries are zero.
    static IntSeries from_terms(std::int64_t lead, std::vector<Int> coeffs, std::int64_t prec);
    /// c * q^e known up to `prec`.
    static IntSeries monomial(Int c, std::int64_t e, std::int64_t prec);
    static IntSeries zero(std::int64_t prec);

    std::int64_t lead() const { return lead_; }
    std::int64_t prec() const { return prec_; }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    /// Coefficient of q^e; throws if e >= prec.
    Int coeff(std::int64_t e) const;
    /// Lowest exponent with a nonzero coefficient, or prec if none is known.
    std::int64_t valuation() const;
    /// True if every known coefficient is zero.
    bool is_zero() const;

    /// Drop leading zero coefficients.
    IntSeries normalized() const;
    /// Forget all terms with exponent >= new_prec (new_prec <= prec).
    IntSeries truncated(std::int64_t new_prec) const;

    IntSeries operator-() const;
    friend IntSeries operator+(const IntSeries& a, const IntSeries& b);
    friend IntSeries operator-(const IntSeries& a, const IntSeries& b);
    friend IntSeries operator*(const IntSeries& a, const IntSeries& b);
    friend IntSeries operator*(const Int& c, const IntSeries& a);

    /// Exact division of every coefficient by d; throws ArithError if inexact.
    IntSeries divexact(const Int& d) const;
    IntSeries pow(unsigned k) const;
    /// Multiplicative inverse; the leading coefficient must be +-1.
    IntSeries inverse() const;
    /// Multiply by q^s.
    IntSeries shifted(std::int64_t s) const;
    /// Substitute q -> q^m.
    IntSeries inflate(std::int64_t m) const;
    /// Keep the terms whose exponent is divisible by m and substitute
    /// q^(k m) -> q^k.
    IntSeries dissect(std::int64_t m) const;

    std::string str(std::size_t max_terms = 8) const;

private:
    std::int64_t lead_ = 0;
    std::int64_t prec_ = 0;
    std::vector<Int> coeffs_;
};

/// Eisenstein series E_4 = 1 + 240 sum sigma_3(n) q^n, known below `prec`.
IntSeries eisenstein_e4(std::int64_t prec);
/// prod_{n>=1} (1 - q^n), known below `prec`.
IntSeries euler_product(std::int64_t prec);

}  // namespace mpv
