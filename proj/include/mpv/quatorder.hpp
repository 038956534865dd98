#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mpv/arith.hpp"

namespace mpv {

using Gram = std::array<std::array<Rat, 4>, 4>;

/// A maximal order in the quaternion algebra ramified at {p, infinity},
/// given by the Gram matrix Q of its reduced norm: nrd(sum x_k b_k) = x^T Q x.
class QuatOrder {
public:
    /// Validates the form (symmetric, integral, positive definite) and the
    /// maximality certificate det(2Q) = p^2; throws std::invalid_argument.
    QuatOrder(std::uint64_t p, Gram gram, std::string label);

    std::uint64_t p() const { return p_; }
    const Gram& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    /// Number of units (elements of reduced norm 1).
    std::uint64_t unit_count() const { return unit_count_; }

    Rat norm(const std::array<std::int64_t, 4>& x) const;
    /// det(2Q), the discriminant of the trace pairing.
    Rat trace_form_det() const;

private:
    std::uint64_t p_;
    Gram gram_;
    std::string label_;
    std::uint64_t unit_count_ = 0;
};

/// Maximal order attached to the unique supersingular j-invariant mod p for
/// p in {2, 3, 5, 7, 13}. Built from an explicit quaternion basis; the basis
/// is checked to be closed under multiplication and the order is checked
/// against det(2Q) = p^2 and the mass identity 1/#O* = (p - 1)/24.
const QuatOrder& order_registry(std::uint64_t p);
/// The supersingular j-invariant whose endomorphism ring order_registry(p) is.
Int supersingular_j(std::uint64_t p);

/// Registry override: `p` on the first line, then four rows of four rationals.
QuatOrder parse_order_file(std::string_view text);

/// counts[m] = #{x : nrd(x) = m} for 0 <= m <= upto (exact Fincke-Pohst
/// enumeration with rational Cholesky data).
std::vector<std::uint64_t> theta_series(const QuatOrder& order, std::uint64_t upto);
std::uint64_t theta_count(const QuatOrder& order, std::uint64_t m);

/// Normalization of the cyclic count: c_norm = factor / #O*.
enum class CNorm { PerUnit = 1, Printed = 2 };

/// c_norm * sum_{d^2 | N} mu(d) theta(N / d^2). Throws if gcd(N, p) != 1.
Rat cyclic_count(const QuatOrder& order, std::uint64_t N, CNorm norm);

struct Calibration {
    CNorm chosen = CNorm::PerUnit;
    Rat per_unit_value;   ///< theta-based count with c_norm = 1/#O*
    Rat printed_value;    ///< with c_norm = 2/#O*
    unsigned reference = 0;  ///< C_0(3, 2) from Phi_3 mod 2
    bool consistent = false;  ///< some candidate matched the reference
    std::string report;
};

/// Decide c_norm on the instance (p = 2, N = 3) from the mod-2 root order of
/// Phi_3 at J = 0 and describe the outcome.
Calibration calibrate_cnorm(unsigned reference_c0_3_2);

}  // namespace mpv
