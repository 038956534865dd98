#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpv/arith.hpp"
#include "mpv/local.hpp"
#include "mpv/modpoly.hpp"

namespace mpv {

/// P(X + J, Y + J), re-expanded.
BivarPoly shift_poly(const BivarPoly& poly, const Int& J);

/// Exact v_p of every stored coefficient. Works modulo p^cap and doubles the
/// cap whenever a nonzero coefficient vanishes modulo p^cap.
std::map<BivarPoly::Index, std::int64_t> coeff_valuations(const BivarPoly& poly, std::uint64_t p, unsigned cap = 64);

// ---- bound verification --------------------------------------------------------

struct SlackEntry {
    unsigned i = 0;
    unsigned j = 0;
    std::int64_t valuation = 0;
    Rat bound;  ///< n * (C - i - j); the required valuation is ceil(bound)
    Rat slack;  ///< valuation - bound
};

/// Lower bounds v_p(a_{i,j}) >= n (C - i - j) checked for all i + j < C.
struct ValuationReport {
    std::uint64_t level = 0;
    std::uint64_t p = 0;
    Rat n;
    unsigned C = 0;
    std::string rule;  ///< which statement produced (n, C)
    std::vector<SlackEntry> entries;
    std::optional<Rat> min_slack;  ///< empty when no coefficient is constrained
    std::vector<SlackEntry> violations;
    bool skipped = false;
    std::string note;

    bool ok() const { return violations.empty(); }
};

/// Check v_p(a_{i,j}) >= n (C - i - j) over i + j < C. Zero coefficients
/// satisfy every bound and are not listed.
ValuationReport check_bound(const BivarPoly& poly, std::uint64_t p, const Rat& n, unsigned C, std::string rule);

/// Divisibility bounds for the coefficients of Phi_N itself at p = 2, 3, 5 and
/// at the primes 11 <= p < 3N with p = 2 mod 3.
std::vector<ValuationReport> verify_coefficient_bounds(const BivarPoly& phi);

/// A class-number-one singular modulus and its exceptional multipliers.
struct SingularModulusRecord {
    Int J;
    std::string J_minus_1728_factorization;
    std::int64_t D = 0;
    unsigned class_number = 1;

    /// n_p applies when p matches and N mod `modulus` lies in `residues`.
    struct Exception {
        std::uint64_t p;
        unsigned modulus;
        std::vector<unsigned> residues;
        Rat n;
    };
    std::vector<Exception> exceptional_n;
};

/// The 13 rational singular moduli.
const std::vector<SingularModulusRecord>& singular_moduli();
const SingularModulusRecord& singular_modulus_by_D(std::int64_t D);

/// Multiplier n_p for (J, p, N): an exceptional value if one applies, otherwise
/// 15 / 6 / 3 when p | J (p = 2 / 3 / >= 5), 2 when p | J - 1728 and p >= 5, else 1.
Rat singular_multiplier(const SingularModulusRecord& rec, std::uint64_t p, std::uint64_t N);

/// Bounds on the coefficients of Phi_N(X + J, Y + J) at primes p not dividing
/// N with (D|p) != 1 and p < |D| N.
std::vector<ValuationReport> verify_singular(const BivarPoly& phi, const SingularModulusRecord& rec);

// ---- interpolation bound ------------------------------------------------------

/// The interpolation points do not satisfy v(y_k) = n and v(y_k - y_l) = n.
class HypothesisViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// For f = sum a_j Y^j and points y_0..y_d with v(y_k) = v(y_k - y_l) = n,
/// whether v(a_j) >= min_k v(f(y_k)) - n j for every j.
bool interpolation_bound_check(const std::vector<LocalElement>& coeffs, const std::vector<LocalElement>& points, std::int64_t n);

// ---- compressed storage -------------------------------------------------------

class CompressionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Phi_N with the predicted prime-power factors divided out of each
/// coefficient. Version 1 strips only the factors 2, 3, 5 that depend on N
/// alone; version 2 additionally strips p^(3 (C_0(N,p) - i - j)) for the
/// primes 11 <= p < 3N, p = 2 mod 3, recording C_0(N,p) in the header.
struct CompressedPoly {
    std::uint64_t level = 0;
    unsigned version = 2;
    std::map<std::uint64_t, unsigned> c0;  ///< version 2 only: p -> C_0(N,p) > 0
    std::map<BivarPoly::Index, Int> residuals;  ///< i >= j

    friend bool operator==(const CompressedPoly&, const CompressedPoly&) = default;
};

/// Exponent of p stripped from a_{i,j} (i >= j).
unsigned stripped_exponent(const CompressedPoly& header, std::uint64_t p, unsigned i, unsigned j);

CompressedPoly compress(const BivarPoly& phi, unsigned version = 2);
BivarPoly decompress(const CompressedPoly& c);

std::string serialize_compressed(const CompressedPoly& c);
CompressedPoly parse_compressed(std::string_view text);

struct DigitStats {
    std::size_t naive_digits = 0;
    std::size_t compressed_digits = 0;
    double saving = 0;
};

/// Characters needed to write the entries with i >= j in decimal, minus sign
/// included, for the coefficients and for the residuals.
DigitStats digit_stats(const BivarPoly& phi, const CompressedPoly& c);

}  // namespace mpv
