#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "mpv/arith.hpp"
#include "mpv/series.hpp"

namespace mpv {

/// Sparse bivariate integer polynomial sum a_{i,j} X^i Y^j. Zero
/// coefficients are never stored.
class BivarPoly {
public:
    using Index = std::pair<unsigned, unsigned>;
    using Map = std::map<Index, Int>;

    BivarPoly() = default;
    explicit BivarPoly(std::uint64_t level) : level_(level) {}
    BivarPoly(std::uint64_t level, Map entries);

    std::uint64_t level() const { return level_; }
    const Map& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    Int coeff(unsigned i, unsigned j) const;
    void set(unsigned i, unsigned j, Int c);
    void add(unsigned i, unsigned j, const Int& c);

    /// Degree in X (resp. Y); -1 for the zero polynomial.
    int degree_x() const;
    int degree_y() const;
    bool is_symmetric() const;
    Int evaluate(const Int& x, const Int& y) const;
    /// Coefficients of P(X, y) from X^0 up.
    std::vector<Int> specialize_y(const Int& y) const;

    /// Throws std::runtime_error unless the polynomial has the shape of a
    /// modular polynomial of its level: symmetric, monic in X of degree psi(N).
    void check_modular_shape() const;

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
        return a.level_ == b.level_ && a.entries_ == b.entries_;
    }

private:
    std::uint64_t level_ = 0;
    Map entries_;
};

/// psi(N) = N prod_{p | N} (1 + 1/p).
std::uint64_t psi(std::uint64_t n);

/// q-expansion of j = E_4^3 / Delta, exact for exponents -1 .. prec.
IntSeries j_series(std::int64_t prec);

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PhiOptions {
    /// Largest prime level computed from q-expansions.
    std::uint64_t ceiling = 13;
    /// Initial j-expansion precision; 0 selects a default from the level.
    std::int64_t initial_precision = 0;
    int max_attempts = 12;
};

/// One attempt at Phi_ell with a fixed j-expansion precision. Throws
/// PrecisionExhausted when some eliminated remainder cannot be certified zero.
BivarPoly compute_phi_at_precision(std::uint64_t ell, std::int64_t precision);

/// Classical modular polynomial Phi_ell for prime ell, retrying with 25% more
/// precision whenever the remainder certificate fails.
BivarPoly compute_phi(std::uint64_t ell, const PhiOptions& opts = {});

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parse the published `[i,j] c` coefficient format. When `level` is not
/// given it is inferred from the degree, which fails if psi is not injective
/// there.
BivarPoly parse_modpoly_file(std::string_view text, std::optional<std::uint64_t> level = std::nullopt);
/// Pairs with i >= j in lexicographic order, monic terms omitted.
std::string serialize_modpoly(const BivarPoly& poly);

/// MODPOLY_DATA_DIR if set, else the data directory of the source tree.
std::string data_dir();
/// Whole file contents; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::string& path);
/// Phi_N from `phi_N.txt` in the data directory when present, otherwise
/// computed (prime N up to opts.ceiling).
BivarPoly load_phi(std::uint64_t N, const PhiOptions& opts = {});

}  // namespace mpv
