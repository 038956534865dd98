#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpv/local.hpp"

namespace mpv {

/// Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a
/// local ring, with its standard derived quantities.
struct CurveModel {
    LocalRingPtr ring;
    LocalElement a1, a2, a3, a4, a6;
    LocalElement b2, b4, b6, c4, c6, disc;
    std::string label;
};

class BadReduction : public std::invalid_argument {
public:
    BadReduction(const std::string& what, Valuation v) : std::invalid_argument(what), valuation(v) {}
    Valuation valuation;
};

/// Fill in b2..c6 and the discriminant. Throws BadReduction if v(disc) != 0.
CurveModel curve_derived(const LocalElement& a1, const LocalElement& a2, const LocalElement& a3, const LocalElement& a4,
                         const LocalElement& a6, std::string label = {});

/// Polynomial in x0, x1, x2, x3, y0 with LocalElement coefficients.
class MultiPoly {
public:
    using Monomial = std::array<unsigned char, 5>;
    enum Var { X0 = 0, X1, X2, X3, Y0 };

    explicit MultiPoly(LocalRingPtr ring) : ring_(std::move(ring)) {}
    static MultiPoly constant(const LocalElement& c);
    static MultiPoly variable(LocalRingPtr ring, Var v);

    const LocalRingPtr& ring() const { return ring_; }
    const std::map<Monomial, LocalElement>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;
    LocalElement coeff(const Monomial& m) const;

    void add_term(const Monomial& m, const LocalElement& c);

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Rat& c, const MultiPoly& a);
    friend MultiPoly operator*(const LocalElement& c, const MultiPoly& a);
    MultiPoly pow(unsigned k) const;
    MultiPoly divided_by(const Rat& c) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    LocalElement evaluate(const std::array<LocalElement, 5>& point) const;
    std::string str() const;

private:
    LocalRingPtr ring_;
    std::map<Monomial, LocalElement> terms_;
};

struct VeluPolys {
    MultiPoly t, w, g;
};

/// t, w and g for the isogeny degree N (only N's parity and (N-1)/2, (N-2)/2,
/// N/2 enter). Requires N > 1 and p not dividing N.
VeluPolys build_velu_polys(const CurveModel& curve, std::uint64_t N);
MultiPoly build_g(const CurveModel& curve, std::uint64_t N);

struct GValuation {
    std::int64_t n_v = 0;
    Rat n_p;  ///< n_v / e
    /// Monomials whose coefficient has negative valuation (g not integral).
    std::vector<MultiPoly::Monomial> non_integral;
};

GValuation g_valuation(const CurveModel& curve, std::uint64_t N);

/// Coefficients of the image curve for isogeny data (t, w).
template <class T>
struct VeluImageT {
    T a1, a2, a3, a4, a6, c4, c6;
};
using VeluImage = VeluImageT<LocalElement>;

/// a4' = a4 - 5t, a6' = a6 - b2 t - 7w; asserts that c4, c6 recomputed from the
/// primed coefficients equal c4 + 240t and c6 + 504 b2 t + 6048 w, throwing
/// std::logic_error otherwise.
VeluImage velu_image(const CurveModel& curve, const LocalElement& t, const LocalElement& w);

/// g rebuilt from the symbolic image curve (a4', a6' as polynomials), checked
/// against build_g and against 1728 g = (c4+240t)^3 c6^2 - c4^3 (c6+504 b2 t+6048 w)^2.
bool g_consistent(const CurveModel& curve, std::uint64_t N);

// ---- fixtures -------------------------------------------------------------------

struct VeluFixture {
    std::string name;
    CurveModel curve;
    struct Expect {
        unsigned modulus;
        unsigned residue;
        std::int64_t n_v;
    };
    std::vector<Expect> expectations;

    /// Expected n_v for N, if some expectation's class contains N.
    std::optional<std::int64_t> expected(std::uint64_t N) const;
};

class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixture file format, one directive per line ('#' starts a comment):
///   fixture NAME
///   ring P E f_0 ... f_E            (monic Eisenstein polynomial, constant term first)
///   curve c_1 ... c_{5E}            (a1, a2, a3, a4, a6; E rational coordinates each)
///   expect MODULUS RESIDUE N_V      (optional, repeatable)
std::vector<VeluFixture> parse_fixtures(std::string_view text);
/// Fixtures from `velu_fixtures.txt` in the data directory.
std::vector<VeluFixture> load_default_fixtures();
const VeluFixture& find_fixture(const std::vector<VeluFixture>& fixtures, std::string_view name);

}  // namespace mpv
