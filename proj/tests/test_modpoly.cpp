#include <doctest.h>

#include <sstream>

#include "mpv/arith.hpp"
#include "mpv/modpoly.hpp"
#include "support.hpp"

using namespace mpv;
using testing_support::phi;

namespace {

/// Evaluate a product like "-1*2^3*5" exactly.
Int factored(const std::string& s) {
    Int out = 1;
    std::istringstream in(s);
    for (std::string f; std::getline(in, f, '*');) {
        auto caret = f.find('^');
        if (caret == std::string::npos) {
            out *= Int(f);
        } else {
            out *= ipow(Int(f.substr(0, caret)), std::stoul(f.substr(caret + 1)));
        }
    }
    return out;
}

struct Golden {
    unsigned i, j;
    const char* value;
};

// Phi_5 in factored form, predicted factor first.
const Golden kPhi5[] = {
    {0, 0, "2^90*3^18*11^9*5^3"},
    {1, 0, "2^75*3^15*11^6*2^2*3*5^3*31*1193"},
    {1, 1, "2^60*3^12*11^3*-1*2^2*3*26984268714163"},
    {2, 0, "2^60*3^12*11^3*3*5^2*13^2*3167*204437"},
    {2, 1, "2^45*3^9*2^2*3*5^4*53359*131896604713"},
    {3, 0, "2^45*3^9*2^3*5^2*31*1193*24203*2260451"},
    {2, 2, "2^30*3^6*3^2*5^4*7*13*1861*6854302120759"},
    {3, 1, "2^30*3^6*-1*2*3*5^3*327828841654280269"},
    {4, 0, "2^30*3^6*3*5*13^2*3167*204437"},
    {3, 2, "2^15*3^3*2^2*3*5^3*2311*2579*3400725958453"},
    {4, 1, "2^15*3^3*2^5*3*5^3*12107359229837"},
    {5, 0, "2^15*3^3*2^2*3*5*31*1193"},
    {3, 3, "-1*2^2*5^2*11*17*131*1061*169751677267033"},
    {4, 2, "3*5^3*167*6117103549378223"},
    {5, 1, "-1*2*3*5^2*1644556073"},
    {6, 0, "1"},
    {4, 3, "2^5*3*5^2*197*227*421*2387543"},
    {5, 2, "2^5*5^2*13*195053"},
    {4, 4, "2^3*5^2*257*32412439"},
    {5, 3, "-1*2^2*3^2*5*131*193"},
    {5, 4, "2^3*3*5*31"},
    {5, 5, "-1"},
};

const char* kPhi2Text =
    "# Phi_2\n"
    "[0,0] -157464000000000\n"
    "[1,0] 8748000000\n"
    "[1,1] 40773375\n"
    "[2,0] -162000\n"
    "[2,1] 1488\n"
    "[2,2] -1\n";

}  // namespace

TEST_CASE("psi") {
    CHECK(psi(1) == 1);
    CHECK(psi(5) == 6);
    CHECK(psi(4) == 6);
    CHECK(psi(12) == 24);
    CHECK(psi(101) == 102);
}

TEST_CASE("Phi_5 matches the factored table") {
    const BivarPoly& p5 = phi(5);
    std::size_t expected_entries = 0;
    for (const auto& g : kPhi5) {
        const Int v = factored(g.value);
        CAPTURE(g.i);
        CAPTURE(g.j);
        CHECK(p5.coeff(g.i, g.j) == v);
        CHECK(p5.coeff(g.j, g.i) == v);
        expected_entries += (g.i == g.j) ? 1 : 2;
    }
    // the table lists every entry with i >= j, monic term included
    CHECK(p5.size() == expected_entries);
    CHECK(p5.coeff(6, 0) == 1);
    CHECK(p5.coeff(0, 6) == 1);
}

TEST_CASE("structural properties of computed Phi_l") {
    for (std::uint64_t l : {2, 3, 5, 7, 11, 13}) {
        CAPTURE(l);
        const BivarPoly& p = phi(l);
        CHECK(p.is_symmetric());
        CHECK(p.degree_x() == static_cast<int>(l + 1));
        CHECK(p.coeff(l + 1, 0) == 1);
        CHECK_NOTHROW(p.check_modular_shape());
        // Kronecker congruence: Phi_l = X^{l+1} - X^l Y^l - X Y + Y^{l+1} mod l
        BivarPoly ref(l);
        ref.set(l + 1, 0, 1);
        ref.set(0, l + 1, 1);
        ref.set(l, l, -1);
        ref.set(1, 1, -1);
        const Int L(static_cast<unsigned long>(l));
        for (unsigned i = 0; i <= l + 1; ++i)
            for (unsigned j = 0; j <= l + 1; ++j) {
                Int d = p.coeff(i, j) - ref.coeff(i, j);
                CHECK(Int(d % L) == 0);
            }
    }
}

TEST_CASE("Phi_l vanishes at j(tau), j(l tau) as q-series") {
    // Phi_l(j(q), j(q^l)) = 0 through the known precision
    const std::uint64_t l = 3;
    const BivarPoly& p = phi(l);
    const std::int64_t prec = 40;
    IntSeries jq = j_series(prec * static_cast<std::int64_t>(l));
    IntSeries jql = jq.inflate(static_cast<std::int64_t>(l));
    IntSeries total = IntSeries::zero(prec);
    for (const auto& [ij, c] : p.entries()) total = total + c * (jq.pow(ij.first) * jql.pow(ij.second));
    CHECK(total.prec() > 0);
    for (std::int64_t e = total.lead(); e < total.prec(); ++e) CHECK(total.coeff(e) == 0);
}

TEST_CASE("compute_phi preconditions") {
    CHECK_THROWS_AS(compute_phi(4), std::invalid_argument);
    CHECK_THROWS_AS(compute_phi(17), std::invalid_argument);
    CHECK_NOTHROW(compute_phi(17, {.ceiling = 17}));
    CHECK_THROWS_AS(compute_phi_at_precision(13, 20), PrecisionExhausted);
}

TEST_CASE("parsing the published format") {
    BivarPoly p2 = parse_modpoly_file(kPhi2Text);
    CHECK(p2.level() == 2);
    CHECK(p2 == phi(2));
    CHECK(p2.coeff(0, 1) == Int(8748000000));
    CHECK(p2.coeff(3, 0) == 1);

    // serialization round trip
    CHECK(parse_modpoly_file(serialize_modpoly(phi(7))) == phi(7));
    CHECK(parse_modpoly_file(serialize_modpoly(phi(13)), 13) == phi(13));

    // explicit monic terms are accepted
    CHECK(parse_modpoly_file(std::string(kPhi2Text) + "[3,0] 1\n") == p2);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_modpoly_file(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("[0,0] 1\n[0,0] 2\n") == 2);               // duplicate
    CHECK(line_of(std::string(kPhi2Text) + "[0,1] 5\n") > 0);  // conflicting mirror
    CHECK(line_of(std::string(kPhi2Text) + "[0,1] 8748000000\n") == 0);  // consistent mirror is fine
    CHECK(line_of("[0,0] 1\n[1,0 5\n") == 2);                // malformed index
    CHECK(line_of("[0,0] 1\n[1,0] abc\n") == 2);             // malformed value
    CHECK_THROWS(parse_modpoly_file("[0,0] 1\n[1,1] 2\n", 5));  // wrong level for the degree
    CHECK_THROWS(parse_modpoly_file("[3,0] 2\n[0,0] 1\n", 2));  // not monic
}

TEST_CASE("data directory lookup") {
    // phi_2.txt and phi_3.txt ship with the data directory
    CHECK(load_phi(2) == phi(2));
    CHECK(load_phi(3) == compute_phi(3));
    CHECK_THROWS(load_phi(15));
}
