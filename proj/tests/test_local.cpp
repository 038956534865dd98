#include <doctest.h>

#include <random>

#include "mpv/local.hpp"

using namespace mpv;

namespace {

LocalElement random_element(const LocalRingPtr& R, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-400, 400);
    std::uniform_int_distribution<long> den(1, 30);
    std::vector<Rat> c;
    for (unsigned i = 0; i < R->e(); ++i) {
        Rat r(num(rng), den(rng));
        r.canonicalize();
        c.push_back(r);
    }
    return LocalElement(R, c);
}

std::vector<LocalRingPtr> rings() {
    return {
        LocalRing::trivial(5),
        LocalRing::make(3, {Int(3), Int(-3), Int(1)}),         // x^2 - 3x + 3
        LocalRing::make(2, {Int(2), Int(0), Int(1)}),          // x^2 + 2
        LocalRing::make(3, {Int(3), Int(0), Int(0), Int(1)}),  // x^3 + 3
    };
}

}  // namespace

TEST_CASE("Eisenstein recognition") {
    CHECK(LocalRing::is_eisenstein(3, {Int(3), Int(-3), Int(1)}));
    CHECK_FALSE(LocalRing::is_eisenstein(3, {Int(9), Int(0), Int(1)}));
    CHECK_FALSE(LocalRing::is_eisenstein(3, {Int(3), Int(1), Int(1)}));
    CHECK_FALSE(LocalRing::is_eisenstein(3, {Int(3), Int(0), Int(2)}));
    CHECK_THROWS_AS(LocalRing::make(2, {Int(4), Int(0), Int(1)}), ArithError);
}

TEST_CASE("basic valuations") {
    auto R = LocalRing::make(3, {Int(3), Int(-3), Int(1)});
    const LocalElement pi = LocalElement::uniformizer(R);
    CHECK(pi.valuation() == Valuation(1));
    CHECK(LocalElement(R, Rat(3)).valuation() == Valuation(2));
    CHECK(LocalElement(R, Rat(1, 9)).valuation() == Valuation(-4));
    CHECK(LocalElement(R).valuation().is_infinite());
    // pi^2 = 3 pi - 3
    CHECK(pi * pi == LocalElement(R, std::vector<Rat>{-3, 3}));
    CHECK(pi.pow(5).valuation() == Valuation(5));

    auto Z5 = LocalRing::trivial(5);
    CHECK(Z5->e() == 1);
    CHECK(LocalElement::uniformizer(Z5) == LocalElement(Z5, Rat(5)));
    CHECK(LocalElement(Z5, Rat(50, 3)).valuation() == Valuation(2));
}

TEST_CASE("valuation is additive and ultrametric") {
    std::mt19937_64 rng(31337);
    for (const auto& R : rings()) {
        for (int k = 0; k < 500; ++k) {
            LocalElement a = random_element(R, rng);
            LocalElement b = random_element(R, rng);
            CHECK(local_val(local_mul(a, b)) == a.valuation() + b.valuation());
            const Valuation s = (a + b).valuation();
            CHECK(s >= std::min(a.valuation(), b.valuation()));
            if (a.valuation() != b.valuation()) CHECK(s == std::min(a.valuation(), b.valuation()));
        }
    }
}

TEST_CASE("ring laws") {
    std::mt19937_64 rng(4);
    for (const auto& R : rings()) {
        for (int k = 0; k < 50; ++k) {
            LocalElement a = random_element(R, rng), b = random_element(R, rng), c = random_element(R, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
            CHECK((Rat(6) * a).divided_by(6) == a);
        }
    }
}

TEST_CASE("mixing rings is rejected") {
    auto A = LocalRing::trivial(5);
    auto B = LocalRing::trivial(7);
    CHECK_THROWS_AS(LocalElement(A, Rat(1)) + LocalElement(B, Rat(1)), ArithError);
    CHECK_THROWS_AS(local_mul(LocalElement(A, Rat(1)), LocalElement(B, Rat(1))), ArithError);
    CHECK_THROWS(LocalElement(A, Rat(1)).divided_by(0));
}
