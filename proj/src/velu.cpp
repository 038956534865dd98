#include "mpv/velu.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "mpv/modpoly.hpp"

namespace mpv {

namespace {

template <class T>
struct Derived {
    T b2, b4, b6, c4, c6;
};

template <class T>
Derived<T> derive(const T& a1, const T& a2, const T& a3, const T& a4, const T& a6) {
    T b2 = a1 * a1 + Rat(4) * a2;
    T b4 = a1 * a3 + Rat(2) * a4;
    T b6 = a3 * a3 + Rat(4) * a6;
    T c4 = b2 * b2 - Rat(24) * b4;
    T c6 = Rat(36) * b2 * b4 - b2 * b2 * b2 - Rat(216) * b6;
    return {b2, b4, b6, c4, c6};
}

}  // namespace

CurveModel curve_derived(const LocalElement& a1, const LocalElement& a2, const LocalElement& a3, const LocalElement& a4,
                         const LocalElement& a6, std::string label) {
    CurveModel c;
    c.ring = a1.ring();
    c.a1 = a1;
    c.a2 = a2;
    c.a3 = a3;
    c.a4 = a4;
    c.a6 = a6;
    auto d = derive(a1, a2, a3, a4, a6);
    c.b2 = d.b2;
    c.b4 = d.b4;
    c.b6 = d.b6;
    c.c4 = d.c4;
    c.c6 = d.c6;
    c.disc = (c.c4.pow(3) - c.c6.pow(2)).divided_by(1728);
    c.label = std::move(label);
    const Valuation v = c.disc.valuation();
    if (v != Valuation(0))
        throw BadReduction("curve " + (c.label.empty() ? std::string("model") : c.label) + " has bad reduction: v(disc) = " + v.str(),
                           v);
    return c;
}

// ---- MultiPoly ---------------------------------------------------------------------

MultiPoly MultiPoly::constant(const LocalElement& c) {
    MultiPoly p(c.ring());
    p.add_term(Monomial{}, c);
    return p;
}

MultiPoly MultiPoly::variable(LocalRingPtr ring, Var v) {
    MultiPoly p(ring);
    Monomial m{};
    m[v] = 1;
    p.add_term(m, LocalElement(ring, Rat(1)));
    return p;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (auto e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

LocalElement MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LocalElement(ring_) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const LocalElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            MultiPoly::Monomial m;
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = static_cast<unsigned char>(ma[k] + mb[k]);
            r.add_term(m, ca * cb);
        }
    return r;
}

MultiPoly operator*(const Rat& c, const MultiPoly& a) {
    MultiPoly r(a.ring_);
    for (const auto& [m, x] : a.terms_) r.add_term(m, c * x);
    return r;
}

MultiPoly operator*(const LocalElement& c, const MultiPoly& a) {
    MultiPoly r(a.ring_);
    for (const auto& [m, x] : a.terms_) r.add_term(m, c * x);
    return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly r = constant(LocalElement(ring_, Rat(1)));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

MultiPoly MultiPoly::divided_by(const Rat& c) const {
    MultiPoly r(ring_);
    for (const auto& [m, x] : terms_) r.add_term(m, x.divided_by(c));
    return r;
}

LocalElement MultiPoly::evaluate(const std::array<LocalElement, 5>& point) const {
    LocalElement sum(ring_);
    for (const auto& [m, c] : terms_) {
        LocalElement term = c;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m[k] != 0) term *= point[k].pow(m[k]);
        sum += term;
    }
    return sum;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[] = {"x0", "x1", "x2", "x3", "y0"};
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            out += std::string("*") + names[k];
            if (m[k] > 1) out += "^" + std::to_string(m[k]);
        }
    }
    return out;
}

// ---- t, w, g ---------------------------------------------------------------------

VeluPolys build_velu_polys(const CurveModel& curve, std::uint64_t N) {
    const LocalRingPtr& R = curve.ring;
    if (N < 2) throw std::invalid_argument("build_g: N must be at least 2");
    if (N % R->p() == 0)
        throw std::invalid_argument("build_g: p = " + std::to_string(R->p()) + " divides N = " + std::to_string(N));

    auto K = [&](const LocalElement& c) { return MultiPoly::constant(c); };
    const MultiPoly x0 = MultiPoly::variable(R, MultiPoly::X0);
    const MultiPoly x1 = MultiPoly::variable(R, MultiPoly::X1);
    const MultiPoly x2 = MultiPoly::variable(R, MultiPoly::X2);
    const MultiPoly x3 = MultiPoly::variable(R, MultiPoly::X3);
    const MultiPoly y0 = MultiPoly::variable(R, MultiPoly::Y0);
    const Rat n(Int(static_cast<unsigned long>(N)));

    MultiPoly t = Rat(6) * x2 + curve.b2 * x1;
    MultiPoly w = Rat(10) * x3 + Rat(2) * curve.b2 * x2 + Rat(3) * curve.b4 * x1;
    if (N % 2 == 1) {
        const Rat h = (n - 1) / 2;
        t = t + K(h * curve.b4);
        w = w + K(h * curve.b6);
    } else {
        t = t + K(Rat((n - 2) / 2) * curve.b4) + Rat(3) * x0.pow(2) + Rat(2) * curve.a2 * x0 + K(curve.a4) - curve.a1 * y0;
        w = w + K(Rat(n / 2) * curve.b6) + Rat(7) * x0.pow(3) + (curve.b2 + Rat(2) * curve.a2) * x0.pow(2) +
            (Rat(2) * curve.b4 + curve.a4) * x0 - curve.a1 * (x0 * y0);
    }

    const MultiPoly c4t = K(curve.c4) + Rat(240) * t;
    const MultiPoly c6t = K(curve.c6) + Rat(504) * curve.b2 * t + Rat(6048) * w;
    const LocalElement c6sq = curve.c6 * curve.c6;
    const LocalElement c4cube = curve.c4.pow(3);
    MultiPoly g = (c6sq * c4t.pow(3) - c4cube * c6t.pow(2)).divided_by(1728);
    return {std::move(t), std::move(w), std::move(g)};
}

MultiPoly build_g(const CurveModel& curve, std::uint64_t N) { return build_velu_polys(curve, N).g; }

GValuation g_valuation(const CurveModel& curve, std::uint64_t N) {
    const MultiPoly g = build_g(curve, N);
    if (g.is_zero()) throw std::logic_error("g_valuation: g vanishes identically");
    GValuation out;
    bool first = true;
    for (const auto& [m, c] : g.terms()) {
        const std::int64_t v = c.valuation().value();
        if (v < 0) out.non_integral.push_back(m);
        if (first || v < out.n_v) out.n_v = v;
        first = false;
    }
    out.n_p = Rat(Int(static_cast<long>(out.n_v)), Int(static_cast<unsigned long>(curve.ring->e())));
    out.n_p.canonicalize();
    return out;
}

// ---- image curve -----------------------------------------------------------------

namespace {

template <class T, class S>
VeluImageT<T> image_of(const S& a1, const S& a2, const S& a3, const S& a4, const S& a6, const S& b2, const T& t, const T& w,
                       const T& one) {
    T A1 = a1 * one, A2 = a2 * one, A3 = a3 * one;
    T A4 = a4 * one - Rat(5) * t;
    T A6 = a6 * one - b2 * t - Rat(7) * w;
    auto d = derive(A1, A2, A3, A4, A6);
    return {A1, A2, A3, A4, A6, d.c4, d.c6};
}

}  // namespace

VeluImage velu_image(const CurveModel& curve, const LocalElement& t, const LocalElement& w) {
    const LocalElement one(curve.ring, Rat(1));
    VeluImage im = image_of(curve.a1, curve.a2, curve.a3, curve.a4, curve.a6, curve.b2, t, w, one);
    if (im.c4 != curve.c4 + Rat(240) * t)
        throw std::logic_error("velu_image: c4' recomputed from a' differs from c4 + 240 t");
    if (im.c6 != curve.c6 + Rat(504) * curve.b2 * t + Rat(6048) * w)
        throw std::logic_error("velu_image: c6' recomputed from a' differs from c6 + 504 b2 t + 6048 w");
    return im;
}

bool g_consistent(const CurveModel& curve, std::uint64_t N) {
    const VeluPolys v = build_velu_polys(curve, N);
    const MultiPoly one = MultiPoly::constant(LocalElement(curve.ring, Rat(1)));
    const auto im = image_of(curve.a1, curve.a2, curve.a3, curve.a4, curve.a6, curve.b2, v.t, v.w, one);

    const MultiPoly c4t = curve.c4 * one + Rat(240) * v.t;
    const MultiPoly c6t = curve.c6 * one + Rat(504) * curve.b2 * v.t + Rat(6048) * v.w;
    if (!(im.c4 == c4t) || !(im.c6 == c6t)) return false;

    const LocalElement c6sq = curve.c6 * curve.c6;
    const LocalElement c4cube = curve.c4.pow(3);
    const MultiPoly from_image = (c6sq * im.c4.pow(3) - c4cube * im.c6.pow(2)).divided_by(1728);
    if (!(from_image == v.g)) return false;
    // 1728 g + c4^3 (c6 + ...)^2 = (c4 + 240 t)^3 c6^2
    return Rat(1728) * v.g + c4cube * c6t.pow(2) == c6sq * c4t.pow(3);
}

// ---- fixtures --------------------------------------------------------------------

std::optional<std::int64_t> VeluFixture::expected(std::uint64_t N) const {
    for (const auto& e : expectations)
        if (N % e.modulus == e.residue) return e.n_v;
    return std::nullopt;
}

std::vector<VeluFixture> parse_fixtures(std::string_view text) {
    std::vector<VeluFixture> out;
    LocalRingPtr ring;
    bool have_curve = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> FixtureError {
        return FixtureError("fixture file line " + std::to_string(lineno) + ": " + what);
    };
    auto finish = [&] {
        if (!out.empty() && !have_curve) throw fail("fixture '" + out.back().name + "' has no curve line");
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::vector<std::string> args;
        for (std::string a; ls >> a;) args.push_back(a);
        try {
            if (kw == "fixture") {
                finish();
                if (args.size() != 1) throw fail("expected 'fixture NAME'");
                for (const auto& f : out)
                    if (f.name == args[0]) throw fail("duplicate fixture '" + args[0] + "'");
                out.push_back(VeluFixture{args[0], {}, {}});
                ring.reset();
                have_curve = false;
            } else if (out.empty()) {
                throw fail("'" + kw + "' before any 'fixture' line");
            } else if (kw == "ring") {
                if (args.size() < 2) throw fail("expected 'ring P E f_0 ... f_E'");
                const auto p = std::stoull(args[0]);
                const auto e = std::stoul(args[1]);
                if (args.size() != e + 3) throw fail("ring of degree " + args[1] + " needs " + std::to_string(e + 1) + " coefficients");
                std::vector<Int> f;
                for (std::size_t k = 2; k < args.size(); ++k) f.emplace_back(args[k]);
                ring = LocalRing::make(p, f);
            } else if (kw == "curve") {
                if (!ring) throw fail("curve before ring");
                const unsigned e = ring->e();
                if (args.size() != 5 * e) throw fail("curve needs " + std::to_string(5 * e) + " coordinates");
                std::vector<LocalElement> a;
                for (unsigned k = 0; k < 5; ++k) {
                    std::vector<Rat> coords;
                    for (unsigned l = 0; l < e; ++l) {
                        Rat r(args[k * e + l]);
                        r.canonicalize();
                        coords.push_back(r);
                    }
                    a.emplace_back(ring, coords);
                }
                out.back().curve = curve_derived(a[0], a[1], a[2], a[3], a[4], out.back().name);
                have_curve = true;
            } else if (kw == "expect") {
                if (args.size() != 3) throw fail("expected 'expect MODULUS RESIDUE N_V'");
                VeluFixture::Expect ex{static_cast<unsigned>(std::stoul(args[0])), static_cast<unsigned>(std::stoul(args[1])),
                                       std::stoll(args[2])};
                if (ex.modulus == 0 || ex.residue >= ex.modulus) throw fail("bad residue class");
                out.back().expectations.push_back(ex);
            } else {
                throw fail("unknown directive '" + kw + "'");
            }
        } catch (const FixtureError&) {
            throw;
        } catch (const std::exception& e) {
            throw fail(e.what());
        }
    }
    finish();
    return out;
}

std::vector<VeluFixture> load_default_fixtures() {
    const auto path = std::filesystem::path(data_dir()) / "velu_fixtures.txt";
    return parse_fixtures(read_text_file(path.string()));
}

const VeluFixture& find_fixture(const std::vector<VeluFixture>& fixtures, std::string_view name) {
    for (const auto& f : fixtures)
        if (f.name == name) return f;
    throw FixtureError("no fixture named '" + std::string(name) + "'");
}

}  // namespace mpv
