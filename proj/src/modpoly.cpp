#include "mpv/modpoly.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mpv {

// ---- BivarPoly --------------------------------------------------------------

BivarPoly::BivarPoly(std::uint64_t level, Map entries) : level_(level) {
    for (auto& [ij, c] : entries)
        if (c != 0) entries_.emplace(ij, std::move(c));
}

Int BivarPoly::coeff(unsigned i, unsigned j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? Int(0) : it->second;
}

void BivarPoly::set(unsigned i, unsigned j, Int c) {
    if (c == 0)
        entries_.erase({i, j});
    else
        entries_[{i, j}] = std::move(c);
}

void BivarPoly::add(unsigned i, unsigned j, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = entries_.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) entries_.erase(it);
    }
}

int BivarPoly::degree_x() const {
    int d = -1;
    for (const auto& [ij, c] : entries_) d = std::max(d, static_cast<int>(ij.first));
    return d;
}

int BivarPoly::degree_y() const {
    int d = -1;
    for (const auto& [ij, c] : entries_) d = std::max(d, static_cast<int>(ij.second));
    return d;
}

bool BivarPoly::is_symmetric() const {
    for (const auto& [ij, c] : entries_) {
        auto it = entries_.find({ij.second, ij.first});
        if (it == entries_.end() || it->second != c) return false;
    }
    return true;
}

std::vector<Int> BivarPoly::specialize_y(const Int& y) const {
    int dx = degree_x();
    int dy = degree_y();
    if (dx < 0) return {};
    std::vector<Int> ypow(static_cast<std::size_t>(dy + 1));
    ypow[0] = 1;
    for (int k = 1; k <= dy; ++k) ypow[static_cast<std::size_t>(k)] = ypow[static_cast<std::size_t>(k - 1)] * y;
    std::vector<Int> out(static_cast<std::size_t>(dx + 1));
    for (const auto& [ij, c] : entries_) out[ij.first] += c * ypow[ij.second];
    return out;
}

Int BivarPoly::evaluate(const Int& x, const Int& y) const {
    auto b = specialize_y(y);
    Int acc = 0;
    for (std::size_t i = b.size(); i-- > 0;) acc = acc * x + b[i];
    return acc;
}

void BivarPoly::check_modular_shape() const {
    const auto deg = static_cast<int>(psi(level_));
    if (!is_symmetric()) throw std::runtime_error("Phi_" + std::to_string(level_) + ": not symmetric");
    if (degree_x() != deg || degree_y() != deg)
        throw std::runtime_error("Phi_" + std::to_string(level_) + ": degree differs from psi(N) = " + std::to_string(deg));
    if (coeff(static_cast<unsigned>(deg), 0) != 1)
        throw std::runtime_error("Phi_" + std::to_string(level_) + ": not monic in X");
    for (const auto& [ij, c] : entries_)
        if (static_cast<int>(ij.first) == deg && ij.second != 0)
            throw std::runtime_error("Phi_" + std::to_string(level_) + ": X^psi carries a Y term");
}

// ---- psi and j --------------------------------------------------------------

std::uint64_t psi(std::uint64_t n) {
    if (n == 0) throw ArithError("psi: N must be positive");
    std::uint64_t r = 1;
    for (auto [p, e] : factorize(n)) {
        std::uint64_t pk = 1;
        for (unsigned k = 1; k < e; ++k) pk *= p;
        r *= pk * (p + 1);
    }
    return r;
}

IntSeries j_series(std::int64_t prec) {
    if (prec < -1) return IntSeries::zero(prec + 1);
    // q * Delta^{-1} = prod (1 - q^n)^{-24}, needed through q^(prec + 1)
    const std::int64_t terms = prec + 2;
    IntSeries eta24 = euler_product(terms).pow(24).truncated(terms);
    IntSeries e4 = eisenstein_e4(terms);
    IntSeries num = (e4 * e4 * e4).truncated(terms);
    return (num * eta24.inverse()).truncated(terms).shifted(-1);
}

// ---- Phi_ell from q-expansions ---------------------------------------------

namespace {

/// Express `s` as an integer polynomial in j by eliminating its polar part
/// and constant term; `jpow[d]` is j^d. Returns coefficients indexed by degree.
std::vector<Int> eliminate_in_j(IntSeries s, const std::vector<IntSeries>& jpow, std::uint64_t ell) {
    std::vector<Int> poly(jpow.size());
    while (true) {
        s = s.normalized();
        if (s.prec() < 2)
            throw PrecisionExhausted("remainder known only below q^" + std::to_string(s.prec()));
        std::int64_t v = s.valuation();
        if (v > 0) break;
        auto d = static_cast<std::size_t>(-v);
        if (d >= jpow.size())
            throw std::logic_error("pole of order " + std::to_string(d) + " exceeds psi(" + std::to_string(ell) + ")");
        Int a = s.coeff(v);
        poly[d] += a;
        s = s - a * jpow[d];
    }
    if (!s.is_zero()) throw PrecisionExhausted("remainder does not vanish at q^" + std::to_string(s.valuation()));
    return poly;
}

}  // namespace

BivarPoly compute_phi_at_precision(std::uint64_t ell, std::int64_t precision) {
    if (!is_prime(ell)) throw ArithError("compute_phi: level " + std::to_string(ell) + " is not prime");
    const auto l = static_cast<std::int64_t>(ell);
    const std::size_t deg = ell + 1;

    IntSeries j = j_series(precision);
    std::vector<IntSeries> jpow(deg + 1);
    jpow[0] = IntSeries::monomial(1, 0, j.prec() - j.lead());
    for (std::size_t k = 1; k <= deg; ++k) jpow[k] = jpow[k - 1] * j;

    // Power sums of the ell conjugates j(zeta^i q^(1/ell)): ell * D_ell[j^k].
    std::vector<IntSeries> power_sums(deg);
    for (std::size_t k = 1; k < deg; ++k) power_sums[k] = Int(l) * jpow[k].dissect(l);

    // Newton's identities for their elementary symmetric functions.
    std::vector<IntSeries> elem(deg + 1);
    elem[0] = IntSeries::monomial(1, 0, j.prec() - j.lead());
    for (std::size_t k = 1; k < deg; ++k) {
        IntSeries acc;
        bool first = true;
        for (std::size_t i = 1; i <= k; ++i) {
            IntSeries term = elem[k - i] * power_sums[i];
            if (i % 2 == 0) term = -term;
            acc = first ? term : acc + term;
            first = false;
        }
        try {
            elem[k] = acc.divexact(Int(static_cast<unsigned long>(k))).normalized();
        } catch (const ArithError&) {
            throw std::logic_error("Newton identity step " + std::to_string(k) + " is not integral");
        }
    }

    // Phi(X, j(q)) = (X - j(q^ell)) * prod_i (X - j(zeta^i q^(1/ell))): the
    // coefficient of X^(deg - k) is (-1)^k (E_k + j(q^ell) E_{k-1}).
    IntSeries j_ell = j.inflate(l);
    BivarPoly phi(ell);
    phi.set(static_cast<unsigned>(deg), 0, 1);
    for (std::size_t k = 1; k <= deg; ++k) {
        IntSeries c = j_ell * elem[k - 1];
        if (k < deg) c = c + elem[k];
        if (k % 2 == 1) c = -c;
        auto poly = eliminate_in_j(c, jpow, ell);
        for (std::size_t d = 0; d < poly.size(); ++d)
            phi.set(static_cast<unsigned>(deg - k), static_cast<unsigned>(d), poly[d]);
    }
    return phi;
}

BivarPoly compute_phi(std::uint64_t ell, const PhiOptions& opts) {
    if (!is_prime(ell)) throw ArithError("compute_phi: level " + std::to_string(ell) + " is not prime");
    if (ell > opts.ceiling)
        throw ArithError("compute_phi: level " + std::to_string(ell) + " exceeds the configured ceiling " +
                         std::to_string(opts.ceiling));
    const auto l = static_cast<std::int64_t>(ell);
    std::int64_t precision = opts.initial_precision > 0 ? opts.initial_precision : l * (2 * l + 5);
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        try {
            BivarPoly phi = compute_phi_at_precision(ell, precision);
            phi.check_modular_shape();
            return phi;
        } catch (const PrecisionExhausted&) {
            precision += std::max<std::int64_t>(1, precision / 4);
        }
    }
    throw PrecisionExhausted("compute_phi(" + std::to_string(ell) + "): precision escalation limit reached");
}

// ---- file codec ---------------------------------------------------------------

namespace {

bool parse_uint(std::string_view s, unsigned& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, Int& out) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t k = start; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return out.set_str(digits, 10) == 0;
}

std::string_view rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

BivarPoly parse_modpoly_file(std::string_view text, std::optional<std::uint64_t> level) {
    std::map<BivarPoly::Index, Int> raw;
    std::map<BivarPoly::Index, std::size_t> line_of;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = rstrip(text.substr(pos, end - pos));
        pos = end + 1;
        ++lineno;
        if (line.empty() || line.front() != '[') continue;  // comment
        auto close = line.find(']');
        auto comma = line.find(',');
        if (close == std::string_view::npos || comma == std::string_view::npos || comma > close)
            throw ParseError(lineno, "expected `[i,j] c`");
        unsigned i = 0, j = 0;
        if (!parse_uint(line.substr(1, comma - 1), i) || !parse_uint(line.substr(comma + 1, close - comma - 1), j))
            throw ParseError(lineno, "bad index pair");
        if (close + 1 >= line.size() || line[close + 1] != ' ') throw ParseError(lineno, "expected a space after the index pair");
        Int c;
        if (!parse_int(line.substr(close + 2), c)) throw ParseError(lineno, "bad integer coefficient");
        if (raw.count({i, j})) throw ParseError(lineno, "duplicate entry [" + std::to_string(i) + "," + std::to_string(j) + "]");
        raw.emplace(BivarPoly::Index{i, j}, c);
        line_of.emplace(BivarPoly::Index{i, j}, lineno);
    }
    if (raw.empty()) throw ParseError(lineno, "no coefficient lines");

    unsigned deg = 0;
    for (const auto& [ij, c] : raw) deg = std::max({deg, ij.first, ij.second});

    // Phi_N has no term X^psi Y^j with j > 0. The largest index is therefore
    // psi itself only when the monic entry is present and alone at that index;
    // otherwise the monic term was omitted and psi = deg + 1.
    bool monic_listed = true;
    for (const auto& [ij, c] : raw) {
        auto [i, j] = ij;
        if (i != deg && j != deg) continue;
        if ((i == deg && j != 0) || (j == deg && i != 0) || c != 1) monic_listed = false;
    }
    std::uint64_t n = 0;
    unsigned d = monic_listed ? deg : deg + 1;
    if (level) {
        n = *level;
        d = static_cast<unsigned>(psi(n));
        if (deg > d || deg + 1 < d)
            throw ParseError(lineno, "largest index " + std::to_string(deg) + " does not fit psi(" + std::to_string(n) + ") = " + std::to_string(d));
    } else {
        std::vector<std::uint64_t> candidates;
        for (std::uint64_t m = 2; m <= d; ++m)
            if (psi(m) == d) candidates.push_back(m);
        if (candidates.size() != 1)
            throw ParseError(lineno, "cannot infer the level from degree " + std::to_string(d) + "; pass it explicitly");
        n = candidates.front();
    }
    BivarPoly poly(n);
    for (const auto& [ij, c] : raw) {
        auto [i, j] = ij;
        if (i > d || j > d) throw ParseError(line_of[ij], "index exceeds psi(N)");
        auto mirror = raw.find({j, i});
        if (i != j && mirror != raw.end() && mirror->second != c)
            throw ParseError(line_of[ij], "conflicting symmetric entries [" + std::to_string(i) + "," + std::to_string(j) + "]");
        poly.set(i, j, c);
        poly.set(j, i, c);
    }
    for (auto [i, j] : {BivarPoly::Index{d, 0}, BivarPoly::Index{0, d}}) {
        Int c = poly.coeff(i, j);
        if (c == 0)
            poly.set(i, j, 1);
        else if (c != 1)
            throw ParseError(line_of.count({i, j}) ? line_of[{i, j}] : lineno, "monic coefficient must be 1");
    }
    return poly;
}

std::string serialize_modpoly(const BivarPoly& poly) {
    const auto d = static_cast<unsigned>(psi(poly.level()));
    std::ostringstream os;
    for (const auto& [ij, c] : poly.entries()) {
        auto [i, j] = ij;
        if (i < j) continue;
        if (i == d && j == 0 && c == 1) continue;
        os << '[' << i << ',' << j << "] " << c.get_str() << '\n';
    }
    return os.str();
}

}  // namespace mpv

namespace mpv {

std::string data_dir() {
    if (const char* env = std::getenv("MODPOLY_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return MPV_DEFAULT_DATA_DIR;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BivarPoly load_phi(std::uint64_t N, const PhiOptions& opts) {
    const std::filesystem::path file = std::filesystem::path(data_dir()) / ("phi_" + std::to_string(N) + ".txt");
    if (std::filesystem::exists(file)) return parse_modpoly_file(read_text_file(file.string()), N);
    if (!is_prime(N) || N > opts.ceiling)
        throw std::runtime_error("Phi_" + std::to_string(N) + " is not in " + data_dir() +
                                 " and is outside the computable range (prime N <= " + std::to_string(opts.ceiling) + ")");
    return compute_phi(N, opts);
}

}  // namespace mpv
