#include "mpv/series.hpp"

#include <algorithm>
#include <sstream>

namespace mpv {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

IntSeries::IntSeries(std::int64_t lead, std::vector<Int> coeffs, std::int64_t prec)
    : lead_(lead), prec_(prec), coeffs_(std::move(coeffs)) {
    if (prec_ < lead_) {
        lead_ = prec_;
        coeffs_.clear();
    }
    if (static_cast<std::int64_t>(coeffs_.size()) != prec_ - lead_)
        throw ArithError("IntSeries: coefficient count does not match [lead, prec)");
}

IntSeries IntSeries::from_terms(std::int64_t lead, std::vector<Int> coeffs, std::int64_t prec) {
    if (prec <= lead) return zero(prec);
    coeffs.resize(static_cast<std::size_t>(prec - lead));
    return IntSeries(lead, std::move(coeffs), prec);
}

IntSeries IntSeries::monomial(Int c, std::int64_t e, std::int64_t prec) {
    if (e >= prec) return zero(prec);
    std::vector<Int> v(static_cast<std::size_t>(prec - e));
    v[0] = std::move(c);
    return IntSeries(e, std::move(v), prec);
}

IntSeries IntSeries::zero(std::int64_t prec) { return IntSeries(prec, {}, prec); }

Int IntSeries::coeff(std::int64_t e) const {
    if (e >= prec_) throw ArithError("IntSeries::coeff: exponent " + std::to_string(e) + " beyond precision " + std::to_string(prec_));
    if (e < lead_) return 0;
    return coeffs_[static_cast<std::size_t>(e - lead_)];
}

std::int64_t IntSeries::valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) return lead_ + static_cast<std::int64_t>(k);
    return prec_;
}

bool IntSeries::is_zero() const { return valuation() == prec_; }

IntSeries IntSeries::normalized() const {
    std::int64_t v = valuation();
    if (v == lead_) return *this;
    return IntSeries(v, std::vector<Int>(coeffs_.begin() + (v - lead_), coeffs_.end()), prec_);
}

IntSeries IntSeries::truncated(std::int64_t new_prec) const {
    if (new_prec >= prec_) return *this;
    if (new_prec <= lead_) return zero(new_prec);
    return IntSeries(lead_, std::vector<Int>(coeffs_.begin(), coeffs_.begin() + (new_prec - lead_)), new_prec);
}

IntSeries IntSeries::operator-() const {
    IntSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

IntSeries operator+(const IntSeries& a, const IntSeries& b) {
    std::int64_t prec = std::min(a.prec_, b.prec_);
    std::int64_t lead = std::min(a.lead_, b.lead_);
    if (prec <= lead) return IntSeries::zero(prec);
    std::vector<Int> v(static_cast<std::size_t>(prec - lead));
    for (std::int64_t e = lead; e < prec; ++e) {
        auto& slot = v[static_cast<std::size_t>(e - lead)];
        if (e >= a.lead_) slot += a.coeffs_[static_cast<std::size_t>(e - a.lead_)];
        if (e >= b.lead_) slot += b.coeffs_[static_cast<std::size_t>(e - b.lead_)];
    }
    return IntSeries(lead, std::move(v), prec);
}

IntSeries operator-(const IntSeries& a, const IntSeries& b) { return a + (-b); }

IntSeries operator*(const IntSeries& a0, const IntSeries& b0) {
    IntSeries a = a0.normalized();
    IntSeries b = b0.normalized();
    std::int64_t prec = std::min(a.prec_ + b.lead_, b.prec_ + a.lead_);
    std::int64_t lead = a.lead_ + b.lead_;
    if (prec <= lead) return IntSeries::zero(prec);
    std::size_t n = static_cast<std::size_t>(prec - lead);
    std::vector<Int> v(n);
    for (std::size_t i = 0; i < a.coeffs_.size() && i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        const Int& ai = a.coeffs_[i];
        std::size_t lim = std::min(b.coeffs_.size(), n - i);
        for (std::size_t k = 0; k < lim; ++k) {
            if (b.coeffs_[k] == 0) continue;
            mpz_addmul(v[i + k].get_mpz_t(), ai.get_mpz_t(), b.coeffs_[k].get_mpz_t());
        }
    }
    return IntSeries(lead, std::move(v), prec);
}

IntSeries operator*(const Int& c, const IntSeries& a) {
    IntSeries r = a;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

IntSeries IntSeries::divexact(const Int& d) const {
    if (d == 0) throw ArithError("IntSeries::divexact: division by zero");
    IntSeries r = *this;
    for (auto& x : r.coeffs_) {
        if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()))
            throw ArithError("IntSeries::divexact: coefficient not divisible by " + d.get_str());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    return r;
}

IntSeries IntSeries::pow(unsigned k) const {
    IntSeries base = normalized();
    if (k == 0) return IntSeries::monomial(1, 0, base.prec_ - base.lead_);
    IntSeries result;
    bool first = true;
    while (k > 0) {
        if (k & 1U) {
            result = first ? base : result * base;
            first = false;
        }
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

IntSeries IntSeries::inverse() const {
    IntSeries a = normalized();
    if (a.coeffs_.empty() || (a.coeffs_[0] != 1 && a.coeffs_[0] != -1))
        throw ArithError("IntSeries::inverse: leading coefficient must be a unit");
    const Int& u = a.coeffs_[0];
    std::size_t n = a.coeffs_.size();
    std::vector<Int> inv(n);
    inv[0] = u;
    for (std::size_t k = 1; k < n; ++k) {
        Int s = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            if (a.coeffs_[i] != 0) mpz_addmul(s.get_mpz_t(), a.coeffs_[i].get_mpz_t(), inv[k - i].get_mpz_t());
        }
        inv[k] = -s * u;
    }
    // known exponents of the inverse: [-lead, prec - 2 lead)
    return IntSeries(-a.lead_, std::move(inv), a.prec_ - 2 * a.lead_);
}

IntSeries IntSeries::shifted(std::int64_t s) const { return IntSeries(lead_ + s, coeffs_, prec_ + s); }

IntSeries IntSeries::inflate(std::int64_t m) const {
    if (m < 1) throw ArithError("IntSeries::inflate: factor must be positive");
    if (m == 1) return *this;
    std::int64_t lead = lead_ * m;
    std::int64_t prec = prec_ * m;
    std::vector<Int> v(static_cast<std::size_t>(prec - lead));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k * static_cast<std::size_t>(m)] = coeffs_[k];
    return IntSeries(lead, std::move(v), prec);
}

IntSeries IntSeries::dissect(std::int64_t m) const {
    if (m < 1) throw ArithError("IntSeries::dissect: factor must be positive");
    std::int64_t lead = ceil_div(lead_, m);
    std::int64_t prec = ceil_div(prec_, m);
    if (prec <= lead) return zero(prec);
    std::vector<Int> v(static_cast<std::size_t>(prec - lead));
    for (std::int64_t k = lead; k < prec; ++k) v[static_cast<std::size_t>(k - lead)] = coeff(k * m);
    return IntSeries(lead, std::move(v), prec);
}

std::string IntSeries::str(std::size_t max_terms) const {
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::size_t k = 0; k < coeffs_.size() && shown < max_terms; ++k) {
        if (coeffs_[k] == 0) continue;
        if (shown++ > 0) os << " + ";
        os << coeffs_[k].get_str() << "*q^" << (lead_ + static_cast<std::int64_t>(k));
    }
    if (shown == 0) os << "0";
    os << " + O(q^" << prec_ << ")";
    return os.str();
}

IntSeries eisenstein_e4(std::int64_t prec) {
    if (prec <= 0) return IntSeries::zero(prec);
    std::vector<Int> v(static_cast<std::size_t>(prec));
    v[0] = 1;
    for (std::int64_t d = 1; d < prec; ++d) {
        Int d3 = Int(d) * d * d;
        for (std::int64_t m = d; m < prec; m += d) v[static_cast<std::size_t>(m)] += 240 * d3;
    }
    return IntSeries(0, std::move(v), prec);
}

IntSeries euler_product(std::int64_t prec) {
    if (prec <= 0) return IntSeries::zero(prec);
    // pentagonal number theorem
    std::vector<Int> v(static_cast<std::size_t>(prec));
    v[0] = 1;
    for (std::int64_t k = 1; k * (3 * k - 1) / 2 < prec; ++k) {
        int sign = (k % 2 == 0) ? 1 : -1;
        v[static_cast<std::size_t>(k * (3 * k - 1) / 2)] += sign;
        std::int64_t e2 = k * (3 * k + 1) / 2;
        if (e2 < prec) v[static_cast<std::size_t>(e2)] += sign;
    }
    return IntSeries(0, std::move(v), prec);
}

}  // namespace mpv
