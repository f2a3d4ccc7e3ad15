#include "quiverkit/laurent.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace quiverkit {

namespace {

int checked(long long v)
{
    if (v > INT_MAX || v < INT_MIN)
        throw LaurentError("exponent overflow");
    return static_cast<int>(v);
}

Exponents add(const Exponents& a, const Exponents& b)
{
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = checked(static_cast<long long>(a[i]) + b[i]);
    return out;
}

void require_same(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.n_vars() != b.n_vars())
        throw std::invalid_argument("Laurent polynomials over different variable sets");
}

}  // namespace

LaurentPoly LaurentPoly::constant(int n_vars, const Integer& c)
{
    LaurentPoly p(n_vars);
    p.add_term(Exponents(n_vars, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(Exponents exponents, const Integer& c)
{
    LaurentPoly p(static_cast<int>(exponents.size()));
    p.add_term(exponents, c);
    return p;
}

LaurentPoly LaurentPoly::variable(int n_vars, int index)
{
    if (index < 0 || index >= n_vars)
        throw std::out_of_range("variable index out of range");
    Exponents e(n_vars, 0);
    e[index] = 1;
    return monomial(std::move(e));
}

void LaurentPoly::add_term(const Exponents& e, const Integer& c)
{
    if (static_cast<int>(e.size()) != n_vars_)
        throw std::invalid_argument("exponent vector has the wrong length");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const
{
    require_same(*this, other);
    LaurentPoly out = *this;
    for (const auto& [e, c] : other.terms_)
        out.add_term(e, c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const
{
    require_same(*this, other);
    LaurentPoly out = *this;
    for (const auto& [e, c] : other.terms_)
        out.add_term(e, -c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const
{
    require_same(*this, other);
    LaurentPoly out(n_vars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : other.terms_)
            out.add_term(add(e1, e2), c1 * c2);
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const
{
    LaurentPoly out = constant(n_vars_, 1);
    LaurentPoly base = *this;
    while (k) {
        if (k & 1)
            out = out * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return out;
}

LaurentPoly LaurentPoly::shifted(const Exponents& e) const
{
    if (static_cast<int>(e.size()) != n_vars_)
        throw std::invalid_argument("exponent vector has the wrong length");
    LaurentPoly out(n_vars_);
    for (const auto& [t, c] : terms_)
        out.terms_.emplace_hint(out.terms_.end(), add(t, e), c);
    return out;
}

Exponents LaurentPoly::min_exponents() const
{
    Exponents out(n_vars_, 0);
    if (terms_.empty())
        return out;
    out = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < n_vars_; ++i)
            out[i] = std::min(out[i], e[i]);
    return out;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const
{
    if (static_cast<int>(names.size()) != n_vars_)
        throw std::invalid_argument("wrong number of variable names");
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Integer mag = c < 0 ? Integer(-c) : c;
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;

        std::vector<std::string> factors;
        for (int i = 0; i < n_vars_; ++i) {
            if (e[i] == 0)
                continue;
            factors.push_back(e[i] == 1 ? names[i] : names[i] + "^" + std::to_string(e[i]));
        }
        if (factors.empty() || mag != 1) {
            out << mag;
            if (!factors.empty())
                out << "*";
        }
        for (std::size_t f = 0; f < factors.size(); ++f)
            out << (f ? "*" : "") << factors[f];
    }
    return out.str();
}

LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den)
{
    require_same(num, den);
    if (den.is_zero())
        throw std::invalid_argument("division by the zero polynomial");
    const int n = num.n_vars();
    if (num.is_zero())
        return LaurentPoly(n);

    // Clear monomial factors so both sides are polynomials and the divisor is
    // divisible by no variable; divisibility is then polynomial divisibility.
    const Exponents num_shift = num.min_exponents();
    const Exponents den_shift = den.min_exponents();
    Exponents neg_num(n), neg_den(n), back(n);
    for (int i = 0; i < n; ++i) {
        neg_num[i] = checked(-static_cast<long long>(num_shift[i]));
        neg_den[i] = checked(-static_cast<long long>(den_shift[i]));
        back[i] = checked(static_cast<long long>(num_shift[i]) - den_shift[i]);
    }
    LaurentPoly rem = num.shifted(neg_num);
    const LaurentPoly d = den.shifted(neg_den);
    const auto& [lead_e, lead_c] = *d.terms().begin();

    LaurentPoly quotient(n);
    Exponents q_e(n);
    while (!rem.is_zero()) {
        const auto& [r_e, r_c] = *rem.terms().begin();
        for (int i = 0; i < n; ++i) {
            q_e[i] = r_e[i] - lead_e[i];
            if (q_e[i] < 0)
                throw LaurentError("exact division failed: nonzero remainder");
        }
        Integer q_c;
        Integer r;
        boost::multiprecision::divide_qr(r_c, lead_c, q_c, r);
        if (!r.is_zero())
            throw LaurentError("exact division failed: coefficient not divisible");
        quotient.add_term(q_e, q_c);
        for (const auto& [e, c] : d.terms())
            rem.add_term(add(q_e, e), -q_c * c);
    }
    return quotient.shifted(back);
}

}  // namespace quiverkit
