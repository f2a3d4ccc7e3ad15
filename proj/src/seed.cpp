#include "quiverkit/seed.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace quiverkit {

namespace {

int small(const Integer& v)
{
    if (v > INT_MAX || v < INT_MIN)
        throw LaurentError("exponent overflow");
    return static_cast<int>(v);
}

void require_vertex(const Seed& s, int i)
{
    if (i < 1 || i > s.rank())
        throw QuiverError("seed has no vertex " + std::to_string(i));
}

}  // namespace

TropMonomial TropMonomial::operator*(const TropMonomial& other) const
{
    TropMonomial out = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        out.exponents[i] += other.exponents.at(i);
    return out;
}

TropMonomial TropMonomial::operator+(const TropMonomial& other) const
{
    TropMonomial out = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        out.exponents[i] = std::min(out.exponents[i], other.exponents.at(i));
    return out;
}

TropMonomial TropMonomial::inverse() const
{
    TropMonomial out = *this;
    for (auto& e : out.exponents)
        e = -e;
    return out;
}

TropMonomial TropMonomial::pow(const Integer& k) const
{
    TropMonomial out = *this;
    for (auto& e : out.exponents)
        e *= k;
    return out;
}

TropMonomial TropMonomial::generator(int n, int index)
{
    TropMonomial out = one(n);
    out.exponents.at(index) = 1;
    return out;
}

Seed seed_initial(const Quiver& q, bool with_cluster)
{
    if (q.n_frozen() != 0)
        throw QuiverError("seed_initial: expected a quiver without frozen vertices");
    const int n = q.n_mutable();
    if (n > max_seed_rank)
        throw QuiverError("seed_initial: rank " + std::to_string(n) + " exceeds " + std::to_string(max_seed_rank));
    Seed s;
    s.quiver = q;
    for (int i = 0; i < n; ++i) {
        if (with_cluster)
            s.cluster.push_back(LaurentPoly::variable(2 * n, i));
        s.coeffs.push_back(TropMonomial::generator(n, i));
    }
    return s;
}

Seed seed_mutate(const Seed& s, int i)
{
    require_vertex(s, i);
    const int n = s.rank();
    const TropMonomial& yi = s.coeffs[i - 1];
    const TropMonomial plus = yi + TropMonomial::one(n);
    if (plus != TropMonomial::one(n) && plus != yi)
        throw std::logic_error("coefficient y" + std::to_string(i) + " is not sign-coherent");
    const TropMonomial up = yi * plus.inverse();  // y_i / (y_i + 1)
    const TropMonomial down = plus.inverse();     // 1 / (y_i + 1)

    Seed out;
    if (s.has_cluster()) {
        auto y_part = [&](const TropMonomial& m) {
            Exponents e(2 * n, 0);
            for (int l = 0; l < n; ++l)
                e[n + l] = small(m.exponents[l]);
            return LaurentPoly::monomial(std::move(e));
        };
        LaurentPoly out_term = y_part(up);
        LaurentPoly in_term = y_part(down);
        for (int j = 1; j <= n; ++j) {
            const Integer& b = s.quiver.b(i, j);
            if (b > 0)
                out_term = out_term * s.cluster[j - 1].pow(static_cast<unsigned>(small(b)));
            else if (b < 0)
                in_term = in_term * s.cluster[j - 1].pow(static_cast<unsigned>(small(-b)));
        }
        out.cluster = s.cluster;
        out.cluster[i - 1] = exact_divide(out_term + in_term, s.cluster[i - 1]);
    }

    out.coeffs.resize(n);
    for (int k = 1; k <= n; ++k) {
        const TropMonomial& yk = s.coeffs[k - 1];
        if (k == i) {
            out.coeffs[k - 1] = yk.inverse();
            continue;
        }
        const Integer& b = s.quiver.b(i, k);
        const TropMonomial via_out = yk * plus.pow(b);
        const TropMonomial via_in = yk * up.pow(-b);
        // The two cases overlap when b = 0; both must then leave y_k alone.
        if (b.is_zero() && via_out != via_in)
            throw std::logic_error("coefficient cases disagree at vertex " + std::to_string(k));
        out.coeffs[k - 1] = b >= 0 ? via_out : via_in;
    }
    out.quiver = mutate(s.quiver, i);
    return out;
}

Seed seed_apply(const Seed& s, std::span<const int> sequence)
{
    Seed out = s;
    for (int k : sequence)
        out = seed_mutate(out, k);
    return out;
}

IntegerMatrix c_vectors(const Seed& s)
{
    const int n = s.rank();
    IntegerMatrix m(n, std::vector<Integer>(n));
    for (int j = 0; j < n; ++j) {
        bool pos = false;
        bool neg = false;
        for (int l = 0; l < n; ++l) {
            m[l][j] = s.coeffs[j].exponents.at(l);
            pos = pos || m[l][j] > 0;
            neg = neg || m[l][j] < 0;
        }
        if (pos && neg)
            throw std::logic_error("c-vector " + std::to_string(j + 1) + " has mixed signs");
    }
    return m;
}

IntegerMatrix frozen_arrow_matrix(const Quiver& framed_state)
{
    const int n = framed_state.n_mutable();
    if (framed_state.n_frozen() != n)
        throw QuiverError("frozen_arrow_matrix: expected one frozen vertex per mutable vertex");
    IntegerMatrix m(n, std::vector<Integer>(n));
    for (int j = 1; j <= n; ++j)
        for (int l = 1; l <= n; ++l)
            m[l - 1][j - 1] = framed_state.b(j, n + l);
    return m;
}

bool laurent_positivity_check(const Seed& s)
{
    const int n = s.rank();
    for (const auto& x : s.cluster)
        for (const auto& [e, c] : x.terms()) {
            if (c <= 0)
                return false;
            for (int l = 0; l < n; ++l)
                if (e[n + l] < 0)
                    return false;
        }
    return true;
}

std::vector<std::string> seed_variable_names(int rank)
{
    std::vector<std::string> names;
    for (int i = 1; i <= rank; ++i)
        names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= rank; ++i)
        names.push_back("y" + std::to_string(i));
    return names;
}

}  // namespace quiverkit
