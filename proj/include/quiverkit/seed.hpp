#pragma once

#include "quiverkit/laurent.hpp"
#include "quiverkit/quiver.hpp"

#include <span>
#include <string>
#include <vector>

namespace quiverkit {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Monomial in the tropical semifield on y_1..y_n: product adds exponents,
/// the auxiliary addition takes componentwise minima.
struct TropMonomial {
    std::vector<Integer> exponents;

    TropMonomial operator*(const TropMonomial& other) const;
    TropMonomial operator+(const TropMonomial& other) const;
    TropMonomial inverse() const;
    TropMonomial pow(const Integer& k) const;

    bool operator==(const TropMonomial&) const = default;

    static TropMonomial one(int n) { return {std::vector<Integer>(n)}; }
    static TropMonomial generator(int n, int index);
};

/// Seed with principal coefficients. Cluster variables live in
/// Z[x_1^{+-1}..x_n^{+-1}, y_1..y_n]: variable i is x_{i+1} for i < n and
/// y_{i-n+1} otherwise. A seed with an empty cluster tracks coefficients and
/// the quiver only.
struct Seed {
    std::vector<LaurentPoly> cluster;
    std::vector<TropMonomial> coeffs;
    Quiver quiver;

    int rank() const { return static_cast<int>(coeffs.size()); }
    bool has_cluster() const { return !cluster.empty(); }
    bool operator==(const Seed&) const = default;
};

constexpr int max_seed_rank = 16;

/// Throws QuiverError for frozen vertices or rank above max_seed_rank.
Seed seed_initial(const Quiver& q, bool with_cluster = true);

/// Exchange relation and tropical coefficient rule at vertex i. Throws
/// LaurentError if the new cluster variable is not a Laurent polynomial and
/// std::logic_error if a coefficient is not sign-coherent.
Seed seed_mutate(const Seed& s, int i);
Seed seed_apply(const Seed& s, std::span<const int> sequence);

/// Column j is the exponent vector of coefficient j. Throws std::logic_error
/// on a mixed-sign column.
IntegerMatrix c_vectors(const Seed& s);

/// Column j lists b(j, n + l) over l for a framed state with n frozen
/// vertices, i.e. the signed arrows from j to each frozen vertex.
IntegerMatrix frozen_arrow_matrix(const Quiver& framed_state);

/// Every cluster variable has positive coefficients and no negative y-exponent.
bool laurent_positivity_check(const Seed& s);

/// Names "x1".."xn", "y1".."yn".
std::vector<std::string> seed_variable_names(int rank);

}  // namespace quiverkit
