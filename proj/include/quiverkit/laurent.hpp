#pragma once

#include "quiverkit/integer.hpp"

#include <boost/container/small_vector.hpp>

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace quiverkit {

/// Raised when an exact division leaves a remainder.
class LaurentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Exponents = boost::container::small_vector<int, 8>;

/// Laurent polynomial with integer coefficients in a fixed number of
/// variables. Terms are kept in decreasing lexicographic order of exponents
/// and no stored coefficient is zero.
class LaurentPoly {
public:
    using Terms = std::map<Exponents, Integer, std::greater<>>;

    LaurentPoly() = default;
    explicit LaurentPoly(int n_vars) : n_vars_(n_vars) {}

    static LaurentPoly constant(int n_vars, const Integer& c);
    static LaurentPoly monomial(Exponents exponents, const Integer& c = 1);
    /// The variable with 0-based index `index`.
    static LaurentPoly variable(int n_vars, int index);

    int n_vars() const { return n_vars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * x^e; drops the term if it cancels.
    void add_term(const Exponents& e, const Integer& c);

    LaurentPoly operator+(const LaurentPoly& other) const;
    LaurentPoly operator-(const LaurentPoly& other) const;
    LaurentPoly operator*(const LaurentPoly& other) const;
    LaurentPoly pow(unsigned k) const;
    /// Multiplies by the monomial x^e.
    LaurentPoly shifted(const Exponents& e) const;

    bool operator==(const LaurentPoly& other) const = default;

    /// Componentwise minimum of the exponents; zeros for the zero polynomial.
    Exponents min_exponents() const;

    /// Terms joined with " + ", highest first, e.g. "x1^-1*x2*y1 + x1^-1".
    std::string to_string(const std::vector<std::string>& names) const;

private:
    int n_vars_ = 0;
    Terms terms_;
};

/// Quotient num / den in the Laurent polynomial ring. Throws LaurentError
/// if den does not divide num, and std::invalid_argument if den is zero.
LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den);

}  // namespace quiverkit
