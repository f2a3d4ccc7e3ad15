#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace quiverkit {

// Arrow multiplicities and polynomial coefficients grow without bound under
// iterated mutation, so everything integral is arbitrary precision.
using Integer = boost::multiprecision::cpp_int;

inline int sign(const Integer& v) { return v.sign(); }

inline std::string to_string(const Integer& v) { return v.str(); }

}  // namespace quiverkit
