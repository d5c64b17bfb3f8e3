#pragma once

// Integer row reduction over arbitrary-precision integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stop_token>
#include <string>
#include <vector>

namespace adlab::lattice {

using Int = boost::multiprecision::cpp_int;
using Vector = std::vector<Int>;
using Matrix = std::vector<Vector>;

/// U * A = H with U unimodular and H in row Hermite normal form: the first
/// `rank` rows are nonzero, with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into [0, pivot).
struct Hermite {
    Matrix h;
    Matrix u;
    size_t rank = 0;
    std::vector<size_t> pivots;
    size_t cols = 0;
};

/// Throws Cancelled when `stop` fires.
Hermite hermite(const Matrix& a, size_t cols, std::stop_token stop = {});

/// Nonzero invariant factors d_1 | d_2 | ... of A.
std::vector<Int> smith_divisors(const Matrix& a, size_t cols, std::stop_token stop = {});

/// Coefficients c with c * A = target, if the target is in the row lattice.
std::optional<Vector> solve(const Hermite& hf, const Vector& target);

/// Basis of {c : c * A = 0}: the rows of U beyond the rank.
Matrix left_kernel(const Hermite& hf);

/// c * A.
Vector combine(const Vector& c, const Matrix& a, size_t cols);

Matrix from_int64(const std::vector<std::vector<int64_t>>& rows);
std::string to_string(const Int& x);

} // namespace adlab::lattice
