// Exact scalar types and small helpers shared by every module.
#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace coxkernel {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

using IndexSet = std::vector<std::size_t>;

IntVector make_vector(std::initializer_list<long> entries);
IntMatrix make_matrix(std::initializer_list<std::initializer_list<long>> rows);
IntVector to_vector(const std::vector<long>& entries);

/// Rows of `m` as vectors.
std::vector<IntVector> rows_of(const IntMatrix& m);
/// Stacks vectors of length `cols` as rows; an empty list gives a 0 x cols matrix.
IntMatrix stack_rows(const std::vector<IntVector>& rows, std::size_t cols);
/// Places vectors side by side as columns.
IntMatrix stack_columns(const std::vector<IntVector>& cols, std::size_t rows);

/// Floor division and the non-negative residue for d > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& d);

/// gcd of all entries (0 for the zero vector).
Integer content(const IntVector& v);
/// v / content(v); the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
/// Primitive with the first nonzero coordinate positive.
IntVector primitive_normalized(const IntVector& v);

bool is_zero(const IntVector& v);
bool is_nonnegative(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);

/// Clears denominators and returns the primitive integer vector on the same ray.
IntVector primitive_from_rational(const RatVector& v);
RatVector to_rational(const IntVector& v);

/// Lexicographic order on equal-length integer vectors (shorter first otherwise).
struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const;
};

bool lex_less(const IntVector& a, const IntVector& b);
void sort_unique(std::vector<IntVector>& vs);
bool contains_vector(const std::vector<IntVector>& vs, const IntVector& v);

std::string to_string(const Integer& x);
std::string to_string(const IntVector& v);
std::vector<long long> to_int64(const IntVector& v);

}  // namespace coxkernel
