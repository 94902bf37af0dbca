#pragma once

#include "coxkernel/integer.hpp"
#include "oracles.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testutil {

inline coxkernel::IntMatrix to_int_matrix(const oracle::Mat& m) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = static_cast<Eigen::Index>(m.empty() ? 0 : m[0].size());
  coxkernel::IntMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

inline coxkernel::IntVector to_int_vector(const oracle::Vec& v) {
  coxkernel::IntVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline oracle::Vec to_oracle(const coxkernel::IntVector& v) {
  oracle::Vec out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).convert_to<long long>());
  return out;
}

inline coxkernel::IntVector random_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  coxkernel::IntVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
  return v;
}

inline std::vector<coxkernel::IntVector> vecs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<coxkernel::IntVector> out;
  for (const auto& r : rows) out.push_back(coxkernel::make_vector(r));
  return out;
}

inline oracle::Mat to_oracle(const std::vector<coxkernel::IntVector>& vs) {
  oracle::Mat out;
  for (const auto& v : vs) out.push_back(to_oracle(v));
  return out;
}

inline std::vector<coxkernel::IntVector> from_oracle(const oracle::Mat& m) {
  std::vector<coxkernel::IntVector> out;
  for (const auto& v : m) out.push_back(to_int_vector(v));
  return out;
}

}  // namespace testutil
