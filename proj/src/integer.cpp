#include "coxkernel/integer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace coxkernel {

IntVector make_vector(std::initializer_list<long> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long e : entries) v(i++) = e;
  return v;
}

IntVector to_vector(const std::vector<long>& entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

IntMatrix make_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("make_matrix: ragged rows");
    Eigen::Index j = 0;
    for (long e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

std::vector<IntVector> rows_of(const IntMatrix& m) {
  std::vector<IntVector> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).transpose());
  return out;
}

IntMatrix stack_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<std::size_t>(rows[i].size()) != cols)
      throw std::invalid_argument("stack_rows: length mismatch");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

IntMatrix stack_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<std::size_t>(cols[j].size()) != rows)
      throw std::invalid_argument("stack_columns: length mismatch");
    m.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return m;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

Integer mod_floor(const Integer& a, const Integer& d) {
  Integer r = a % d;
  if (r < 0) r += d;
  return r;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, abs(v(i)));
  return g;
}

IntVector primitive(const IntVector& v) {
  const Integer g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

IntVector primitive_normalized(const IntVector& v) {
  IntVector out = primitive(v);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) == 0) continue;
    if (out(i) < 0) out = -out;
    break;
  }
  return out;
}

bool is_zero(const IntVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool is_nonnegative(const IntVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) < 0) return false;
  return true;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

IntVector primitive_from_rational(const RatVector& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denominator(v(i)));
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = numerator(v(i)) * (l / denominator(v(i)));
  return primitive(out);
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

bool LexLess::operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }

bool lex_less(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

void sort_unique(std::vector<IntVector>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](const IntVector& a, const IntVector& b) { return a == b; }),
           vs.end());
}

bool contains_vector(const std::vector<IntVector>& vs, const IntVector& v) {
  return std::any_of(vs.begin(), vs.end(), [&](const IntVector& w) { return w == v; });
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v(i).str();
  }
  os << ')';
  return os.str();
}

std::vector<long long> to_int64(const IntVector& v) {
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).convert_to<long long>());
  return out;
}

}  // namespace coxkernel
