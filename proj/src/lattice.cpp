#include "coxkernel/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace coxkernel {

std::optional<RatVector> rational_solve(const RatMatrix& a_in, const RatVector& b_in) {
  const Eigen::Index m = a_in.rows();
  const Eigen::Index n = a_in.cols();
  if (b_in.size() != m) throw std::invalid_argument("rational_solve: dimension mismatch");
  RatMatrix a(m, n + 1);
  a.leftCols(n) = a_in;
  a.col(n) = b_in;
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index pi = -1;
    for (Eigen::Index i = r; i < m; ++i)
      if (a(i, c) != 0) {
        pi = i;
        break;
      }
    if (pi < 0) continue;
    if (pi != r) a.row(r).swap(a.row(pi));
    const Rational p = a(r, c);
    a.row(r) /= p;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      a.row(i) -= f * a.row(r);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (Eigen::Index i = r; i < m; ++i)
    if (a(i, n) != 0) return std::nullopt;
  RatVector x = RatVector::Zero(n);
  for (Eigen::Index i = 0; i < r; ++i) x(pivot_cols[static_cast<std::size_t>(i)]) = a(i, n);
  return x;
}

// ---- FgAbelianGroup --------------------------------------------------------

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw std::invalid_argument("torsion orders must be >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw std::invalid_argument("torsion orders must form a divisibility chain");
  }
}

std::optional<Integer> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

IntVector FgAbelianGroup::canonical_form(const IntVector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension())
    throw std::invalid_argument("element length " + std::to_string(x.size()) + " does not match group " +
                                describe());
  IntVector out = x;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(free_rank_ + i);
    out(k) = mod_floor(out(k), torsion_[i]);
  }
  return out;
}

bool FgAbelianGroup::equal(const IntVector& a, const IntVector& b) const {
  return canonical_form(a) == canonical_form(b);
}

bool FgAbelianGroup::is_zero_element(const IntVector& x) const { return is_zero(canonical_form(x)); }

IntMatrix FgAbelianGroup::relation_matrix() const {
  IntMatrix r = IntMatrix::Zero(static_cast<Eigen::Index>(dimension()),
                                static_cast<Eigen::Index>(torsion_.size()));
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    r(static_cast<Eigen::Index>(free_rank_ + i), static_cast<Eigen::Index>(i)) = torsion_[i];
  return r;
}

std::string FgAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    if (!first) os << " + ";
    os << "Z/" << d.str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---- GroupHom --------------------------------------------------------------

GroupHom::GroupHom(FgAbelianGroup source, FgAbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (static_cast<std::size_t>(matrix_.rows()) != target_.dimension() ||
      static_cast<std::size_t>(matrix_.cols()) != source_.dimension())
    throw std::invalid_argument("GroupHom: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + " but groups need " +
                                std::to_string(target_.dimension()) + "x" + std::to_string(source_.dimension()));
  for (std::size_t i = 0; i < source_.torsion().size(); ++i) {
    const auto col = static_cast<Eigen::Index>(source_.free_rank() + i);
    IntVector img = matrix_.col(col) * source_.torsion()[i];
    if (!target_.is_zero_element(img))
      throw std::invalid_argument("GroupHom: not well defined on torsion generator " + std::to_string(i));
  }
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
    IntVector c = matrix_.col(j);
    matrix_.col(j) = target_.canonical_form(c);
  }
}

GroupHom GroupHom::identity(const FgAbelianGroup& g) {
  const auto n = static_cast<Eigen::Index>(g.dimension());
  return GroupHom(g, g, IntMatrix::Identity(n, n));
}

GroupHom GroupHom::of_matrix(const IntMatrix& matrix) {
  return GroupHom(FgAbelianGroup::free(static_cast<std::size_t>(matrix.cols())),
                  FgAbelianGroup::free(static_cast<std::size_t>(matrix.rows())), matrix);
}

IntVector GroupHom::apply(const IntVector& x) const {
  if (static_cast<std::size_t>(x.size()) != source_.dimension())
    throw std::invalid_argument("GroupHom::apply: element has wrong length");
  IntVector y = matrix_ * x;
  return target_.canonical_form(y);
}

IntVector GroupHom::image_of_generator(std::size_t i) const {
  return matrix_.col(static_cast<Eigen::Index>(i));
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (!(outer.source() == inner.target())) throw std::invalid_argument("compose: groups do not match");
  IntMatrix m = outer.matrix() * inner.matrix();
  return GroupHom(inner.source(), outer.target(), m);
}

// ---- cokernel / kernel / solve -------------------------------------------

namespace {

IntMatrix with_target_relations(const GroupHom& h) {
  const IntMatrix rel = h.target().relation_matrix();
  IntMatrix b(h.matrix().rows(), h.matrix().cols() + rel.cols());
  b.leftCols(h.matrix().cols()) = h.matrix();
  b.rightCols(rel.cols()) = rel;
  return b;
}

}  // namespace

Cokernel cokernel(const GroupHom& h) {
  const IntMatrix b = with_target_relations(h);
  const auto n = b.rows();
  const auto snf = smith_normal_form(b);

  std::vector<IntVector> free_rows;
  std::vector<IntVector> torsion_rows;
  std::vector<Integer> torsion;
  for (Eigen::Index i = 0; i < n; ++i) {
    IntVector row = snf.U.row(i).transpose();
    if (i >= snf.rank) {
      free_rows.push_back(row);
    } else if (snf.D(i, i) > 1) {
      torsion.push_back(snf.D(i, i));
      torsion_rows.push_back(row);
    }
  }
  if (!free_rows.empty()) {
    const IntMatrix h_free = hermite_rows(stack_rows(free_rows, static_cast<std::size_t>(n)));
    free_rows = rows_of(h_free);
  }
  for (std::size_t i = 0; i < torsion_rows.size(); ++i)
    for (Eigen::Index j = 0; j < n; ++j) torsion_rows[i](j) = mod_floor(torsion_rows[i](j), torsion[i]);

  FgAbelianGroup group(free_rows.size(), torsion);
  std::vector<IntVector> all = free_rows;
  all.insert(all.end(), torsion_rows.begin(), torsion_rows.end());
  IntMatrix p = stack_rows(all, static_cast<std::size_t>(n));
  return Cokernel{group, GroupHom(h.target(), group, p)};
}

std::vector<IntVector> kernel(const GroupHom& h) {
  const IntMatrix b = with_target_relations(h);
  const auto k = h.matrix().cols();
  std::vector<IntVector> parts;
  for (const auto& v : kernel_basis(b)) parts.emplace_back(v.head(k));
  if (!h.source().is_free()) {
    const IntMatrix rel = h.source().relation_matrix();
    for (Eigen::Index j = 0; j < rel.cols(); ++j) parts.emplace_back(rel.col(j));
  }
  std::vector<IntVector> out;
  for (const auto& v : lattice_basis(parts, static_cast<std::size_t>(k))) {
    IntVector c = h.source().canonical_form(v);
    if (!is_zero(c) && !contains_vector(out, c)) out.push_back(c);
  }
  return out;
}

GroupHom hom_from_elements(const std::vector<IntVector>& elements, const FgAbelianGroup& target) {
  IntMatrix m = stack_columns(elements, target.dimension());
  return GroupHom(FgAbelianGroup::free(elements.size()), target, m);
}

SubgroupIndex subgroup_generates(const std::vector<IntVector>& elements, const FgAbelianGroup& group) {
  const Cokernel q = cokernel(hom_from_elements(elements, group));
  SubgroupIndex out;
  out.is_full = q.group.is_trivial();
  out.index = q.group.order();
  return out;
}

std::optional<IntVector> solve(const GroupHom& h, const IntVector& target) {
  const IntVector t = h.target().canonical_form(target);
  const IntMatrix b = with_target_relations(h);
  const auto snf = smith_normal_form(b);
  const IntVector c = snf.U * t;
  IntVector z = IntVector::Zero(b.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i < snf.rank) {
      if (c(i) % snf.D(i, i) != 0) return std::nullopt;
      z(i) = c(i) / snf.D(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  const IntVector full = snf.V * z;
  IntVector x = h.source().canonical_form(full.head(h.matrix().cols()));
  if (h.apply(x) != t) throw std::logic_error("solve: preimage failed verification");
  return x;
}

bool in_subgroup(const std::vector<IntVector>& generators, const IntVector& x, const FgAbelianGroup& group) {
  return solve(hom_from_elements(generators, group), x).has_value();
}

bool same_subgroup(const std::vector<IntVector>& a, const std::vector<IntVector>& b,
                   const FgAbelianGroup& group) {
  for (const auto& x : a)
    if (!in_subgroup(b, x, group)) return false;
  for (const auto& x : b)
    if (!in_subgroup(a, x, group)) return false;
  return true;
}

// ---- sublattices -----------------------------------------------------------

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& generators, std::size_t n) {
  if (generators.empty()) return {};
  return rows_of(hermite_rows(stack_rows(generators, n)));
}

bool same_lattice(const std::vector<IntVector>& a, const std::vector<IntVector>& b, std::size_t n) {
  const auto ha = lattice_basis(a, n);
  const auto hb = lattice_basis(b, n);
  if (ha.size() != hb.size()) return false;
  for (std::size_t i = 0; i < ha.size(); ++i)
    if (ha[i] != hb[i]) return false;
  return true;
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const auto snf = smith_normal_form(a);
  std::vector<IntVector> vs;
  for (Eigen::Index j = snf.rank; j < a.cols(); ++j) vs.emplace_back(snf.V.col(j));
  return lattice_basis(vs, static_cast<std::size_t>(a.cols()));
}

std::vector<IntVector> saturated_span(const std::vector<IntVector>& generators, std::size_t n) {
  if (generators.empty()) return {};
  const auto perp = kernel_basis(stack_rows(generators, n));
  if (perp.empty()) {
    std::vector<IntVector> id;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e = IntVector::Zero(static_cast<Eigen::Index>(n));
      e(static_cast<Eigen::Index>(i)) = 1;
      id.push_back(e);
    }
    return id;
  }
  return kernel_basis(stack_rows(perp, n));
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis_columns, const IntVector& v) {
  if (basis_columns.cols() == 0) {
    if (is_zero(v)) return IntVector(0);
    return std::nullopt;
  }
  return solve(GroupHom::of_matrix(basis_columns), v);
}

IntMatrix complete_to_unimodular(const std::vector<IntVector>& saturated_basis, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  const auto a = static_cast<Eigen::Index>(saturated_basis.size());
  if (a == 0) return IntMatrix::Identity(nn, nn);
  const IntMatrix b = stack_columns(saturated_basis, n);
  const auto snf = smith_normal_form(b);
  for (Eigen::Index i = 0; i < a; ++i)
    if (snf.rank != a || snf.D(i, i) != 1)
      throw std::invalid_argument("complete_to_unimodular: lattice is not saturated");
  const RatMatrix u = snf.U.cast<Rational>();
  IntMatrix out(nn, nn);
  out.leftCols(a) = b;
  for (Eigen::Index j = a; j < nn; ++j) {
    RatVector e = RatVector::Zero(nn);
    e(j) = 1;
    const auto col = rational_solve(u, e);
    for (Eigen::Index i = 0; i < nn; ++i) out(i, j) = numerator((*col)(i));
  }
  return out;
}

}  // namespace coxkernel
