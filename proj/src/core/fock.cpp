#include "core/fock.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace qvib {

FockBasis::FockBasis(int mode_count, int n_max, std::size_t dimension_cap)
    : mode_count_(mode_count), n_max_(n_max) {
  if (mode_count < 1) throw_argument("basis needs at least one mode");
  if (n_max < 1) throw_argument("basis cutoff n_max must be >= 1");
  const std::size_t radix = static_cast<std::size_t>(n_max) + 1;
  std::size_t dim = 1;
  for (int i = 0; i < mode_count; ++i) {
    if (dim > dimension_cap / radix)
      throw_resource("basis dimension (" + std::to_string(n_max + 1) + "^" +
                     std::to_string(mode_count) + ") exceeds the cap of " +
                     std::to_string(dimension_cap));
    dim *= radix;
  }
  dimension_ = dim;
}

std::size_t FockBasis::index_of(std::span<const int> labels) const {
  if (static_cast<int>(labels.size()) != mode_count_)
    throw_argument("label length does not match mode count");
  std::size_t idx = 0;
  for (int i = 0; i < mode_count_; ++i) {
    if (labels[i] < 0 || labels[i] > n_max_)
      throw_argument("occupation " + std::to_string(labels[i]) + " outside [0, n_max]");
    idx = idx * (n_max_ + 1) + static_cast<std::size_t>(labels[i]);
  }
  return idx;
}

std::vector<int> FockBasis::label_of(std::size_t index) const {
  if (index >= dimension_) throw_argument("basis index out of range");
  std::vector<int> labels(mode_count_);
  for (int i = mode_count_ - 1; i >= 0; --i) {
    labels[i] = static_cast<int>(index % (n_max_ + 1));
    index /= (n_max_ + 1);
  }
  return labels;
}

int FockBasis::occupation(std::size_t index, int mode) const {
  if (mode < 1 || mode > mode_count_) throw_argument("mode index out of range");
  std::size_t div = 1;
  for (int i = 0; i < mode_count_ - mode; ++i) div *= (n_max_ + 1);
  return static_cast<int>((index / div) % (n_max_ + 1));
}

int FockBasis::total_quanta(std::size_t index) const {
  int total = 0;
  for (int m = 1; m <= mode_count_; ++m) total += occupation(index, m);
  return total;
}

OperatorMatrix diagonal_operator(const FockBasis& basis,
                                 const std::function<double(std::span<const int>)>& f) {
  Matrix m(basis.dimension(), basis.dimension());
  for (std::size_t s = 0; s < basis.dimension(); ++s) {
    const auto label = basis.label_of(s);
    m(s, s) = f(label);
  }
  return {basis, std::move(m)};
}

OperatorMatrix number_operator(const FockBasis& basis, int mode) {
  if (mode < 1 || mode > basis.mode_count()) throw_argument("mode index out of range");
  Matrix m(basis.dimension(), basis.dimension());
  for (std::size_t s = 0; s < basis.dimension(); ++s) m(s, s) = basis.occupation(s, mode);
  return {basis, std::move(m)};
}

namespace {

// Shared ladder construction: entry sqrt(w(n_i)) between n_i and n_i - 1.
OperatorMatrix lowering_matrix(const FockBasis& basis, int mode,
                               const std::function<double(int)>& weight) {
  if (mode < 1 || mode > basis.mode_count()) throw_argument("mode index out of range");
  Matrix m(basis.dimension(), basis.dimension());
  std::size_t stride = 1;
  for (int i = 0; i < basis.mode_count() - mode; ++i) stride *= (basis.n_max() + 1);
  for (std::size_t s = 0; s < basis.dimension(); ++s) {
    const int n = basis.occupation(s, mode);
    if (n == 0) continue;  // b|0> = 0
    const double w = weight(n);
    if (w < 0.0)
      throw_domain("bracket of n=" + std::to_string(n) +
                   " is negative; lowering operator undefined");
    m(s - stride, s) = std::sqrt(w);
  }
  return {basis, std::move(m)};
}

}  // namespace

OperatorMatrix lowering_Q(const FockBasis& basis, int mode, const Deformation& d) {
  if (d.kind != DeformationKind::Q_real)
    throw_argument("lowering_Q requires a Q_real deformation");
  return lowering_matrix(basis, mode, [&](int n) { return bracket_Q(n, d.value); });
}

OperatorMatrix lowering_q(const FockBasis& basis, int mode, const Deformation& d) {
  if (!d.is_symmetric_kind())
    throw_argument("lowering_q requires a q_real or q_phase deformation");
  if (d.kind == DeformationKind::q_phase &&
      std::abs(d.value) * (basis.n_max() + 1) >= M_PI)
    throw_domain("q_phase ladder operators need tau*(n_max+1) < pi so every "
                 "bracket under the square root stays positive");
  return lowering_matrix(basis, mode, [&](int n) {
    const double w = bracket_symmetric(n, d);
    if (w <= 0.0)
      throw_domain("symmetric bracket of n=" + std::to_string(n) + " is not positive");
    return w;
  });
}

OperatorMatrix margin_projector(const FockBasis& basis, int margin) {
  if (margin < 0 || margin > basis.n_max())
    throw_argument("projector margin must lie in [0, n_max]");
  const int limit = basis.n_max() - margin;
  Matrix m(basis.dimension(), basis.dimension());
  for (std::size_t s = 0; s < basis.dimension(); ++s) {
    bool keep = true;
    for (int mode = 1; mode <= basis.mode_count() && keep; ++mode)
      keep = basis.occupation(s, mode) <= limit;
    m(s, s) = keep ? 1.0 : 0.0;
  }
  return {basis, std::move(m)};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.basis == b.basis)) throw_argument("commutator operands live on different bases");
  return {a.basis, commutator(a.mat, b.mat)};
}

Matrix project(const OperatorMatrix& projector, const Matrix& expr) {
  return projector.mat * expr * projector.mat;
}

}  // namespace qvib
