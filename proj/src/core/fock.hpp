#ifndef QVIB_CORE_FOCK_HPP
#define QVIB_CORE_FOCK_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "core/deformation.hpp"
#include "core/matrix.hpp"

namespace qvib {

inline constexpr std::size_t kDefaultDimensionCap = 100000;

// Truncated multi-mode number basis with a uniform per-mode cutoff n_max.
// States are ordered lexicographically with n_1 slowest, so the flat index
// is the mixed-radix value of (n_1, ..., n_l) in base n_max+1.
class FockBasis {
 public:
  FockBasis(int mode_count, int n_max, std::size_t dimension_cap = kDefaultDimensionCap);

  int mode_count() const { return mode_count_; }
  int n_max() const { return n_max_; }
  std::size_t dimension() const { return dimension_; }

  std::size_t index_of(std::span<const int> labels) const;
  std::vector<int> label_of(std::size_t index) const;
  // Occupation of `mode` (1-based) in the state with the given flat index.
  int occupation(std::size_t index, int mode) const;
  int total_quanta(std::size_t index) const;

  bool operator==(const FockBasis& other) const {
    return mode_count_ == other.mode_count_ && n_max_ == other.n_max_;
  }

 private:
  int mode_count_;
  int n_max_;
  std::size_t dimension_;
};

struct OperatorMatrix {
  FockBasis basis;
  Matrix mat;
};

// Diagonal operator whose entry at each basis state is f(label).
OperatorMatrix diagonal_operator(const FockBasis& basis,
                                 const std::function<double(std::span<const int>)>& f);

// Number operator N_i (mode is 1-based).
OperatorMatrix number_operator(const FockBasis& basis, int mode);

// Q-boson lowering operator: <..,n-1,..|b|..,n,..> = sqrt([n]_Q), b|0> = 0.
OperatorMatrix lowering_Q(const FockBasis& basis, int mode, const Deformation& d);

// Symmetric-bracket lowering operator: <n-1|a|n> = sqrt([n]_q). For q_phase
// all brackets under the square root must be positive, which we guard by
// requiring tau*(n_max+1) < pi.
OperatorMatrix lowering_q(const FockBasis& basis, int mode, const Deformation& d);

inline OperatorMatrix raising(const OperatorMatrix& lower) {
  return {lower.basis, lower.mat.transposed()};
}

// Diagonal 0/1 projector onto states with n_i <= n_max - margin for every
// mode: identities that raise quanta through the cutoff hold only there.
OperatorMatrix margin_projector(const FockBasis& basis, int margin);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// P expr P for residual checks against truncation artifacts.
Matrix project(const OperatorMatrix& projector, const Matrix& expr);

}  // namespace qvib

#endif
