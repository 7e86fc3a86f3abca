#ifndef QVIB_CORE_MATRIX_HPP
#define QVIB_CORE_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace qvib {

// Dense real matrix, row major. Sized for desk-scale operator algebra.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(double s) const;
  Matrix transposed() const;

  double max_abs() const;
  double max_asymmetry() const;  // max |a_ij - a_ji|
  double trace() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

// Cyclic Jacobi diagonalization of a symmetric matrix. The sweep order is
// fixed and rotations stop once every off-diagonal entry is below
// 1e-12 * max-abs of the input, so repeated runs give bit-identical output.
SymmetricEigen jacobi_eigensolver(Matrix a);

}  // namespace qvib

#endif
