#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace milnor {

using BigInt = boost::multiprecision::cpp_int;

// Dense exact integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const IntMatrix&) const = default;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Exact determinant (fraction-free Bareiss elimination). Requires a square matrix.
BigInt determinant(const IntMatrix& a);

// A = U * S * V with U, V unimodular and S diagonal, d_1 | d_2 | ... >= 0.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;

  std::vector<BigInt> diagonal() const;
  std::size_t rank() const;
};

// Z^rows / image(A), where A maps Z^cols -> Z^rows.
struct CokernelPresentation {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // entries >= 2, each dividing the next

  bool operator==(const CokernelPresentation&) const = default;
};

// Deterministic: the pivot is the smallest nonzero absolute value in the
// remaining block, ties broken row-major.
SmithDecomposition smith_normal_form(const IntMatrix& a);

CokernelPresentation cokernel(const IntMatrix& a);
CokernelPresentation cokernel(const SmithDecomposition& snf);

}  // namespace milnor
