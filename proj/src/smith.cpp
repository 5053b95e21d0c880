#include "milnor_lab/smith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace milnor {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long long x : row) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("IntMatrix: shape mismatch in difference");
  }
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x.is_zero(); });
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Elementary operations on S that keep A = U * S * V.
class Reducer {
 public:
  explicit Reducer(const IntMatrix& a)
      : s_(a), u_(IntMatrix::identity(a.rows())), v_(IntMatrix::identity(a.cols())) {}

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < s_.cols(); ++j) std::swap(s_(a, j), s_(b, j));
    for (std::size_t i = 0; i < u_.rows(); ++i) std::swap(u_(i, a), u_(i, b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < s_.rows(); ++i) std::swap(s_(i, a), s_(i, b));
    for (std::size_t j = 0; j < v_.cols(); ++j) std::swap(v_(a, j), v_(b, j));
  }

  // row[target] += factor * row[source]
  void add_row(std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t j = 0; j < s_.cols(); ++j) s_(target, j) += factor * s_(source, j);
    for (std::size_t i = 0; i < u_.rows(); ++i) u_(i, source) -= factor * u_(i, target);
  }

  // col[target] += factor * col[source]
  void add_col(std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t i = 0; i < s_.rows(); ++i) s_(i, target) += factor * s_(i, source);
    for (std::size_t j = 0; j < v_.cols(); ++j) v_(source, j) -= factor * v_(target, j);
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < s_.cols(); ++j) s_(r, j) = -s_(r, j);
    for (std::size_t i = 0; i < u_.rows(); ++i) u_(i, r) = -u_(i, r);
  }

  const IntMatrix& s() const { return s_; }

  SmithDecomposition release() { return {std::move(u_), std::move(s_), std::move(v_)}; }

  // Smallest nonzero |entry| in the block [t.., t..], row-major tie-break.
  bool find_pivot(std::size_t t, std::size_t& row, std::size_t& col) const {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < s_.rows(); ++i) {
      for (std::size_t j = t; j < s_.cols(); ++j) {
        if (s_(i, j).is_zero()) continue;
        BigInt value = abs(s_(i, j));
        if (!found || value < best) {
          found = true;
          best = std::move(value);
          row = i;
          col = j;
        }
      }
    }
    return found;
  }

 private:
  IntMatrix s_;
  IntMatrix u_;
  IntMatrix v_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  Reducer red(a);
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t row = 0;
    std::size_t col = 0;
    if (!red.find_pivot(t, row, col)) break;

    while (true) {
      red.swap_rows(t, row);
      red.swap_cols(t, col);
      const BigInt pivot = red.s()(t, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (red.s()(i, t).is_zero()) continue;
        red.add_row(i, t, -BigInt(red.s()(i, t) / pivot));
        clean = clean && red.s()(i, t).is_zero();
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (red.s()(t, j).is_zero()) continue;
        red.add_col(j, t, -BigInt(red.s()(t, j) / pivot));
        clean = clean && red.s()(t, j).is_zero();
      }

      if (clean) {
        // Pivot must divide the rest of the block; otherwise fold the
        // offending row into row t and keep reducing.
        std::size_t bad_row = 0;
        bool divides = true;
        for (std::size_t i = t + 1; i < a.rows() && divides; ++i) {
          for (std::size_t j = t + 1; j < a.cols(); ++j) {
            if (BigInt(red.s()(i, j) % pivot) != 0) {
              divides = false;
              bad_row = i;
              break;
            }
          }
        }
        if (divides) break;
        red.add_row(t, bad_row, 1);
      }
      red.find_pivot(t, row, col);
    }

    if (red.s()(t, t) < 0) red.negate_row(t);
  }
  return red.release();
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
  std::vector<BigInt> out;
  const std::size_t n = std::min(s.rows(), s.cols());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s(i, i));
  return out;
}

std::size_t SmithDecomposition::rank() const {
  const auto diag = diagonal();
  return static_cast<std::size_t>(
      std::count_if(diag.begin(), diag.end(), [](const BigInt& x) { return !x.is_zero(); }));
}

CokernelPresentation cokernel(const SmithDecomposition& snf) {
  CokernelPresentation out;
  out.free_rank = snf.s.rows() - snf.rank();
  for (const auto& x : snf.diagonal()) {
    if (x > 1) out.torsion.push_back(x);
  }
  return out;
}

CokernelPresentation cokernel(const IntMatrix& a) { return cokernel(smith_normal_form(a)); }

}  // namespace milnor
