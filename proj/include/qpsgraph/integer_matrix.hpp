#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qpsgraph {

using BigInt = boost::multiprecision::cpp_int;

// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool is_zero() const;
  bool is_diagonal() const;

  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  std::vector<BigInt> operator*(const std::vector<BigInt>& v) const;
  bool operator==(const IntegerMatrix&) const = default;

  // Elementary operations, used by the Smith normal form.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t target, std::size_t source, const BigInt& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const BigInt& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Exact determinant (fraction-free Bareiss elimination). Requires a square
// matrix; the 0x0 determinant is 1.
BigInt determinant(const IntegerMatrix& m);

// True iff `m` is square with determinant +1 or -1.
bool is_unimodular(const IntegerMatrix& m);

}  // namespace qpsgraph
