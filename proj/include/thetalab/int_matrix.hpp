#pragma once

// Dense integer matrices with optional characteristic labels, and exact rank.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "thetalab/characteristic.hpp"

namespace thetalab {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, std::int64_t fill = 0);

  static IntMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::int64_t& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<F2Vector>& row_labels() const noexcept { return row_labels_; }
  const std::vector<F2Vector>& col_labels() const noexcept { return col_labels_; }
  void set_labels(std::vector<F2Vector> rows, std::vector<F2Vector> cols);
  bool labeled() const noexcept { return !row_labels_.empty(); }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(std::int64_t factor) const;
  // A + shift * I (square only).
  IntMatrix shifted(std::int64_t shift) const;
  IntMatrix block(int row0, int col0, int rows, int cols) const;
  IntMatrix principal(const std::vector<int>& indices) const;
  IntMatrix column(int j) const;
  // Rows of *this followed by rows of below.
  IntMatrix stacked(const IntMatrix& below) const;
  // Columns of *this followed by columns of right.
  IntMatrix side_by_side(const IntMatrix& right) const;
  IntMatrix kron(const IntMatrix& rhs) const;

  bool is_symmetric() const;
  bool is_zero() const;
  std::int64_t trace() const;

  // {"rows","cols","data",["row_labels","col_labels"]}
  nlohmann::json to_json() const;

  // Entries and shape only; labels are metadata.
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
  std::vector<F2Vector> row_labels_;
  std::vector<F2Vector> col_labels_;
};

// Rank over Q by fraction-free (Bareiss) elimination on GMP integers.
int exact_rank(const IntMatrix& a);

// Rank over F_p (p < 2^32).  Never exceeds exact_rank; equal to it whenever
// p divides none of the relevant minors.
int modular_rank(const IntMatrix& a, std::uint32_t p = 2147483647U);

}  // namespace thetalab
