#include "thetalab/int_matrix.hpp"

#include <gmpxx.h>

#include "thetalab/errors.hpp"

namespace thetalab {

IntMatrix::IntMatrix(int rows, int cols, std::int64_t fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::set_labels(std::vector<F2Vector> rows, std::vector<F2Vector> cols) {
  if (static_cast<int>(rows.size()) != rows_ || static_cast<int>(cols.size()) != cols_)
    throw InputError("label count does not match matrix shape");
  row_labels_ = std::move(rows);
  col_labels_ = std::move(cols);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  if (labeled()) t.set_labels(col_labels_, row_labels_);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  if (labeled() && rhs.labeled()) out.set_labels(row_labels_, rhs.col_labels_);
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix sum shape mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const { return *this + rhs.scaled(-1); }

IntMatrix IntMatrix::scaled(std::int64_t factor) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= factor;
  return out;
}

IntMatrix IntMatrix::shifted(std::int64_t shift) const {
  if (rows_ != cols_) throw InputError("shift requires a square matrix");
  IntMatrix out = *this;
  for (int i = 0; i < rows_; ++i) out(i, i) += shift;
  return out;
}

IntMatrix IntMatrix::block(int row0, int col0, int rows, int cols) const {
  if (row0 < 0 || col0 < 0 || row0 + rows > rows_ || col0 + cols > cols_)
    throw InputError("block out of range");
  IntMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  if (labeled())
    out.set_labels({row_labels_.begin() + row0, row_labels_.begin() + row0 + rows},
                   {col_labels_.begin() + col0, col_labels_.begin() + col0 + cols});
  return out;
}

IntMatrix IntMatrix::principal(const std::vector<int>& indices) const {
  if (rows_ != cols_) throw InputError("principal submatrix of a non-square matrix");
  const int k = static_cast<int>(indices.size());
  IntMatrix out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = (*this)(indices[i], indices[j]);
  if (labeled()) {
    std::vector<F2Vector> r, c;
    for (int i : indices) {
      r.push_back(row_labels_[i]);
      c.push_back(col_labels_[i]);
    }
    out.set_labels(std::move(r), std::move(c));
  }
  return out;
}

IntMatrix IntMatrix::column(int j) const { return block(0, j, rows_, 1); }

IntMatrix IntMatrix::stacked(const IntMatrix& below) const {
  if (cols_ != below.cols_) throw InputError("stack shape mismatch");
  IntMatrix out(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

IntMatrix IntMatrix::side_by_side(const IntMatrix& right) const { return transpose().stacked(right.transpose()).transpose(); }

IntMatrix IntMatrix::kron(const IntMatrix& rhs) const {
  IntMatrix out(rows_ * rhs.rows_, cols_ * rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      for (int k = 0; k < rhs.rows_; ++k)
        for (int l = 0; l < rhs.cols_; ++l) out(i * rhs.rows_ + k, j * rhs.cols_ + l) = (*this)(i, j) * rhs(k, l);
  return out;
}

bool IntMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

nlohmann::json IntMatrix::to_json() const {
  nlohmann::json data = nlohmann::json::array();
  for (int i = 0; i < rows_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < cols_; ++j) row.push_back((*this)(i, j));
    data.push_back(std::move(row));
  }
  nlohmann::json out = {{"rows", rows_}, {"cols", cols_}, {"data", std::move(data)}};
  if (labeled()) {
    auto labels = [](const std::vector<F2Vector>& v) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& x : v) a.push_back(x.label());
      return a;
    };
    out["row_labels"] = labels(row_labels_);
    out["col_labels"] = labels(col_labels_);
  }
  return out;
}

int exact_rank(const IntMatrix& a) {
  const int m = a.rows(), n = a.cols();
  std::vector<mpz_class> w(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i) * n + j] = static_cast<long>(a(i, j));
  auto at = [&](int i, int j) -> mpz_class& { return w[static_cast<std::size_t>(i) * n + j]; };

  mpz_class prev = 1;
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = -1;
    for (int i = rank; i < m; ++i)
      if (sgn(at(i, col)) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < n; ++j) std::swap(at(pivot, j), at(rank, j));
    const mpz_class& p = at(rank, col);
    for (int i = rank + 1; i < m; ++i) {
      const mpz_class f = at(i, col);
      for (int j = col + 1; j < n; ++j) {
        mpz_class& x = at(i, j);
        x = p * x - f * at(rank, j);
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, col) = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

int modular_rank(const IntMatrix& a, std::uint32_t p) {
  const int m = a.rows(), n = a.cols();
  std::vector<std::uint64_t> w(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const std::int64_t r = a(i, j) % static_cast<std::int64_t>(p);
      w[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint64_t>(r < 0 ? r + p : r);
    }
  auto at = [&](int i, int j) -> std::uint64_t& { return w[static_cast<std::size_t>(i) * n + j]; };
  auto inverse = [p](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };

  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = -1;
    for (int i = rank; i < m; ++i)
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < n; ++j) std::swap(at(pivot, j), at(rank, j));
    const std::uint64_t inv = inverse(at(rank, col));
    for (int i = rank + 1; i < m; ++i) {
      const std::uint64_t f = at(i, col) * inv % p;
      if (f == 0) continue;
      for (int j = col; j < n; ++j) at(i, j) = (at(i, j) + (p - f) * at(rank, j)) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace thetalab
