#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabcat {

/// Raised on any shape or field mismatch. Carries a human-readable detail.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A prime field GF(p). Primality is checked on construction.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint32_t modulus() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    return static_cast<std::uint32_t>(r < 0 ? r + m : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_ = 2;
};

bool is_prime(std::uint64_t n);

class Mat;
struct RrefResult;
RrefResult rref(const Mat& m);

/// Dense row-major matrix over GF(p). Entries are always reduced.
///
/// Column-vector convention: a linear map from an m-dimensional space to an
/// n-dimensional space is an n x m matrix acting on the left. Zero-row and
/// zero-column matrices are legal and behave as maps to/from the zero space.
class Mat {
 public:
  Mat() = default;
  Mat(PrimeField field, std::size_t rows, std::size_t cols);

  static Mat identity(PrimeField field, std::size_t n);
  /// Builds from integer rows (reduced mod p). `cols` is needed only when
  /// `rows` is empty; otherwise every row must have the same length.
  static Mat from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows,
                       std::size_t cols = 0);
  /// Column vector from a list of entries.
  static Mat column(PrimeField field, std::span<const std::uint32_t> entries);

  PrimeField field() const { return field_; }
  std::uint32_t modulus() const { return field_.modulus(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const std::uint32_t> entries() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Mat col(std::size_t c) const { return block(0, c, rows_, 1); }
  Mat scaled(std::uint32_t s) const;

  /// Row-major flattening as a column vector of length rows*cols.
  Mat vec() const;
  /// Inverse of vec(): reshape a column vector into rows x cols.
  static Mat unvec(const Mat& v, std::size_t rows, std::size_t cols);

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(const Mat& a);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  friend RrefResult rref(const Mat& m);

  PrimeField field_{2};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

/// [a | b]
Mat hcat(const Mat& a, const Mat& b);
/// [a ; b]
Mat vcat(const Mat& a, const Mat& b);
Mat hcat(std::span<const Mat> blocks, PrimeField field, std::size_t rows);
Mat vcat(std::span<const Mat> blocks, PrimeField field, std::size_t cols);
Mat block_diag(const Mat& a, const Mat& b);

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;  // increasing
  std::size_t rank = 0;
};

/// Unique reduced row-echelon form.
RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);

/// Columns form the canonical basis of ker(a): one column per free variable,
/// in increasing free-column order, with that free variable set to 1.
Mat kernel_basis(const Mat& a);

/// Columns form a basis of the column space of `a`: the pivot columns of `a`.
Mat column_space(const Mat& a);

/// Columns complete the columns of `a` (assumed independent) to a basis of
/// k^rows, chosen greedily from the standard basis in index order.
Mat complement_basis(const Mat& a);

struct SolveResult {
  Mat particular;             // cols(a) x cols(b), free variables set to 0
  std::vector<Mat> null_basis;  // columns of kernel_basis(a), each cols(a) x 1
};

/// All solutions of a * x = b. Absent when inconsistent.
std::optional<SolveResult> solve_all(const Mat& a, const Mat& b);
/// Particular solution only.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Inverse of a square matrix, absent when singular.
std::optional<Mat> inverse(const Mat& a);

}  // namespace stabcat
