#include "stabcat/linalg.hpp"

#include <sstream>

namespace stabcat {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p > 0x7fffffffULL || !is_prime(p))
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a supported prime");
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // extended Euclid
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

namespace {

void require_same_field(const Mat& a, const Mat& b, const char* op) {
  if (!(a.field() == b.field()))
    throw DimensionError(std::string(op) + ": field mismatch (GF(" + std::to_string(a.modulus()) +
                         ") vs GF(" + std::to_string(b.modulus()) + "))");
}

std::string shape(const Mat& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// GF(2) variant of eliminate() on bit-packed rows.
std::vector<std::size_t> eliminate_gf2(std::vector<std::uint32_t>& d, std::size_t rows,
                                       std::size_t cols, std::size_t pivot_cols) {
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (d[i * cols + j]) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (bits[i * words + w] & mask) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t k = w; k < words; ++k) std::swap(bits[sel * words + k], bits[r * words + k]);
    const std::uint64_t* prow = bits.data() + r * words;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint64_t* row = bits.data() + i * words;
      if (row[w] & mask)
        for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      d[i * cols + j] = (bits[i * words + j / 64] >> (j % 64)) & 1u;
  return pivots;
}

// In-place Gauss-Jordan on a row-major buffer. Pivots are searched only in
// columns [0, pivot_cols). Returns pivot columns.
std::vector<std::size_t> eliminate(std::vector<std::uint32_t>& d, std::size_t rows,
                                   std::size_t cols, std::size_t pivot_cols, PrimeField f) {
  if (f.modulus() == 2) return eliminate_gf2(d, rows, cols, pivot_cols);
  const std::uint64_t p = f.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (d[i * cols + c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(d[sel * cols + j], d[r * cols + j]);
    std::uint32_t* prow = d.data() + r * cols;
    const std::uint32_t iv = f.inv(prow[c]);
    if (iv != 1)
      for (std::size_t j = c; j < cols; ++j)
        prow[j] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(prow[j]) * iv) % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t* row = d.data() + i * cols;
      const std::uint32_t factor = row[c];
      if (factor == 0) continue;
      const std::uint64_t m = p - factor;
      for (std::size_t j = c; j < cols; ++j)
        if (prow[j] != 0) row[j] = static_cast<std::uint32_t>((row[j] + m * prow[j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Mat::Mat(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat Mat::identity(PrimeField field, std::size_t n) {
  Mat m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Mat Mat::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows,
                   std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Mat m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw DimensionError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                           " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Mat Mat::column(PrimeField field, std::span<const std::uint32_t> entries) {
  Mat m(field, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = entries[i] % field.modulus();
  return m;
}

bool Mat::is_zero() const {
  for (auto v : data_)
    if (v != 0) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionError("block out of range in " + shape(*this));
  Mat b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b.data_[r * nc + c] = data_[(r0 + r) * cols_ + c0 + c];
  return b;
}

Mat Mat::scaled(std::uint32_t s) const {
  Mat m = *this;
  s %= modulus();
  for (auto& v : m.data_) v = field_.mul(v, s);
  return m;
}

Mat Mat::vec() const {
  Mat v(field_, rows_ * cols_, 1);
  v.data_ = data_;
  return v;
}

Mat Mat::unvec(const Mat& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw DimensionError("unvec: " + shape(v) + " cannot be reshaped to " + std::to_string(rows) +
                         "x" + std::to_string(cols));
  Mat m(v.field(), rows, cols);
  m.data_ = v.data_;
  return m;
}

Mat& Mat::operator+=(const Mat& o) {
  require_same_field(*this, o, "add");
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionError("add: " + shape(*this) + " vs " + shape(o));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  require_same_field(*this, o, "sub");
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionError("sub: " + shape(*this) + " vs " + shape(o));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], o.data_[i]);
  return *this;
}

Mat operator-(const Mat& a) {
  Mat m = a;
  for (auto& v : m.data_) v = a.field_.neg(v);
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_field(a, b, "mul");
  if (a.cols_ != b.rows_) throw DimensionError("mul: " + shape(a) + " * " + shape(b));
  Mat m(a.field_, a.rows_, b.cols_);
  const std::uint64_t p = a.modulus();
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t x = a.data_[i * a.cols_ + k];
      if (x == 0) continue;
      const std::uint32_t* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols_; ++j) m.data_[i * b.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
  }
  return m;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Mat hcat(const Mat& a, const Mat& b) {
  require_same_field(a, b, "hcat");
  if (a.rows() != b.rows()) throw DimensionError("hcat: " + shape(a) + " | " + shape(b));
  Mat m(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, a(r, c));
    for (std::size_t c = 0; c < b.cols(); ++c) m.set(r, a.cols() + c, b(r, c));
  }
  return m;
}

Mat vcat(const Mat& a, const Mat& b) {
  require_same_field(a, b, "vcat");
  if (a.cols() != b.cols()) throw DimensionError("vcat: " + shape(a) + " ; " + shape(b));
  Mat m(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, a(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m.set(a.rows() + r, c, b(r, c));
  return m;
}

Mat hcat(std::span<const Mat> blocks, PrimeField field, std::size_t rows) {
  Mat m(field, rows, 0);
  for (const auto& b : blocks) m = hcat(m, b);
  return m;
}

Mat vcat(std::span<const Mat> blocks, PrimeField field, std::size_t cols) {
  Mat m(field, 0, cols);
  for (const auto& b : blocks) m = vcat(m, b);
  return m;
}

Mat block_diag(const Mat& a, const Mat& b) {
  require_same_field(a, b, "block_diag");
  Mat m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, a(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m.set(a.rows() + r, a.cols() + c, b(r, c));
  return m;
}

RrefResult rref(const Mat& m) {
  RrefResult res;
  res.reduced = m;
  res.pivots = eliminate(res.reduced.data_, m.rows(), m.cols(), m.cols(), m.field());
  res.rank = res.pivots.size();
  return res;
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

Mat kernel_basis(const Mat& a) {
  const auto rr = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  Mat k(a.field(), n, n - rr.rank);
  std::size_t col = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    k.set(free, col, 1);
    for (std::size_t i = 0; i < rr.rank; ++i)
      k.set(rr.pivots[i], col, a.field().neg(rr.reduced(i, free)));
    ++col;
  }
  return k;
}

Mat column_space(const Mat& a) {
  const auto rr = rref(a);
  Mat out(a.field(), a.rows(), 0);
  for (auto c : rr.pivots) out = hcat(out, a.col(c));
  return out;
}

Mat complement_basis(const Mat& a) {
  const std::size_t n = a.rows();
  const auto rr = rref(hcat(a, Mat::identity(a.field(), n)));
  Mat out(a.field(), n, 0);
  for (auto c : rr.pivots)
    if (c >= a.cols()) out = hcat(out, Mat::identity(a.field(), n).col(c - a.cols()));
  return out;
}

std::optional<SolveResult> solve_all(const Mat& a, const Mat& b) {
  require_same_field(a, b, "solve_all");
  if (a.rows() != b.rows())
    throw DimensionError("solve_all: A is " + shape(a) + " but B is " + shape(b));
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  Mat aug = hcat(a, b);
  std::vector<std::uint32_t> d(aug.entries().begin(), aug.entries().end());
  const auto piv = eliminate(d, aug.rows(), n + k, n, a.field());
  const std::size_t r = piv.size();
  for (std::size_t i = r; i < aug.rows(); ++i)
    for (std::size_t j = n; j < n + k; ++j)
      if (d[i * (n + k) + j] != 0) return std::nullopt;
  SolveResult res;
  res.particular = Mat(a.field(), n, k);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) res.particular.set(piv[i], j, d[i * (n + k) + n + j]);
  // null space from the same reduced form
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Mat v(a.field(), n, 1);
    v.set(free, 0, 1);
    for (std::size_t i = 0; i < r; ++i) v.set(piv[i], 0, -static_cast<std::int64_t>(d[i * (n + k) + free]));
    res.null_basis.push_back(std::move(v));
  }
  return res;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  require_same_field(a, b, "solve");
  if (a.rows() != b.rows())
    throw DimensionError("solve: A is " + shape(a) + " but B is " + shape(b));
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  Mat aug = hcat(a, b);
  std::vector<std::uint32_t> d(aug.entries().begin(), aug.entries().end());
  const auto piv = eliminate(d, aug.rows(), n + k, n, a.field());
  for (std::size_t i = piv.size(); i < aug.rows(); ++i)
    for (std::size_t j = n; j < n + k; ++j)
      if (d[i * (n + k) + j] != 0) return std::nullopt;
  Mat x(a.field(), n, k);
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) x.set(piv[i], j, d[i * (n + k) + n + j]);
  return x;
}

std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Mat::identity(a.field(), a.rows()));
}

}  // namespace stabcat
