#pragma once

// Exact integer / rational matrix algebra: Smith and Hermite normal forms,
// saturated kernels, cokernel invariants, determinants, Pfaffians and
// positive-definiteness. Everything is dense; sizes in this library stay in
// the low hundreds.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abelfourier/errors.hpp"

namespace abelfourier {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix scalar(std::size_t n, const T& s) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

/// Integral matrix equal to m, or nullopt if some entry has a denominator.
inline std::optional<IntMatrix> to_integral(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

template <class T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Determinants, inverses, Pfaffians

inline Rat determinant(RatMatrix a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant.
inline Int determinant(IntMatrix a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Pfaffian of an alternating matrix by skew Gaussian elimination over Q.
inline Rat pfaffian(const RatMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "pfaffian of non-square matrix");
  const std::size_t n = m.rows();
  if (n % 2 == 1) return 0;
  RatMatrix a = m;
  Rat pf = 1;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t piv = k + 1;
    while (piv < n && a(k, piv) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k + 1) {
      // simultaneous row/column swap flips the sign
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(piv, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, piv));
      pf = -pf;
    }
    const Rat p = a(k, k + 1);
    pf *= p;
    // clear row/column k and k+1 against the 2x2 pivot block
    for (std::size_t i = k + 2; i < n; ++i) {
      const Rat ci = a(k, i) / p;       // multiple of row k+1 to remove
      const Rat di = a(k + 1, i) / p;   // multiple of row k to add
      if (ci == 0 && di == 0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) += -ci * a(k + 1, j) + di * a(k, j);
      for (std::size_t j = k; j < n; ++j) a(j, i) += -ci * a(j, k + 1) + di * a(j, k);
    }
  }
  return pf;
}

inline Int pfaffian(const IntMatrix& m) {
  Rat r = pfaffian(to_rational(m));
  return r.get_num();
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithDecomposition {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix V;  // cols x cols, unimodular
  std::vector<Int> divisors;  // min(rows, cols) nonnegative entries, d_i | d_{i+1}, zeros last

  std::size_t rank() const {
    return static_cast<std::size_t>(
        std::count_if(divisors.begin(), divisors.end(), [](const Int& d) { return d != 0; }));
  }
};

namespace detail {

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
template <class T>
void swap_cols(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst -= q * row_src
inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}
// col_dst -= q * col_src
inline void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}
// quotient rounded to nearest, so remainders satisfy |r| <= |d|/2
inline Int nearest_quotient(const Int& n, const Int& d) {
  Int q;
  Int twice = 2 * n + abs(d);
  Int den = 2 * abs(d);
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
  return sgn(d) < 0 ? Int(-q) : q;
}

}  // namespace detail

/// Smallest-absolute-value pivoting with row/column reduction; U*M*V = diag(divisors).
inline SmithDecomposition smith_normal_form(const IntMatrix& M) {
  const std::size_t r = M.rows(), c = M.cols();
  IntMatrix A = M;
  SmithDecomposition out{IntMatrix::identity(r), IntMatrix::identity(c), {}};
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;
  const std::size_t steps = std::min(r, c);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (A(i, j) != 0 && (pi == r || mpz_cmpabs(A(i, j).get_mpz_t(), A(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == r) break;  // trailing block is zero
      detail::swap_rows(A, t, pi);
      detail::swap_rows(U, t, pi);
      detail::swap_cols(A, t, pj);
      detail::swap_cols(V, t, pj);

      bool clean = true;
      const Int p = A(t, t);
      for (std::size_t i = t + 1; i < r; ++i) {
        if (A(i, t) == 0) continue;
        Int q = detail::nearest_quotient(A(i, t), p);
        detail::row_axpy(A, i, t, q);
        detail::row_axpy(U, i, t, q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (A(t, j) == 0) continue;
        Int q = detail::nearest_quotient(A(t, j), p);
        detail::col_axpy(A, j, t, q);
        detail::col_axpy(V, j, t, q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the rest of the block by the pivot
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), p.get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == r) break;
      detail::row_axpy(A, t, bad, Int(-1));  // row_t += row_bad
      detail::row_axpy(U, t, bad, Int(-1));
    }
    if (A(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) A(t, j) = -A(t, j);
      for (std::size_t j = 0; j < r; ++j) U(t, j) = -U(t, j);
    }
  }
  out.divisors.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.divisors.push_back(A(t, t));
  return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style)

/// Row-style Hermite normal form H = W*M: echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows are kept at the bottom.
inline IntMatrix hermite_normal_form(const IntMatrix& M) {
  IntMatrix A = M;
  const std::size_t r = A.rows(), c = A.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    for (;;) {
      std::size_t piv = r;
      for (std::size_t i = row; i < r; ++i)
        if (A(i, col) != 0 && (piv == r || mpz_cmpabs(A(i, col).get_mpz_t(), A(piv, col).get_mpz_t()) < 0)) piv = i;
      if (piv == r) break;
      detail::swap_rows(A, row, piv);
      bool clean = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (A(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, col).get_mpz_t(), A(row, col).get_mpz_t());
        detail::row_axpy(A, i, row, q);
        if (A(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (A(row, col) == 0) continue;
    if (A(row, col) < 0)
      for (std::size_t j = 0; j < c; ++j) A(row, j) = -A(row, j);
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A(i, col).get_mpz_t(), A(row, col).get_mpz_t());
      detail::row_axpy(A, i, row, q);
    }
    ++row;
  }
  return A;
}

/// Canonical basis (as columns) of the lattice spanned by the columns of B.
inline IntMatrix canonical_column_basis(const IntMatrix& B) {
  IntMatrix H = hermite_normal_form(B.transpose());
  std::size_t rank = 0;
  while (rank < H.rows()) {
    bool zero = true;
    for (std::size_t j = 0; j < H.cols(); ++j)
      if (H(rank, j) != 0) {
        zero = false;
        break;
      }
    if (zero) break;
    ++rank;
  }
  IntMatrix out(B.rows(), rank);
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t i = 0; i < B.rows(); ++i) out(i, k) = H(k, i);
  return out;
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, lattice solves

/// Scales each row by the lcm of its denominators.
inline IntMatrix clear_denominators(const RatMatrix& M) {
  IntMatrix out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < M.cols(); ++j) l = lcm(l, M(i, j).get_den());
    for (std::size_t j = 0; j < M.cols(); ++j) {
      Rat v = M(i, j) * l;
      out(i, j) = v.get_num();
    }
  }
  return out;
}

/// Basis (columns) of the saturated integer kernel {x in Z^cols : Mx = 0}.
inline IntMatrix kernel_saturated(const IntMatrix& M) {
  SmithDecomposition snf = smith_normal_form(M);
  const std::size_t rank = snf.rank();
  const std::size_t n = M.cols();
  IntMatrix K(n, n - rank);
  for (std::size_t k = rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) K(i, k - rank) = snf.V(i, k);
  return canonical_column_basis(K);
}

inline IntMatrix kernel_saturated(const RatMatrix& M) { return kernel_saturated(clear_denominators(M)); }

struct CokernelInvariants {
  std::vector<Int> divisors;  // nonzero elementary divisors (1s included)
  std::size_t free_rank = 0;

  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (const auto& d : divisors)
      if (d != 1) t.push_back(d);
    return t;
  }
  bool trivial() const { return free_rank == 0 && torsion().empty(); }
  friend bool operator==(const CokernelInvariants&, const CokernelInvariants&) = default;
};

/// Elementary divisors of Z^ambient_rank / span(columns of generators).
inline CokernelInvariants cokernel_invariants(const IntMatrix& generators, std::size_t ambient_rank) {
  if (generators.rows() != ambient_rank)
    throw Error(ErrorCode::DimensionMismatch, "generators must have ambient_rank rows");
  CokernelInvariants out;
  if (generators.cols() == 0) {
    out.free_rank = ambient_rank;
    return out;
  }
  SmithDecomposition snf = smith_normal_form(generators);
  for (const auto& d : snf.divisors)
    if (d != 0) out.divisors.push_back(d);
  out.free_rank = ambient_rank - out.divisors.size();
  return out;
}

/// Integer coordinates c with B*c = v, if v lies in the lattice spanned by the
/// (linearly independent) columns of B.
inline std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& B, const std::vector<Int>& v) {
  if (v.size() != B.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_in_lattice: vector length");
  SmithDecomposition snf = smith_normal_form(B);
  const std::size_t rank = snf.rank();
  if (rank != B.cols()) throw Error(ErrorCode::PreconditionViolated, "solve_in_lattice: columns not independent");
  std::vector<Int> w(B.rows(), Int(0));
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.rows(); ++j)
      if (snf.U(i, j) != 0) w[i] += snf.U(i, j) * v[j];
  std::vector<Int> y(B.cols());
  for (std::size_t i = 0; i < B.rows(); ++i) {
    if (i < rank) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), snf.divisors[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), w[i].get_mpz_t(), snf.divisors[i].get_mpz_t());
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> c(B.cols(), Int(0));
  for (std::size_t i = 0; i < B.cols(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) c[i] += snf.V(i, j) * y[j];
  return c;
}

inline bool is_symmetric(const RatMatrix& S) {
  if (!S.is_square()) return false;
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = i + 1; j < S.cols(); ++j)
      if (S(i, j) != S(j, i)) return false;
  return true;
}

/// Sylvester's criterion on exact leading principal minors.
inline bool is_positive_definite(const RatMatrix& S) {
  if (!is_symmetric(S)) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
  const std::size_t n = S.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = S(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

}  // namespace abelfourier
