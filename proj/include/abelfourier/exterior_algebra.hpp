#pragma once

// Sparse exterior algebra on n <= 64 generators. A basis monomial is a bitmask
// (bit i <=> generator i); the canonical monomial is the increasing product.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelfourier/errors.hpp"
#include "abelfourier/exact_linalg.hpp"

namespace abelfourier {

using Mask = std::uint64_t;

inline constexpr unsigned kMaxRank = 64;

inline Mask full_mask(unsigned rank) { return rank >= 64 ? ~Mask(0) : (Mask(1) << rank) - 1; }

inline unsigned mask_degree(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

/// Sign of e_a ^ e_b for disjoint a, b: (-1)^(inversions between the two index sets).
inline int wedge_sign(Mask a, Mask b) {
  unsigned inversions = 0;
  while (b) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(b));
    b &= b - 1;
    if (j < 63) inversions += static_cast<unsigned>(std::popcount(a >> (j + 1)));
  }
  return (inversions & 1u) ? -1 : 1;
}

inline std::vector<unsigned> mask_generators(Mask m) {
  std::vector<unsigned> out;
  while (m) {
    out.push_back(static_cast<unsigned>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

/// All masks of the given degree below 2^rank, in increasing numeric order.
inline std::vector<Mask> masks_of_degree(unsigned rank, unsigned degree) {
  std::vector<Mask> out;
  if (degree > rank) return out;
  if (degree == 0) return {Mask(0)};
  Mask m = full_mask(degree);
  const Mask limit = full_mask(rank);
  for (;;) {
    out.push_back(m);
    if (m == (limit & ~full_mask(rank - degree))) break;  // top combination
    // next combination with the same popcount (Gosper)
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

struct Orientation {
  int sign = 1;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

template <class T>
class BasicMultivector {
 public:
  using Terms = std::map<Mask, T>;

  BasicMultivector() = default;
  explicit BasicMultivector(unsigned rank) : rank_(rank) {
    if (rank > kMaxRank) throw Error(ErrorCode::PreconditionViolated, "rank exceeds 64");
  }

  static BasicMultivector scalar(unsigned rank, const T& c) { return monomial(rank, 0, c); }
  static BasicMultivector one(unsigned rank) { return scalar(rank, T(1)); }
  static BasicMultivector generator(unsigned rank, unsigned i) { return monomial(rank, Mask(1) << i, T(1)); }
  static BasicMultivector monomial(unsigned rank, Mask m, const T& c = T(1)) {
    BasicMultivector x(rank);
    x.add_term(m, c);
    return x;
  }
  static BasicMultivector monomial(unsigned rank, const std::vector<unsigned>& gens, const T& c = T(1)) {
    BasicMultivector x = scalar(rank, c);
    for (unsigned i : gens) x = wedge(x, generator(rank, i));
    return x;
  }

  unsigned rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  T coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(Mask m, const T& c) {
    if (c == 0) return;
    if ((m & ~full_mask(rank_)) != 0) throw Error(ErrorCode::RankMismatch, "mask outside rank");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Degree if homogeneous and nonzero.
  std::optional<unsigned> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const unsigned d = mask_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
      if (mask_degree(m) != d) return std::nullopt;
    return d;
  }

  bool has_only_even_degrees() const {
    for (const auto& [m, c] : terms_)
      if (mask_degree(m) % 2) return false;
    return true;
  }

  BasicMultivector& operator+=(const BasicMultivector& y) {
    require_same_rank(y);
    for (const auto& [m, c] : y.terms_) add_term(m, c);
    return *this;
  }
  BasicMultivector& operator-=(const BasicMultivector& y) {
    require_same_rank(y);
    for (const auto& [m, c] : y.terms_) add_term(m, -c);
    return *this;
  }
  BasicMultivector& operator*=(const T& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicMultivector operator+(BasicMultivector x, const BasicMultivector& y) { return x += y; }
  friend BasicMultivector operator-(BasicMultivector x, const BasicMultivector& y) { return x -= y; }
  friend BasicMultivector operator-(BasicMultivector x) { return x *= T(-1); }
  friend BasicMultivector operator*(const T& s, BasicMultivector x) { return x *= s; }
  friend BasicMultivector operator*(BasicMultivector x, const T& s) { return x *= s; }
  friend bool operator==(const BasicMultivector& a, const BasicMultivector& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

  void require_same_rank(const BasicMultivector& y) const {
    if (rank_ != y.rank_)
      throw Error(ErrorCode::RankMismatch,
                  "rank " + std::to_string(rank_) + " vs rank " + std::to_string(y.rank_));
  }

 private:
  unsigned rank_ = 0;
  Terms terms_;
};

using Multivector = BasicMultivector<Int>;
using RatMultivector = BasicMultivector<Rat>;

template <class T>
BasicMultivector<T> wedge(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
  x.require_same_rank(y);
  BasicMultivector<T> out(x.rank());
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      if (a & b) continue;
      T c = ca * cb;
      if (wedge_sign(a, b) < 0) c = -c;
      out.add_term(a | b, c);
    }
  return out;
}

template <class T>
BasicMultivector<T> wedge_power(const BasicMultivector<T>& x, unsigned k) {
  BasicMultivector<T> p = BasicMultivector<T>::one(x.rank());
  for (unsigned i = 0; i < k; ++i) p = wedge(p, x);
  return p;
}

template <class T>
BasicMultivector<T> graded_component(const BasicMultivector<T>& x, unsigned k) {
  BasicMultivector<T> out(x.rank());
  for (const auto& [m, c] : x.terms())
    if (mask_degree(m) == k) out.add_term(m, c);
  return out;
}

template <class T>
T integrate(const BasicMultivector<T>& x, Orientation o) {
  T c = x.coeff(full_mask(x.rank()));
  return o.sign < 0 ? T(-c) : c;
}

inline RatMultivector to_rational(const Multivector& x) {
  RatMultivector out(x.rank());
  for (const auto& [m, c] : x.terms()) out.add_term(m, Rat(c));
  return out;
}

/// Integral multivector, or nullopt together with no information if a
/// denominator survives; see require_integral for the throwing form.
inline std::optional<Multivector> to_integral(const RatMultivector& x) {
  Multivector out(x.rank());
  for (const auto& [m, c] : x.terms()) {
    if (!is_integral(c)) return std::nullopt;
    out.add_term(m, c.get_num());
  }
  return out;
}

inline Multivector require_integral(const RatMultivector& x) {
  Multivector out(x.rank());
  for (const auto& [m, c] : x.terms()) {
    if (!is_integral(c))
      throw Error(ErrorCode::NonIntegralResult,
                  "coefficient " + c.get_str() + " on mask " + std::to_string(m));
    out.add_term(m, c.get_num());
  }
  return out;
}

namespace detail {

// Images of the input generators as multivectors of the output rank.
template <class S, class T>
std::vector<BasicMultivector<T>> generator_images(const Matrix<S>& L) {
  std::vector<BasicMultivector<T>> images;
  images.reserve(L.cols());
  for (std::size_t j = 0; j < L.cols(); ++j) {
    BasicMultivector<T> v(static_cast<unsigned>(L.rows()));
    for (std::size_t i = 0; i < L.rows(); ++i)
      if (L(i, j) != 0) v.add_term(Mask(1) << i, T(L(i, j)));
    images.push_back(std::move(v));
  }
  return images;
}

template <class S>
bool columns_have_at_most_one_entry(const Matrix<S>& L) {
  for (std::size_t j = 0; j < L.cols(); ++j) {
    int count = 0;
    for (std::size_t i = 0; i < L.rows(); ++i)
      if (L(i, j) != 0 && ++count > 1) return false;
  }
  return true;
}

template <class S, class T>
BasicMultivector<T> linear_image(const Matrix<S>& L, const BasicMultivector<T>& x) {
  if (L.cols() != x.rank())
    throw Error(ErrorCode::RankMismatch, "linear map expects rank " + std::to_string(L.cols()) +
                                             ", class has rank " + std::to_string(x.rank()));
  if (L.rows() > kMaxRank) throw Error(ErrorCode::PreconditionViolated, "rank exceeds 64");
  const unsigned out_rank = static_cast<unsigned>(L.rows());
  BasicMultivector<T> out(out_rank);

  if (columns_have_at_most_one_entry(L)) {
    // each generator goes to a multiple of one generator: monomials stay monomials
    std::vector<int> row(L.cols(), -1);
    for (std::size_t j = 0; j < L.cols(); ++j)
      for (std::size_t i = 0; i < L.rows(); ++i)
        if (L(i, j) != 0) row[j] = static_cast<int>(i);
    for (const auto& [m, c] : x.terms()) {
      T coeff = c;
      Mask acc = 0;
      bool zero = false;
      for (unsigned j : mask_generators(m)) {
        if (row[j] < 0) {
          zero = true;
          break;
        }
        const Mask bit = Mask(1) << row[j];
        if (acc & bit) {
          zero = true;
          break;
        }
        if (wedge_sign(acc, bit) < 0) coeff = -coeff;
        coeff *= T(L(static_cast<std::size_t>(row[j]), j));
        acc |= bit;
      }
      if (!zero) out.add_term(acc, coeff);
    }
    return out;
  }

  const auto images = generator_images<S, T>(L);
  for (const auto& [m, c] : x.terms()) {
    BasicMultivector<T> t = BasicMultivector<T>::scalar(out_rank, c);
    for (unsigned j : mask_generators(m)) {
      t = wedge(t, images[j]);
      if (t.is_zero()) break;
    }
    out += t;
  }
  return out;
}

}  // namespace detail

/// The algebra map extending L on generators (column j of L is the image of
/// generator j; rows = output rank).
inline Multivector apply_linear(const IntMatrix& L, const Multivector& x) { return detail::linear_image(L, x); }

inline RatMultivector apply_linear(const RatMatrix& L, const RatMultivector& x) {
  return detail::linear_image(L, x);
}

/// Rational matrix on an integral class; the result must be integral.
inline Multivector apply_linear(const RatMatrix& L, const Multivector& x) {
  if (auto li = to_integral(L)) return detail::linear_image(*li, x);
  return require_integral(detail::linear_image(L, to_rational(x)));
}

// ---------------------------------------------------------------------------
// Exact division

class NonDivisibleError : public Error {
 public:
  NonDivisibleError(Mask mask, Int coefficient, Int divisor)
      : Error(ErrorCode::NonDivisible, "coefficient " + coefficient.get_str() + " on mask " +
                                           std::to_string(mask) + " is not divisible by " +
                                           divisor.get_str()),
        mask_(mask),
        coefficient_(std::move(coefficient)),
        divisor_(std::move(divisor)) {}

  Mask mask() const noexcept { return mask_; }
  const Int& coefficient() const noexcept { return coefficient_; }
  const Int& divisor() const noexcept { return divisor_; }

 private:
  Mask mask_;
  Int coefficient_;
  Int divisor_;
};

struct DivisionResult {
  std::optional<Multivector> quotient;
  // first offending term when quotient is empty
  Mask mask = 0;
  Int coefficient = 0;
  Int divisor = 1;

  bool ok() const { return quotient.has_value(); }
};

inline DivisionResult try_divide_exact(const Multivector& x, const Int& n) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolated, "division by zero");
  DivisionResult r;
  r.divisor = n;
  Multivector q(x.rank());
  for (const auto& [m, c] : x.terms()) {
    if (!mpz_divisible_p(c.get_mpz_t(), n.get_mpz_t())) {
      r.mask = m;
      r.coefficient = c;
      return r;
    }
    Int v;
    mpz_divexact(v.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
    q.add_term(m, v);
  }
  r.quotient = std::move(q);
  return r;
}

inline Multivector divide_exact(const Multivector& x, const Int& n) {
  DivisionResult r = try_divide_exact(x, n);
  if (!r.ok()) throw NonDivisibleError(r.mask, r.coefficient, r.divisor);
  return std::move(*r.quotient);
}

/// x^k / k!, each intermediate power divided exactly.
inline Multivector divided_cup_power(const Multivector& x, unsigned k) {
  return divide_exact(wedge_power(x, k), factorial(k));
}

/// exp(x) = sum_k x^k / k! for nilpotent x.
inline Multivector cup_exponential(const Multivector& x) {
  if (x.coeff(0) != 0) throw Error(ErrorCode::PreconditionViolated, "cup_exponential needs no degree-0 part");
  Multivector sum = Multivector::one(x.rank());
  Multivector power = Multivector::one(x.rank());
  for (unsigned k = 1;; ++k) {
    power = wedge(power, x);
    if (power.is_zero()) break;
    sum += divide_exact(power, factorial(k));
  }
  return sum;
}

/// Coefficients of the degree-k part in the masks_of_degree(rank, k) basis.
inline std::vector<Int> coordinates(const Multivector& x, unsigned k) {
  const auto basis = masks_of_degree(x.rank(), k);
  std::vector<Int> v(basis.size(), Int(0));
  for (std::size_t i = 0; i < basis.size(); ++i) v[i] = x.coeff(basis[i]);
  return v;
}

inline Multivector from_coordinates(unsigned rank, unsigned k, const std::vector<Int>& v) {
  const auto basis = masks_of_degree(rank, k);
  if (v.size() != basis.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  Multivector x(rank);
  for (std::size_t i = 0; i < basis.size(); ++i) x.add_term(basis[i], v[i]);
  return x;
}

}  // namespace abelfourier
