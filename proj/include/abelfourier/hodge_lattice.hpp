#pragma once

// Hdg^{2k}(A, Z) for a variety with rational complex structure J.
// With pi = a + b i a Gaussian prime of prime norm p = a^2 + b^2, the
// operator Lambda^{2k}(a + b J*) has eigenvalue pi^r conj(pi)^s on H^{r,s};
// unique factorisation in Z[i] gives p^k exactly on H^{k,k}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelfourier/abelian_model.hpp"
#include "abelfourier/errors.hpp"
#include "abelfourier/exact_linalg.hpp"
#include "abelfourier/exterior_algebra.hpp"
#include "abelfourier/fourier_calculus.hpp"

namespace abelfourier {

struct HodgeParameter {
  Int a = 1;
  Int b = 2;
  friend bool operator==(const HodgeParameter&, const HodgeParameter&) = default;
};

struct HodgeLattice {
  AbelianVariety A;
  unsigned k = 0;
  std::vector<Mask> ambient;  // basis of Lambda^{2k}, masks_of_degree order
  IntMatrix basis;            // columns, canonical (Hermite) form
  std::size_t rank = 0;
  CokernelInvariants saturation;  // of basis inside Lambda^{2k}

  Multivector element(std::size_t column) const {
    Multivector x(A.rank());
    for (std::size_t i = 0; i < ambient.size(); ++i) x.add_term(ambient[i], basis(i, column));
    return x;
  }
  std::vector<Multivector> elements() const {
    std::vector<Multivector> out;
    for (std::size_t c = 0; c < rank; ++c) out.push_back(element(c));
    return out;
  }
};

namespace detail {

inline void require_complex_structure(const AbelianVariety& A) {
  if (!A.J) throw Error(ErrorCode::NoComplexStructure, A.name + " has no complex structure");
}

inline void require_prime_norm(const HodgeParameter& p) {
  const Int norm = p.a * p.a + p.b * p.b;
  // norm 2 is ramified: 1 + i and 1 - i are associates and the eigenvalues collide
  if (p.a == 0 || p.b == 0 || norm == 2 || mpz_probab_prime_p(norm.get_mpz_t(), 30) == 0)
    throw Error(ErrorCode::UnsupportedParams, "a^2 + b^2 must be an odd prime with a, b nonzero");
}

}  // namespace detail

inline HodgeLattice hodge_lattice(const AbelianVariety& A, unsigned k, HodgeParameter p = {}) {
  detail::require_complex_structure(A);
  detail::require_prime_norm(p);
  if (2 * k > A.rank()) throw Error(ErrorCode::PreconditionViolated, "degree exceeds 2g");
  const unsigned n = A.rank();
  const auto masks = masks_of_degree(n, 2 * k);
  const std::size_t N = masks.size();

  const RatMatrix L = Rat(p.a) * RatMatrix::identity(n) + Rat(p.b) * detail::cohomology_action(*A.J);
  const Rat eigen = Rat(int_pow(p.a * p.a + p.b * p.b, k));
  RatMatrix op(N, N);
  for (std::size_t c = 0; c < N; ++c) {
    const RatMultivector image = apply_linear(L, RatMultivector::monomial(n, masks[c], Rat(1)));
    for (std::size_t r = 0; r < N; ++r) op(r, c) = image.coeff(masks[r]);
    op(c, c) -= eigen;
  }

  HodgeLattice H;
  H.A = A;
  H.k = k;
  H.ambient = masks;
  H.basis = kernel_saturated(op);
  H.rank = H.basis.cols();
  H.saturation = cokernel_invariants(H.basis, N);
  return H;
}

/// Coordinates of a degree-2k class x in the lattice basis, if x lies in it.
inline std::optional<std::vector<Int>> lattice_coordinates(const HodgeLattice& H, const Multivector& x) {
  if (x.rank() != H.A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + H.A.name);
  std::vector<Int> v(H.ambient.size());
  std::size_t seen = 0;
  for (std::size_t i = 0; i < H.ambient.size(); ++i) {
    v[i] = x.coeff(H.ambient[i]);
    if (v[i] != 0) ++seen;
  }
  if (seen != x.size()) return std::nullopt;  // terms outside degree 2k
  if (H.rank == 0) {
    for (const auto& c : v)
      if (c != 0) return std::nullopt;
    return std::vector<Int>{};
  }
  return solve_in_lattice(H.basis, v);
}

inline bool is_hodge(const AbelianVariety& A, const Multivector& x, HodgeParameter p = {}) {
  detail::require_complex_structure(A);
  if (x.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + A.name);
  if (x.is_zero()) return true;
  const auto d = x.homogeneous_degree();
  if (!d) throw Error(ErrorCode::NotHomogeneous, "is_hodge needs a homogeneous class");
  if (*d % 2) return false;
  detail::require_prime_norm(p);
  return hodge_operator_fixes(*A.J, x, *d / 2, p.a, p.b);
}

/// Columns (ambient coordinates, canonical form) spanning the subgroup of
/// Hdg^{2k} generated by k-fold products of an Hdg^2 basis.
inline IntMatrix divisor_power_span(const AbelianVariety& A, unsigned k, HodgeParameter p = {}) {
  detail::require_complex_structure(A);
  const HodgeLattice H2 = hodge_lattice(A, 1, p);
  const auto divisors = H2.elements();
  const auto masks = masks_of_degree(A.rank(), 2 * k);
  std::vector<std::vector<Int>> columns;
  // multisets i_1 <= ... <= i_k
  std::vector<std::size_t> idx(k, 0);
  auto emit = [&]() {
    Multivector prod = Multivector::one(A.rank());
    for (std::size_t i : idx) prod = wedge(prod, divisors[i]);
    if (!prod.is_zero()) columns.push_back(coordinates(prod, 2 * k));
  };
  if (k == 0) {
    columns.push_back(coordinates(Multivector::one(A.rank()), 0));
  } else if (!divisors.empty()) {
    for (;;) {
      emit();
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == divisors.size() - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < k; ++q) idx[q] = idx[pos - 1];
    }
  }
  IntMatrix G(masks.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < masks.size(); ++r) G(r, c) = columns[c][r];
  return canonical_column_basis(G);
}

/// Elementary divisors of Hdg^{2k} / span(generators).
inline CokernelInvariants voisin_certificate(const AbelianVariety& A, unsigned k,
                                             const std::vector<Multivector>& generators, HodgeParameter p = {}) {
  const HodgeLattice H = hodge_lattice(A, k, p);
  IntMatrix coords(H.rank, generators.size());
  for (std::size_t c = 0; c < generators.size(); ++c) {
    const auto& x = generators[c];
    if (x.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "generator " + std::to_string(c) + " has the wrong rank");
    auto v = lattice_coordinates(H, x);
    if (!v) throw Error(ErrorCode::NotHodge, "generator " + std::to_string(c) + " is not a Hodge class of degree " +
                                                 std::to_string(2 * k));
    for (std::size_t r = 0; r < H.rank; ++r) coords(r, c) = (*v)[r];
  }
  return cokernel_invariants(coords, H.rank);
}

/// Same, with generators given as ambient-coordinate columns.
inline CokernelInvariants voisin_certificate(const AbelianVariety& A, unsigned k, const IntMatrix& columns,
                                             HodgeParameter p = {}) {
  std::vector<Multivector> gens;
  for (std::size_t c = 0; c < columns.cols(); ++c) gens.push_back(from_coordinates(A.rank(), 2 * k, columns.column(c)));
  return voisin_certificate(A, k, gens, p);
}

struct FourierHodgeMatrix {
  IntMatrix matrix;  // rows: Hdg^{2g-2i}(A^) coordinates, columns: Hdg^{2i}(A) basis
  bool unimodular = false;
};

inline FourierHodgeMatrix fourier_hodge_matrix(const AbelianVariety& A, unsigned i, HodgeParameter p = {}) {
  detail::require_complex_structure(A);
  if (i > A.genus) throw Error(ErrorCode::PreconditionViolated, "degree exceeds 2g");
  const AbelianVariety Ahat = dual(A);
  const HodgeLattice source = hodge_lattice(A, i, p);
  const HodgeLattice target = hodge_lattice(Ahat, A.genus - i, p);
  FourierHodgeMatrix out;
  out.matrix = IntMatrix(target.rank, source.rank);
  for (std::size_t c = 0; c < source.rank; ++c) {
    const Multivector image = fourier(A, source.element(c));
    auto v = lattice_coordinates(target, image);
    if (!v)
      throw Error(ErrorCode::ImageNotInHodge,
                  "Fourier image of Hodge basis vector " + std::to_string(c) + " is not Hodge on " + Ahat.name);
    for (std::size_t r = 0; r < target.rank; ++r) out.matrix(r, c) = (*v)[r];
  }
  out.unimodular = out.matrix.is_square() && abs(determinant(out.matrix)) == 1;
  return out;
}

/// beta_from_divisor over the Hdg^2 basis.
inline std::vector<Multivector> beta_generators(const AbelianVariety& A, HodgeParameter p = {}) {
  std::vector<Multivector> out;
  for (const auto& D : hodge_lattice(A, 1, p).elements()) out.push_back(beta_from_divisor(A, D));
  return out;
}

}  // namespace abelfourier
