#pragma once

// Abelian varieties as lattice data: H_1 = Z^{2g} with an alternating
// polarization form E and an optional rational complex structure J.
// H^1 carries the dual basis, so H^k = Lambda^k of the dual generators and
// a homomorphism with H_1-matrix M pulls back through M^T.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelfourier/errors.hpp"
#include "abelfourier/exact_linalg.hpp"
#include "abelfourier/exterior_algebra.hpp"

namespace abelfourier {

/// Pinned sign choices. poincare_sign multiplies the Poincare class;
/// orientation_sign multiplies every fundamental functional.
struct Conventions {
  int poincare_sign = 1;
  int orientation_sign = 1;
  friend bool operator==(const Conventions&, const Conventions&) = default;
};

struct AbelianVariety {
  std::string name;
  unsigned genus = 0;
  IntMatrix E;
  std::optional<RatMatrix> J;
  Orientation orientation;
  std::vector<Int> type;  // delta_1 | ... | delta_g
  Conventions conventions;
  // +1 or -1 when this variety was produced by dual(): J = sign * J_source^T
  int dual_j_sign = 0;

  unsigned rank() const noexcept { return 2 * genus; }
  bool has_complex_structure() const noexcept { return J.has_value(); }
  bool principal() const {
    for (const auto& d : type)
      if (d != 1) return false;
    return true;
  }
  Int type_product() const {
    Int p = 1;
    for (const auto& d : type) p *= d;
    return p;
  }
  friend bool operator==(const AbelianVariety& a, const AbelianVariety& b) {
    return a.name == b.name && a.genus == b.genus && a.E == b.E && a.J == b.J &&
           a.orientation == b.orientation && a.conventions == b.conventions;
  }
};

/// Same lattice data (names and provenance ignored).
inline bool same_model(const AbelianVariety& a, const AbelianVariety& b) {
  return a.genus == b.genus && a.E == b.E && a.J == b.J && a.orientation == b.orientation;
}

namespace detail {

inline bool is_alternating(const IntMatrix& E) {
  if (!E.is_square()) return false;
  for (std::size_t i = 0; i < E.rows(); ++i) {
    if (E(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < E.cols(); ++j)
      if (E(i, j) != -E(j, i)) return false;
  }
  return true;
}

inline std::vector<Int> polarization_type(const IntMatrix& E) {
  auto snf = smith_normal_form(E);
  std::vector<Int> t;
  for (std::size_t i = 0; i < snf.divisors.size(); i += 2) {
    if (snf.divisors[i] != snf.divisors[i + 1])
      throw Error(ErrorCode::NotAlternating, "elementary divisors do not pair");
    t.push_back(snf.divisors[i]);
  }
  return t;
}

// Action of J on H^1 in the apply_linear convention.
inline RatMatrix cohomology_action(const RatMatrix& J) { return J.transpose(); }

}  // namespace detail

/// True iff the degree-2k class x is fixed by Lambda(a + b J*) up to the
/// eigenvalue (a^2+b^2)^k, i.e. x is of type (k,k) when a^2+b^2 is prime.
inline bool hodge_operator_fixes(const RatMatrix& J, const Multivector& x, unsigned k, const Int& a = 1,
                                 const Int& b = 2) {
  RatMatrix L = Rat(a) * RatMatrix::identity(J.rows()) + Rat(b) * detail::cohomology_action(J);
  RatMultivector image = apply_linear(L, to_rational(x));
  Int norm = int_pow(a * a + b * b, k);
  return image == Rat(norm) * to_rational(x);
}

inline AbelianVariety make_variety(const IntMatrix& E, std::optional<RatMatrix> J, std::string name,
                                   Conventions conventions = {}) {
  if (!E.is_square() || E.rows() % 2 != 0 || E.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "polarization must be a nonempty 2g x 2g matrix");
  if (E.rows() > 32) throw Error(ErrorCode::PreconditionViolated, "genus above 16 is out of range");
  if (!detail::is_alternating(E)) throw Error(ErrorCode::NotAlternating, "E^T != -E");
  const Int pf = pfaffian(E);
  if (pf == 0) throw Error(ErrorCode::SingularPolarization, "det E = 0");

  AbelianVariety A;
  A.name = std::move(name);
  A.genus = static_cast<unsigned>(E.rows() / 2);
  A.E = E;
  A.type = detail::polarization_type(E);
  A.conventions = conventions;
  A.orientation.sign = (pf > 0 ? 1 : -1) * conventions.orientation_sign;

  if (J) {
    if (J->rows() != E.rows() || J->cols() != E.cols())
      throw Error(ErrorCode::DimensionMismatch, "complex structure has the wrong size");
    const std::size_t n = E.rows();
    if (!((*J) * (*J) == Rat(-1) * RatMatrix::identity(n)))
      throw Error(ErrorCode::ComplexStructureInvalid, "J^2 != -1");
    const RatMatrix Er = to_rational(E);
    if (!(J->transpose() * Er * (*J) == Er))
      throw Error(ErrorCode::RiemannRelationViolated, "J^T E J != E");
    const RatMatrix S = Er * (*J);
    if (!is_symmetric(S)) throw Error(ErrorCode::RiemannRelationViolated, "E(x, Jy) is not symmetric");
    if (!is_positive_definite(S))
      throw Error(ErrorCode::RiemannRelationViolated, "E(x, Jy) is not positive definite");
    A.J = std::move(J);
  }
  return A;
}

/// theta = sum_{i<j} E_ij e_i ^ e_j.
inline Multivector theta_class(const AbelianVariety& A) {
  Multivector t(A.rank());
  for (unsigned i = 0; i < A.rank(); ++i)
    for (unsigned j = i + 1; j < A.rank(); ++j) t.add_term((Mask(1) << i) | (Mask(1) << j), A.E(i, j));
  return t;
}

inline Multivector point_class(const AbelianVariety& A) {
  return Multivector::monomial(A.rank(), full_mask(A.rank()), Int(A.orientation.sign));
}

inline Multivector fundamental_class(const AbelianVariety& A) { return Multivector::one(A.rank()); }

inline Int integrate(const AbelianVariety& A, const Multivector& x) {
  if (x.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + A.name);
  return integrate(x, A.orientation);
}

namespace detail {

inline std::string dual_name(const std::string& name) {
  if (!name.empty() && name.back() == '^') return name.substr(0, name.size() - 1);
  return name + "^";
}

inline Multivector poincare_class_coords(unsigned rank, int sign) {
  Multivector l(2 * rank);
  for (unsigned i = 0; i < rank; ++i) l.add_term((Mask(1) << i) | (Mask(1) << (rank + i)), Int(sign));
  return l;
}

}  // namespace detail

/// H^1(A^) is the dual lattice of H^1(A) with the dual basis.
/// E^ = delta_1 delta_g E^{-T}; J^ = -J^T, the sign being re-derived here from
/// the requirement that the Poincare class be of type (1,1).
inline AbelianVariety dual(const AbelianVariety& A) {
  const Rat scale = Rat(A.type.front() * A.type.back());
  auto inv = inverse(to_rational(A.E));
  auto Ehat = to_integral(scale * inv->transpose());
  if (!Ehat) throw Error(ErrorCode::PreconditionViolated, "dual polarization is not integral");

  std::optional<RatMatrix> Jhat;
  int chosen = 0;
  if (A.J) {
    const Multivector ell = detail::poincare_class_coords(A.rank(), A.conventions.poincare_sign);
    for (int sign : {-1, 1}) {
      RatMatrix candidate = Rat(sign) * A.J->transpose();
      RatMatrix joint = block_diagonal(*A.J, candidate);
      if (hodge_operator_fixes(joint, ell, 1)) {
        Jhat = candidate;
        chosen = sign;
        break;
      }
    }
    if (!Jhat) throw Error(ErrorCode::ComplexStructureInvalid, "no sign makes the Poincare class Hodge");
  }
  AbelianVariety D = make_variety(*Ehat, Jhat, detail::dual_name(A.name), A.conventions);
  D.dual_j_sign = chosen;
  return D;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct Homomorphism {
  AbelianVariety source;
  AbelianVariety target;
  IntMatrix M;  // 2g_target x 2g_source on H_1
  bool holomorphic = true;
};

inline Homomorphism make_hom(AbelianVariety source, AbelianVariety target, IntMatrix M, bool holomorphic = true) {
  if (M.rows() != target.rank() || M.cols() != source.rank())
    throw Error(ErrorCode::DimensionMismatch, "homomorphism matrix must be 2g_target x 2g_source");
  if (holomorphic && source.J && target.J) {
    const RatMatrix Mr = to_rational(M);
    if (!(Mr * (*source.J) == (*target.J) * Mr))
      throw Error(ErrorCode::NotHolomorphic, "M J_source != J_target M");
  }
  return Homomorphism{std::move(source), std::move(target), std::move(M), holomorphic};
}

inline Multivector hom_pullback(const Homomorphism& f, const Multivector& x) {
  if (x.rank() != f.target.rank()) throw Error(ErrorCode::RankMismatch, "pullback input must live on the target");
  return apply_linear(f.M.transpose(), x);
}

/// Poincare-duality adjoint of the pullback:
/// integrate_target(f_* x ^ y) = integrate_source(x ^ f^* y).
/// For c e_m with R the complement of m, f_*(c e_m) collects
/// o_s o_t eps(m,R) eps(T',T) c <Lambda(M) e_R, e_T> e_{T'} over T' = complement of T.
inline Multivector hom_pushforward(const Homomorphism& f, const Multivector& x) {
  if (x.rank() != f.source.rank()) throw Error(ErrorCode::RankMismatch, "pushforward input must live on the source");
  const unsigned ns = f.source.rank(), nt = f.target.rank();
  const Mask full_s = full_mask(ns), full_t = full_mask(nt);
  const int o = f.source.orientation.sign * f.target.orientation.sign;
  Multivector out(nt);
  for (const auto& [m, c] : x.terms()) {
    const Mask R = full_s & ~m;
    const Multivector image = apply_linear(f.M, Multivector::monomial(ns, R));
    const int sm = wedge_sign(m, R) * o;
    for (const auto& [T, v] : image.terms()) {
      const Mask Tc = full_t & ~T;
      Int coeff = c * v;
      if (sm * wedge_sign(Tc, T) < 0) coeff = -coeff;
      out.add_term(Tc, coeff);
    }
  }
  return out;
}

inline Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  if (!same_model(g.source, f.target)) throw Error(ErrorCode::DimensionMismatch, "composition of mismatched maps");
  return Homomorphism{f.source, g.target, g.M * f.M, g.holomorphic && f.holomorphic};
}

/// f^: Y^ -> X^, matrix M^T.
inline Homomorphism dual_hom(const Homomorphism& f) {
  return Homomorphism{dual(f.target), dual(f.source), f.M.transpose(), f.holomorphic};
}

inline Int degree(const Homomorphism& f) {
  if (!f.M.is_square()) throw Error(ErrorCode::NotIsogeny, "non-square homomorphism");
  Int d = determinant(f.M);
  if (d == 0) throw Error(ErrorCode::NotIsogeny, "det M = 0");
  return abs(d);
}

inline Homomorphism identity_hom(const AbelianVariety& A) {
  return Homomorphism{A, A, IntMatrix::identity(A.rank()), true};
}

inline Homomorphism scalar_hom(const AbelianVariety& A, const Int& n) {
  return Homomorphism{A, A, IntMatrix::scalar(A.rank(), n), true};
}

/// lambda: A -> A^ with H_1 matrix poincare_sign * E.
inline Homomorphism polarization_isogeny(const AbelianVariety& A) {
  return make_hom(A, dual(A), Int(A.conventions.poincare_sign) * A.E, true);
}

// ---------------------------------------------------------------------------
// Products

struct ProductStructure {
  std::vector<AbelianVariety> factors;
  std::vector<unsigned> offsets;  // first generator of each factor
  AbelianVariety variety;

  /// H_1 projection onto the listed factors (in the listed order).
  Homomorphism projection(const std::vector<std::size_t>& which) const;
  Homomorphism projection(std::size_t i) const { return projection(std::vector<std::size_t>{i}); }
  /// Zero-section inclusion of factor i.
  Homomorphism inclusion(std::size_t i) const;
};

namespace detail {

inline AbelianVariety product_variety(const std::vector<AbelianVariety>& factors) {
  if (factors.empty()) throw Error(ErrorCode::PreconditionViolated, "empty product");
  AbelianVariety P;
  P.conventions = factors.front().conventions;
  IntMatrix E;
  std::optional<RatMatrix> J = RatMatrix();
  int orientation = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& F = factors[i];
    P.name += (i ? " x " : "") + F.name;
    P.genus += F.genus;
    E = block_diagonal(E, F.E);
    if (J && F.J)
      J = block_diagonal(*J, *F.J);
    else
      J.reset();
    orientation *= F.orientation.sign;
  }
  if (P.rank() > kMaxRank) throw Error(ErrorCode::PreconditionViolated, "product rank exceeds 64");
  P.E = std::move(E);
  P.J = std::move(J);
  P.type = polarization_type(P.E);
  P.orientation.sign = orientation;
  return P;
}

}  // namespace detail

inline ProductStructure product(const std::vector<AbelianVariety>& factors) {
  ProductStructure ps;
  ps.factors = factors;
  unsigned off = 0;
  for (const auto& F : factors) {
    ps.offsets.push_back(off);
    off += F.rank();
  }
  ps.variety = detail::product_variety(factors);
  return ps;
}

inline ProductStructure product(const AbelianVariety& A, const AbelianVariety& B) { return product({A, B}); }

inline Homomorphism ProductStructure::projection(const std::vector<std::size_t>& which) const {
  std::vector<AbelianVariety> chosen;
  for (std::size_t i : which) chosen.push_back(factors.at(i));
  AbelianVariety target = which.size() == 1 ? chosen.front() : detail::product_variety(chosen);
  IntMatrix M(target.rank(), variety.rank());
  unsigned row = 0;
  for (std::size_t i : which) {
    for (unsigned k = 0; k < factors[i].rank(); ++k) M(row + k, offsets[i] + k) = 1;
    row += factors[i].rank();
  }
  return Homomorphism{variety, std::move(target), std::move(M), true};
}

inline Homomorphism ProductStructure::inclusion(std::size_t i) const {
  const AbelianVariety& F = factors.at(i);
  IntMatrix M(variety.rank(), F.rank());
  for (unsigned k = 0; k < F.rank(); ++k) M(offsets[i] + k, k) = 1;
  return Homomorphism{F, variety, std::move(M), true};
}

/// (f, g): A -> B x C.
inline Homomorphism pair_hom(const Homomorphism& f, const Homomorphism& g) {
  if (!same_model(f.source, g.source)) throw Error(ErrorCode::DimensionMismatch, "pair of maps with different sources");
  ProductStructure P = product(f.target, g.target);
  IntMatrix M(P.variety.rank(), f.source.rank());
  for (std::size_t i = 0; i < f.M.rows(); ++i)
    for (std::size_t j = 0; j < f.M.cols(); ++j) M(i, j) = f.M(i, j);
  for (std::size_t i = 0; i < g.M.rows(); ++i)
    for (std::size_t j = 0; j < g.M.cols(); ++j) M(f.M.rows() + i, j) = g.M(i, j);
  return Homomorphism{f.source, P.variety, std::move(M), f.holomorphic && g.holomorphic};
}

/// f x g: A x B -> C x D.
inline Homomorphism product_hom(const Homomorphism& f, const Homomorphism& g) {
  ProductStructure S = product(f.source, g.source);
  ProductStructure T = product(f.target, g.target);
  return Homomorphism{S.variety, T.variety, block_diagonal(f.M, g.M), f.holomorphic && g.holomorphic};
}

struct StructureHoms {
  ProductStructure square;  // A x A
  Homomorphism m;           // addition
  Homomorphism diagonal;
  Homomorphism pi1, pi2;
  Homomorphism j1, j2;
};

inline StructureHoms structure_homs(const AbelianVariety& A) {
  ProductStructure sq = product(A, A);
  const unsigned n = A.rank();
  IntMatrix add(n, 2 * n), diag(2 * n, n);
  for (unsigned i = 0; i < n; ++i) {
    add(i, i) = 1;
    add(i, n + i) = 1;
    diag(i, i) = 1;
    diag(n + i, i) = 1;
  }
  Homomorphism m{sq.variety, A, std::move(add), true};
  Homomorphism d{A, sq.variety, std::move(diag), true};
  Homomorphism p1 = sq.projection(0), p2 = sq.projection(1);
  Homomorphism i1 = sq.inclusion(0), i2 = sq.inclusion(1);
  return StructureHoms{std::move(sq), std::move(m), std::move(d), std::move(p1), std::move(p2), std::move(i1),
                       std::move(i2)};
}

// ---------------------------------------------------------------------------
// Reference models

/// Product of Gaussian elliptic curves C/Z[i], factor-major, with the
/// polarization of type delta in Frobenius normal form.
inline AbelianVariety elliptic_product(const std::vector<Int>& delta, Conventions conventions = {}) {
  if (delta.empty()) throw Error(ErrorCode::InvalidType, "empty polarization type");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] <= 0) throw Error(ErrorCode::InvalidType, "type entries must be positive");
    if (i + 1 < delta.size() && !mpz_divisible_p(delta[i + 1].get_mpz_t(), delta[i].get_mpz_t()))
      throw Error(ErrorCode::InvalidType, delta[i].get_str() + " does not divide " + delta[i + 1].get_str());
  }
  const std::size_t g = delta.size();
  IntMatrix E(2 * g, 2 * g);
  RatMatrix J(2 * g, 2 * g);
  std::string name = "E_i^" + std::to_string(g);
  bool principal = true;
  for (std::size_t i = 0; i < g; ++i) {
    E(2 * i, 2 * i + 1) = delta[i];
    E(2 * i + 1, 2 * i) = -delta[i];
    J(2 * i, 2 * i + 1) = -1;
    J(2 * i + 1, 2 * i) = 1;
    if (delta[i] != 1) principal = false;
  }
  if (!principal) {
    name += "(";
    for (std::size_t i = 0; i < g; ++i) name += (i ? "," : "") + delta[i].get_str();
    name += ")";
  }
  return make_variety(E, J, name, conventions);
}

inline AbelianVariety standard_ppav(unsigned g, Conventions conventions = {}) {
  return elliptic_product(std::vector<Int>(g, Int(1)), conventions);
}

/// Type (1, ..., 1, d) of length g.
inline std::vector<Int> simple_type(unsigned g, const Int& d) {
  std::vector<Int> t(g, Int(1));
  t.back() = d;
  return t;
}

}  // namespace abelfourier
