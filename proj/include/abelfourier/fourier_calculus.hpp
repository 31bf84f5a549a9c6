#pragma once

// Poincare class, Fourier transform, Pontryagin product, star divided powers
// and the named classes built from them.
//
// On A x A^ generator i < 2g is a_i and generator 2g+i is the dual a_i^*;
// ell = s * sum_i a_i ^ a_i^* with s = Conventions::poincare_sign.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abelfourier/abelian_model.hpp"
#include "abelfourier/errors.hpp"
#include "abelfourier/exterior_algebra.hpp"

namespace abelfourier {

inline Multivector poincare_class(const AbelianVariety& A) {
  return detail::poincare_class_coords(A.rank(), A.conventions.poincare_sign);
}

/// A, its dual, A x A^, ell and ch = e^ell.
struct PoincareContext {
  AbelianVariety A;
  AbelianVariety Ahat;
  ProductStructure product;
  Multivector ell;
  Multivector ch;

  /// ell^k / k!
  Multivector divided_power(unsigned k) const { return divided_cup_power(ell, k); }
};

inline PoincareContext make_poincare_context(const AbelianVariety& A) {
  AbelianVariety Ahat = dual(A);
  ProductStructure P = product(A, Ahat);
  Multivector ell = poincare_class(A);
  Multivector ch = cup_exponential(ell);
  return PoincareContext{A, std::move(Ahat), std::move(P), std::move(ell), std::move(ch)};
}

/// F_A(x) = pi_2*(e^ell ^ pi_1^* x), evaluated literally on A x A^.
inline Multivector fourier_by_definition(const PoincareContext& ctx, const Multivector& x) {
  if (x.rank() != ctx.A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + ctx.A.name);
  const Multivector pulled = hom_pullback(ctx.product.projection(0), x);
  return hom_pushforward(ctx.product.projection(1), wedge(ctx.ch, pulled));
}

/// Same transform, term by term: for a monomial e_m only the part of e^ell
/// supported on the complementary pairs survives the fiber integration.
inline Multivector fourier(const AbelianVariety& A, const Multivector& x) {
  if (x.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + A.name);
  const unsigned n = A.rank();
  if (2 * n > kMaxRank) throw Error(ErrorCode::PreconditionViolated, "A x A^ exceeds rank 64");
  const Mask full = full_mask(n);
  const int s = A.conventions.poincare_sign;
  // A x A^ carries o_A * o_A^ = +1 and A^ carries o_A
  const int o = A.orientation.sign;
  Multivector out(n);
  for (const auto& [m, c] : x.terms()) {
    const Mask S = full & ~m;
    // prod_{i in S} (s a_i ^ a_i^*) ^ e_m, reordered to a canonical monomial
    Mask acc = 0;
    int sign = 1;
    for (unsigned i : mask_generators(S)) {
      const Mask pair = (Mask(1) << i) | (Mask(1) << (n + i));
      sign *= wedge_sign(acc, pair) * s;
      acc |= pair;
    }
    sign *= wedge_sign(acc, m);
    acc |= m;
    // pi_2*: the A-part is full; the target monomial is the A^-part T
    const Mask T = acc >> n;
    // with M = projection, Lambda(M) e_R for R = complement of acc in the source
    // is zero unless R has no A-generator; here R = shifted complement of T
    const Mask R = (full & ~T) << n;
    const Mask Tp = full & ~T;  // image of R in the target
    sign *= wedge_sign(acc, R) * wedge_sign(T, Tp) * o;
    out.add_term(T, sign < 0 ? Int(-c) : c);
  }
  return out;
}

inline Multivector fourier(const PoincareContext& ctx, const Multivector& x) { return fourier(ctx.A, x); }

/// Inverse of F_A in raw coordinates: (-1)^g F_{A^}.
inline Multivector fourier_inverse(const AbelianVariety& A, const Multivector& y) {
  Multivector x = fourier(dual(A), y);
  if (A.genus % 2) x *= Int(-1);
  return x;
}

inline Multivector negation_pullback(const Multivector& x) {
  return apply_linear(IntMatrix::scalar(x.rank(), Int(-1)), x);
}

// ---------------------------------------------------------------------------
// Pontryagin product

/// x * y = m_*(pi_1^* x ^ pi_2^* y).
inline Multivector pontryagin(const AbelianVariety& A, const Multivector& x, const Multivector& y) {
  if (x.rank() != A.rank() || y.rank() != A.rank())
    throw Error(ErrorCode::RankMismatch, "Pontryagin factors must live on " + A.name);
  const StructureHoms h = structure_homs(A);
  const Multivector z = wedge(hom_pullback(h.pi1, x), hom_pullback(h.pi2, y));
  return hom_pushforward(h.m, z);
}

inline Multivector star_power(const AbelianVariety& A, const Multivector& x, unsigned n) {
  Multivector p = point_class(A);
  for (unsigned i = 0; i < n; ++i) p = pontryagin(A, p, x);
  return p;
}

namespace detail {

inline void require_no_top_degree(const AbelianVariety& A, const Multivector& x) {
  if (x.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + A.name);
  if (x.coeff(full_mask(A.rank())) != 0)
    throw Error(ErrorCode::PreconditionViolated, "star divided powers need a class without top-degree part");
}

}  // namespace detail

/// x^{[n]} = x^{*n} / n!; a failed division is a result, not an exception.
inline DivisionResult star_divided_power(const AbelianVariety& A, const Multivector& x, unsigned n) {
  detail::require_no_top_degree(A, x);
  return try_divide_exact(star_power(A, x, n), factorial(n));
}

/// E(x) = sum_n x^{[n]}.
inline Multivector star_exponential(const AbelianVariety& A, const Multivector& x) {
  detail::require_no_top_degree(A, x);
  Multivector sum = point_class(A);
  Multivector power = point_class(A);
  for (unsigned n = 1;; ++n) {
    power = pontryagin(A, power, x);
    if (power.is_zero()) break;
    sum += divide_exact(power, factorial(n));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Named classes

enum class NamedClassTag { R_A, rho_A, sigma_A, gamma_theta, tau, point, fundamental };

inline std::string_view named_class_name(NamedClassTag t) {
  switch (t) {
    case NamedClassTag::R_A: return "R_A";
    case NamedClassTag::rho_A: return "rho_A";
    case NamedClassTag::sigma_A: return "sigma_A";
    case NamedClassTag::gamma_theta: return "gamma_theta";
    case NamedClassTag::tau: return "tau";
    case NamedClassTag::point: return "point";
    case NamedClassTag::fundamental: return "fundamental";
  }
  return "?";
}

inline std::optional<NamedClassTag> parse_named_class(std::string_view s) {
  for (auto t : {NamedClassTag::R_A, NamedClassTag::rho_A, NamedClassTag::sigma_A, NamedClassTag::gamma_theta,
                 NamedClassTag::tau, NamedClassTag::point, NamedClassTag::fundamental})
    if (named_class_name(t) == s) return t;
  return std::nullopt;
}

namespace detail {

inline void require_principal(const AbelianVariety& A, std::string_view what) {
  if (!A.principal()) throw Error(ErrorCode::PreconditionViolated, std::string(what) + " needs a principal polarization");
}

}  // namespace detail

/// theta^{g-1}/(g-1)!
inline Multivector minimal_class(const AbelianVariety& A) { return divided_cup_power(theta_class(A), A.genus - 1); }

/// j_1*(Gamma) + j_2*(Gamma^) - (id, lambda)_*(Gamma) on A x A^.
inline Multivector tau_class(const AbelianVariety& A) {
  detail::require_principal(A, "tau");
  const AbelianVariety Ahat = dual(A);
  const ProductStructure P = product(A, Ahat);
  const Multivector gamma = minimal_class(A);
  const Multivector gamma_hat = minimal_class(Ahat);
  const Homomorphism graph = pair_hom(identity_hom(A), polarization_isogeny(A));
  return hom_pushforward(P.inclusion(0), gamma) + hom_pushforward(P.inclusion(1), gamma_hat) -
         hom_pushforward(graph, gamma);
}

inline Multivector named_class(const AbelianVariety& A, NamedClassTag tag) {
  const Multivector ell = poincare_class(A);
  const unsigned g = A.genus;
  switch (tag) {
    case NamedClassTag::R_A:
    case NamedClassTag::rho_A: return divided_cup_power(ell, 2 * g - 1);
    case NamedClassTag::sigma_A: return divided_cup_power(ell, 2 * g - 2);
    case NamedClassTag::gamma_theta:
      detail::require_principal(A, "gamma_theta");
      return minimal_class(A);
    case NamedClassTag::tau: return tau_class(A);
    case NamedClassTag::point: return point_class(A);
    case NamedClassTag::fundamental: return fundamental_class(A);
  }
  throw Error(ErrorCode::PreconditionViolated, "unknown named class");
}

// ---------------------------------------------------------------------------
// Correspondences

/// pi_2*(Gamma ^ pi_1^* x) for Gamma on A x B.
inline Multivector correspondence_action(const AbelianVariety& A, const AbelianVariety& B, const Multivector& Gamma,
                                         const Multivector& x) {
  const ProductStructure P = product(A, B);
  if (Gamma.rank() != P.variety.rank()) throw Error(ErrorCode::RankMismatch, "correspondence must live on A x B");
  if (x.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "class does not live on " + A.name);
  return hom_pushforward(P.projection(1), wedge(Gamma, hom_pullback(P.projection(0), x)));
}

/// sum_{i+j+k=2g-2} (-1)^{j+k} pi_2*( m^*(theta^i/i!) ^ pi_1^*(theta^j/j!) ^ pi_1^* D ) ^ theta^k/k!
inline Multivector beta_from_divisor(const AbelianVariety& A, const Multivector& D) {
  detail::require_principal(A, "beta_from_divisor");
  if (D.rank() != A.rank()) throw Error(ErrorCode::RankMismatch, "divisor class does not live on " + A.name);
  if (!D.is_zero() && D.homogeneous_degree() != 2u)
    throw Error(ErrorCode::NotHomogeneous, "divisor class must have degree 2");
  const unsigned g = A.genus;
  const unsigned top = 2 * g - 2;
  const StructureHoms h = structure_homs(A);
  const Multivector theta = theta_class(A);
  std::vector<Multivector> powers;  // theta^i / i!, zero beyond g
  for (unsigned i = 0; i <= top; ++i) powers.push_back(divided_cup_power(theta, i));
  std::vector<Multivector> m_powers;
  for (const auto& p : powers) m_powers.push_back(hom_pullback(h.m, p));
  const Multivector D1 = hom_pullback(h.pi1, D);

  Multivector beta(A.rank());
  for (unsigned i = 0; i <= top; ++i)
    for (unsigned j = 0; i + j <= top; ++j) {
      const unsigned k = top - i - j;
      if (powers[i].is_zero() || powers[j].is_zero() || powers[k].is_zero()) continue;
      Multivector inner = wedge(wedge(m_powers[i], hom_pullback(h.pi1, powers[j])), D1);
      Multivector term = wedge(hom_pushforward(h.pi2, inner), powers[k]);
      if ((j + k) % 2) term *= Int(-1);
      beta += term;
    }
  return beta;
}

/// The triple sum sum_{i+j+k=2g-2} (-1)^{j+k} m^*(theta^i/i!) pi_1^*(theta^j/j!) pi_2^*(theta^k/k!) on A x A.
inline Multivector sigma_triple_sum(const AbelianVariety& A) {
  detail::require_principal(A, "sigma_triple_sum");
  const unsigned top = 2 * A.genus - 2;
  const StructureHoms h = structure_homs(A);
  const Multivector theta = theta_class(A);
  Multivector sum(2 * A.rank());
  for (unsigned i = 0; i <= top; ++i)
    for (unsigned j = 0; i + j <= top; ++j) {
      const unsigned k = top - i - j;
      const Multivector a = divided_cup_power(theta, i), b = divided_cup_power(theta, j),
                        c = divided_cup_power(theta, k);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      Multivector term = wedge(wedge(hom_pullback(h.m, a), hom_pullback(h.pi1, b)), hom_pullback(h.pi2, c));
      if ((j + k) % 2) term *= Int(-1);
      sum += term;
    }
  return sum;
}

// ---------------------------------------------------------------------------
// Product decompositions

struct KunnethDecomposition {
  Multivector lhs;  // R_{A x A^} on A x A^ x A^ x A
  Multivector rhs;  // pi_13^* R_A . pi_24^*[0] + pi_13^*[0] . pi_24^* R_{A^}
  int sign = 1;     // lhs = sign * rhs
};

inline KunnethDecomposition kunneth_R_decomposition(const AbelianVariety& A) {
  const AbelianVariety Ahat = dual(A);
  const AbelianVariety Ahathat = dual(Ahat);
  const ProductStructure four = product({A, Ahat, Ahat, Ahathat});
  const unsigned g = A.genus;
  if (four.variety.rank() > kMaxRank) throw Error(ErrorCode::PreconditionViolated, "rank exceeds 64");

  // c_1(P_{A x A^}) in the factor-major coordinates of (A, A^, A^, A)
  const ProductStructure X = product(A, Ahat);
  const Multivector ellX = poincare_class(X.variety);
  const Multivector lhs = divided_cup_power(ellX, 4 * g - 1);

  const Homomorphism p13 = four.projection({0, 2});
  const Homomorphism p24 = four.projection({1, 3});
  const Multivector R_A = divided_cup_power(poincare_class(A), 2 * g - 1);
  const Multivector R_Ahat = divided_cup_power(poincare_class(Ahat), 2 * g - 1);
  const Multivector rhs = wedge(hom_pullback(p13, R_A), hom_pullback(p24, point_class(p24.target))) +
                          wedge(hom_pullback(p13, point_class(p13.target)), hom_pullback(p24, R_Ahat));
  return KunnethDecomposition{lhs, rhs, (g % 2) ? -1 : 1};
}

struct Prop45Result {
  bool pushforward_ok = false;  // f_*(ell_X^{2h-1}/(2h-1)!) = (-1)^{g_B} mu^{2g-1}/(2g-1)!
  bool expansion_ok = false;    // the two-term expansion of ell_X^{2h-1}/(2h-1)!
  Multivector pushforward;
  Multivector expected;
  Multivector expansion_difference;

  bool ok() const { return pushforward_ok && expansion_ok; }
};

/// X = A x B, on X x X^ = (A, B, A^, B^) with f, g the projections to A x A^ and B x B^.
inline Prop45Result prop45_pushforward_check(const AbelianVariety& A, const AbelianVariety& B) {
  const ProductStructure X = product(A, B);
  const AbelianVariety Ahat = dual(A), Bhat = dual(B);
  const ProductStructure XX = product({A, B, Ahat, Bhat});
  const Homomorphism f = XX.projection({0, 2});
  const Homomorphism gmap = XX.projection({1, 3});
  const unsigned ga = A.genus, gb = B.genus, h = ga + gb;

  const Multivector ellX = poincare_class(X.variety);
  const Multivector mu = poincare_class(A);
  const Multivector nu = poincare_class(B);
  const Multivector R_X = divided_cup_power(ellX, 2 * h - 1);

  Prop45Result r;
  r.pushforward = hom_pushforward(f, R_X);
  r.expected = divided_cup_power(mu, 2 * ga - 1);
  if (gb % 2) r.expected *= Int(-1);
  r.pushforward_ok = r.pushforward == r.expected;

  const Multivector expansion =
      wedge(hom_pullback(f, divided_cup_power(mu, 2 * ga - 1)), hom_pullback(gmap, divided_cup_power(nu, 2 * gb))) +
      wedge(hom_pullback(f, divided_cup_power(mu, 2 * ga)), hom_pullback(gmap, divided_cup_power(nu, 2 * gb - 1)));
  r.expansion_difference = R_X - expansion;
  r.expansion_ok = r.expansion_difference.is_zero();
  return r;
}

}  // namespace abelfourier
