#pragma once

// Named, parameterized checks of the Fourier / Pontryagin / Hodge identities
// with exact comparisons, witnesses on failure, and a JSON/text report.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "abelfourier/abelian_model.hpp"
#include "abelfourier/errors.hpp"
#include "abelfourier/exterior_algebra.hpp"
#include "abelfourier/fourier_calculus.hpp"
#include "abelfourier/hodge_lattice.hpp"
#include "abelfourier/io.hpp"

namespace abelfourier {

inline constexpr const char* kToolVersion = "1.0.0";

enum class CheckStatus { pass, fail, skipped };

inline std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

inline CheckStatus parse_status(std::string_view s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skipped") return CheckStatus::skipped;
  throw Error(ErrorCode::ParseError, "unknown status " + std::string(s));
}

/// Serializable parameter record of one check run.
struct ParamRecord {
  unsigned genus = 1;
  std::vector<Int> type;  // empty: principal
  std::uint64_t seed = 1;
  unsigned genus_b = 1;
  std::string variety;  // name of a supplied variety, empty for built-ins

  friend bool operator==(const ParamRecord&, const ParamRecord&) = default;
  friend bool operator<(const ParamRecord& a, const ParamRecord& b) {
    return std::tie(a.genus, a.type, a.seed, a.genus_b, a.variety) <
           std::tie(b.genus, b.type, b.seed, b.genus_b, b.variety);
  }

  std::string label() const {
    std::ostringstream os;
    os << "g=" << genus;
    if (!type.empty()) {
      os << " type=";
      for (std::size_t i = 0; i < type.size(); ++i) os << (i ? "," : "") << type[i];
    }
    if (!variety.empty()) os << " variety=" << variety;
    os << " seed=" << seed;
    return os.str();
  }
};

struct CheckParams {
  unsigned genus = 1;
  std::vector<Int> type;
  std::uint64_t seed = 1;
  unsigned genus_b = 1;
  std::optional<AbelianVariety> variety;  // overrides genus and type
  Conventions conventions;

  ParamRecord record() const {
    ParamRecord r;
    r.genus = variety ? variety->genus : genus;
    if (variety) {
      if (!variety->principal()) r.type = variety->type;
    } else {
      bool principal = std::all_of(type.begin(), type.end(), [](const Int& d) { return d == 1; });
      if (!principal) r.type = type;
    }
    r.seed = seed;
    r.genus_b = genus_b;
    if (variety) r.variety = variety->name;
    return r;
  }
};

struct CheckDescriptor {
  std::string id;  // C1 ... C20
  std::string name;
  std::string anchor;
  unsigned max_genus = 5;
  bool needs_principal = false;
  bool needs_complex_structure = false;
};

struct CheckResult {
  std::string id;
  std::string name;
  std::string anchor;
  ParamRecord params;
  CheckStatus status = CheckStatus::pass;
  std::optional<Multivector> witness;
  std::string runtime_us = "0";
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

inline const std::vector<CheckDescriptor>& check_registry() {
  static const std::vector<CheckDescriptor> registry = {
      {"C1", "fourier_involution", "F_Â ∘ F_A = (−1)^g · [−1]^∗", 5, false, false},
      {"C2", "beauville_exp", "F_A(e^θ) = e^{−θ}", 5, true, false},
      {"C3", "star_exp_of_R", "e^ℓ = (−1)^g · E((−1)^g · R_A), E(a) = Σ a^{⋆n}/n!", 4, false, false},
      {"C4", "claim_star", "F_{A×Â}(e^ℓ) = (−1)^g · e^{−ℓ̂}", 3, false, false},
      {"C5", "eq35_minclass", "(−1)^g · F_{Â×A}(−ℓ̂) = ℓ^{2g−1}/(2g−1)! = R_A", 5, false, false},
      {"C6", "tau_equals_R", "τ = j₁,∗Γ_θ + j₂,∗Γ_θ̂ − (id,λ)_∗Γ_θ = (−1)^{g+1} · R_A", 5, true, false},
      {"C7", "functoriality", "(f̂)^∗ ∘ F_X = F_Y ∘ f_∗ and F_X ∘ f^∗ = (−1)^{dim X − dim Y} · (f̂)_∗ ∘ F_Y", 3,
       false, false},
      {"C8", "product_exchange", "F(x · y) = (−1)^g · F(x) ⋆ F(y) and F(x ⋆ y) = F(x) · F(y)", 4, false, false},
      {"C9", "theta_divided", "θ^i/i! = γ_θ^{⋆j}/j! for i + j = g, γ_θ = θ^{g−1}/(g−1)!", 5, true, false},
      {"C10", "kunneth_R", "R_{A×Â} = ±(π₁₃^∗R_A · π₂₄^∗[0] + π₁₃^∗[0] · π₂₄^∗R_Â), ℓ^{2g} = ±(2g)! · [0]", 3,
       false, false},
      {"C11", "sigma_triple_sum", "σ_A = Σ_{i+j+k=2g−2} (−1)^{j+k} · m^∗(θ^i/i!) · π₁^∗(θ^j/j!) · π₂^∗(θ^k/k!)",
       4, true, false},
      {"C12", "beta_surjectivity",
       "β = Σ_{i+j+k=2g−2} (−1)^{j+k} · π₂,∗(m^∗(θ^i/i!) · π₁^∗(θ^j/j!) · π₁^∗[D]) · θ^k/k! spans Hdg^{2g−2}(A,ℤ)",
       4, true, true},
      {"C13", "divided_square", "σ_A = ℓ^{2g−2}/(2g−2)! = (−1)^g · ρ_A^{⋆2}/2!", 4, false, false},
      {"C14", "lemma51_diagram", "π₂,∗(π₁^∗(−) · n·σ) = n · F on H², both for A and Â", 4, false, false},
      {"C15", "prop45_pushforward", "f_∗(c₁(P_X)^{2h−1}/(2h−1)!) = (−1)^{g_B} · μ^{2g−1}/(2g−1)!", 3, false,
       false},
      {"C16", "isogeny_degree", "β∘α = [m], (β∘α) × (α̂∘β̂) = [m]_{X×X̂}, deg α · deg β = m^{2h}", 4, false,
       false},
      {"C17", "hodge_fourier_unimodular", "F_A: Hdg^{2i}(A,ℤ) → Hdg^{2g−2i}(Â,ℤ) is an isomorphism", 4, false,
       true},
      {"C18", "ihc_certificate_elliptic_products",
       "Hdg^{2g−2}(A,ℤ) is generated by β-classes of divisors (trivial Smith cokernel)", 4, true, true},
      {"C19", "poincare_normalization", "∫ ℓ^{2g} = (−1)^g · (2g)! against the displayed +(2g)! · [0]", 5, false,
       false},
      {"C20", "ell_integrality", "ch(P_A) = exp(c₁(P_A)): ℓ^k/k! is integral for k ≤ 2g", 5, false, false},
  };
  return registry;
}

inline const CheckDescriptor& find_check(const std::string& name) {
  for (const auto& d : check_registry())
    if (d.name == name || d.id == name) return d;
  throw Error(ErrorCode::UnknownCheck, "no check named " + name);
}

// ---------------------------------------------------------------------------
// Random inputs

class ClassSampler {
 public:
  explicit ClassSampler(std::uint64_t seed) : rng_(seed) {}

  Int coefficient() { return Int(static_cast<long>(uniform(7)) - 3); }

  /// Up to max_terms monomials with coefficients in [-3, 3].
  Multivector random_class(unsigned rank, unsigned max_terms = 6, bool even_only = false) {
    Multivector x(rank);
    const unsigned terms = 1 + static_cast<unsigned>(uniform(max_terms));
    for (unsigned t = 0; t < terms; ++t) {
      Mask m = rank == 0 ? 0 : static_cast<Mask>(rng_()) & full_mask(rank);
      if (even_only && mask_degree(m) % 2) m ^= Mask(1) << uniform(rank);
      x.add_term(m, coefficient());
    }
    return x;
  }

  /// 2gy x 2gx matrix of 2x2 blocks [[a, -b], [b, a]] (multiplication by a + bi).
  IntMatrix gaussian_block_matrix(unsigned gy, unsigned gx) {
    IntMatrix M(2 * gy, 2 * gx);
    for (unsigned r = 0; r < gy; ++r)
      for (unsigned c = 0; c < gx; ++c) {
        const Int a = coefficient(), b = coefficient();
        M(2 * r, 2 * c) = a;
        M(2 * r, 2 * c + 1) = -b;
        M(2 * r + 1, 2 * c) = b;
        M(2 * r + 1, 2 * c + 1) = a;
      }
    return M;
  }

  std::uint64_t uniform(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Check bodies

struct Outcome {
  bool ok = true;
  std::optional<Multivector> witness;
  std::string detail;

  /// Records the first discrepancy lhs - rhs.
  bool expect_equal(const Multivector& lhs, const Multivector& rhs, const std::string& what) {
    if (lhs == rhs) return true;
    if (ok) {
      ok = false;
      witness = lhs - rhs;
      detail = what;
    }
    return false;
  }
  /// A failing scalar condition; the witness is the offending integer as a degree-0 class.
  bool expect(bool condition, const Int& value, unsigned rank, const std::string& what) {
    if (condition) return true;
    if (ok) {
      ok = false;
      witness = Multivector::scalar(rank, value == 0 ? Int(1) : value);
      detail = what;
    }
    return false;
  }
};

namespace detail {

inline Int sign_power(unsigned g) { return (g % 2) ? Int(-1) : Int(1); }

inline AbelianVariety check_variety(const CheckParams& p) {
  if (p.variety) return *p.variety;
  std::vector<Int> type = p.type.empty() ? std::vector<Int>(p.genus, Int(1)) : p.type;
  if (type.size() != p.genus) throw Error(ErrorCode::UnsupportedParams, "type length differs from genus");
  return elliptic_product(type, p.conventions);
}

inline Outcome check_fourier_involution(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const AbelianVariety Ahat = dual(A);
  const unsigned n = A.rank();
  for (Mask m = 0; m <= full_mask(n); ++m) {
    const Multivector x = Multivector::monomial(n, m);
    // A^^ = A in coordinates; the canonical biduality acts as [-1] there
    const Multivector lhs = negation_pullback(fourier(Ahat, fourier(A, x)));
    const Multivector rhs = sign_power(A.genus) * negation_pullback(x);
    if (!out.expect_equal(lhs, rhs, "involution fails on monomial " + std::to_string(m))) break;
    if (m == full_mask(n)) break;
  }
  if (out.ok) out.detail = std::to_string(Mask(1) << n) + " basis monomials";
  return out;
}

inline Outcome check_beauville_exp(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const AbelianVariety Ahat = dual(A);
  const Multivector F = fourier(A, cup_exponential(theta_class(A)));
  out.expect_equal(F, cup_exponential(-theta_class(Ahat)), "F(e^theta) != e^{-theta^}");
  const Homomorphism lambda = polarization_isogeny(A);
  out.expect_equal(hom_pullback(lambda, F), cup_exponential(-theta_class(A)), "lambda^* F(e^theta) != e^{-theta}");
  return out;
}

inline Outcome check_star_exp_of_R(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const PoincareContext ctx = make_poincare_context(A);
  const AbelianVariety& X = ctx.product.variety;
  const Int s = sign_power(A.genus);
  const Multivector R = ctx.divided_power(2 * A.genus - 1);
  Multivector E = star_exponential(X, s * R);
  out.expect_equal(s * E, ctx.ch, "(-1)^g E((-1)^g R_A) != e^ell");
  return out;
}

inline Outcome check_claim_star(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const PoincareContext ctx = make_poincare_context(A);
  const Multivector lhs = fourier(ctx.product.variety, ctx.ch);
  const Multivector rhs = sign_power(A.genus) * cup_exponential(-poincare_class(ctx.Ahat));
  out.expect_equal(lhs, rhs, "F_{AxA^}(e^ell) != (-1)^g e^{-ell^}");
  return out;
}

inline Outcome check_min_class_fourier(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const AbelianVariety Ahat = dual(A);
  const ProductStructure Y = product(Ahat, dual(Ahat));
  const Multivector ell_hat = poincare_class(Ahat);
  const Multivector lhs = sign_power(A.genus) * fourier(Y.variety, -ell_hat);
  out.expect_equal(lhs, named_class(A, NamedClassTag::R_A), "(-1)^g F(-ell^) != R_A");
  return out;
}

inline Outcome check_tau(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  out.expect_equal(tau_class(A), -sign_power(A.genus) * named_class(A, NamedClassTag::R_A),
                   "tau != (-1)^{g+1} R_A");
  return out;
}

inline Outcome check_functoriality(const AbelianVariety& A, const CheckParams& p) {
  Outcome out;
  ClassSampler rng(p.seed);
  const unsigned gmax = A.genus;
  const unsigned count = 20;
  for (unsigned t = 0; t < count && out.ok; ++t) {
    const unsigned gx = 1 + static_cast<unsigned>(rng.uniform(gmax));
    const unsigned gy = 1 + static_cast<unsigned>(rng.uniform(gmax));
    const AbelianVariety X = standard_ppav(gx, p.conventions), Y = standard_ppav(gy, p.conventions);
    const Homomorphism f = make_hom(X, Y, rng.gaussian_block_matrix(gy, gx), true);
    const Homomorphism fhat = dual_hom(f);
    const std::string tag = "hom " + std::to_string(t) + " (" + std::to_string(gx) + "->" + std::to_string(gy) + ")";
    for (int k = 0; k < 3 && out.ok; ++k) {
      const Multivector x = rng.random_class(X.rank());
      out.expect_equal(hom_pullback(fhat, fourier(X, x)), fourier(Y, hom_pushforward(f, x)),
                       tag + ": f^^* F_X != F_Y f_*");
      const Multivector y = rng.random_class(Y.rank());
      Multivector rhs = hom_pushforward(fhat, fourier(Y, y));
      if ((gx + gy) % 2) rhs *= Int(-1);
      out.expect_equal(fourier(X, hom_pullback(f, y)), rhs, tag + ": F_X f^* != (-1)^{gx-gy} f^_* F_Y");
    }
  }
  if (out.ok) out.detail = std::to_string(count) + " holomorphic homomorphisms";
  return out;
}

inline Outcome check_product_exchange(const AbelianVariety& A, const CheckParams& p) {
  Outcome out;
  ClassSampler rng(p.seed);
  const AbelianVariety Ahat = dual(A);
  const Int s = sign_power(A.genus);
  const unsigned pairs = 50;
  for (unsigned t = 0; t < pairs && out.ok; ++t) {
    const Multivector x = rng.random_class(A.rank(), 6, true);
    const Multivector y = rng.random_class(A.rank(), 6, true);
    const Multivector Fx = fourier(A, x), Fy = fourier(A, y);
    out.expect_equal(fourier(A, wedge(x, y)), s * pontryagin(Ahat, Fx, Fy),
                     "pair " + std::to_string(t) + ": F(x.y) != (-1)^g F(x)*F(y)");
    out.expect_equal(fourier(A, pontryagin(A, x, y)), wedge(Fx, Fy),
                     "pair " + std::to_string(t) + ": F(x*y) != F(x).F(y)");
  }
  if (out.ok) out.detail = std::to_string(pairs) + " even pairs";
  return out;
}

inline Outcome check_theta_divided(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const Multivector theta = theta_class(A);
  const Multivector gamma = minimal_class(A);
  for (unsigned i = 0; i <= A.genus && out.ok; ++i) {
    const unsigned j = A.genus - i;
    const DivisionResult r = star_divided_power(A, gamma, j);
    if (!r.ok()) {
      out.ok = false;
      out.witness = Multivector::monomial(A.rank(), r.mask, r.coefficient);
      out.detail = "gamma^{*" + std::to_string(j) + "} not divisible by " + r.divisor.get_str();
      break;
    }
    out.expect_equal(divided_cup_power(theta, i), *r.quotient,
                     "theta^" + std::to_string(i) + "/" + std::to_string(i) + "! != gamma^{*" + std::to_string(j) +
                         "}/" + std::to_string(j) + "!");
  }
  return out;
}

inline Outcome check_kunneth_R(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const KunnethDecomposition k = kunneth_R_decomposition(A);
  out.expect_equal(k.lhs, Int(k.sign) * k.rhs, "R_{AxA^} != (-1)^g (two-term product)");
  if (out.ok) out.detail = "agreement with recorded sign (-1)^g = " + std::to_string(k.sign);
  return out;
}

inline Outcome check_sigma_triple_sum(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const Homomorphism id_lambda = product_hom(identity_hom(A), polarization_isogeny(A));
  out.expect_equal(hom_pullback(id_lambda, named_class(A, NamedClassTag::sigma_A)), sigma_triple_sum(A),
                   "(id x lambda)^* sigma_A != triple sum");
  return out;
}

inline Outcome check_beta_surjectivity(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const unsigned g = A.genus;
  const Multivector theta = theta_class(A);
  Multivector expected = minimal_class(A);
  if ((g - 1) % 2) expected *= Int(-1);
  out.expect_equal(beta_from_divisor(A, theta), expected, "beta(theta) != (-1)^{g-1} gamma_theta");
  const auto gens = beta_generators(A);
  for (std::size_t i = 0; i < gens.size() && out.ok; ++i)
    out.expect(is_hodge(A, gens[i]), Int(static_cast<long>(i)), A.rank(), "beta class is not Hodge");
  if (!out.ok) return out;
  const CokernelInvariants cok = voisin_certificate(A, g - 1, gens);
  Int bad = 0;
  for (const auto& d : cok.divisors)
    if (d != 1) bad = d;
  out.expect(cok.trivial(), cok.free_rank ? Int(static_cast<long>(cok.free_rank)) : bad, A.rank(),
             "beta classes do not span Hdg^{2g-2}");
  if (out.ok) out.detail = std::to_string(gens.size()) + " beta classes span Hdg^" + std::to_string(2 * g - 2);
  return out;
}

inline Outcome check_divided_square(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const PoincareContext ctx = make_poincare_context(A);
  const Multivector rho = ctx.divided_power(2 * A.genus - 1);
  const DivisionResult r = star_divided_power(ctx.product.variety, rho, 2);
  if (!r.ok()) {
    out.ok = false;
    out.witness = Multivector::monomial(rho.rank(), r.mask, r.coefficient);
    out.detail = "rho^{*2} not divisible by 2";
    return out;
  }
  out.expect_equal(sign_power(A.genus) * *r.quotient, ctx.divided_power(2 * A.genus - 2),
                   "(-1)^g rho^{*2}/2 != sigma_A");
  return out;
}

inline Outcome check_sigma_diagram(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const AbelianVariety Ahat = dual(A);
  const unsigned g = A.genus;
  for (const Int& n : {Int(1), factorial(2 * g - 2)}) {
    for (const AbelianVariety* V : {&A, &Ahat}) {
      const AbelianVariety Vhat = dual(*V);
      const Multivector sigma = n * divided_cup_power(poincare_class(*V), 2 * g - 2);
      for (Mask m : masks_of_degree(V->rank(), 2)) {
        const Multivector x = Multivector::monomial(V->rank(), m);
        if (!out.expect_equal(correspondence_action(*V, Vhat, sigma, x), n * fourier(*V, x),
                              "diagram on " + V->name + " with n = " + n.get_str()))
          return out;
      }
    }
  }
  return out;
}

inline Outcome check_poincare_pushforward(const AbelianVariety& A, const CheckParams& p) {
  Outcome out;
  const AbelianVariety B = standard_ppav(p.genus_b, p.conventions);
  const Prop45Result r = prop45_pushforward_check(A, B);
  out.expect_equal(r.pushforward, r.expected, "f_*(R_X) != (-1)^{g_B} R_A");
  if (out.ok && !r.expansion_ok) {
    out.ok = false;
    out.witness = r.expansion_difference;
    out.detail = "two-term expansion of R_X fails";
  }
  if (out.ok) out.detail = "g_A = " + std::to_string(A.genus) + ", g_B = " + std::to_string(B.genus);
  return out;
}

inline Outcome check_isogeny_degree(const AbelianVariety& A, const CheckParams& p) {
  Outcome out;
  ClassSampler rng(p.seed);
  const unsigned h = A.genus;
  const AbelianVariety X = standard_ppav(h, p.conventions);
  const unsigned count = 10;
  for (unsigned t = 0; t < count && out.ok;) {
    IntMatrix a = rng.gaussian_block_matrix(h, h);
    if (determinant(a) == 0) continue;
    const Homomorphism alpha = make_hom(X, X, a, true);
    const Int m = smith_normal_form(a).divisors.back();
    const RatMatrix binv = Rat(m) * *inverse(to_rational(a));
    const Homomorphism beta = make_hom(X, X, *to_integral(binv), true);
    const Homomorphism ba = compose(beta, alpha);
    const std::string tag = "isogeny " + std::to_string(t);
    out.expect(ba.M == IntMatrix::scalar(2 * h, m), m, X.rank(), tag + ": beta o alpha != [m]");
    const Int lhs = degree(alpha) * degree(beta);
    out.expect(lhs == int_pow(m, 2 * h), lhs, X.rank(), tag + ": deg(alpha) deg(beta) != m^{2h}");
    const Homomorphism ab_hat = compose(dual_hom(alpha), dual_hom(beta));
    const Homomorphism both = product_hom(ba, ab_hat);
    out.expect(both.M == IntMatrix::scalar(4 * h, m), m, X.rank(), tag + ": (beta alpha) x (alpha^ beta^) != [m]");
    out.expect(degree(dual_hom(alpha)) == degree(alpha), degree(alpha), X.rank(), tag + ": deg(alpha^) != deg(alpha)");
    const Multivector x = rng.random_class(X.rank());
    out.expect_equal(hom_pullback(ba, x), hom_pullback(scalar_hom(X, m), x), tag + ": (beta alpha)^* != [m]^*");
    ++t;
  }
  if (out.ok) out.detail = std::to_string(count) + " isogenies";
  return out;
}

inline Outcome check_hodge_fourier(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  for (unsigned i = 0; i <= A.genus && out.ok; ++i) {
    const FourierHodgeMatrix F = fourier_hodge_matrix(A, i);
    const Int det = F.matrix.is_square() ? determinant(F.matrix) : Int(0);
    out.expect(F.unimodular, det, A.rank(), "Fourier on Hdg^" + std::to_string(2 * i) + " is not unimodular");
  }
  return out;
}

inline Outcome check_ihc_certificate(const AbelianVariety& A, const CheckParams& p) {
  Outcome out;
  const unsigned g = A.genus;
  const HodgeLattice H2 = hodge_lattice(A, 1);
  if (!p.variety)
    out.expect(H2.rank == g * g, Int(static_cast<long>(H2.rank)), A.rank(), "rank Hdg^2 != g^2");
  const CokernelInvariants cok = voisin_certificate(A, g - 1, beta_generators(A));
  Int bad = 0;
  for (const auto& d : cok.divisors)
    if (d != 1) bad = d;
  out.expect(cok.trivial(), cok.free_rank ? Int(static_cast<long>(cok.free_rank)) : bad, A.rank(),
             "nontrivial cokernel in Hdg^" + std::to_string(2 * g - 2));
  if (out.ok)
    out.detail = "rank Hdg^2 = " + std::to_string(H2.rank) + ", rank Hdg^" + std::to_string(2 * g - 2) + " = " +
                 std::to_string(cok.divisors.size()) + ", cokernel trivial";
  return out;
}

inline Outcome check_poincare_normalization(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const PoincareContext ctx = make_poincare_context(A);
  const unsigned g = A.genus;
  const Int value = integrate(ctx.product.variety, wedge_power(ctx.ell, 2 * g));
  const Int expected = sign_power(g) * factorial(2 * g);
  out.expect(value == expected, value, ctx.ell.rank(), "integral of ell^{2g} is not (-1)^g (2g)!");
  if (out.ok)
    out.detail = "integral of ell^" + std::to_string(2 * g) + " = " + value.get_str() + "; displayed normalization +" +
                 factorial(2 * g).get_str() + "; convention delta " + sign_power(g).get_str();
  return out;
}

inline Outcome check_ell_integrality(const AbelianVariety& A, const CheckParams&) {
  Outcome out;
  const Multivector ell = poincare_class(A);
  Multivector power = Multivector::one(ell.rank());
  Multivector sum(ell.rank());
  for (unsigned k = 0; k <= 2 * A.genus; ++k) {
    if (k) power = wedge(power, ell);
    const DivisionResult r = try_divide_exact(power, factorial(k));
    if (!r.ok()) {
      out.ok = false;
      out.witness = Multivector::monomial(ell.rank(), r.mask, r.coefficient);
      out.detail = "ell^" + std::to_string(k) + " not divisible by " + r.divisor.get_str();
      return out;
    }
    sum += *r.quotient;
  }
  out.expect_equal(sum, cup_exponential(ell), "sum of ell^k/k! != exp(ell)");
  return out;
}

using CheckBody = Outcome (*)(const AbelianVariety&, const CheckParams&);

inline CheckBody check_body(const std::string& name) {
  static const std::map<std::string, CheckBody> bodies = {
      {"fourier_involution", check_fourier_involution},
      {"beauville_exp", check_beauville_exp},
      {"star_exp_of_R", check_star_exp_of_R},
      {"claim_star", check_claim_star},
      {"eq35_minclass", check_min_class_fourier},
      {"tau_equals_R", check_tau},
      {"functoriality", check_functoriality},
      {"product_exchange", check_product_exchange},
      {"theta_divided", check_theta_divided},
      {"kunneth_R", check_kunneth_R},
      {"sigma_triple_sum", check_sigma_triple_sum},
      {"beta_surjectivity", check_beta_surjectivity},
      {"divided_square", check_divided_square},
      {"lemma51_diagram", check_sigma_diagram},
      {"prop45_pushforward", check_poincare_pushforward},
      {"isogeny_degree", check_isogeny_degree},
      {"hodge_fourier_unimodular", check_hodge_fourier},
      {"ihc_certificate_elliptic_products", check_ihc_certificate},
      {"poincare_normalization", check_poincare_normalization},
      {"ell_integrality", check_ell_integrality},
  };
  return bodies.at(name);
}

}  // namespace detail

/// Runs one check. Throws UnknownCheck, or UnsupportedParams when the
/// parameters are outside the check's domain or budget.
inline CheckResult run_check(const std::string& name, const CheckParams& params) {
  const CheckDescriptor& d = find_check(name);
  const AbelianVariety A = detail::check_variety(params);
  const unsigned budget_genus = d.name == "prop45_pushforward" ? A.genus + params.genus_b : A.genus;
  const unsigned budget = d.name == "prop45_pushforward" ? 4 : d.max_genus;
  if (budget_genus > budget)
    throw Error(ErrorCode::UnsupportedParams, "budget: " + d.name + " runs up to genus " + std::to_string(budget));
  if (d.needs_principal && !A.principal())
    throw Error(ErrorCode::UnsupportedParams, d.name + " needs a principal polarization");
  if (d.needs_complex_structure && !A.J)
    throw Error(ErrorCode::UnsupportedParams, d.name + " needs a complex structure");
  if (d.name == "prop45_pushforward" && params.genus_b == 0)
    throw Error(ErrorCode::UnsupportedParams, "genus_b must be positive");

  CheckResult r;
  r.id = d.id;
  r.name = d.name;
  r.anchor = d.anchor;
  r.params = params.record();
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = detail::check_body(d.name)(A, params);
  } catch (const NonDivisibleError& e) {
    o.ok = false;
    o.witness = Multivector::monomial(A.rank(), e.mask() & full_mask(A.rank()), e.coefficient());
    o.detail = e.what();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnsupportedParams) throw;
    o.ok = false;
    o.witness = Multivector::scalar(A.rank(), Int(1));
    o.detail = e.what();
  }
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  r.runtime_us = std::to_string(us.count());
  r.status = o.ok ? CheckStatus::pass : CheckStatus::fail;
  r.detail = o.detail;
  if (!o.ok) {
    r.witness = o.witness ? *o.witness : Multivector::scalar(A.rank(), Int(1));
    if (r.witness->is_zero()) r.witness = Multivector::scalar(A.rank(), Int(1));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Suites and reports

struct SuiteConfig {
  std::vector<std::string> checks;  // empty: all
  std::vector<CheckParams> grid;
};

struct DualSignRecord {
  std::string variety;
  int sign = 0;
  friend bool operator==(const DualSignRecord&, const DualSignRecord&) = default;
};

struct ReportConventions {
  int poincare_sign = 1;
  int orientation_sign = 1;
  HodgeParameter hodge;
  std::vector<DualSignRecord> dual_j_signs;
  friend bool operator==(const ReportConventions&, const ReportConventions&) = default;
};

struct VerificationReport {
  std::string tool_version = kToolVersion;
  ReportConventions conventions;
  std::vector<CheckResult> results;
  bool passed = true;
  int exit_status = 0;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// g = 1..3, principal and type (1, ..., 1, 2).
inline SuiteConfig default_suite(std::uint64_t seed = 1) {
  SuiteConfig c;
  for (unsigned g = 1; g <= 3; ++g)
    for (bool principal : {true, false}) {
      CheckParams p;
      p.genus = g;
      if (!principal) p.type = simple_type(g, 2);
      p.seed = seed;
      c.grid.push_back(p);
    }
  return c;
}

inline VerificationReport run_suite(const SuiteConfig& config) {
  std::vector<std::string> names = config.checks;
  if (names.empty())
    for (const auto& d : check_registry()) names.push_back(d.name);
  for (auto& n : names) n = find_check(n).name;

  VerificationReport report;
  if (!config.grid.empty()) {
    report.conventions.poincare_sign = config.grid.front().conventions.poincare_sign;
    report.conventions.orientation_sign = config.grid.front().conventions.orientation_sign;
  }
  std::map<std::string, int> signs;
  for (const auto& p : config.grid) {
    const AbelianVariety A = detail::check_variety(p);
    if (A.J) signs[A.name] = dual(A).dual_j_sign;
  }
  for (const auto& [name, sign] : signs) report.conventions.dual_j_signs.push_back({name, sign});

  for (const auto& name : names)
    for (const auto& p : config.grid) {
      try {
        report.results.push_back(run_check(name, p));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedParams) throw;
        const CheckDescriptor& d = find_check(name);
        CheckResult r;
        r.id = d.id;
        r.name = d.name;
        r.anchor = d.anchor;
        r.params = p.record();
        r.status = CheckStatus::skipped;
        r.detail = e.what();
        report.results.push_back(std::move(r));
      }
    }
  std::stable_sort(report.results.begin(), report.results.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.name, a.params) < std::tie(b.name, b.params);
  });
  report.passed = std::none_of(report.results.begin(), report.results.end(),
                               [](const CheckResult& r) { return r.status == CheckStatus::fail; });
  report.exit_status = report.passed ? 0 : 1;
  return report;
}

inline json to_json(const ParamRecord& p) {
  json type = json::array();
  for (const auto& d : p.type) type.push_back(d.get_str());
  json j{{"genus", p.genus}, {"type", type}, {"seed", std::to_string(p.seed)}, {"genus_b", p.genus_b}};
  if (!p.variety.empty()) j["variety"] = p.variety;
  return j;
}

inline ParamRecord param_record_from_json(const json& j) {
  ParamRecord p;
  p.genus = j.at("genus").get<unsigned>();
  for (const auto& d : j.at("type")) p.type.push_back(parse_int(d, "type"));
  p.seed = std::stoull(j.at("seed").get<std::string>());
  p.genus_b = j.at("genus_b").get<unsigned>();
  p.variety = j.value("variety", std::string());
  return p;
}

inline json to_json(const CheckResult& r) {
  json j{{"id", r.id},     {"name", r.name},
         {"anchor", r.anchor}, {"params", to_json(r.params)},
         {"status", std::string(status_name(r.status))}, {"runtime_us", r.runtime_us},
         {"detail", r.detail}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

inline CheckResult check_result_from_json(const json& j) {
  CheckResult r;
  r.id = j.at("id").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.anchor = j.at("anchor").get<std::string>();
  r.params = param_record_from_json(j.at("params"));
  r.status = parse_status(j.at("status").get<std::string>());
  r.runtime_us = j.at("runtime_us").get<std::string>();
  r.detail = j.at("detail").get<std::string>();
  if (!j.at("witness").is_null()) r.witness = multivector_from_json(j.at("witness"));
  return r;
}

inline json to_json(const VerificationReport& r) {
  json signs = json::array();
  for (const auto& s : r.conventions.dual_j_signs) signs.push_back(json{{"variety", s.variety}, {"sign", std::to_string(s.sign)}});
  json conv{{"poincare_sign", std::to_string(r.conventions.poincare_sign)},
            {"orientation_sign", std::to_string(r.conventions.orientation_sign)},
            {"hodge_parameter", json{{"a", r.conventions.hodge.a.get_str()}, {"b", r.conventions.hodge.b.get_str()}}},
            {"dual_j_signs", signs}};
  json results = json::array();
  for (const auto& c : r.results) results.push_back(to_json(c));
  return json{{"tool_version", r.tool_version},
              {"conventions", conv},
              {"results", results},
              {"status", r.passed ? "pass" : "fail"},
              {"exit_status", std::to_string(r.exit_status)}};
}

inline VerificationReport report_from_json(const json& j) {
  try {
    VerificationReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    const json& c = j.at("conventions");
    r.conventions.poincare_sign = std::stoi(c.at("poincare_sign").get<std::string>());
    r.conventions.orientation_sign = std::stoi(c.at("orientation_sign").get<std::string>());
    r.conventions.hodge.a = parse_int(c.at("hodge_parameter").at("a"), "hodge a");
    r.conventions.hodge.b = parse_int(c.at("hodge_parameter").at("b"), "hodge b");
    for (const auto& s : c.at("dual_j_signs"))
      r.conventions.dual_j_signs.push_back({s.at("variety").get<std::string>(), std::stoi(s.at("sign").get<std::string>())});
    for (const auto& x : j.at("results")) r.results.push_back(check_result_from_json(x));
    r.passed = j.at("status").get<std::string>() == "pass";
    r.exit_status = std::stoi(j.at("exit_status").get<std::string>());
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
}

inline std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "abelfourier " << r.tool_version << "\n";
  os << "conventions: poincare_sign=" << r.conventions.poincare_sign
     << " orientation_sign=" << r.conventions.orientation_sign << " hodge=(" << r.conventions.hodge.a << ","
     << r.conventions.hodge.b << ")";
  for (const auto& s : r.conventions.dual_j_signs) os << " dual_j_sign[" << s.variety << "]=" << s.sign;
  os << "\n";
  for (const auto& c : r.results) {
    os << status_name(c.status) << "  " << c.id << " " << c.name << "  " << c.params.label() << "  " << c.runtime_us
       << " us";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
    if (c.witness) os << "    witness: " << to_json(*c.witness).dump() << "\n";
  }
  os << "status: " << (r.passed ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace abelfourier
