#include <gtest/gtest.h>

#include <random>

#include "abelfourier/exact_linalg.hpp"
#include "oracles.hpp"

using namespace abelfourier;

namespace {

IntMatrix diag(const std::vector<Int>& d, std::size_t r, std::size_t c) {
  IntMatrix D(r, c);
  for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
  return D;
}

std::vector<Int> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(SmithNormalForm, AlreadyDiagonal) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{3, 0}, {0, 6}}).divisors, ints({3, 6}));
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(2)).divisors, ints({1, 1}));
}

TEST(SmithNormalForm, TwoByTwoByHand) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).divisors, ints({2, 4}));
}

TEST(SmithNormalForm, NonCanonicalDiagonal) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{4, 0}, {0, 6}}).divisors, ints({2, 12}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{0, 0}, {0, -5}}).divisors, ints({5, 0}));
}

TEST(SmithNormalForm, RandomMatricesAgreeWithDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix M = oracle::random_matrix(rng, r, c, trial % 3 == 0 ? 2 : 9);
    const SmithDecomposition s = smith_normal_form(M);
    ASSERT_EQ(s.U * M * s.V, diag(s.divisors, r, c)) << M.to_string();
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      EXPECT_GE(s.divisors[i], 0);
      if (s.divisors[i] != 0) {
        EXPECT_TRUE(mpz_divisible_p(s.divisors[i + 1].get_mpz_t(), s.divisors[i].get_mpz_t()));
      } else {
        EXPECT_EQ(s.divisors[i + 1], 0);
      }
    }
    std::vector<Int> nonzero;
    for (const auto& d : s.divisors)
      if (d != 0) nonzero.push_back(d);
    EXPECT_EQ(nonzero, oracle::determinantal_divisors(M)) << M.to_string();

    // M = U^-1 D V^-1
    const auto Ui = inverse(to_rational(s.U));
    const auto Vi = inverse(to_rational(s.V));
    ASSERT_TRUE(Ui && Vi);
    EXPECT_EQ(*Ui * to_rational(diag(s.divisors, r, c)) * *Vi, to_rational(M));
  }
}

TEST(Determinant, BareissMatchesCofactorAndRational) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const IntMatrix M = oracle::random_matrix(rng, n, n);
    const Int d = oracle::leibniz_det(M);
    EXPECT_EQ(determinant(M), d);
    EXPECT_EQ(determinant(to_rational(M)), Rat(d));
  }
  EXPECT_EQ(determinant(IntMatrix(0, 0)), 1);
  EXPECT_THROW(determinant(IntMatrix(2, 3)), Error);
}

TEST(Pfaffian, MatchesExpansionAndSquaresToDeterminant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 * (1 + trial % 4);
    IntMatrix A = oracle::random_matrix(rng, n, n, 4);
    IntMatrix S = A - A.transpose();
    const Int pf = pfaffian(S);
    EXPECT_EQ(pf, oracle::pfaffian_expand(S));
    EXPECT_EQ(pf * pf, determinant(S));
    EXPECT_EQ(pfaffian(to_rational(S)), Rat(pf));
  }
  EXPECT_EQ(pfaffian(IntMatrix{{0, 1}, {-1, 0}}), 1);
}

TEST(Inverse, SingularAndRegular) {
  EXPECT_FALSE(inverse(RatMatrix{{1, 2}, {2, 4}}).has_value());
  const auto inv = inverse(RatMatrix{{2, 1}, {1, 1}});
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(*inv, (RatMatrix{{1, -1}, {-1, 2}}));
}

TEST(KernelSaturated, SmallExamples) {
  const IntMatrix k1 = kernel_saturated(RatMatrix{{1, -1}});
  ASSERT_EQ(k1.cols(), 1u);
  EXPECT_EQ(abs(k1(0, 0)), 1);
  EXPECT_EQ(k1(0, 0), k1(1, 0));

  // the factor 2 does not survive saturation
  const IntMatrix k2 = kernel_saturated(RatMatrix{{2, -2}});
  EXPECT_EQ(k2, k1);

  RatMatrix half{{1, 0, 0}};
  half(0, 1) = make_rat(1, 2);
  const IntMatrix k3 = kernel_saturated(half);
  EXPECT_EQ(k3.cols(), 2u);
}

TEST(KernelSaturated, RandomKernelsAreSaturated) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + rng() % 3, c = r + 1 + rng() % 3;
    const IntMatrix M = oracle::random_matrix(rng, r, c, 5);
    const IntMatrix K = kernel_saturated(M);
    EXPECT_TRUE((M * K).is_zero());
    EXPECT_EQ(K.cols(), c - smith_normal_form(M).rank());
    const CokernelInvariants inv = cokernel_invariants(K, c);
    EXPECT_TRUE(inv.torsion().empty()) << M.to_string();
    EXPECT_EQ(inv.free_rank, c - K.cols());
  }
}

TEST(CokernelInvariants, Examples) {
  const auto id = cokernel_invariants(IntMatrix::identity(3), 3);
  EXPECT_TRUE(id.trivial());
  EXPECT_EQ(id.divisors, ints({1, 1, 1}));

  IntMatrix g(2, 1);
  g(0, 0) = 2;
  const auto c = cokernel_invariants(g, 2);
  EXPECT_EQ(c.divisors, ints({2}));
  EXPECT_EQ(c.free_rank, 1u);
  EXPECT_EQ(c.torsion(), ints({2}));
  EXPECT_FALSE(c.trivial());

  EXPECT_EQ(cokernel_invariants(IntMatrix(3, 0), 3).free_rank, 3u);
  EXPECT_THROW(cokernel_invariants(IntMatrix(2, 1), 3), Error);
}

TEST(HermiteNormalForm, CanonicalBasisDependsOnlyOnLattice) {
  const IntMatrix a{{1, 0}, {0, 2}, {3, 4}};
  const IntMatrix unimodular{{2, 1}, {1, 1}};
  EXPECT_EQ(canonical_column_basis(a), canonical_column_basis(a * unimodular));
  IntMatrix extra(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    extra(i, 0) = a(i, 0);
    extra(i, 1) = a(i, 1);
    extra(i, 2) = a(i, 0) + a(i, 1);
  }
  EXPECT_EQ(canonical_column_basis(extra), canonical_column_basis(a));
}

TEST(SolveInLattice, MembershipIsExact) {
  const IntMatrix B{{1, 0}, {0, 2}, {1, 1}};
  const auto c = solve_in_lattice(B, ints({3, 4, 5}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, ints({3, 2}));
  EXPECT_FALSE(solve_in_lattice(B, ints({0, 1, 0})).has_value());
  EXPECT_FALSE(solve_in_lattice(B, ints({1, 0, 0})).has_value());
}

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(is_positive_definite(RatMatrix::identity(3)));
  EXPECT_FALSE(is_positive_definite(RatMatrix{{1, 0}, {0, -1}}));
  EXPECT_TRUE(is_positive_definite(RatMatrix{{2, 1}, {1, 1}}));
  EXPECT_FALSE(is_positive_definite(RatMatrix{{1, 2}, {2, 1}}));
  try {
    is_positive_definite(RatMatrix{{1, 1}, {0, 1}});
    FAIL() << "expected NotSymmetric";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(Arithmetic, Helpers) {
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(binomial(8, 3), 56);
  EXPECT_EQ(int_pow(Int(-2), 5), -32);
  EXPECT_EQ(abelfourier::gcd(Int(-12), Int(18)), 6);
  EXPECT_EQ(abelfourier::lcm(Int(4), Int(6)), 12);
  EXPECT_TRUE(is_integral(make_rat(6, 3)));
  EXPECT_FALSE(to_integral(make_rat(1, 2) * RatMatrix::identity(2)).has_value());
}

TEST(Errors, MessageCarriesCodeName) {
  const Error e(ErrorCode::NotAlternating, "E^T != -E");
  EXPECT_EQ(std::string(e.what()), "NotAlternating: E^T != -E");
  EXPECT_EQ(error_code_name(ErrorCode::UnsupportedParams), "UnsupportedParams");
}
