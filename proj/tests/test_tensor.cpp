#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "tel/philox.hpp"
#include "tel/tensor.hpp"

using namespace tel;

namespace {

GeneralTensor random_general(int p, std::uint32_t N, std::uint64_t seed) {
  GeneralTensor t(p, N);
  for (std::size_t i = 0; i < t.values().size(); ++i)
    t.values()[i] = counter_gaussian(stream_key(seed, 17), i);
  return t;
}

SymmetricTensor random_symmetric(int d, std::uint32_t N, std::uint64_t seed) {
  SymmetricTensor t(d, N);
  for (std::uint64_t r = 0; r < t.canonical_size(); ++r)
    t.value_at_rank(r) = counter_gaussian(stream_key(seed, 3), r);
  return t;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("symmetric lookup is permutation invariant") {
  SymmetricTensor t(3, 4);
  t.set({1, 2, 3}, 5.0);
  CHECK(t({3, 1, 2}) == 5.0);
  CHECK(t({2, 3, 1}) == 5.0);
  CHECK(t.canonical_size() == canonical_count(3, 4));
}

TEST_CASE("symmetrize of a pure 2-tensor averages the two slots") {
  // e1 (x) e2 at N=2: value 1/2 at (1,2) and (2,1), zero elsewhere
  GeneralTensor t(2, 2);
  t.set({1, 2}, 1.0);
  GeneralTensor s = symmetrize(t);
  CHECK(s.at({1, 2}) == Catch::Approx(0.5));
  CHECK(s.at({2, 1}) == Catch::Approx(0.5));
  CHECK(s.at({1, 1}) == 0.0);
  CHECK(s.at({2, 2}) == 0.0);
}

TEST_CASE("symmetrize is the identity on symmetric input and kills antisymmetric input") {
  GeneralTensor anti(2, 2);
  anti.set({1, 2}, 1.0);
  anti.set({2, 1}, -1.0);
  GeneralTensor z = symmetrize(anti);
  for (double v : z.values()) CHECK(std::abs(v) < 1e-15);

  GeneralTensor sym = symmetrize(random_general(3, 3, 1));
  GeneralTensor sym2 = symmetrize(sym);
  CHECK(max_abs_diff(sym.values(), sym2.values()) < 1e-14);
}

TEST_CASE("symmetrize is self-adjoint") {
  GeneralTensor a = random_general(3, 3, 11);
  GeneralTensor b = random_general(3, 3, 12);
  double lhs = tensor_inner(symmetrize(a), b);
  double rhs = tensor_inner(a, symmetrize(b));
  CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("contract_pure selects slices for an all-ones tensor") {
  SymmetricTensor t(3, 2);
  for (std::uint64_t r = 0; r < t.canonical_size(); ++r) t.value_at_rank(r) = 1.0;
  SymMatrix m = to_sym_matrix(contract_pure(t, {{1.0, 0.0}}));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(m(a, b) == Catch::Approx(1.0));
}

TEST_CASE("contraction does not see the antisymmetric part") {
  SymmetricTensor t = random_symmetric(4, 3, 2);
  GeneralTensor anti(2, 3);
  anti.set({1, 2}, 1.0);
  anti.set({2, 1}, -1.0);
  anti.set({1, 3}, 0.5);
  anti.set({3, 1}, -0.5);
  SymmetricTensor out = contract_general(t, anti);
  for (std::uint64_t r = 0; r < out.canonical_size(); ++r)
    CHECK(std::abs(out.value_at_rank(r)) < 1e-12);
}

TEST_CASE("contract_general(t, Sym b) equals contract_general(t, b)") {
  SymmetricTensor t = random_symmetric(4, 3, 5);
  GeneralTensor b = random_general(2, 3, 6);
  auto lhs = contract_general(t, symmetrize(b));
  auto rhs = contract_general(t, b);
  CHECK(max_abs_diff(lhs.values(), rhs.values()) < 1e-12);
}

TEST_CASE("contract_general agrees with contract_pure on pure tensors and is linear") {
  SymmetricTensor t = random_symmetric(4, 3, 7);
  std::vector<double> u = {0.3, -0.5, 0.2};
  std::vector<double> v = {1.0, 0.25, -0.75};
  auto viaPure = contract_pure(t, {u, v});
  auto viaGeneral = contract_general(t, pure_tensor({u, v}));
  CHECK(max_abs_diff(viaPure.values(), viaGeneral.values()) < 1e-12);

  GeneralTensor b1 = random_general(2, 3, 8);
  GeneralTensor b2 = random_general(2, 3, 9);
  double alpha = 0.7, beta = -1.3;
  GeneralTensor combo(2, 3);
  for (std::size_t i = 0; i < combo.values().size(); ++i)
    combo.values()[i] = alpha * b1.values()[i] + beta * b2.values()[i];
  auto lhs = contract_general(t, combo);
  auto r1 = contract_general(t, b1);
  auto r2 = contract_general(t, b2);
  for (std::uint64_t r = 0; r < lhs.canonical_size(); ++r)
    CHECK(lhs.value_at_rank(r) ==
          Catch::Approx(alpha * r1.value_at_rank(r) + beta * r2.value_at_rank(r))
              .epsilon(1e-12)
              .margin(1e-12));

  GeneralTensor zero(2, 3);
  auto z = contract_general(t, zero);
  for (double x : z.values()) CHECK(x == 0.0);
}

TEST_CASE("vector order does not matter in pure contraction") {
  SymmetricTensor t = random_symmetric(4, 3, 10);
  std::vector<double> u = {0.6, 0.0, -0.8};
  std::vector<double> v = {0.1, 0.9, 0.4};
  auto m1 = to_sym_matrix(contract_pure(t, {u, v}));
  auto m2 = to_sym_matrix(contract_pure(t, {v, u}));
  CHECK(max_abs_diff(m1.data(), m2.data()) < 1e-12);
}

TEST_CASE("order-2 contraction output is exactly symmetric") {
  SymmetricTensor t = random_symmetric(4, 4, 13);
  std::vector<double> u = {0.5, -0.5, 0.5, 0.5};
  std::vector<double> v = {0.1, 0.2, 0.3, 0.4};
  SymMatrix m = to_sym_matrix(contract_pure(t, {u, v}));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) REQUIRE(m(a, b) == m(b, a));  // bit-equal
}

TEST_CASE("eigen_residual") {
  SECTION("zero tensor at lambda = 0") {
    SymmetricTensor t(3, 2);
    CHECK(eigen_residual(t, 0.0, {1.0, 0.0}) == 0.0);
  }
  SECTION("explicit fixed point: t(1,1,1) = 1, u = e1, lambda = 1") {
    SymmetricTensor t(3, 2);
    t.set({1, 1, 1}, 1.0);
    CHECK(eigen_residual(t, 1.0, {1.0, 0.0}) < 1e-14);
  }
  SECTION("non-unit vector is rejected") {
    SymmetricTensor t(3, 2);
    CHECK_THROWS_AS(eigen_residual(t, 0.0, {1.0, 1.0}), std::invalid_argument);
  }
}

TEST_CASE("materialization caps produce resource errors") {
  CHECK_THROWS_AS(SymmetricTensor(8, 2000), resource_error);
  CHECK_THROWS_AS(GeneralTensor(8, 200), resource_error);
}
