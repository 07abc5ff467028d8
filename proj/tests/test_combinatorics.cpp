#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "tel/partitions.hpp"
#include "tel/permanent.hpp"
#include "tel/philox.hpp"
#include "tel/ubp.hpp"

using namespace tel;

namespace {

// Test-side oracle: the Kreweras complement as the coarsest partition of
// the "bar" elements compatible with pi on the interlaced circle
// 1 < 1bar < 2 < 2bar < ... < n < nbar.
SetPartition kreweras_brute_force(const NCPartition& pi) {
  int n = pi.ground_size();
  std::vector<SetPartition> compatible;
  enumerate_set_partitions(n, [&](const SetPartition& sigma) {
    std::vector<int> labels(2 * n);
    int shift = sigma.block_count();
    for (int i = 0; i < n; ++i) {
      labels[2 * i] = sigma.ground_size() + pi.p.rgs[i] + shift;  // unique ids for pi blocks
      labels[2 * i + 1] = sigma.rgs[i];
    }
    if (is_noncrossing(partition_from_labels(labels))) compatible.push_back(sigma);
  });
  // the complement is the unique maximum: every compatible partition refines it
  for (const auto& cand : compatible) {
    bool top = true;
    for (const auto& other : compatible)
      if (!refines(other, cand)) {
        top = false;
        break;
      }
    if (top) return cand;
  }
  FAIL("no maximal compatible partition found");
  return SetPartition{};
}

}  // namespace

TEST_CASE("set partition counts match Bell numbers") {
  CHECK(bell_number(3) == 5);
  CHECK(bell_number(8) == 4140);
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8}) {
    std::uint64_t count = 0;
    std::set<SetPartition> seen;
    enumerate_set_partitions(n, [&](const SetPartition& p) {
      ++count;
      seen.insert(p);
      REQUIRE(p.ground_size() == n);
    });
    CHECK(count == bell_number(n));
    CHECK(seen.size() == count);  // distinct, canonical order
  }
  CHECK_THROWS_AS(enumerate_set_partitions(15, [](const SetPartition&) {}), resource_error);
}

TEST_CASE("restricted growth strings print deterministically") {
  auto ps = all_set_partitions(3);
  REQUIRE(ps.size() == 5);
  CHECK(ps[0].to_string() == "000");
  CHECK(ps[1].to_string() == "001");
  CHECK(ps[2].to_string() == "010");
  CHECK(ps[3].to_string() == "011");
  CHECK(ps[4].to_string() == "012");
}

TEST_CASE("noncrossing pairings are counted by Catalan numbers") {
  CHECK(all_nc_pairings(2).size() == 1);
  auto p4 = all_nc_pairings(4);
  REQUIRE(p4.size() == 2);
  CHECK(all_nc_pairings(6).size() == 5);
  CHECK(all_nc_pairings(3).empty());  // odd: no pairings, not an error
  for (int n : {2, 4, 6, 8, 10}) CHECK(all_nc_pairings(n).size() == catalan_number(n / 2));

  // brute-force cross-check at n = 4: of the 3 pairings only 2 are noncrossing
  int crossing = 0, noncrossing = 0;
  // pairings of {0,1,2,3}: (01)(23), (02)(13), (03)(12)
  std::vector<std::vector<int>> pairings = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}};
  for (auto& labels : pairings)
    (is_noncrossing(partition_from_labels(labels)) ? noncrossing : crossing)++;
  CHECK(noncrossing == 2);
  CHECK(crossing == 1);
}

TEST_CASE("noncrossing filter matches Bell counts and NC counts up to n = 10") {
  // NC(n) is counted by Catalan(n)
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8}) {
    std::uint64_t nc = 0, all = 0;
    enumerate_set_partitions(n, [&](const SetPartition& p) {
      ++all;
      if (is_noncrossing(p)) ++nc;
    });
    CHECK(all == bell_number(n));
    CHECK(nc == catalan_number(n));
  }
}

TEST_CASE("crossing partitions are rejected by NCPartition") {
  CHECK_THROWS_AS(NCPartition(partition_from_labels({0, 1, 0, 1})), std::invalid_argument);
}

TEST_CASE("kreweras complement: boundary cases") {
  // full block -> singletons
  auto one = NCPartition(partition_from_labels({0, 0, 0, 0}));
  CHECK(kreweras(one).block_count() == 4);
  // singletons -> full block
  auto zero = NCPartition(partition_from_labels({0, 1, 2, 3}));
  CHECK(kreweras(zero).block_count() == 1);
}

TEST_CASE("kreweras complement agrees with the maximal-compatible oracle") {
  for (int n : {2, 3, 4, 5, 6}) {
    enumerate_set_partitions(n, [&](const SetPartition& sp) {
      if (!is_noncrossing(sp)) return;
      NCPartition pi(sp);
      NCPartition kc = kreweras(pi);
      CHECK(kc.p == kreweras_brute_force(pi));
      // rank identity
      CHECK(pi.block_count() + kc.block_count() == n + 1);
    });
  }
}

TEST_CASE("kreweras is an involution up to rotation") {
  for (int n : {3, 4, 5, 6}) {
    enumerate_set_partitions(n, [&](const SetPartition& sp) {
      if (!is_noncrossing(sp)) return;
      NCPartition pi(sp);
      NCPartition twice = kreweras(kreweras(pi));
      // K(K(pi)) shifts every element down one position on the cycle
      std::vector<int> rotated(n);
      for (int i = 0; i < n; ++i) rotated[(i + n - 1) % n] = pi.p.rgs[i];
      CHECK(twice.p == partition_from_labels(rotated));
    });
  }
}

TEST_CASE("mobius_nc values and defining sums") {
  auto zero2 = NCPartition(partition_from_labels({0, 1}));
  auto one2 = NCPartition(partition_from_labels({0, 0}));
  CHECK(mobius_nc(one2, one2) == 1);
  CHECK(mobius_nc(zero2, one2) == -1);

  auto zero3 = NCPartition(partition_from_labels({0, 1, 2}));
  auto one3 = NCPartition(partition_from_labels({0, 0, 0}));
  CHECK(mobius_nc(zero3, one3) == 2);

  CHECK_THROWS_AS(mobius_nc(one2, zero2), std::invalid_argument);

  // defining sum over every comparable pair at n = 4:
  // sum_{sigma <= tau <= pi} mob(tau, pi) = [sigma == pi]
  auto ncs = all_noncrossing_partitions(4);
  for (const auto& sigma : ncs)
    for (const auto& pi : ncs) {
      if (!refines(sigma.p, pi.p)) continue;
      long long s = 0;
      for (const auto& tau : ncs)
        if (refines(sigma.p, tau.p) && refines(tau.p, pi.p)) s += mobius_nc(tau, pi);
      CHECK(s == (sigma.p == pi.p ? 1 : 0));
    }
}

TEST_CASE("uniform block permutations: counts and structure") {
  CHECK(enumerate_ubp(1).size() == 1);
  CHECK(enumerate_ubp(2).size() == 3);
  CHECK(enumerate_ubp(3).size() == 16);
  CHECK(ubp_count(1) == 1);
  CHECK(ubp_count(2) == 3);
  CHECK(ubp_count(3) == 16);
  CHECK(ubp_count(4) == 131);
  CHECK(enumerate_ubp(4).size() == 131);
  for (const auto& u : enumerate_ubp(3)) {
    REQUIRE(is_uniform(u.part, 3));
    auto L = u.left_sets();
    auto R = u.right_sets();
    for (int b = 0; b < u.block_count(); ++b) {
      REQUIRE(!L[b].empty());
      REQUIRE(L[b].size() == R[b].size());
    }
    CHECK(u.lambda().sum() == 5);  // n + 2
  }
  CHECK_THROWS_AS(enumerate_ubp(7), resource_error);
}

TEST_CASE("mobius_ubp values and defining sums at n = 2") {
  auto ubps = enumerate_ubp(2);
  REQUIRE(ubps.size() == 3);
  // locate the identity-like pairing {1L,1R},{2L,2R} and the full block
  const UniformBlockPermutation* pairs = nullptr;
  const UniformBlockPermutation* full = nullptr;
  for (const auto& u : ubps) {
    if (u.block_count() == 1) full = &u;
    if (u.block_count() == 2 && u.part.rgs[0] == u.part.rgs[2]) pairs = &u;
  }
  REQUIRE(pairs != nullptr);
  REQUIRE(full != nullptr);
  CHECK(mobius_ubp(*pairs, *pairs) == 1);
  CHECK(mobius_ubp(*pairs, *full) == -1);

  for (const auto& rho : ubps)
    for (const auto& pi : ubps) {
      if (!ubp_refines(rho, pi)) continue;
      long long s = 0;
      for (const auto& tau : ubps)
        if (ubp_refines(rho, tau) && ubp_refines(tau, pi)) s += mobius_ubp(tau, pi);
      CHECK(s == (rho == pi ? 1 : 0));
    }
}

TEST_CASE("mobius_ubp defining sums at n = 3") {
  UbpPoset poset(3);
  int m = static_cast<int>(poset.elements().size());
  for (int rho = 0; rho < m; ++rho)
    for (int pi = 0; pi < m; ++pi) {
      if (!poset.leq(rho, pi)) continue;
      long long s = 0;
      for (int tau = 0; tau < m; ++tau)
        if (poset.leq(rho, tau) && poset.leq(tau, pi)) s += poset.mobius(tau, pi);
      CHECK(s == (rho == pi ? 1 : 0));
    }
}

TEST_CASE("permanent: exact small cases") {
  CHECK(permanent({{1.0, 0.0}, {0.0, 1.0}}) == Catch::Approx(1.0));
  CHECK(permanent({{1.0, 0.5}, {0.5, 1.0}}) == Catch::Approx(1.25));
  for (int k : {1, 2, 3, 4, 5, 6}) {
    std::vector<std::vector<double>> ones(k, std::vector<double>(k, 1.0));
    CHECK(permanent(ones) == Catch::Approx(factorial(k)));
  }
  CHECK_THROWS_AS(permanent({{1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("permanent of PSD Gram matrices obeys the Marcus lower bound") {
  // per(G) >= prod of diagonal entries for PSD G; equality for diagonal G
  for (int trial = 0; trial < 100; ++trial) {
    int k = 2 + static_cast<int>(trial % 4);  // sizes 2..5
    int rows = k + 2;
    std::vector<std::vector<double>> v(k, std::vector<double>(rows));
    for (int i = 0; i < k; ++i)
      for (int r = 0; r < rows; ++r)
        v[i][r] = counter_gaussian(stream_key(1000 + trial, i), r);
    std::vector<std::vector<double>> gram(k, std::vector<double>(k));
    double diag = 1.0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        double s = 0;
        for (int r = 0; r < rows; ++r) s += v[i][r] * v[j][r];
        gram[i][j] = s;
      }
      diag *= gram[i][i];
    }
    CHECK(permanent(gram) >= diag * (1.0 - 1e-10));
  }
  // orthonormal rows: Gram = identity, permanent exactly 1
  CHECK(permanent({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}) == Catch::Approx(1.0));
}

TEST_CASE("injective block sum equals brute force on small cases") {
  std::uint32_t N = 5;
  std::vector<std::vector<double>> w(3, std::vector<double>(N));
  for (std::uint32_t k = 0; k < N; ++k) {
    w[0][k] = 0.3 + k;
    w[1][k] = 1.0 / (1.0 + k);
    w[2][k] = (k % 2) ? -1.1 : 0.7;
  }
  double brute = 0;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = 0; b < N; ++b)
      for (std::uint32_t c = 0; c < N; ++c) {
        if (a == b || a == c || b == c) continue;
        brute += w[0][a] * w[1][b] * w[2][c];
      }
  CHECK(injective_block_sum(w, N) == Catch::Approx(brute).epsilon(1e-12));
}
