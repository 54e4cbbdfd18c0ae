#include "splab/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

TEST_CASE("dp examples and invariants") {
    const splab::PartitionTable t = splab::dp_restricted(60);
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(4, 2) == 2);
    CHECK(t.at(5, 2) == 2);
    CHECK(t.total(10) == 42);
    CHECK(t.total(50) == mpz_class("204226"));
    for (int N = 1; N <= 60; ++N) {
        CHECK(t.at(N, N) == 1);
        CHECK(t.at(N, 1) == 1);
        CHECK(t.at(N, N + 3) == 0);
        for (int k = 0; k <= N; ++k) {
            CHECK(t.at(N, k) >= 0);
        }
    }
    CHECK_THROWS_AS(t.at(61, 1), std::out_of_range);
}

TEST_CASE("brute force listing") {
    const auto five = splab::brute_force_partitions(5);
    CHECK(five.partitions.size() == 7);
    for (const auto& p : five.partitions) {
        CHECK(std::is_sorted(p.begin(), p.end()));
        CHECK(std::accumulate(p.begin(), p.end(), 0) == 5);
    }
    CHECK(splab::brute_force_partitions(0).partitions.size() == 1);
    CHECK(splab::brute_force_partitions(6).count_by_length[3] == 3);
    CHECK_THROWS_AS(splab::brute_force_partitions(26), std::invalid_argument);

    const splab::PartitionTable dp = splab::dp_restricted(25);
    for (int N = 0; N <= 25; ++N) {
        const auto bf = splab::brute_force_partitions(N);
        CHECK(mpz_class(static_cast<long>(bf.partitions.size())) == dp.total(N));
        for (int k = 0; k <= N; ++k) {
            CHECK(mpz_class(bf.count_by_length[static_cast<std::size_t>(k)]) == dp.at(N, k));
        }
    }
}

TEST_CASE("generating function expansion") {
    const splab::PartitionTable gf = splab::gf_expand(40);
    CHECK(gf.at(4, 2) == 2);
    for (int N = 0; N <= 40; ++N) {
        CHECK(gf.at(N, N) == 1);
    }
    CHECK(gf == splab::dp_restricted(40));
}

TEST_CASE("serialization") {
    const splab::PartitionTable t = splab::dp_restricted(4);
    CHECK(t.to_csv() == "N,k1,k2,k3,k4,total\n1,1,0,0,0,1\n2,1,1,0,0,2\n3,1,1,1,0,3\n4,1,2,1,1,5\n");
    const auto j = t.to_json();
    CHECK(j.at("Nmax") == 4);
    CHECK(j.at("rows").at(4).at("lambda_k").at(2) == "2");
    CHECK(j.at("rows").at(4).at("total") == "5");
}

TEST_CASE("Hardy-Ramanujan estimate") {
    const splab::PartitionTable t = splab::dp_restricted(1000);
    double prev = 1e9;
    for (int N : {100, 400, 1000}) {
        const double ratio = splab::hardy_ramanujan(N) / t.total(N).get_d();
        CHECK(std::abs(ratio - 1.0) < prev);
        prev = std::abs(ratio - 1.0);
    }
    const double r1000 = splab::hardy_ramanujan(1000) / t.total(1000).get_d();
    CHECK(r1000 >= 0.9);
    CHECK(r1000 <= 1.1);
    const double one = splab::hardy_ramanujan(1);
    CHECK(std::isfinite(one));
    CHECK(one == doctest::Approx(std::exp(M_PI * std::sqrt(2.0 / 3.0)) / (4.0 * std::sqrt(3.0))));
}

TEST_CASE("Dedekind sums") {
    CHECK(splab::dedekind_sum(1, 2) == doctest::Approx(0.0));
    CHECK(splab::dedekind_sum(1, 3) == doctest::Approx(1.0 / 18.0));
    CHECK(splab::dedekind_sum(0, 1) == 0.0);
    CHECK_THROWS_AS(splab::dedekind_sum(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(splab::dedekind_sum(1, 0), std::invalid_argument);
    std::mt19937 gen(7);
    std::uniform_int_distribution<long> d(1, 50);
    int checked = 0;
    while (checked < 200) {
        const long m = d(gen), n = d(gen);
        if (std::gcd(m, n) != 1) {
            continue;
        }
        ++checked;
        const double lhs = splab::dedekind_sum(m, n) + splab::dedekind_sum(n, m);
        const double md = static_cast<double>(m), nd = static_cast<double>(n);
        const double rhs = -0.25 + (md / nd + nd / md + 1.0 / (md * nd)) / 12.0;
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("Rademacher series") {
    const splab::PartitionTable t = splab::dp_restricted(50);
    for (auto [N, terms] : {std::pair{10, 8}, std::pair{20, 10}, std::pair{50, 12}}) {
        const double v = splab::rademacher(N, terms);
        CHECK(std::abs(v - t.total(N).get_d()) < 0.5);
        CHECK(std::llround(v) == t.total(N).get_si());
    }
    CHECK_THROWS_AS(splab::rademacher(0, 3), std::invalid_argument);
}
