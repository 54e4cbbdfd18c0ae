#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <string>
#include <vector>

namespace splab {

/// lambda(N|k) for 0 <= k <= N <= Nmax.
class PartitionTable {
public:
    explicit PartitionTable(int nmax);

    int nmax() const noexcept { return nmax_; }
    /// Zero for k > N; throws std::out_of_range outside 0..nmax.
    const mpz_class& at(int N, int k) const;
    void set(int N, int k, mpz_class v);
    /// sum_k lambda(N|k)
    mpz_class total(int N) const;

    /// Rows N = 1..Nmax, columns k = 1..Nmax (zeros above the diagonal).
    std::string to_csv() const;
    nlohmann::json to_json() const;

    friend bool operator==(const PartitionTable& a, const PartitionTable& b) = default;

private:
    int nmax_;
    std::vector<std::vector<mpz_class>> rows_;
    static const mpz_class kZero;
};

/// lambda(N|k) = lambda(N-1|k-1) + lambda(N-k|k), lambda(0|0) = 1.
PartitionTable dp_restricted(int nmax);

/// Coefficients of x^N y^k in prod_{n>=1} 1/(1 - y x^n), truncated at x^Nmax.
PartitionTable gf_expand(int nmax);

struct BruteForcePartitions {
    std::vector<std::vector<int>> partitions; ///< nondecreasing tuples
    std::vector<long> count_by_length;        ///< index = number of parts, 0..N
};

/// Exhaustive listing; throws std::invalid_argument for N > 25.
BruteForcePartitions brute_force_partitions(int N);

/// exp(pi sqrt(2N/3)) / (4 N sqrt 3)
double hardy_ramanujan(int N);

/// s(m, n) = (1/4n) sum_{k=1}^{n-1} cot(pi k/n) cot(pi k m/n); m is taken mod n.
/// Throws std::invalid_argument when gcd(m, n) != 1 or n < 1.
double dedekind_sum(long m, long n);

/// Partial Rademacher series with `terms` terms.
double rademacher(int N, int terms);

} // namespace splab
