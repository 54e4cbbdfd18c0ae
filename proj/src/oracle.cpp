#include "splab/oracle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace splab {

const mpz_class PartitionTable::kZero = 0;

PartitionTable::PartitionTable(int nmax) : nmax_(nmax) {
    if (nmax < 0) {
        throw std::invalid_argument("PartitionTable: Nmax must be >= 0");
    }
    for (int N = 0; N <= nmax; ++N) {
        rows_.emplace_back(static_cast<std::size_t>(N) + 1, mpz_class(0));
    }
}

const mpz_class& PartitionTable::at(int N, int k) const {
    if (N < 0 || N > nmax_ || k < 0) {
        throw std::out_of_range("PartitionTable: index out of range");
    }
    if (k > N) {
        return kZero;
    }
    return rows_[static_cast<std::size_t>(N)][static_cast<std::size_t>(k)];
}

void PartitionTable::set(int N, int k, mpz_class v) {
    if (N < 0 || N > nmax_ || k < 0 || k > N) {
        throw std::out_of_range("PartitionTable: index out of range");
    }
    rows_[static_cast<std::size_t>(N)][static_cast<std::size_t>(k)] = std::move(v);
}

mpz_class PartitionTable::total(int N) const {
    mpz_class s = 0;
    for (int k = 0; k <= N; ++k) {
        s += at(N, k);
    }
    return s;
}

std::string PartitionTable::to_csv() const {
    std::ostringstream os;
    os << "N";
    for (int k = 1; k <= nmax_; ++k) {
        os << ",k" << k;
    }
    os << ",total\n";
    for (int N = 1; N <= nmax_; ++N) {
        os << N;
        for (int k = 1; k <= nmax_; ++k) {
            os << "," << at(N, k).get_str();
        }
        os << "," << total(N).get_str() << "\n";
    }
    return os.str();
}

nlohmann::json PartitionTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int N = 0; N <= nmax_; ++N) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k <= N; ++k) {
            row.push_back(at(N, k).get_str());
        }
        rows.push_back({{"N", N}, {"lambda_k", row}, {"total", total(N).get_str()}});
    }
    return {{"Nmax", nmax_}, {"rows", rows}};
}

PartitionTable dp_restricted(int nmax) {
    PartitionTable t(nmax);
    t.set(0, 0, 1);
    for (int N = 1; N <= nmax; ++N) {
        for (int k = 1; k <= N; ++k) {
            t.set(N, k, t.at(N - 1, k - 1) + t.at(N - k, k));
        }
    }
    return t;
}

PartitionTable gf_expand(int nmax) {
    // c[N][k] coefficients, multiply in 1/(1 - y x^n) = sum_r y^r x^{nr} one factor at a time
    std::vector<std::vector<mpz_class>> c(static_cast<std::size_t>(nmax) + 1,
                                          std::vector<mpz_class>(static_cast<std::size_t>(nmax) + 1, 0));
    c[0][0] = 1;
    for (int n = 1; n <= nmax; ++n) {
        // dividing by (1 - y x^n): c[N][k] += c[N-n][k-1], ascending N
        for (int N = n; N <= nmax; ++N) {
            for (int k = 1; k <= nmax; ++k) {
                c[static_cast<std::size_t>(N)][static_cast<std::size_t>(k)] +=
                    c[static_cast<std::size_t>(N - n)][static_cast<std::size_t>(k - 1)];
            }
        }
    }
    PartitionTable t(nmax);
    for (int N = 0; N <= nmax; ++N) {
        for (int k = 0; k <= N; ++k) {
            t.set(N, k, c[static_cast<std::size_t>(N)][static_cast<std::size_t>(k)]);
        }
        for (int k = N + 1; k <= nmax; ++k) {
            if (c[static_cast<std::size_t>(N)][static_cast<std::size_t>(k)] != 0) {
                throw std::logic_error("gf_expand: nonzero coefficient with more parts than N");
            }
        }
    }
    return t;
}

namespace {

void list_partitions(int left, int min_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = min_part; p <= left; ++p) {
        cur.push_back(p);
        list_partitions(left - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace

BruteForcePartitions brute_force_partitions(int N) {
    if (N < 0 || N > 25) {
        throw std::invalid_argument("brute_force_partitions: N must be in [0, 25]");
    }
    BruteForcePartitions r;
    std::vector<int> cur;
    list_partitions(N, 1, cur, r.partitions);
    r.count_by_length.assign(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& p : r.partitions) {
        ++r.count_by_length[p.size()];
    }
    return r;
}

double hardy_ramanujan(int N) {
    if (N < 1) {
        throw std::invalid_argument("hardy_ramanujan: N must be >= 1");
    }
    const double n = N;
    return std::exp(std::numbers::pi * std::sqrt(2.0 * n / 3.0)) / (4.0 * n * std::sqrt(3.0));
}

double dedekind_sum(long m, long n) {
    if (n < 1) {
        throw std::invalid_argument("dedekind_sum: n must be >= 1");
    }
    if (std::gcd(m, n) != 1) {
        throw std::invalid_argument("dedekind_sum: m and n must be coprime");
    }
    const long mm = ((m % n) + n) % n;
    double s = 0.0;
    for (long k = 1; k < n; ++k) {
        const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        const double b = std::numbers::pi * static_cast<double>((k * mm) % n) / static_cast<double>(n);
        s += 1.0 / (std::tan(a) * std::tan(b));
    }
    return s / (4.0 * static_cast<double>(n));
}

double rademacher(int N, int terms) {
    if (N < 1 || terms < 1) {
        throw std::invalid_argument("rademacher: N and terms must be >= 1");
    }
    const double pi = std::numbers::pi;
    const double x = N - 1.0 / 24.0;
    double sum = 0.0;
    for (int n = 1; n <= terms; ++n) {
        // alpha_n(N) = sum over m coprime to n of exp(i pi (s(m,n) - 2 N m / n)); the sum is real
        double alpha = 0.0;
        for (int m = 0; m < n; ++m) {
            if (std::gcd(m, n) != 1) {
                continue;
            }
            alpha += std::cos(pi * (dedekind_sum(m, n) - 2.0 * N * m / static_cast<double>(n)));
        }
        const double c = pi * std::sqrt(2.0 / 3.0) / n;
        const double sx = std::sqrt(x);
        const double deriv = c * std::cosh(c * sx) / (2.0 * x) - std::sinh(c * sx) / (2.0 * x * sx);
        sum += alpha * std::sqrt(static_cast<double>(n)) * deriv;
    }
    return sum / (pi * std::sqrt(2.0));
}

} // namespace splab
