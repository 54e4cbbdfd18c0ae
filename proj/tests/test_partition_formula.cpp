#include "splab/conformal_map.hpp"
#include "splab/errors.hpp"
#include "splab/oracle.hpp"
#include "splab/partition_formula.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

using splab::GaussianRational;
using splab::LaurentSeries;
using splab::TermDescriptor;

namespace {

std::multiset<std::string> labels(const std::vector<TermDescriptor>& ts) {
    std::multiset<std::string> out;
    for (const auto& t : ts) {
        out.insert(t.label());
    }
    return out;
}

// Independent enumeration: multisets of index pairs (i <= j) with sum(i + j) = N1,
// times length-Q partitions of N2, rendered to labels.
void pair_multisets(int n, std::pair<int, int> min_pair, std::vector<std::pair<int, int>>& cur,
                    std::vector<std::vector<std::pair<int, int>>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = 1; i < n; ++i) {
        for (int j = i; i + j <= n; ++j) {
            if (std::make_pair(i, j) < min_pair) {
                continue;
            }
            cur.emplace_back(i, j);
            pair_multisets(n - i - j, {i, j}, cur, out);
            cur.pop_back();
        }
    }
}

void parts_exact(int n, int q, int lo, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (q == 0) {
        if (n == 0) {
            out.push_back(cur);
        }
        return;
    }
    for (int p = lo; p * q <= n; ++p) {
        cur.push_back(p);
        parts_exact(n - p, q - 1, p, cur, out);
        cur.pop_back();
    }
}

std::multiset<std::string> oracle_labels(int N, int Q) {
    std::multiset<std::string> out;
    for (int N1 = 0; N1 <= N - Q; ++N1) {
        std::vector<std::vector<std::pair<int, int>>> pms;
        std::vector<std::pair<int, int>> cur;
        pair_multisets(N1, {0, 0}, cur, pms);
        std::vector<std::vector<int>> ds;
        std::vector<int> dcur;
        parts_exact(N - N1, Q, 1, dcur, ds);
        for (const auto& pm : pms) {
            for (const auto& d : ds) {
                TermDescriptor td;
                td.N1 = N1;
                td.N2 = N - N1;
                for (const auto& [i, j] : pm) {
                    ++td.nu[{i, j}];
                    ++td.m[i];
                    ++td.m[j];
                }
                for (int p : d) {
                    ++td.d_part[p];
                }
                out.insert(td.label());
            }
        }
    }
    return out;
}

TermDescriptor make(int N1, int N2, std::map<int, int> m, std::map<std::pair<int, int>, int> nu,
                    std::map<int, int> d) {
    return TermDescriptor{N1, N2, std::move(m), std::move(nu), std::move(d)};
}

const splab::MapSpec kOne = splab::builtin_map("one");
const splab::MapSpec kCos = splab::builtin_map("cos");

} // namespace

TEST_CASE("enumeration examples") {
    CHECK(labels(splab::enumerate_terms(4, 2)) == std::multiset<std::string>{"S11*D1^2", "D2^2", "D1*D3"});
    CHECK(labels(splab::enumerate_terms(2, 2)) == std::multiset<std::string>{"D1^2"});
    CHECK(labels(splab::enumerate_terms(5, 2)) ==
          std::multiset<std::string>{"S12*D1^2", "S11*D1*D2", "D1*D4", "D2*D3"});
    CHECK_THROWS_AS(splab::enumerate_terms(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(splab::enumerate_terms(3, 0), std::invalid_argument);
}

TEST_CASE("enumeration is exhaustive, duplicate free and valid") {
    for (int N = 1; N <= 10; ++N) {
        for (int Q = 1; Q <= N; ++Q) {
            const auto ts = splab::enumerate_terms(N, Q);
            CHECK(labels(ts) == oracle_labels(N, Q));
            CHECK(std::is_sorted(ts.begin(), ts.end()));
            CHECK(std::adjacent_find(ts.begin(), ts.end()) == ts.end());
            for (const auto& t : ts) {
                CHECK_NOTHROW(t.validate(N, Q));
            }
        }
    }
}

TEST_CASE("unpairable m-vectors are excluded") {
    // a single derivative-1 insertion (m_1 = 1) cannot be fully paired
    for (const auto& t : splab::enumerate_terms(5, 2)) {
        CHECK(t.m != std::map<int, int>{{1, 1}});
    }
    const TermDescriptor bad = make(1, 3, {{1, 1}}, {}, {{1, 1}, {2, 1}});
    CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
}

TEST_CASE("weights") {
    CHECK(splab::term_weight(make(0, 2, {}, {}, {{1, 2}})) == GaussianRational(1));
    CHECK(splab::term_weight(make(2, 2, {{1, 2}}, {{{1, 1}, 1}}, {{1, 2}})) == GaussianRational(1));
    CHECK(splab::term_weight(make(0, 4, {}, {}, {{2, 2}})) == GaussianRational(1, 4));
    // m_1 = 4 paired as two (1,1): 4!/(2^2 2!) = 3
    CHECK(splab::term_weight(make(4, 1, {{1, 4}}, {{{1, 1}, 2}}, {{1, 1}})) == GaussianRational(3));
    // m_1 = m_2 = 2 paired as two (1,2): 2! 2! / 2! = 2
    CHECK(splab::term_weight(make(6, 0, {{1, 2}, {2, 2}}, {{{1, 2}, 2}}, {})) == GaussianRational(2));
}

TEST_CASE("term evaluation for h = 1") {
    const int T = 12;
    CHECK(splab::evaluate_term(make(0, 2, {}, {}, {{1, 2}}), kOne, T) == LaurentSeries::monomial(-4, 1));
    CHECK(splab::evaluate_term(make(2, 2, {{1, 2}}, {{{1, 1}, 1}}, {{1, 2}}), kOne, T) ==
          LaurentSeries::monomial(-8, GaussianRational(1, 12)));
    CHECK(splab::evaluate_term(make(0, 4, {}, {}, {{2, 2}}), kOne, T) ==
          LaurentSeries({{-6, -1}, {-7, -1}, {-8, GaussianRational(-1, 4)}}, LaurentSeries::kExact));
}

TEST_CASE("epsilon ordering") {
    CHECK(splab::epsilon_order(LaurentSeries::monomial(-4, 1), 4) == GaussianRational(1));
    CHECK(splab::epsilon_order(LaurentSeries::monomial(-8, GaussianRational(1, 12)), 6) == GaussianRational(0));
    const LaurentSeries d22({{-6, -1}, {-7, -1}, {-8, GaussianRational(-1, 4)}}, LaurentSeries::kExact);
    CHECK(splab::epsilon_order(d22, 6) == GaussianRational(1));
    CHECK_THROWS_AS(splab::epsilon_order(LaurentSeries::zero(-7), 6), splab::TruncationError);
}

TEST_CASE("lambda examples") {
    CHECK(splab::lambda_cft(4, 2, kCos) == 2);
    CHECK(splab::lambda_cft(6, 3, kOne) == 3);
    CHECK(splab::lambda_cft(0, 0, kOne) == 1);
    CHECK(splab::lambda_cft(3, 0, kOne) == 0);
    CHECK_THROWS_AS(splab::lambda_cft(3, 4, kOne), std::invalid_argument);
}

TEST_CASE("h = 1 structure: S terms vanish, pure D terms give one") {
    for (int N = 1; N <= 10; ++N) {
        for (int Q = 1; Q <= N; ++Q) {
            const splab::LambdaBreakdown b = splab::lambda_breakdown(N, Q, kOne);
            long pure = 0;
            for (const auto& t : b.terms) {
                if (t.descriptor.nu.empty()) {
                    ++pure;
                    CHECK(t.contribution == GaussianRational(1));
                } else {
                    CHECK(t.contribution == GaussianRational(0));
                }
            }
            CHECK(b.total == GaussianRational(pure));
        }
    }
}

TEST_CASE("h = 1 agrees with the recurrence through N = 10") {
    const splab::PartitionTable dp = splab::dp_restricted(10);
    for (int N = 1; N <= 10; ++N) {
        for (int Q = 1; Q <= N; ++Q) {
            CHECK(splab::lambda_cft(N, Q, kOne) == dp.at(N, Q));
        }
    }
}

TEST_CASE("h = cos agrees with the recurrence through N = 4") {
    const splab::PartitionTable dp = splab::dp_restricted(4);
    for (int N = 1; N <= 4; ++N) {
        for (int Q = 1; Q <= N; ++Q) {
            CHECK(splab::lambda_cft(N, Q, kCos) == dp.at(N, Q));
        }
    }
}

TEST_CASE("results do not depend on window, threads or order") {
    for (const auto& ms : {kOne, kCos}) {
        const splab::LambdaBreakdown base = splab::lambda_breakdown(6, 2, ms);
        splab::LambdaOptions wide;
        wide.window = 3 * base.window;
        const splab::LambdaBreakdown w = splab::lambda_breakdown(6, 2, ms, wide);
        splab::LambdaOptions par;
        par.threads = 4;
        const splab::LambdaBreakdown p = splab::lambda_breakdown(6, 2, ms, par);
        REQUIRE(w.terms.size() == base.terms.size());
        REQUIRE(p.terms.size() == base.terms.size());
        GaussianRational reversed = 0;
        for (std::size_t k = 0; k < base.terms.size(); ++k) {
            CHECK(w.terms[k].contribution == base.terms[k].contribution);
            CHECK(p.terms[k].contribution == base.terms[k].contribution);
            reversed += base.terms[base.terms.size() - 1 - k].contribution;
        }
        CHECK(reversed == base.total);
        CHECK(p.to_json() == base.to_json());
    }
}

TEST_CASE("window retry") {
    splab::LambdaOptions tiny;
    tiny.window = 1;
    const splab::LambdaBreakdown b = splab::lambda_breakdown(6, 2, kCos, tiny);
    CHECK(b.window > 1);
    CHECK(b.total == splab::lambda_breakdown(6, 2, kCos).total);
    tiny.max_retries = 0;
    CHECK_THROWS_AS(splab::lambda_breakdown(6, 2, kCos, tiny), splab::TruncationError);
}

TEST_CASE("non-integer totals raise a convention error with the breakdown") {
    splab::LambdaOptions hook;
    hook.weight_hook = [](const TermDescriptor& td, const GaussianRational& w) {
        return td.label() == "D2^2" ? w * GaussianRational(1, 2) : w;
    };
    try {
        (void)splab::lambda_cft(4, 2, kCos, hook);
        FAIL("expected a ConventionError");
    } catch (const splab::ConventionError& e) {
        const auto j = nlohmann::json::parse(e.detail());
        CHECK(j.at("N") == 4);
        CHECK(j.at("terms").size() == 3);
        CHECK(j.at("lambda").is_null());
    }
}

TEST_CASE("breakdown record") {
    const auto j = splab::lambda_breakdown(4, 2, kCos).to_json();
    CHECK(j.at("h") == "cos");
    CHECK(j.at("lambda") == "2");
    for (const auto& t : j.at("terms")) {
        CHECK(t.contains("descriptor"));
        CHECK(t.contains("weight"));
        CHECK(t.contains("contribution"));
    }
}
