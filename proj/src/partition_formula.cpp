#include "splab/partition_formula.hpp"

#include "splab/bell.hpp"
#include "splab/dfactor.hpp"
#include "splab/errors.hpp"
#include "splab/json_io.hpp"
#include "splab/schwarzian.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace splab {

namespace {

// partitions of n into exactly q parts, as n -> multiplicity, parts >= min_part
void partitions_exact(int n, int q, int min_part, std::map<int, int>& cur, std::vector<std::map<int, int>>& out) {
    if (q == 0) {
        if (n == 0) {
            out.push_back(cur);
        }
        return;
    }
    for (int part = min_part; part * q <= n; ++part) {
        ++cur[part];
        partitions_exact(n - part, q - 1, part, cur, out);
        if (--cur[part] == 0) {
            cur.erase(part);
        }
    }
}

// all m-vectors: partitions of n1 (any length) as j -> m_j
void m_vectors(int n, int min_part, std::map<int, int>& cur, std::vector<std::map<int, int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = min_part; part <= n; ++part) {
        ++cur[part];
        m_vectors(n - part, part, cur, out);
        if (--cur[part] == 0) {
            cur.erase(part);
        }
    }
}

// choose nu_ij for j >= i given the remaining counts r; each i is finished before moving on,
// so every symmetric matrix solving 2 nu_jj + sum_{i != j} nu_ij = m_j appears exactly once
void pairings(std::map<int, int>& remaining, std::map<std::pair<int, int>, int>& nu,
              std::vector<std::map<std::pair<int, int>, int>>& out) {
    auto it = std::find_if(remaining.begin(), remaining.end(), [](const auto& kv) { return kv.second > 0; });
    if (it == remaining.end()) {
        out.push_back(nu);
        return;
    }
    const int i = it->first;
    const int ri = it->second;
    std::vector<int> partners;
    for (auto jt = std::next(it); jt != remaining.end(); ++jt) {
        if (jt->second > 0) {
            partners.push_back(jt->first);
        }
    }
    it->second = 0;
    // distribute ri - 2*nu_ii among partners, each bounded by its remaining count
    std::function<void(std::size_t, int)> spread = [&](std::size_t idx, int left) {
        if (left == 0) {
            pairings(remaining, nu, out);
            return;
        }
        if (idx == partners.size()) {
            return;
        }
        const int j = partners[idx];
        const int cap = std::min(left, remaining[j]);
        for (int c = cap; c >= 0; --c) {
            if (c > 0) {
                nu[{i, j}] = c;
                remaining[j] -= c;
            }
            spread(idx + 1, left - c);
            if (c > 0) {
                remaining[j] += c;
                nu.erase({i, j});
            }
        }
    };
    for (int self = ri / 2; self >= 0; --self) {
        if (self > 0) {
            nu[{i, i}] = self;
        }
        spread(0, ri - 2 * self);
        if (self > 0) {
            nu.erase({i, i});
        }
    }
    it->second = ri;
}

mpz_class fact(int n) { return detail::factorial(static_cast<unsigned long>(n)); }

int default_window(int N, int Q) { return 2 * (N + Q) + 4; }

} // namespace

int TermDescriptor::Q() const {
    int q = 0;
    for (const auto& [n, p] : d_part) {
        q += p;
    }
    return q;
}

void TermDescriptor::validate(int N, int Q) const {
    auto fail = [](const std::string& why) { throw std::invalid_argument("TermDescriptor: " + why); };
    if (N1 < 0 || N2 < 0 || N1 + N2 != N) {
        fail("N1 + N2 must equal N");
    }
    int sm = 0;
    for (const auto& [j, mj] : m) {
        if (j < 1 || mj < 1) {
            fail("m entries must be positive");
        }
        sm += j * mj;
    }
    if (sm != N1) {
        fail("sum j m_j must equal N1");
    }
    std::map<int, int> used;
    for (const auto& [ij, c] : nu) {
        if (ij.first < 1 || ij.first > ij.second || c < 1) {
            fail("nu entries must be positive with i <= j");
        }
        used[ij.first] += (ij.first == ij.second) ? 2 * c : c;
        if (ij.first != ij.second) {
            used[ij.second] += c;
        }
    }
    if (used != m) {
        fail("nu is not a full pairing of m");
    }
    int sn = 0;
    for (const auto& [n, p] : d_part) {
        if (n < 1 || p < 1) {
            fail("d_part entries must be positive");
        }
        sn += n * p;
    }
    if (sn != N2 || this->Q() != Q) {
        fail("d_part must be a length-Q partition of N2");
    }
}

std::string TermDescriptor::label() const {
    std::string out;
    auto factor = [&out](const std::string& base, int power) {
        if (!out.empty()) {
            out += "*";
        }
        out += base;
        if (power > 1) {
            out += "^" + std::to_string(power);
        }
    };
    for (const auto& [ij, c] : nu) {
        factor("S" + std::to_string(ij.first) + std::to_string(ij.second), c);
    }
    for (const auto& [n, p] : d_part) {
        factor("D" + std::to_string(n), p);
    }
    return out.empty() ? "1" : out;
}

nlohmann::json descriptor_to_json(const TermDescriptor& td) {
    nlohmann::json j;
    j["label"] = td.label();
    j["N1"] = td.N1;
    j["N2"] = td.N2;
    nlohmann::json m = nlohmann::json::array();
    for (const auto& [k, v] : td.m) {
        m.push_back({k, v});
    }
    j["m"] = m;
    nlohmann::json nu = nlohmann::json::array();
    for (const auto& [ij, c] : td.nu) {
        nu.push_back({ij.first, ij.second, c});
    }
    j["nu"] = nu;
    nlohmann::json d = nlohmann::json::array();
    for (const auto& [n, p] : td.d_part) {
        d.push_back({n, p});
    }
    j["d_part"] = d;
    return j;
}

std::vector<TermDescriptor> enumerate_terms(int N, int Q) {
    if (Q < 1 || Q > N) {
        throw std::invalid_argument("enumerate_terms: requires 1 <= Q <= N");
    }
    std::vector<TermDescriptor> out;
    for (int N1 = 0; N1 <= N - Q; ++N1) {
        const int N2 = N - N1;
        std::vector<std::map<int, int>> ms;
        std::map<int, int> cur;
        m_vectors(N1, 1, cur, ms);
        std::vector<std::map<int, int>> ds;
        std::map<int, int> dcur;
        partitions_exact(N2, Q, 1, dcur, ds);
        for (const auto& m : ms) {
            std::vector<std::map<std::pair<int, int>, int>> nus;
            std::map<int, int> remaining = m;
            std::map<std::pair<int, int>, int> nu;
            pairings(remaining, nu, nus);
            for (const auto& n : nus) {
                for (const auto& d : ds) {
                    out.push_back(TermDescriptor{N1, N2, m, n, d});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GaussianRational term_weight(const TermDescriptor& td) {
    mpz_class num = 1;
    mpz_class den = 1;
    for (const auto& [i, mi] : td.m) {
        num *= fact(mi);
    }
    for (const auto& [ij, c] : td.nu) {
        den *= fact(c);
        if (ij.first == ij.second) {
            den *= detail::pow_ui(2, c);
        }
    }
    for (const auto& [n, p] : td.d_part) {
        den *= detail::pow_ui(fact(n), p);
    }
    return GaussianRational(mpq_class(num, den));
}

LaurentSeries evaluate_term(const TermDescriptor& td, const MapSpec& ms, int T) {
    LaurentSeries s = LaurentSeries::constant(term_weight(td));
    for (const auto& [ij, c] : td.nu) {
        s = s * pow(schwarzian_general(ms, ij.first, ij.second, T), c);
    }
    for (const auto& [n, p] : td.d_part) {
        s = s * pow(dfactor(ms, n, T), p);
    }
    return s;
}

GaussianRational epsilon_order(const LaurentSeries& s, int M) {
    return s.coeff(-M) * i_pow(-M);
}

std::optional<mpz_class> LambdaBreakdown::lambda() const {
    if (!total.is_integer()) {
        return std::nullopt;
    }
    return total.real().get_num();
}

nlohmann::json LambdaBreakdown::to_json() const {
    nlohmann::json j;
    j["N"] = N;
    j["Q"] = Q;
    j["h"] = h;
    j["window"] = window;
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : terms) {
        nlohmann::json r;
        r["descriptor"] = descriptor_to_json(t.descriptor);
        r["weight"] = t.weight;
        r["contribution"] = t.contribution;
        ts.push_back(std::move(r));
    }
    j["terms"] = ts;
    j["total"] = total;
    if (auto v = lambda()) {
        j["lambda"] = v->get_str();
    } else {
        j["lambda"] = nullptr;
    }
    return j;
}

LambdaBreakdown lambda_breakdown(int N, int Q, const MapSpec& ms, const LambdaOptions& opt) {
    LambdaBreakdown b;
    b.N = N;
    b.Q = Q;
    b.h = ms.identity();
    if (N < 0 || Q < 0) {
        throw std::invalid_argument("lambda: N and Q must be non-negative");
    }
    if (Q == 0) {
        b.total = (N == 0) ? 1 : 0;
        return b;
    }
    if (Q > N) {
        throw std::invalid_argument("lambda: requires Q <= N");
    }
    const std::vector<TermDescriptor> terms = enumerate_terms(N, Q);
    const int M = N + Q;
    int T = opt.window.value_or(default_window(N, Q));

    for (int attempt = 0;; ++attempt) {
        std::vector<TermRecord> records(terms.size());
        auto eval_one = [&](std::size_t k) {
            const TermDescriptor& td = terms[k];
            GaussianRational w = term_weight(td);
            LaurentSeries s = evaluate_term(td, ms, T);
            if (opt.weight_hook) {
                GaussianRational w2 = opt.weight_hook(td, w);
                if (w2 != w) {
                    s = s * (w2 / w);
                    w = w2;
                }
            }
            records[k] = TermRecord{td, w, epsilon_order(s, M)};
        };
        try {
            if (opt.threads <= 1 || terms.size() < 2) {
                for (std::size_t k = 0; k < terms.size(); ++k) {
                    eval_one(k);
                }
            } else {
                std::atomic<std::size_t> next{0};
                std::exception_ptr err;
                std::mutex err_mutex;
                std::vector<std::thread> pool;
                const unsigned n = std::min<unsigned>(opt.threads, static_cast<unsigned>(terms.size()));
                for (unsigned t = 0; t < n; ++t) {
                    pool.emplace_back([&] {
                        for (std::size_t k = next++; k < terms.size(); k = next++) {
                            try {
                                eval_one(k);
                            } catch (...) {
                                std::lock_guard lock(err_mutex);
                                if (!err) {
                                    err = std::current_exception();
                                }
                            }
                        }
                    });
                }
                for (auto& th : pool) {
                    th.join();
                }
                if (err) {
                    std::rethrow_exception(err);
                }
            }
        } catch (const TruncationError&) {
            if (attempt >= opt.max_retries) {
                throw;
            }
            T *= 2;
            continue;
        }
        b.window = T;
        b.terms = std::move(records);
        break;
    }
    for (const auto& r : b.terms) {
        b.total += r.contribution;
    }
    return b;
}

mpz_class lambda_cft(int N, int Q, const MapSpec& ms, const LambdaOptions& opt) {
    const LambdaBreakdown b = lambda_breakdown(N, Q, ms, opt);
    if (auto v = b.lambda()) {
        return *v;
    }
    throw ConventionError("lambda(" + std::to_string(N) + "|" + std::to_string(Q) + ") = " + b.total.to_string() +
                              " is not a real integer",
                          b.to_json().dump());
}

} // namespace splab
