#include "klt/symfunc.hpp"

#include "klt/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

namespace klt {

// ---------------------------------------------------------------------------
// Murnaghan-Nakayama

namespace {

using PartsKey = std::pair<std::vector<int>, std::vector<int>>;

std::mutex char_mu;
std::map<PartsKey, long long> char_memo;

// chi^rho on the cycle type formed by lam[li..], via beta numbers.
long long mn_recurse(std::vector<int> rho, const std::vector<int>& lam, size_t li) {
    while (!rho.empty() && rho.back() == 0) rho.pop_back();
    if (li == lam.size()) return rho.empty() ? 1 : 0;

    PartsKey key{rho, std::vector<int>(lam.begin() + li, lam.end())};
    {
        std::lock_guard<std::mutex> lock(char_mu);
        auto it = char_memo.find(key);
        if (it != char_memo.end()) return it->second;
    }

    int s = lam[li];
    int L = (int)rho.size();
    std::vector<long long> beta(L);
    for (int j = 0; j < L; ++j) beta[j] = rho[j] + (L - 1 - j);

    long long total = 0;
    for (int j = 0; j < L; ++j) {
        long long b = beta[j] - s;
        if (b < 0) continue;
        bool clash = false;
        int between = 0;
        for (int l = 0; l < L; ++l) {
            if (l == j) continue;
            if (beta[l] == b) clash = true;
            if (beta[l] > b && beta[l] < beta[j]) ++between;
        }
        if (clash) continue;
        std::vector<long long> nb = beta;
        nb[j] = b;
        std::sort(nb.rbegin(), nb.rend());
        std::vector<int> nrho(L);
        for (int l = 0; l < L; ++l) nrho[l] = (int)(nb[l] - (L - 1 - l));
        long long sub = mn_recurse(std::move(nrho), lam, li + 1);
        total += (between % 2 == 0) ? sub : -sub;
    }

    std::lock_guard<std::mutex> lock(char_mu);
    char_memo.emplace(std::move(key), total);
    return total;
}

} // namespace

long long sn_character(const Partition& rho, const Partition& lam) {
    if (rho.size() != lam.size()) fail(errc::size_mismatch, "character needs |rho| == |lam|");
    return mn_recurse(rho.parts, lam.parts, 0);
}

// ---------------------------------------------------------------------------
// Kostka-Foulkes via charge

namespace {

// charge of a word with partition content, by standard-subword extraction
long long charge_of_word(const std::vector<int>& w) {
    size_t n = w.size();
    std::vector<char> used(n, 0);
    int maxletter = 0;
    for (int v : w) maxletter = std::max(maxletter, v);
    std::vector<int> remaining(maxletter + 1, 0);
    for (int v : w) ++remaining[v];

    long long total = 0;
    size_t left = n;
    while (left) {
        // rightmost unused 1
        size_t pos = n;
        for (size_t i = n; i-- > 0;)
            if (!used[i] && w[i] == 1) {
                pos = i;
                break;
            }
        if (pos == n) fail(errc::overflow, "charge word content is not a partition");
        size_t prev_pos = pos;
        used[pos] = 1;
        --remaining[1];
        --left;
        long long index = 0, charge = 0;
        for (int v = 2; v <= maxletter && remaining[v] > 0; ++v) {
            // first unused v strictly left of prev_pos, cyclically
            size_t found = n;
            for (size_t step = 1; step < n; ++step) {
                size_t i = (prev_pos + n - step) % n;
                if (!used[i] && w[i] == v) {
                    found = i;
                    break;
                }
            }
            if (found == n) break;
            if (found > prev_pos) ++index; // v sits to the right of v-1
            charge += index;
            used[found] = 1;
            --remaining[v];
            --left;
            prev_pos = found;
        }
        total += charge;
    }
    return total;
}

// Enumerate SSYT of shape rho, content mu as horizontal-strip chains;
// invoke fn with the per-row letter lists.
void enumerate_ssyt(const Partition& rho, const Partition& mu,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    int nrows = rho.length();
    if (nrows == 0) {
        if (mu.length() == 0) fn({});
        return;
    }
    std::vector<int> cur(nrows, 0);
    std::vector<std::vector<int>> rows(nrows);

    auto place = [&](auto&& self, int v) -> void {
        if (v > mu.length()) {
            for (int i = 0; i < nrows; ++i)
                if (cur[i] != rho.parts[i]) return;
            fn(rows);
            return;
        }
        int need = mu.parts[v - 1];
        // choose row increments top-down forming a horizontal strip
        std::vector<int> take(nrows, 0);
        auto choose = [&](auto&& cself, int row, int rest) -> void {
            if (row == nrows) {
                if (rest) return;
                for (int i = 0; i < nrows; ++i) {
                    cur[i] += take[i];
                    for (int c = 0; c < take[i]; ++c) rows[i].push_back(v);
                }
                self(self, v + 1);
                for (int i = 0; i < nrows; ++i) {
                    cur[i] -= take[i];
                    rows[i].resize(rows[i].size() - take[i]);
                }
                return;
            }
            int hi = std::min(rho.parts[row] - cur[row],
                              row == 0 ? rest : std::min(rest, cur[row - 1] - cur[row]));
            // strip condition: new cur[row] <= old cur[row-1]
            for (int t = 0; t <= hi; ++t) {
                take[row] = t;
                cself(cself, row + 1, rest - t);
            }
            take[row] = 0;
        };
        choose(choose, 0, need);
    };
    place(place, 1);
}

std::mutex green_mu;
std::map<PartsKey, IntPoly> green_memo;

} // namespace

IntPoly kostka_foulkes(const Partition& rho, const Partition& mu) {
    if (rho.size() != mu.size()) fail(errc::size_mismatch, "Kostka-Foulkes needs |rho| == |mu|");
    if (!rho.dominates(mu)) return IntPoly();
    std::vector<long long> coeffs(mu.n_stat() + 1, 0);
    enumerate_ssyt(rho, mu, [&](const std::vector<std::vector<int>>& rows) {
        std::vector<int> word;
        for (size_t i = rows.size(); i-- > 0;)
            word.insert(word.end(), rows[i].begin(), rows[i].end());
        long long ch = charge_of_word(word);
        if (ch < 0 || ch >= (long long)coeffs.size())
            fail(errc::overflow, "charge exceeded n(mu)"); // cannot happen
        ++coeffs[ch];
    });
    return IntPoly(std::move(coeffs));
}

long long kostka_number(const Partition& rho, const Partition& mu) {
    if (rho.size() != mu.size()) fail(errc::size_mismatch, "Kostka number needs |rho| == |mu|");
    // peel horizontal strips of the largest letter from the top shape
    auto count = [&](auto&& self, std::vector<int> shape, int v) -> long long {
        if (v == 0) {
            for (int s : shape)
                if (s) return 0;
            return 1;
        }
        int need = mu.parts[v - 1];
        int nrows = (int)shape.size();
        long long total = 0;
        std::vector<int> take(nrows, 0);
        auto choose = [&](auto&& cself, int row, int rest) -> long long {
            if (row < 0) {
                if (rest) return 0;
                std::vector<int> next = shape;
                for (int i = 0; i < nrows; ++i) next[i] -= take[i];
                // rows must stay a partition and the removed cells a horizontal strip
                for (int i = 0; i + 1 < nrows; ++i)
                    if (next[i] < next[i + 1] || next[i] < shape[i + 1]) return 0;
                return self(self, std::move(next), v - 1);
            }
            long long acc = 0;
            for (int t = 0; t <= std::min(shape[row], rest); ++t) {
                take[row] = t;
                acc += cself(cself, row - 1, rest - t);
            }
            take[row] = 0;
            return acc;
        };
        total = choose(choose, nrows - 1, need);
        return total;
    };
    return count(count, rho.parts, mu.length());
}

IntPoly hl_transition_X(const Partition& lam, const Partition& mu) {
    if (lam.size() != mu.size()) fail(errc::size_mismatch, "transition needs |lam| == |mu|");
    IntPoly x;
    for (const Partition& rho : partitions(lam.size())) {
        if (!rho.dominates(mu)) continue;
        long long chi = sn_character(rho, lam);
        if (!chi) continue;
        x = x + kostka_foulkes(rho, mu).scaled(chi);
    }
    return x;
}

IntPoly green_polynomial(const Partition& lam, const Partition& mu) {
    if (lam.size() != mu.size()) fail(errc::size_mismatch, "Green polynomial needs |lam| == |mu|");
    if (lam.size() > 12) fail(errc::size_limit, "Green polynomials supported up to r = 12");

    PartsKey key{lam.parts, mu.parts};
    {
        std::lock_guard<std::mutex> lock(green_mu);
        auto it = green_memo.find(key);
        if (it != green_memo.end()) return it->second;
    }

    IntPoly x = hl_transition_X(lam, mu);
    long long nmu = mu.n_stat();
    if (x.degree() > nmu) fail(errc::overflow, "transition degree exceeded n(mu)");
    std::vector<long long> q(nmu + 1, 0);
    for (int i = 0; i <= x.degree(); ++i) q[nmu - i] = x.coeff(i);
    IntPoly result{std::move(q)};
    result.trim();

    std::lock_guard<std::mutex> lock(green_mu);
    green_memo.emplace(std::move(key), result);
    return result;
}

// ---------------------------------------------------------------------------
// Hall-Littlewood oracle

namespace {

BigInt bpow(const BigInt& b, int e) { return BigInt::pow(b, (unsigned)e); }

} // namespace

Rational hl_eval_exact(const Partition& mu, const std::vector<long long>& xs, long long t) {
    int n = (int)xs.size();
    if (mu.length() > n) fail(errc::invalid_argument, "not enough variables for P_mu");

    std::vector<int> mue(mu.parts);
    mue.resize(n, 0);

    // v_mu(t) = prod_{i>=0} [m_i]_t!  with m_0 counting the zero parts
    BigInt vmu(1);
    auto tfact = [&](int m) {
        BigInt f(1), tv(t);
        for (int j = 1; j <= m; ++j) {
            BigInt bracket(0), p(1);
            for (int i = 0; i < j; ++i) {
                bracket += p;
                p = p * tv;
            }
            f = f * bracket;
        }
        return f;
    };
    int maxpart = mue.empty() ? 0 : mue[0];
    for (int i = 0; i <= maxpart; ++i)
        vmu = vmu * tfact((int)std::count(mue.begin(), mue.end(), i));

    // Vandermonde and power tables
    BigInt vand(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) vand = vand * BigInt(xs[i] - xs[j]);
    if (vand.is_zero()) fail(errc::invalid_argument, "x points must be distinct");

    std::vector<std::vector<BigInt>> xpow(n);
    for (int i = 0; i < n; ++i) {
        xpow[i].resize(maxpart + 1);
        xpow[i][0] = BigInt(1);
        for (int e = 1; e <= maxpart; ++e) xpow[i][e] = xpow[i][e - 1] * BigInt(xs[i]);
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    BigInt num(0);
    do {
        // sign of perm
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        BigInt term(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                term = term * BigInt(xs[perm[i]] - t * xs[perm[j]]);
        for (int i = 0; i < n; ++i)
            if (mue[i]) term = term * xpow[perm[i]][mue[i]];
        num = (inv % 2 == 0) ? num + term : num - term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    return Rational(num, vand * vmu);
}

IntPoly hl_oracle_X(const Partition& lam, const Partition& mu) {
    if (lam.size() != mu.size()) fail(errc::size_mismatch, "oracle needs |lam| == |mu|");
    int r = lam.size();
    if (r > 6) fail(errc::size_limit, "oracle supported up to r = 6");
    if (r == 0) return IntPoly::constant(1);

    std::vector<Partition> mus = partitions(r);
    int nparts = (int)mus.size();
    int mu_col = -1;
    for (int i = 0; i < nparts; ++i)
        if (mus[i] == mu) mu_col = i;
    if (mu_col < 0) fail(errc::invalid_argument, "mu is not a partition of r");

    long long deg_bound = mu.n_stat();
    int npoints = (int)deg_bound + 1;

    // deterministic generic x tuples; retried with a new batch on singularity
    std::mt19937_64 rng(0x5eedu);
    auto draw_tuples = [&]() {
        std::vector<std::vector<long long>> tuples(nparts);
        for (auto& tup : tuples) {
            tup.clear();
            while ((int)tup.size() < r) {
                long long v = (long long)(rng() % 49) + 1;
                if (std::find(tup.begin(), tup.end(), v) == tup.end()) tup.push_back(v);
            }
        }
        return tuples;
    };

    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<std::vector<long long>> tuples = draw_tuples();
        std::vector<Rational> values(npoints);
        bool singular = false;

        for (int ti = 0; ti < npoints && !singular; ++ti) {
            long long t0 = ti + 2;
            // rows: P_mu'(x_i; t0) for all mu'; rhs: p_lam(x_i)
            std::vector<std::vector<Rational>> aug(nparts, std::vector<Rational>(nparts + 1));
            for (int i = 0; i < nparts; ++i) {
                for (int j = 0; j < nparts; ++j)
                    aug[i][j] = hl_eval_exact(mus[j], tuples[i], t0);
                BigInt plam(1);
                for (int part : lam.parts) {
                    BigInt s(0);
                    for (long long x : tuples[i]) s += bpow(BigInt(x), part);
                    plam = plam * s;
                }
                aug[i][nparts] = Rational(plam, BigInt(1));
            }
            // rational Gaussian elimination
            for (int col = 0; col < nparts; ++col) {
                int pivot = -1;
                for (int row = col; row < nparts; ++row)
                    if (!aug[row][col].is_zero()) {
                        pivot = row;
                        break;
                    }
                if (pivot < 0) {
                    singular = true;
                    break;
                }
                std::swap(aug[col], aug[pivot]);
                for (int row = 0; row < nparts; ++row) {
                    if (row == col || aug[row][col].is_zero()) continue;
                    Rational f = aug[row][col] / aug[col][col];
                    for (int j = col; j <= nparts; ++j)
                        aug[row][j] = aug[row][j] - f * aug[col][j];
                }
            }
            if (singular) break;
            values[ti] = aug[mu_col][nparts] / aug[mu_col][mu_col];
        }
        if (singular) continue;

        // Lagrange interpolation in t over the integer nodes 2..npoints+1
        std::vector<Rational> poly(npoints, Rational(0));
        for (int k = 0; k < npoints; ++k) {
            std::vector<Rational> basis{Rational(1)};
            Rational denom(1);
            long long tk = k + 2;
            for (int l = 0; l < npoints; ++l) {
                if (l == k) continue;
                long long tl = l + 2;
                // basis *= (t - tl)
                std::vector<Rational> next(basis.size() + 1, Rational(0));
                for (size_t i = 0; i < basis.size(); ++i) {
                    next[i + 1] = next[i + 1] + basis[i];
                    next[i] = next[i] - basis[i] * Rational(tl);
                }
                basis = std::move(next);
                denom = denom * Rational(tk - tl);
            }
            Rational scale = values[k] / denom;
            for (size_t i = 0; i < basis.size(); ++i) poly[i] = poly[i] + basis[i] * scale;
        }

        std::vector<long long> coeffs(npoints, 0);
        for (int i = 0; i < npoints; ++i) {
            if (!poly[i].is_integer()) fail(errc::overflow, "oracle interpolation not integral");
            coeffs[i] = poly[i].num().to_ll();
        }
        return IntPoly(std::move(coeffs));
    }
    fail(errc::overflow, "oracle could not find generic evaluation points");
}

// ---------------------------------------------------------------------------
// power sums / complete homogeneous

std::complex<double> power_sum_eval(const Partition& lam,
                                    const std::vector<std::complex<double>>& vals) {
    std::complex<double> prod = 1.0;
    for (int part : lam.parts) {
        std::complex<double> s = 0.0;
        for (const auto& v : vals) s += std::pow(v, part);
        prod *= s;
    }
    return prod;
}

std::complex<double> complete_h_eval(int n, const std::vector<std::complex<double>>& vals) {
    if (n < 0) fail(errc::invalid_argument, "h_n needs n >= 0");
    std::vector<std::complex<double>> h(n + 1), psum(n + 1);
    h[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        psum[i] = 0.0;
        for (const auto& v : vals) psum[i] += std::pow(v, i);
    }
    for (int k = 1; k <= n; ++k) {
        std::complex<double> acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += psum[i] * h[k - i];
        h[k] = acc / (double)k;
    }
    return h[n];
}

std::complex<double> complete_h_via_power_sums(int n,
                                               const std::vector<std::complex<double>>& vals) {
    std::complex<double> acc = 0.0;
    for (const Partition& lam : partitions(n)) acc += power_sum_eval(lam, vals) / (double)lam.z();
    return acc;
}

// ---------------------------------------------------------------------------
// disk table

void green_table_save(int r, const std::string& path) {
    if (r < 1 || r > 12) fail(errc::size_limit, "Green tables supported for 1 <= r <= 12");
    nlohmann::json entries = nlohmann::json::array();
    for (const Partition& lam : partitions(r))
        for (const Partition& mu : partitions(r)) {
            IntPoly q = green_polynomial(lam, mu);
            entries.push_back({{"lam", lam.parts}, {"mu", mu.parts}, {"coeffs", q.c}});
        }
    nlohmann::json doc{{"version", 1}, {"r", r}, {"entries", std::move(entries)}};

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) fail(errc::io_error, "cannot write " + tmp);
        out << doc.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

int green_table_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot read " + path);
    nlohmann::json doc;
    in >> doc;
    if (!doc.contains("version") || doc["version"] != 1)
        fail(errc::io_error, "unsupported Green table version in " + path);
    int r = doc.at("r").get<int>();
    std::lock_guard<std::mutex> lock(green_mu);
    for (const auto& entry : doc.at("entries")) {
        Partition lam(entry.at("lam").get<std::vector<int>>());
        Partition mu(entry.at("mu").get<std::vector<int>>());
        if (lam.size() != r || mu.size() != r) fail(errc::io_error, "corrupt Green table entry");
        IntPoly q(entry.at("coeffs").get<std::vector<long long>>());
        green_memo.emplace(PartsKey{lam.parts, mu.parts}, std::move(q));
    }
    return r;
}

} // namespace klt
