// klt: command-line front end for Kloosterman sum computations, L-function
// coefficient tables, Sato-Tate sweeps, and the spectral randomness test.

#include "klt/error.hpp"
#include "klt/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace klt;

namespace {

std::vector<long long> parse_ints(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoll(tok));
    }
    return out;
}

CharSpec build_spec(int k, const std::string& indices_csv, uint32_t scale) {
    CharSpec spec = CharSpec::trivial(k);
    spec.additive_scale = scale;
    if (!indices_csv.empty()) {
        auto idx = parse_ints(indices_csv);
        if ((int)idx.size() != k) fail(errc::invalid_argument, "need k multiplicative indices");
        for (int i = 0; i < k; ++i) spec.mult_indices[i] = (uint64_t)idx[i];
    }
    return spec;
}

// q = p^m with p prime
std::pair<uint32_t, uint32_t> split_prime_power(uint64_t q) {
    for (uint64_t p : prime_factors_u64(q)) {
        uint32_t m = 0;
        uint64_t v = q;
        while (v % p == 0) {
            v /= p;
            ++m;
        }
        if (v == 1) return {(uint32_t)p, m};
    }
    fail(errc::invalid_argument, "q must be a prime power");
}

std::vector<uint8_t> read_input_bytes(const std::string& file, bool hex) {
    std::string raw;
    if (file.empty() || file == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        raw = ss.str();
    } else {
        std::ifstream in(file, std::ios::binary);
        if (!in) fail(errc::io_error, "cannot read " + file);
        std::stringstream ss;
        ss << in.rdbuf();
        raw = ss.str();
    }
    if (!hex) return std::vector<uint8_t>(raw.begin(), raw.end());
    std::vector<uint8_t> out;
    int hi = -1;
    for (char c : raw) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else if (std::isspace((unsigned char)c)) continue;
        else fail(errc::invalid_argument, "invalid hex character in input");
        if (hi < 0) hi = v;
        else {
            out.push_back((uint8_t)(hi * 16 + v));
            hi = -1;
        }
    }
    if (hi >= 0) fail(errc::invalid_argument, "odd number of hex digits");
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// JSON config files: top-level keys are global options, nested objects hold
// per-subcommand options.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool, bool, std::string) const override {
        json j = json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            if (opt->count() > 0) j[opt->get_lnames()[0]] = opt->results();
        }
        return j.dump(2);
    }
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        input >> j;
        std::vector<CLI::ConfigItem> out;
        collect(j, {}, out);
        return out;
    }

private:
    static void collect(const json& j, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object()) {
                auto sub = parents;
                sub.push_back(it.key());
                collect(it.value(), sub, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it.value().is_array())
                for (const auto& v : it.value())
                    item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            else
                item.inputs.push_back(it.value().is_string() ? it.value().get<std::string>()
                                                             : it.value().dump());
            out.push_back(std::move(item));
        }
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kloosterman sum toolkit"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file mirroring the flags");
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    int workers = 1;
    uint64_t budget = 1ull << 26;
    uint64_t seed = 0;
    app.add_option("--workers", workers, "data-parallel workers for big sums");
    app.add_option("--budget", budget, "term budget for direct summation");
    app.add_option("--seed", seed, "seed for randomized factorization/sampling");

    // --- kl ---------------------------------------------------------------
    auto* kl = app.add_subcommand("kl", "classical (hyper-)Kloosterman sums");
    uint32_t kl_p = 2;
    std::string kl_modulus = "0,1", kl_xi = "1", kl_indices;
    int kl_k = 2, kl_rmax = 0;
    uint32_t kl_scale = 1;
    bool kl_signed_flag = false, kl_raw = false;
    kl->add_option("--p", kl_p, "prime")->required();
    kl->add_option("--modulus", kl_modulus, "field modulus coefficients, constant first");
    kl->add_option("--xi", kl_xi, "evaluation point coefficients");
    kl->add_option("--k", kl_k, "rank");
    kl->add_option("--mult-indices", kl_indices, "k multiplicative character indices");
    kl->add_option("--scale", kl_scale, "additive character scale in F_p^x");
    kl->add_flag("--signed", kl_signed_flag, "apply the (-1)^{k-1} prefactor");
    kl->add_flag("--raw", kl_raw, "skip normalization");
    kl->add_option("--rmax", kl_rmax, "if set, emit the extension-tower sequence K_1..K_rmax");

    // --- matkl ------------------------------------------------------------
    auto* mk = app.add_subcommand("matkl", "matrix Kloosterman sum of an invertible matrix");
    uint32_t mk_p = 2;
    std::string mk_modulus = "0,1", mk_matrix, mk_matrix_file, mk_indices;
    int mk_k = 2;
    uint32_t mk_scale = 1;
    bool mk_oracle = false;
    mk->add_option("--p", mk_p, "prime")->required();
    mk->add_option("--modulus", mk_modulus, "field modulus coefficients");
    mk->add_option("--matrix", mk_matrix, "matrix as JSON rows, e.g. [[0,-1],[1,-1]]");
    mk->add_option("--matrix-file", mk_matrix_file, "file containing the matrix JSON");
    mk->add_option("--k", mk_k, "rank");
    mk->add_option("--mult-indices", mk_indices, "k multiplicative character indices");
    mk->add_option("--scale", mk_scale, "additive character scale");
    mk->add_flag("--brute-force", mk_oracle,
                 "also run the definitional oracle and report the difference");

    // --- green ------------------------------------------------------------
    auto* gr = app.add_subcommand("green", "Green polynomial tables Q_lam^mu(t)");
    int gr_r = 0;
    std::string gr_lam, gr_mu, gr_cache;
    gr->add_option("--r", gr_r, "emit the full table for partitions of r");
    gr->add_option("--lam", gr_lam, "single entry: lambda parts");
    gr->add_option("--mu", gr_mu, "single entry: mu parts");
    gr->add_option("--cache-dir", gr_cache, "table cache directory (default $KLT_CACHE_DIR)");

    // --- lfunc ------------------------------------------------------------
    auto* lf = app.add_subcommand("lfunc", "K_r / C_r table for a Kloosterman L-function");
    uint32_t lf_p = 2;
    std::string lf_modulus = "1,1,0,1", lf_indices, lf_format = "json";
    int lf_k = 2, lf_rmax = 4;
    uint32_t lf_scale = 1;
    lf->add_option("--p", lf_p, "prime")->required();
    lf->add_option("--modulus", lf_modulus, "irreducible P(T) over F_p defining xi");
    lf->add_option("--rmax", lf_rmax, "number of tower levels");
    lf->add_option("--k", lf_k, "rank");
    lf->add_option("--mult-indices", lf_indices, "k multiplicative character indices");
    lf->add_option("--scale", lf_scale, "additive character scale");
    lf->add_option("--format", lf_format, "json or csv");

    // --- sweep ------------------------------------------------------------
    auto* sw = app.add_subcommand("sweep", "Sato-Tate distribution sweeps");
    std::string sw_exp = "primes", sw_mode = "scale", sw_primes, sw_format = "json";
    int sw_count = 10, sw_bins = 20, sw_lmax = 50;
    uint32_t sw_p = 53;
    bool sw_overlay = false;
    sw->add_option("--experiment", sw_exp, "primes | vertical | tower");
    sw->add_option("--count", sw_count, "primes experiment: number of primes = 2 mod 3");
    sw->add_option("--primes", sw_primes, "primes experiment: explicit comma-separated primes");
    sw->add_option("--p", sw_p, "vertical experiment prime");
    sw->add_option("--mode", sw_mode, "vertical experiment: scale | char");
    sw->add_option("--lmax", sw_lmax, "tower experiment depth");
    sw->add_option("--bins", sw_bins, "histogram bins");
    sw->add_option("--format", sw_format, "json or csv (bin_center,count lines)");
    sw->add_flag("--overlay", sw_overlay, "emit a two-column x,density reference table instead");

    // --- randtest ---------------------------------------------------------
    auto* rt = app.add_subcommand("randtest", "spectral randomness test on a byte stream");
    std::string rt_file, rt_mode = "both";
    uint32_t rt_p = 53;
    double rt_alpha = 0.05;
    uint64_t rt_min_samples = 100;
    bool rt_hex = false, rt_bench = false;
    int rt_trials = 200;
    uint64_t rt_samples = 2000;
    rt->add_option("--file", rt_file, "input file (default: stdin)");
    rt->add_flag("--hex", rt_hex, "input is hex text");
    rt->add_option("--p", rt_p, "working prime, must be 2 mod 3");
    rt->add_option("--alpha", rt_alpha, "significance level");
    rt->add_option("--min-samples", rt_min_samples, "floor on encoded/elliptic samples");
    rt->add_option("--mode", rt_mode, "verdict from: trace | angle | both (Bonferroni)");
    rt->add_flag("--benchmark", rt_bench, "run the seeded detection-rate benchmark instead");
    rt->add_option("--trials", rt_trials, "benchmark trials per generator");
    rt->add_option("--samples", rt_samples, "benchmark samples per trial");

    // --- oracle -----------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "exhaustive alg2 vs brute-force comparison");
    uint64_t orc_q = 2;
    int orc_n = 2, orc_samples = 0, orc_k = 2;
    bool orc_all_gl2 = false, orc_all_gl3 = false, orc_nontrivial = false;
    orc->add_option("--q", orc_q, "field size (prime power)");
    orc->add_flag("--all-gl2", orc_all_gl2, "every matrix in GL_2(F_q)");
    orc->add_flag("--all-gl3", orc_all_gl3, "every matrix in GL_3(F_q)");
    orc->add_option("--samples", orc_samples, "seeded random sample count instead of exhaustion");
    orc->add_option("--n", orc_n, "dimension for sampled mode");
    orc->add_option("--k", orc_k, "rank");
    orc->add_flag("--nontrivial", orc_nontrivial, "use a fixed nontrivial character tuple as well");

    // --- bench ------------------------------------------------------------
    auto* bn = app.add_subcommand("bench", "timing of the packed-bit direct sum");
    int bn_log2q = 24;
    bn->add_option("--log2q", bn_log2q, "field F_2^log2q");

    CLI11_PARSE(app, argc, argv);

    try {
        SumOptions opts{budget, workers, seed};

        if (*kl) {
            FieldCtx ctx = ff_make(kl_p, parse_ints(kl_modulus));
            CharSpec spec = build_spec(kl_k, kl_indices, kl_scale);
            FFElem xi = ctx.from_residues(parse_ints(kl_xi));
            if (kl_rmax > 0) {
                json arr = json::array();
                for (const auto& v : kl_sequence(ctx, spec, xi, kl_rmax, opts))
                    arr.push_back(klvalue_to_json(v));
                emit(arr);
            } else {
                KlValue v = kl_signed_flag ? kl_signed(ctx, spec, xi, opts)
                                           : kl_plain(ctx, spec, xi, opts);
                if (!kl_raw) v = kl_normalize(v);
                emit(klvalue_to_json(v));
            }
        } else if (*mk) {
            FieldCtx ctx = ff_make(mk_p, parse_ints(mk_modulus));
            CharSpec spec = build_spec(mk_k, mk_indices, mk_scale);
            json jmat;
            if (!mk_matrix_file.empty()) {
                std::ifstream in(mk_matrix_file);
                if (!in) fail(errc::io_error, "cannot read " + mk_matrix_file);
                in >> jmat;
            } else if (!mk_matrix.empty()) {
                jmat = json::parse(mk_matrix);
            } else {
                fail(errc::invalid_argument, "need --matrix or --matrix-file");
            }
            MatrixFq y = matrix_from_json(ctx, jmat);
            MatKlResult res = alg2_general(y, spec, opts);
            json out = matkl_to_json(res);
            if (mk_oracle) {
                auto bf = brute_force_matkl(y, spec);
                out["oracle"] = {{"re", bf.real()},
                                 {"im", bf.imag()},
                                 {"abs_diff", std::abs(bf - res.value)}};
            }
            emit(out);
        } else if (*gr) {
            if (gr_cache.empty())
                if (const char* env = std::getenv("KLT_CACHE_DIR")) gr_cache = env;
            if (!gr_lam.empty() || !gr_mu.empty()) {
                auto lam_in = parse_ints(gr_lam);
                auto mu_in = parse_ints(gr_mu);
                Partition lam(std::vector<int>(lam_in.begin(), lam_in.end()));
                Partition mu(std::vector<int>(mu_in.begin(), mu_in.end()));
                IntPoly q = green_polynomial(lam, mu);
                emit(json{{"lam", lam.parts}, {"mu", mu.parts}, {"coeffs", q.c}});
            } else {
                if (gr_r < 1) fail(errc::invalid_argument, "need --r or --lam/--mu");
                std::string path;
                if (!gr_cache.empty()) {
                    std::filesystem::create_directories(gr_cache);
                    path = gr_cache + "/green_r" + std::to_string(gr_r) + ".json";
                    if (std::filesystem::exists(path)) green_table_load(path);
                }
                json entries = json::array();
                for (const Partition& lam : partitions(gr_r))
                    for (const Partition& mu : partitions(gr_r))
                        entries.push_back(json{{"lam", lam.parts},
                                               {"mu", mu.parts},
                                               {"coeffs", green_polynomial(lam, mu).c}});
                if (!path.empty()) green_table_save(gr_r, path);
                emit(json{{"version", 1}, {"r", gr_r}, {"entries", std::move(entries)}});
            }
        } else if (*lf) {
            FieldCtx ctx = ff_make_prime(lf_p);
            FqPoly P = fq_poly(ctx, parse_ints(lf_modulus));
            CharSpec spec = build_spec(lf_k, lf_indices, lf_scale);
            auto K = kl_tower_at_root(ctx, P, lf_rmax, spec, opts);
            std::vector<std::complex<double>> kv;
            for (const auto& v : K) kv.push_back(v.value);
            LPoly L = newton_coeffs(kv, lf_k);
            L.base_field_size = K[0].field_size;
            if (lf_format == "csv") {
                std::cout << "r,K_re,K_im,C_re,C_im\n";
                for (int r = 1; r <= lf_rmax; ++r)
                    std::cout << r << "," << kv[r - 1].real() << "," << kv[r - 1].imag() << ","
                              << L.coeffs[r].real() << "," << L.coeffs[r].imag() << "\n";
            } else {
                json rows = json::array();
                for (int r = 1; r <= lf_rmax; ++r)
                    rows.push_back(
                        json{{"r", r},
                             {"K", {{"re", kv[r - 1].real()}, {"im", kv[r - 1].imag()}}},
                             {"C", {{"re", L.coeffs[r].real()}, {"im", L.coeffs[r].imag()}}}});
                emit(json{{"p", lf_p},
                          {"modulus", parse_ints(lf_modulus)},
                          {"k", lf_k},
                          {"table", std::move(rows)}});
            }
        } else if (*sw) {
            std::vector<double> values;
            if (sw_exp == "primes") {
                std::vector<uint32_t> primes;
                if (!sw_primes.empty())
                    for (long long v : parse_ints(sw_primes)) primes.push_back((uint32_t)v);
                else
                    primes = primes_2_mod_3(sw_count);
                values = sweep_primes(primes, {}, opts);
            } else if (sw_exp == "vertical") {
                values = sweep_vertical(
                    sw_p, sw_mode == "char" ? VerticalMode::char_index : VerticalMode::scale);
            } else if (sw_exp == "tower") {
                values = sweep_tower(sw_lmax);
            } else {
                fail(errc::invalid_argument, "unknown experiment " + sw_exp);
            }
            Histogram hist = make_histogram(values, RefDensity::semicircle_trace, sw_bins);
            GofReport rep = gof(values, RefDensity::semicircle_trace);
            if (sw_overlay) {
                std::cout << "x,density\n";
                for (int i = 0; i < 200; ++i) {
                    double x = -2.0 + 4.0 * i / 199.0;
                    std::cout << x << "," << density_ref(RefDensity::semicircle_trace, x) << "\n";
                }
            } else if (sw_format == "csv") {
                std::cout << "bin_center,count\n";
                for (size_t i = 0; i + 1 < hist.edges.size(); ++i)
                    std::cout << 0.5 * (hist.edges[i] + hist.edges[i + 1]) << "," << hist.counts[i]
                              << "\n";
            } else {
                emit(json{{"experiment", sw_exp},
                          {"values", values},
                          {"histogram", histogram_to_json(hist)},
                          {"gof", gof_to_json(rep)}});
            }
        } else if (*rt) {
            if (rt_bench) {
                DetectionRates rates =
                    detection_benchmark(rt_trials, rt_alpha, rt_p, rt_samples, seed ? seed : 1);
                emit(detection_to_json(rates));
            } else {
                SequenceInput seq{read_input_bytes(rt_file, rt_hex), rt_p, rt_min_samples};
                TestReport rep = run_test(seq, rt_alpha);
                if (rt_mode == "trace")
                    rep.pass = rep.trace_gof.pvalue_ks >= rt_alpha;
                else if (rt_mode == "angle")
                    rep.pass = rep.angle_gof.pvalue_ks >= rt_alpha;
                json out = report_to_json(rep);
                out["mode"] = rt_mode;
                emit(out);
                return rep.pass ? 0 : 1;
            }
        } else if (*orc) {
            auto [p, m] = split_prime_power(orc_q);
            FieldCtx ctx = m == 1 ? ff_make_prime(p) : ff_make_auto(p, m);
            std::vector<CharSpec> specs{CharSpec::trivial(orc_k)};
            if (orc_nontrivial && ctx.q > 2) {
                CharSpec nt = CharSpec::trivial(orc_k);
                nt.mult_indices[0] = 1;
                nt.additive_scale = std::min<uint32_t>(2, p - 1);
                specs.push_back(nt);
            }
            double maxdiff = 0;
            long long count = 0;
            auto compare = [&](const MatrixFq& y) {
                for (const auto& spec : specs) {
                    auto bf = brute_force_matkl(y, spec);
                    auto a2 = alg2_general(y, spec);
                    maxdiff = std::max(maxdiff, std::abs(bf - a2.value));
                }
                ++count;
            };
            if (orc_all_gl2) for_each_gl(ctx, 2, compare);
            if (orc_all_gl3) for_each_gl(ctx, 3, compare);
            if (orc_samples > 0) {
                std::mt19937_64 rng(seed);
                for (int i = 0; i < orc_samples; ++i) compare(random_gl(ctx, orc_n, rng));
            }
            emit(json{{"q", orc_q},
                      {"matrices", count},
                      {"specs", (int)specs.size()},
                      {"max_abs_diff", maxdiff}});
        } else if (*bn) {
            FieldCtx ctx = ff_make_auto(2, (uint32_t)bn_log2q);
            auto t0 = std::chrono::steady_clock::now();
            KlValue v = kl_normalize(kl_plain(ctx, CharSpec::trivial(2), ctx.generator, opts));
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            emit(json{{"log2q", bn_log2q},
                      {"workers", workers},
                      {"terms", ctx.q - 1},
                      {"seconds", secs},
                      {"value", klvalue_to_json(v)}});
        }
        return 0;
    } catch (const Error& e) {
        emit(json{{"error", errc_name(e.code())}, {"message", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"error", "Internal"}, {"message", e.what()}});
        return 2;
    }
}
