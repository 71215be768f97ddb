//
// seqr command-line driver.
//
// Subcommands:
//   gen     write a test matrix to a file (binary SEQMAT01 or CSV)
//   css     run column subset selection trials on a stored matrix
//   bench   run a predefined experiment suite (ratios|residuals|timing|ep)
//   oracle  exhaustive best-subset search at desk scale
//   luprrp  block LU with rank-revealing panel pivoting
//
// Every run is fully determined by its arguments; repeated invocations give
// byte-identical output except for the *_ms timing columns.
//
// Exit codes: 0 success, 2 invalid arguments or malformed input, 3 runtime
// or numerical failure.
//

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "seqr/errors.hpp"
#include "seqr/linalg.hpp"
#include "seqr/luprrp.hpp"
#include "seqr/matrix_io.hpp"
#include "seqr/metrics.hpp"
#include "seqr/rrqr.hpp"
#include "seqr/seqrcs.hpp"
#include "seqr/sketch.hpp"
#include "seqr/suites.hpp"
#include "seqr/testmat.hpp"

namespace {

using namespace seqr;
using idx = seqr::index;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string join_cells(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

std::string fmt_index(idx v) { return std::to_string(v); }

// Output sink: path "-" means stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (path == "-") {
            out_ = &std::cout;
        } else {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
            out_ = &file_;
        }
    }
    void line(const std::string& s) { (*out_) << s << '\n'; }
    void finish() {
        out_->flush();
        if (file_.is_open() && !file_) throw std::runtime_error("write failure on output file");
    }

  private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

// Runs tasks 0..count-1 on `jobs` threads; rethrows the first failure.
void parallel_for(idx count, idx jobs, const std::function<void(idx)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (idx t = 0; t < count; ++t) fn(t);
        return;
    }
    std::atomic<idx> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    const idx workers = std::min(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (idx w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const idx t = next.fetch_add(1);
                if (t >= count || failed.load()) return;
                try {
                    fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

EmbeddingKind parse_embedding(const std::string& name) {
    if (name == "countsketch") return EmbeddingKind::CountSketch;
    if (name == "osnap") return EmbeddingKind::Osnap;
    if (name == "less-ind-rows") return EmbeddingKind::LessIndRows;
    if (name == "less-ind-ent") return EmbeddingKind::LessIndEnt;
    throw InvalidSpec("unknown embedding kind: " + name);
}

// ---------------------------------------------------------------------------
// css rows

const char* CSS_HEADER =
    "trial,method,matrix,d,n,k,kprime,l,s,p,residual,norm_R11invR12_2,"
    "norm_R11invR12_max,min_ratio,median_ratio,max_ratio,rho1,rho2,"
    "sketch_ms,srrqr_B_ms,support_ms,srrqr_A1_ms,assemble_ms,total_ms";

struct CssSettings {
    std::string method = "seqrcs";
    EmbeddingKind kind = EmbeddingKind::CountSketch;
    idx kprime = 0;
    idx l = 0;
    idx s = 0;
    double f = 2.0;
    double eps = 0.5;
};

std::string css_row(const DenseMatrix& A, const std::string& matrix_label, idx k,
                    const CssSettings& st, std::uint64_t seed, idx trial) {
    std::vector<std::string> c;
    c.push_back(fmt_index(trial));
    c.push_back(st.method);
    c.push_back(matrix_label);
    c.push_back(fmt_index(A.rows()));
    c.push_back(fmt_index(A.cols()));
    c.push_back(fmt_index(k));

    PartialQR factors;
    std::string kprime_cell, l_cell, s_cell, p_cell, rho1_cell, rho2_cell;
    std::string stage_cells[5];
    double total_ms = 0.0;

    if (st.method == "seqrcs") {
        SeqrcsConfig cfg;
        cfg.k = k;
        cfg.kprime = st.kprime;
        cfg.f = st.f;
        cfg.kind = st.kind;
        cfg.l = st.l;
        cfg.s = st.s;
        cfg.eps = st.eps;
        cfg.seed = seed;
        SeqrcsResult res = se_qrcs(A, cfg);
        factors = std::move(res.factors);
        kprime_cell = fmt_index(res.kprime);
        l_cell = fmt_index(res.l);
        s_cell = fmt_index(res.s);
        p_cell = fmt_index(res.p);
        const RhoBounds rb = rho_bounds_for(res, st.kind, st.f, st.eps);
        rho1_cell = format_real(rb.rho1);
        rho2_cell = format_real(rb.rho2);
        stage_cells[0] = format_real(res.timings.sketch_ms);
        stage_cells[1] = format_real(res.timings.srrqr_B_ms);
        stage_cells[2] = format_real(res.timings.support_ms);
        stage_cells[3] = format_real(res.timings.srrqr_A1_ms);
        stage_cells[4] = format_real(res.timings.assemble_ms);
        total_ms = res.timings.total_ms;
    } else if (st.method == "qrcp") {
        const auto t0 = Clock::now();
        factors = qrcp(A, k);
        total_ms = ms_since(t0);
    } else if (st.method == "srrqr") {
        const auto t0 = Clock::now();
        factors = srrqr(A, k, st.f);
        total_ms = ms_since(t0);
    } else {
        throw InvalidSpec("unknown method: " + st.method);
    }

    c.push_back(kprime_cell);
    c.push_back(l_cell);
    c.push_back(s_cell);
    c.push_back(p_cell);
    c.push_back(format_real(residual_report(A, factors)));
    const OffdiagNorms norms = r11inv_r12_norms(factors);
    c.push_back(format_real(norms.two));
    c.push_back(format_real(norms.max));
    const RatioReport ratios = ratio_report(A, factors);
    c.push_back(format_real(ratios.min));
    c.push_back(format_real(ratios.median));
    c.push_back(format_real(ratios.max));
    c.push_back(rho1_cell);
    c.push_back(rho2_cell);
    for (const std::string& s : stage_cells) c.push_back(s);
    c.push_back(format_real(total_ms));
    return join_cells(c);
}

// ---------------------------------------------------------------------------
// subcommand runners

struct GenArgs {
    std::string family, out;
    idx d = 0, n = 0;
    std::uint64_t seed = 0;
    bool csv = false;
    FamilyParams params;
};

int run_gen(const GenArgs& a) {
    const DenseMatrix A = generate_family(a.family, a.d, a.n, a.seed, a.params);
    if (a.csv) {
        write_matrix_csv(a.out, A);
    } else {
        write_matrix_binary(a.out, A);
    }
    return 0;
}

struct CssArgs {
    std::string in, report = "-";
    idx k = 0;
    idx trials = 1;
    idx jobs = 1;
    std::uint64_t seed = 0;
    std::string embedding = "countsketch";
    CssSettings settings;
};

int run_css(const CssArgs& a) {
    const DenseMatrix A = read_matrix_binary(a.in);
    CssSettings st = a.settings;
    st.kind = parse_embedding(a.embedding);

    std::vector<std::string> rows(static_cast<std::size_t>(a.trials));
    parallel_for(a.trials, a.jobs, [&](idx t) {
        rows[static_cast<std::size_t>(t)] =
            css_row(A, a.in, a.k, st, a.seed + static_cast<std::uint64_t>(t), t);
    });

    Sink sink(a.report);
    sink.line(CSS_HEADER);
    for (const std::string& r : rows) sink.line(r);
    sink.finish();
    return 0;
}

struct BenchArgs {
    std::string suite, out = "-";
    idx trials = 10;
    idx jobs = 1;
    std::uint64_t seed = 0;
};

int bench_ratios(const BenchArgs& a) {
    const std::vector<SuiteConfig> suite = desk_suite();
    const idx per_config = 2 * a.trials; // seqrcs + qrcp per trial
    const idx total = static_cast<idx>(suite.size()) * per_config;
    std::vector<std::string> rows(static_cast<std::size_t>(total));

    parallel_for(total, a.jobs, [&](idx task) {
        const SuiteConfig& cfg = suite[static_cast<std::size_t>(task / per_config)];
        const idx rem = task % per_config;
        const idx trial = rem / 2;
        const bool sketched = (rem % 2 == 0);
        const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(trial);
        const DenseMatrix A = build_suite_matrix(cfg, seed);
        CssSettings st;
        st.method = sketched ? "seqrcs" : "qrcp";
        st.kind = cfg.kind;
        st.s = cfg.s;
        rows[static_cast<std::size_t>(task)] = css_row(A, cfg.name, cfg.k, st, seed, trial);
    });

    Sink sink(a.out);
    sink.line(CSS_HEADER);
    for (const std::string& r : rows) sink.line(r);
    sink.finish();
    return 0;
}

int bench_residuals(const BenchArgs& a) {
    const std::vector<SuiteConfig> suite = residual_suite();
    struct Cell {
        std::vector<double> residuals;
    };
    const idx total = static_cast<idx>(suite.size()) * 2 * a.trials;
    std::vector<double> residuals(static_cast<std::size_t>(total), 0.0);

    parallel_for(total, a.jobs, [&](idx task) {
        const SuiteConfig& cfg = suite[static_cast<std::size_t>(task / (2 * a.trials))];
        const idx rem = task % (2 * a.trials);
        const idx trial = rem / 2;
        const bool sketched = (rem % 2 == 0);
        const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(trial);
        const DenseMatrix A = build_suite_matrix(cfg, seed);
        PartialQR F;
        if (sketched) {
            SeqrcsConfig scfg;
            scfg.k = cfg.k;
            scfg.kind = cfg.kind;
            scfg.s = cfg.s;
            scfg.seed = seed;
            F = se_qrcs(A, scfg).factors;
        } else {
            F = qrcp(A, cfg.k);
        }
        residuals[static_cast<std::size_t>(task)] = residual_report(A, F);
    });

    Sink sink(a.out);
    sink.line("matrix,method,d,n,k,trials,min_residual,median_residual,max_residual");
    for (std::size_t ci = 0; ci < suite.size(); ++ci) {
        for (int m = 0; m < 2; ++m) {
            std::vector<double> vals;
            for (idx t = 0; t < a.trials; ++t)
                vals.push_back(residuals[ci * static_cast<std::size_t>(2 * a.trials) +
                                         static_cast<std::size_t>(2 * t + m)]);
            std::vector<std::string> c;
            c.push_back(suite[ci].name);
            c.push_back(m == 0 ? "seqrcs" : "qrcp");
            c.push_back(fmt_index(suite[ci].d));
            c.push_back(fmt_index(suite[ci].n));
            c.push_back(fmt_index(suite[ci].k));
            c.push_back(fmt_index(a.trials));
            c.push_back(format_real(*std::min_element(vals.begin(), vals.end())));
            c.push_back(format_real(lower_median(vals)));
            c.push_back(format_real(*std::max_element(vals.begin(), vals.end())));
            sink.line(join_cells(c));
        }
    }
    sink.finish();
    return 0;
}

int bench_timing(const BenchArgs& a) {
    const idx d = 100, n = 200000, k = 100;
    Sink sink(a.out);
    sink.line("trial,matrix,d,n,k,l,s,p,seqrcs_pivot_ms,seqrcs_total_ms,qrcp_ms");
    for (idx t = 0; t < a.trials; ++t) {
        const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(t);
        const DenseMatrix A = gen_gaussian(d, n, seed);

        SeqrcsConfig cfg;
        cfg.k = k;
        cfg.kind = EmbeddingKind::CountSketch;
        cfg.seed = seed;
        const SeqrcsResult res = se_qrcs(A, cfg);
        const double pivot_ms = res.timings.sketch_ms + res.timings.srrqr_B_ms +
                                res.timings.support_ms + res.timings.srrqr_A1_ms;

        const auto t0 = Clock::now();
        const PartialQR F = qrcp(A, k);
        const double qrcp_ms = ms_since(t0);
        (void)F;

        std::vector<std::string> c;
        c.push_back(fmt_index(t));
        c.push_back("gaussian_100x200000");
        c.push_back(fmt_index(d));
        c.push_back(fmt_index(n));
        c.push_back(fmt_index(k));
        c.push_back(fmt_index(res.l));
        c.push_back(fmt_index(res.s));
        c.push_back(fmt_index(res.p));
        c.push_back(format_real(pivot_ms));
        c.push_back(format_real(res.timings.total_ms));
        c.push_back(format_real(qrcp_ms));
        sink.line(join_cells(c));
    }
    sink.finish();
    return 0;
}

// Strided row subset: k rows spread evenly over l, matching the uniform
// placement the support-size expectation assumes.
std::vector<idx> strided_rows(idx l, idx k) {
    std::vector<idx> rows(static_cast<std::size_t>(k));
    for (idx t = 0; t < k; ++t) rows[static_cast<std::size_t>(t)] = t * l / k;
    return rows;
}

int bench_ep(const BenchArgs& a) {
    const idx n = 10000, kprime = 50;
    Sink sink(a.out);
    sink.line("s,n,l,kprime,trials,mean_p,expected_p,rel_err");
    const idx ell_osnap = auto_embedding_dim(50, n, 6);
    const struct {
        idx s, l;
    } cases[] = {{1, 2500}, {3, ell_osnap}, {6, ell_osnap}};

    for (const auto& cs : cases) {
        const std::vector<idx> rows = strided_rows(cs.l, kprime);
        std::vector<double> counts(static_cast<std::size_t>(a.trials), 0.0);
        parallel_for(a.trials, a.jobs, [&](idx t) {
            const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(t);
            const SparseEmbedding omega = (cs.s == 1)
                                              ? countsketch(n, cs.l, seed)
                                              : osnap(n, cs.l, cs.s, seed);
            counts[static_cast<std::size_t>(t)] =
                static_cast<double>(support_union(omega, rows).size());
        });
        double mean = 0.0;
        for (double v : counts) mean += v;
        mean /= static_cast<double>(a.trials);
        const double expected = expected_p(n, cs.l, kprime, cs.s);

        std::vector<std::string> c;
        c.push_back(fmt_index(cs.s));
        c.push_back(fmt_index(n));
        c.push_back(fmt_index(cs.l));
        c.push_back(fmt_index(kprime));
        c.push_back(fmt_index(a.trials));
        c.push_back(format_real(mean));
        c.push_back(format_real(expected));
        c.push_back(format_real(std::abs(mean - expected) / expected));
        sink.line(join_cells(c));
    }
    sink.finish();
    return 0;
}

int run_bench(const BenchArgs& a) {
    if (a.suite == "ratios") return bench_ratios(a);
    if (a.suite == "residuals") return bench_residuals(a);
    if (a.suite == "timing") return bench_timing(a);
    if (a.suite == "ep") return bench_ep(a);
    throw InvalidSpec("unknown suite: " + a.suite);
}

struct OracleArgs {
    std::string in, out = "-";
    idx k = 0;
};

int run_oracle(const OracleArgs& a) {
    const DenseMatrix A = read_matrix_binary(a.in);
    const BruteForceResult res = brute_force_css(A, a.k);
    Sink sink(a.out);
    sink.line("n,k,subsets,best_residual,indices");
    std::string ids;
    for (std::size_t i = 0; i < res.best.size(); ++i) {
        if (i) ids += ' ';
        ids += std::to_string(res.best[i]);
    }
    std::vector<std::string> c;
    c.push_back(fmt_index(A.cols()));
    c.push_back(fmt_index(a.k));
    c.push_back(std::to_string(res.subsets));
    c.push_back(format_real(res.best_residual));
    c.push_back(ids);
    sink.line(join_cells(c));
    sink.finish();
    return 0;
}

struct LuArgs {
    std::string matrix = "gaussian", panel = "srrqr", out = "-";
    idx n = 0, b = 16;
    double f = 2.0;
    std::uint64_t seed = 0;
};

int run_luprrp(const LuArgs& a) {
    FamilyParams params;
    const DenseMatrix A = generate_family(a.matrix, a.n, a.n, a.seed, params);

    const auto t0 = Clock::now();
    LuPrrpResult res;
    if (a.panel == "gepp") {
        res = gepp(A);
    } else {
        LuPrrpConfig cfg;
        cfg.b = a.b;
        cfg.f = a.f;
        cfg.seed = a.seed;
        if (a.panel == "srrqr") {
            cfg.method = PanelMethod::Srrqr;
        } else if (a.panel == "seqrcs") {
            cfg.method = PanelMethod::Seqrcs;
        } else {
            throw InvalidSpec("unknown panel method: " + a.panel);
        }
        res = lu_prrp(A, cfg);
    }
    const double elapsed = ms_since(t0);

    Sink sink(a.out);
    sink.line("matrix,n,b,panel_method,growth,norm_U_1,norm_Uinv_1,residual,time_ms");
    std::vector<std::string> c;
    c.push_back(a.matrix);
    c.push_back(fmt_index(a.n));
    c.push_back(a.panel == "gepp" ? std::string() : fmt_index(a.b));
    c.push_back(a.panel);
    c.push_back(format_real(res.growth));
    c.push_back(format_real(res.norm_U_1));
    c.push_back(format_real(res.norm_Uinv_1));
    c.push_back(format_real(res.residual));
    c.push_back(format_real(elapsed));
    sink.line(join_cells(c));
    sink.finish();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"column subset selection via sparse embeddings"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a test matrix file");
    gen->add_option("--family", gen_args.family,
                    "exponential|quadratic|gaussian|rom|lowrank|fiedler|chebvand|prolate|kahan|"
                    "wilkinson")
        ->required();
    gen->add_option("--d", gen_args.d, "rows")->required();
    gen->add_option("--n", gen_args.n, "columns")->required();
    gen->add_option("--seed", gen_args.seed, "generator seed (default 0)");
    gen->add_option("--out", gen_args.out, "output path")->required();
    gen->add_flag("--csv", gen_args.csv, "write CSV instead of binary");
    gen->add_option("--rank", gen_args.params.rank, "lowrank: target rank (default 30)");
    gen->add_option("--outliers", gen_args.params.outliers, "rom: outlier count (default 40)");
    gen->add_option("--magnitude", gen_args.params.magnitude,
                    "rom: outlier magnitude (default 1000)");
    gen->add_option("--phi", gen_args.params.phi, "kahan: phi (default 0.285)");
    gen->add_option("--w", gen_args.params.w, "prolate: bandwidth (default 0.25)");

    CssArgs css_args;
    CLI::App* css = app.add_subcommand("css", "column subset selection trials");
    css->add_option("--in", css_args.in, "input matrix (binary)")->required();
    css->add_option("--k", css_args.k, "target rank")->required();
    css->add_option("--method", css_args.settings.method, "seqrcs|qrcp|srrqr (default seqrcs)");
    css->add_option("--embedding", css_args.embedding,
                    "countsketch|osnap|less-ind-rows|less-ind-ent (default countsketch)");
    css->add_option("--kprime", css_args.settings.kprime, "sketch-stage rank (0 = auto)");
    css->add_option("--l", css_args.settings.l, "embedding rows (0 = auto)");
    css->add_option("--s", css_args.settings.s, "embedding sparsity (0 = auto)");
    css->add_option("--f", css_args.settings.f, "srrqr parameter (default 2)");
    css->add_option("--eps", css_args.settings.eps, "distortion parameter (default 0.5)");
    css->add_option("--seed", css_args.seed, "base seed; trial t uses seed+t");
    css->add_option("--trials", css_args.trials, "number of trials (default 1)");
    css->add_option("--jobs", css_args.jobs, "parallel trial workers (default 1)");
    css->add_option("--report", css_args.report, "output CSV path, - for stdout");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "predefined experiment suites");
    bench->add_option("--suite", bench_args.suite, "ratios|residuals|timing|ep")->required();
    bench->add_option("--trials", bench_args.trials, "trials per configuration (default 10)");
    bench->add_option("--seed", bench_args.seed, "base seed (default 0)");
    bench->add_option("--jobs", bench_args.jobs, "parallel workers (default 1)");
    bench->add_option("--out", bench_args.out, "output CSV path, - for stdout");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive best subset");
    oracle->add_option("--in", oracle_args.in, "input matrix (binary)")->required();
    oracle->add_option("--k", oracle_args.k, "subset size")->required();
    oracle->add_option("--out", oracle_args.out, "output CSV path, - for stdout");

    LuArgs lu_args;
    CLI::App* lu = app.add_subcommand("luprrp", "block LU with rank-revealing panels");
    lu->add_option("--n", lu_args.n, "matrix size")->required();
    lu->add_option("--b", lu_args.b, "panel width (default 16)");
    lu->add_option("--matrix", lu_args.matrix, "gaussian|wilkinson|fiedler|kahan (default gaussian)");
    lu->add_option("--panel", lu_args.panel, "srrqr|seqrcs|gepp (default srrqr)");
    lu->add_option("--f", lu_args.f, "panel srrqr parameter (default 2)");
    lu->add_option("--seed", lu_args.seed, "generator seed (default 0)");
    lu->add_option("--out", lu_args.out, "output CSV path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (css->parsed()) return run_css(css_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (oracle->parsed()) return run_oracle(oracle_args);
        if (lu->parsed()) return run_luprrp(lu_args);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IndexOutOfRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CombinatorialBlowup& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 3;
    }
}
