#include "seqr/suites.hpp"

#include "seqr/errors.hpp"
#include "seqr/testmat.hpp"

namespace seqr {

DenseMatrix generate_family(const std::string& family, index d, index n,
                            std::uint64_t seed, const FamilyParams& params) {
    if (family == "exponential") return gen_exponential(d, n, seed);
    if (family == "quadratic") return gen_quadratic(d, n, seed);
    if (family == "gaussian") return gen_gaussian(d, n, seed);
    if (family == "rom") return gen_rom(d, n, params.outliers, params.magnitude, seed);
    if (family == "lowrank") return gen_lowrank(d, n, params.rank, seed);
    if (family == "fiedler") return gen_fiedler(d, n, seed);
    if (family == "chebvand") return gen_chebvand(d, n, seed);
    if (family == "prolate") return gen_prolate(d, n, params.w, seed);
    if (family == "kahan") {
        if (d != n) throw InvalidSpec("generate_family: kahan is square, need d == n");
        return gen_kahan(n, params.phi);
    }
    if (family == "wilkinson") {
        if (d != n) throw InvalidSpec("generate_family: wilkinson is square, need d == n");
        return gen_wilkinson(n);
    }
    throw InvalidSpec("generate_family: unknown family '" + family + "'");
}

DenseMatrix build_suite_matrix(const SuiteConfig& cfg, std::uint64_t seed) {
    return generate_family(cfg.family, cfg.d, cfg.n, seed, cfg.params);
}

namespace {

SuiteConfig make(const std::string& name, const std::string& family, index d, index n,
                 index k, index s) {
    SuiteConfig c;
    c.name = name;
    c.family = family;
    c.d = d;
    c.n = n;
    c.k = k;
    c.s = s;
    c.kind = (s == 1) ? EmbeddingKind::CountSketch : EmbeddingKind::Osnap;
    return c;
}

} // namespace

std::vector<SuiteConfig> desk_suite() {
    std::vector<SuiteConfig> suite;

    suite.push_back(make("exponential_50x2000", "exponential", 50, 2000, 45, 1));
    suite.push_back(make("quadratic_50x2000", "quadratic", 50, 2000, 35, 1));
    suite.push_back(make("gaussian_50x2000", "gaussian", 50, 2000, 40, 1));
    suite.push_back(make("rom_50x2000", "rom", 50, 2000, 40, 1));
    {
        SuiteConfig c = make("lowrank_50x2000", "lowrank", 50, 2000, 30, 1);
        c.params.rank = 30;
        suite.push_back(c);
    }
    suite.push_back(make("fiedler_50x2000", "fiedler", 50, 2000, 40, 1));
    suite.push_back(make("chebvand_50x2000", "chebvand", 50, 2000, 15, 1));
    suite.push_back(make("prolate_50x2000", "prolate", 50, 2000, 28, 1));

    suite.push_back(make("exponential_k20_50x2000", "exponential", 50, 2000, 20, 1));
    suite.push_back(make("quadratic_k20_50x2000", "quadratic", 50, 2000, 20, 1));
    {
        SuiteConfig c = make("rom_k25_50x2000", "rom", 50, 2000, 25, 1);
        c.params.outliers = 25;
        suite.push_back(c);
    }
    {
        SuiteConfig c = make("lowrank_k45_50x2000", "lowrank", 50, 2000, 45, 1);
        c.params.rank = 45;
        suite.push_back(c);
    }

    suite.push_back(make("exponential_100x2000_s6", "exponential", 100, 2000, 90, 6));
    suite.push_back(make("quadratic_100x2000_s6", "quadratic", 100, 2000, 70, 6));
    suite.push_back(make("gaussian_100x2000_s6", "gaussian", 100, 2000, 80, 6));
    {
        SuiteConfig c = make("rom_100x2000_s6", "rom", 100, 2000, 80, 6);
        c.params.outliers = 80;
        suite.push_back(c);
    }
    {
        SuiteConfig c = make("lowrank_100x2000_s6", "lowrank", 100, 2000, 60, 6);
        c.params.rank = 60;
        suite.push_back(c);
    }
    suite.push_back(make("fiedler_100x2000_s6", "fiedler", 100, 2000, 80, 6));
    suite.push_back(make("chebvand_100x2000_s6", "chebvand", 100, 2000, 15, 6));
    suite.push_back(make("prolate_100x2000_s6", "prolate", 100, 2000, 40, 6));

    return suite;
}

std::vector<SuiteConfig> residual_suite() {
    std::vector<SuiteConfig> suite;
    suite.push_back(make("fiedler_50x4000", "fiedler", 50, 4000, 40, 1));
    suite.push_back(make("prolate_50x4000", "prolate", 50, 4000, 42, 1));
    suite.push_back(make("chebvand_50x4000", "chebvand", 50, 4000, 34, 1));
    suite.push_back(make("rom_50x4000", "rom", 50, 4000, 40, 1));
    {
        SuiteConfig c = make("lowrank_50x4000", "lowrank", 50, 4000, 30, 1);
        c.params.rank = 30;
        suite.push_back(c);
    }
    return suite;
}

const SuiteConfig* find_suite_config(const std::vector<SuiteConfig>& suite,
                                     const std::string& name) {
    for (const SuiteConfig& c : suite)
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace seqr
