//
// seqr/suites.hpp
//
// Named generator dispatch plus the predefined desk-scale experiment suites
// shared by the benchmark CLI and the integration tests.
//

#ifndef SEQR_SUITES_HPP
#define SEQR_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seqr/dense_matrix.hpp"
#include "seqr/sketch.hpp"

namespace seqr {

struct FamilyParams {
    index rank = 30;         // lowrank
    index outliers = 40;     // rom
    double magnitude = 1000; // rom
    double phi = 0.285;      // kahan
    double w = 0.25;         // prolate
};

// Families: exponential, quadratic, gaussian, rom, lowrank, fiedler,
// chebvand, prolate, kahan, wilkinson. Unknown names throw InvalidSpec.
DenseMatrix generate_family(const std::string& family, index d, index n,
                            std::uint64_t seed, const FamilyParams& params);

struct SuiteConfig {
    std::string name;   // stable identifier used in CSV output
    std::string family;
    index d = 0;
    index n = 0;
    index k = 0;
    index s = 1;
    EmbeddingKind kind = EmbeddingKind::CountSketch;
    FamilyParams params;
};

DenseMatrix build_suite_matrix(const SuiteConfig& cfg, std::uint64_t seed);

// 20 configurations: every generator family of the experiment set with
// s = 1 at 50 x 2000 (plus four extra rank cuts) and s = 6 at 100 x 2000.
std::vector<SuiteConfig> desk_suite();

// Residual-table configurations at 50 x 4000 (fiedler, prolate, chebvand,
// rom, lowrank), s = 1.
std::vector<SuiteConfig> residual_suite();

const SuiteConfig* find_suite_config(const std::vector<SuiteConfig>& suite,
                                     const std::string& name);

} // namespace seqr

#endif // SEQR_SUITES_HPP
