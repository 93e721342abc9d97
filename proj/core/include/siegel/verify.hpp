#ifndef SIEGEL_VERIFY_HPP
#define SIEGEL_VERIFY_HPP

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace siegel {

struct VerifyRow {
    std::string identity;
    double expected = 0.0;
    double estimate = 0.0;
    double sigma = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::size_t samples = 1000000;  // per Monte-Carlo integral
    std::size_t checks = 10000;     // per algebraic identity family
    std::size_t trials = 100000;    // per inequality family
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::vector<unsigned> dims = {1, 2};
};

/// The identity suite: closed-form integrals against Monte Carlo, exact
/// transform identities at random points, metric route equivalence, and
/// the inequality families checked for violations. One row per check.
std::vector<VerifyRow> run_verify_suite(const VerifyOptions& options);

bool verify_all_pass(const std::vector<VerifyRow>& rows);

nlohmann::json verify_rows_to_json(const std::vector<VerifyRow>& rows);

}  // namespace siegel

#endif
