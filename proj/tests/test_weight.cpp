// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <doctest.h>

using namespace qccs;
using namespace qccs::testing;

namespace {

RelatedFn from_matrix(const std::vector<Configuration>& mu_cfg,
                      const std::vector<Configuration>& nu_cfg,
                      const std::vector<std::vector<bool>>& rel) {
    return [=](const Configuration& a, const Configuration& b) {
        for (std::size_t i = 0; i < mu_cfg.size(); ++i) {
            if (!configs_equal(mu_cfg[i], a)) continue;
            for (std::size_t j = 0; j < nu_cfg.size(); ++j)
                if (configs_equal(nu_cfg[j], b)) return rel[i][j];
        }
        return false;
    };
}

} // namespace

TEST_CASE("identity pair admits the trivial weight function") {
    Program p = token_program();
    Configuration c = token_config(p, 0);
    Distribution mu = Distribution::point(c), nu = Distribution::point(c);
    auto wf = weight_function(mu, nu, [](const Configuration&, const Configuration&) { return true; });
    REQUIRE(wf.has_value());
    REQUIRE(wf->entries.size() == 1);
    CHECK(wf->entries[0].weight == doctest::Approx(1.0));
}

TEST_CASE("a split source ships both halves to the single target") {
    Program p = token_program();
    Configuration c1 = token_config(p, 1), c2 = token_config(p, 2), c3 = token_config(p, 3);
    Distribution mu;
    mu.add(c1, 0.5);
    mu.add(c2, 0.5);
    Distribution nu = Distribution::point(c3);
    auto rel = [&](const Configuration& a, const Configuration& b) {
        return configs_equal(b, c3) && (configs_equal(a, c1) || configs_equal(a, c2));
    };
    auto wf = weight_function(mu, nu, rel);
    REQUIRE(wf.has_value());
    REQUIRE(wf->entries.size() == 2);
    for (const auto& e : wf->entries) CHECK(e.weight == doctest::Approx(0.5));

    auto dec = decompose(mu, nu, rel);
    REQUIRE(dec.has_value());
    CHECK(dec->size() == 2);
}

TEST_CASE("disjoint supports with an empty relation are infeasible") {
    Program p = token_program();
    Distribution mu = Distribution::point(token_config(p, 0));
    Distribution nu = Distribution::point(token_config(p, 1));
    auto none = [](const Configuration&, const Configuration&) { return false; };
    CHECK_FALSE(weight_function(mu, nu, none).has_value());
    CHECK_FALSE(decompose(mu, nu, none).has_value());
}

TEST_CASE("max-flow feasibility agrees with the exact rational oracle") {
    Program p = token_program();
    std::vector<Configuration> tokens;
    for (int k = 0; k < 6; ++k) tokens.push_back(token_config(p, k));

    std::mt19937_64 rng(616);
    std::uniform_int_distribution<std::size_t> support(1, 4);
    std::uniform_real_distribution<double> density(0.15, 0.9);

    int agree = 0;
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t m = support(rng), k = support(rng);
        RationalFlowInstance inst;
        inst.mu = random_rational_dist(m, rng);
        inst.nu = random_rational_dist(k, rng);
        double dens = density(rng);
        inst.related.assign(m, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j)
                inst.related[i][j] = std::uniform_real_distribution<double>(0, 1)(rng) < dens;

        Distribution mu, nu;
        std::vector<Configuration> mu_cfg, nu_cfg;
        for (std::size_t i = 0; i < m; ++i) {
            mu_cfg.push_back(tokens[i]);
            mu.add(tokens[i], inst.mu[i].to_double());
        }
        for (std::size_t j = 0; j < k; ++j) {
            nu_cfg.push_back(tokens[j]);
            nu.add(tokens[j], inst.nu[j].to_double());
        }
        // distinct token terms never merge, so supports stay aligned with the
        // instance rows/columns (entries are sorted by canonical key: the
        // token order must be recovered)
        std::vector<std::vector<bool>> rel(m, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j) rel[i][j] = inst.related[i][j];

        bool exact = rational_feasible(inst);
        bool flow = weight_function(mu, nu, from_matrix(mu_cfg, nu_cfg, rel)).has_value();
        CHECK_MESSAGE(exact == flow, "instance " << iter << ": oracle " << exact << " flow " << flow);
        if (exact == flow) ++agree;
    }
    CHECK(agree == 300);
}

TEST_CASE("for equivalence relations feasibility means equal class masses") {
    Program p = token_program();
    std::vector<Configuration> tokens;
    for (int k = 0; k < 6; ++k) tokens.push_back(token_config(p, k));

    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 150; ++iter) {
        // random partition of the 6 tokens into classes
        std::vector<int> cls(6);
        for (auto& c : cls) c = std::uniform_int_distribution<int>(0, 2)(rng);
        auto related = [&](const Configuration& a, const Configuration& b) {
            int ca = -1, cb = -1;
            for (int k = 0; k < 6; ++k) {
                if (configs_equal(tokens[static_cast<std::size_t>(k)], a)) ca = cls[static_cast<std::size_t>(k)];
                if (configs_equal(tokens[static_cast<std::size_t>(k)], b)) cb = cls[static_cast<std::size_t>(k)];
            }
            return ca == cb;
        };

        auto mu_r = random_rational_dist(3, rng);
        auto nu_r = random_rational_dist(3, rng);
        Distribution mu, nu;
        double class_mu[3] = {0, 0, 0}, class_nu[3] = {0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            mu.add(tokens[static_cast<std::size_t>(i)], mu_r[static_cast<std::size_t>(i)].to_double());
            class_mu[cls[static_cast<std::size_t>(i)]] += mu_r[static_cast<std::size_t>(i)].to_double();
            nu.add(tokens[static_cast<std::size_t>(i + 3)], nu_r[static_cast<std::size_t>(i)].to_double());
            class_nu[cls[static_cast<std::size_t>(i + 3)]] += nu_r[static_cast<std::size_t>(i)].to_double();
        }
        bool equal_masses = true;
        for (int k = 0; k < 3; ++k)
            if (std::abs(class_mu[k] - class_nu[k]) > 1e-9) equal_masses = false;
        bool feasible = weight_function(mu, nu, related).has_value();
        CHECK(feasible == equal_masses);
    }
}
