/**
 * @file test_bounds.cpp
 * @brief Numerical verification of the Bessel and Kummer bounds.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "magres/bounds.hpp"

using namespace magres::bounds;

TEST_CASE("lemma identifiers") {
    const auto& ids = bound_lemma_ids();
    CHECK(ids.size() == 11);
    CHECK(std::find(ids.begin(), ids.end(), "lem-ik") != ids.end());
    CHECK_THROWS(bound_check("lem-unknown"));
}

TEST_CASE("the I K bound holds with its explicit constant") {
    const auto rep = bound_check("lem-ik");
    CHECK(rep.exact);
    CHECK(rep.within_constant);
    CHECK(rep.passed);
    const double nu = 1.7, z = 3.1;
    for (int j = 0; j <= 1; ++j) {
        const double v = std::cyl_bessel_i(nu + j, z) * std::cyl_bessel_k(nu, z);
        const auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const BoundRow& r) {
            return r.level_value == nu && r.label.find("nu+" + std::to_string(j)) != std::string::npos &&
                   r.label.find("z=3.1") != std::string::npos;
        });
        REQUIRE(it != rep.rows.end());
        CHECK(it->lhs == doctest::Approx(v).epsilon(1e-12));
        CHECK(it->rhs == doctest::Approx(1.0 / (2.0 * nu)));
    }
}

TEST_CASE("the product bound on J J is uniform in lambda") {
    const auto rep = bound_check("lem-jj");
    CHECK(rep.finite);
    CHECK(rep.passed);
}

TEST_CASE("the small-argument J0 constant is 1 - J0(j_{1,1})") {
    const auto rep = bound_check("lem-jy0");
    double worst = 0.0;
    for (const auto& r : rep.rows)
        if (r.label == "|J0-1|") worst = std::max(worst, r.ratio);
    // |J0(z) - 1| / min(z^2, 1) peaks where J0 has its minimum, z = j_{1,1}.
    const double exact = 1.0 - std::cyl_bessel_j(0.0, 3.8317059702075123);
    CHECK(exact == doctest::Approx(1.4027593957).epsilon(1e-9));
    CHECK(worst <= exact + 1e-12);
    CHECK(worst > 1.35);
}
