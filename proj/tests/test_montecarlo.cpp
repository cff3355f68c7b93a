#include <catch2/catch_amalgamated.hpp>

#include "pgal/emit.hpp"
#include "pgal/montecarlo.hpp"

using namespace pgal;

namespace {
ExperimentConfig base_config(int n, uint64_t p, Mode mode, uint64_t samples, uint64_t seed) {
    ExperimentConfig c;
    c.p = p;
    c.n = n;
    c.mode = mode;
    c.samples = samples;
    c.seed = seed;
    c.threads = 1;
    return c;
}

uint64_t row_count(const ExperimentReport& r, const std::string& label) {
    for (const auto& row : r.rows)
        if (row.label == label) return row.count;
    throw std::logic_error("missing row " + label);
}
}  // namespace

TEST_CASE("reports are independent of the thread count", "[montecarlo]") {
    auto cfg = base_config(3, 5, Mode::GaloisGroups, 20000, 424242);
    cfg.threads = 1;
    auto a = run(cfg);
    cfg.threads = 5;
    auto b = run(cfg);
    CHECK(emit::render_json(emit::report_document(a)) == emit::render_json(emit::report_document(b)));
}

TEST_CASE("group tallies are the type tallies, refined", "[montecarlo]") {
    auto groups = run(base_config(3, 5, Mode::GaloisGroups, 30000, 7));
    auto types = run(base_config(3, 5, Mode::SplittingTypes, 30000, 7));
    CHECK(row_count(types, "(3)") == row_count(groups, "C3") + row_count(groups, "S3"));
    CHECK(row_count(types, "(2 1)") == row_count(groups, "C2"));
    CHECK(row_count(types, "(1 1 1)") == row_count(groups, "Id"));
}

TEST_CASE("the distribution depends only on q, not on the ramification index", "[montecarlo]") {
    auto cfg1 = base_config(2, 5, Mode::GaloisGroups, 100000, 11);
    cfg1.f = 2;
    cfg1.e = 1;
    auto r1 = run(cfg1);
    auto cfg3 = cfg1;
    cfg3.e = 3;
    auto r3 = run(cfg3);
    CHECK(r1.all_pass);
    CHECK(r3.all_pass);
    double f1 = static_cast<double>(row_count(r1, "Id")) / cfg1.samples;
    double f3 = static_cast<double>(row_count(r3, "Id")) / cfg3.samples;
    // both target 25/52; they agree within joint noise
    double sigma = std::sqrt(2 * 0.25 / static_cast<double>(cfg1.samples));
    CHECK(std::fabs(f1 - f3) < 4 * sigma);
}

TEST_CASE("case-tag frequencies match the case masses", "[montecarlo]") {
    const uint64_t N = 200000;
    auto rep = run(base_config(3, 5, Mode::SplittingTypes, N, 12345));
    double q = 5;
    double norm = 1.0 - std::pow(q, -5.0);
    std::map<std::string, uint64_t> hist(rep.case_histogram.begin(), rep.case_histogram.end());

    auto within4 = [&](uint64_t count, double mass) {
        double p = mass / norm;
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(N));
        return std::fabs(static_cast<double>(count) / static_cast<double>(N) - p) <= 4 * sigma;
    };
    CHECK(within4(hist["case1"], (1 / q) * (1 - 1 / q)));
    CHECK(within4(hist["case2"], std::pow(q, -2.0) * (1 / q - std::pow(q, -2.0))));
    CHECK(within4(hist["case3"], (std::pow(q, -2.0) - std::pow(q, -3.0)) * std::pow(q, -2.0)));
    CHECK(within4(hist["case4"], (1 / q - std::pow(q, -2.0)) / q));
    uint64_t case5 = hist["case5A"] + hist["case5B"] + hist["case5C"] + hist["case5D"];
    CHECK(within4(case5, 1 - 1 / q));
    CHECK(within4(hist["case5D"], (1 - 1 / q) / q));
}

TEST_CASE("higher-degree sampling defers at rate 1/q", "[montecarlo]") {
    auto rep = run(base_config(5, 7, Mode::SplittingTypes, 100000, 5));
    CHECK(rep.all_pass);  // includes the deferred row at exact value 1/q
    CHECK(rep.deferred > 0);
}

TEST_CASE("star conditioning matches the conditional masses", "[montecarlo]") {
    auto rep = run(base_config(3, 7, Mode::StarConditioned, 100000, 99));
    CHECK(rep.all_pass);
    CHECK(rep.conditioned_total + rep.deferred == 100000);
    // conditional values: 35/294, 147/294, 112/294
    for (const auto& row : rep.rows) {
        if (row.label == "(1 1 1)") CHECK(*row.exact == make_rat(35, 294));
        if (row.label == "(2 1)") CHECK(*row.exact == make_rat(1, 2));
        if (row.label == "(3)") CHECK(*row.exact == make_rat(112, 294));
    }
}

TEST_CASE("unramified mode asserts only the uncontested rows", "[montecarlo]") {
    auto rep = run(base_config(3, 5, Mode::Unramified, 50000, 31));
    CHECK(rep.all_pass);
    for (const auto& row : rep.rows) {
        if (row.label == "(2 1)" || row.label == "unramified-total" || row.label == "cond-trivial")
            CHECK_FALSE(row.asserted);
        if (row.label == "(1 1 1)" || row.label == "(3)") CHECK(row.asserted);
    }
    // the (2 1) empirical mass sits far below the all-of-case-5 closed form:
    // the deflated quadratic is ramified with probability q/(q+1)
    for (const auto& row : rep.rows)
        if (row.label == "(2 1)") CHECK(*row.z < -10);

    auto rep2 = run(base_config(2, 5, Mode::Unramified, 50000, 32));
    CHECK(rep2.all_pass);
    for (const auto& row : rep2.rows)
        if (row.label != "cond-trivial") CHECK(row.asserted);
}

TEST_CASE("an S3 draw never appears at q = 1 mod 3", "[montecarlo]") {
    auto rep = run(base_config(3, 7, Mode::GaloisGroups, 50000, 64));
    CHECK(row_count(rep, "S3") == 0);
    CHECK(rep.all_pass);
}

TEST_CASE("undetermined draws stay under the cap tail", "[montecarlo]") {
    auto cfg = base_config(2, 5, Mode::SplittingTypes, 200000, 2024);
    cfg.precision_cap = 8;
    auto rep = run(cfg);
    // exact tail mass is q^-8; the asserted budget is 10x that
    CHECK(rep.all_pass);
    CHECK(rep.undetermined <= 5);
}

TEST_CASE("invalid configurations are rejected", "[montecarlo]") {
    CHECK_THROWS_AS(run(base_config(4, 5, Mode::GaloisGroups, 10, 0)), std::invalid_argument);
    CHECK_THROWS_AS(run(base_config(3, 3, Mode::SplittingTypes, 10, 0)), std::invalid_argument);
    CHECK_THROWS_AS(run(base_config(1, 5, Mode::SplittingTypes, 10, 0)), std::invalid_argument);
    auto cfg = base_config(2, 5, Mode::SplittingTypes, 10, 0);
    cfg.precision_cap = 0;
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("sweep errors shrink with q", "[montecarlo]") {
    SweepResult res = sweep(2, {Int(5), Int(101)}, 40000, 9, 1);
    REQUIRE(res.rows.size() == 2);
    // |P((2)) - 1/2| is about 1/(2q+2): clearly visible at q=5, tiny at q=101
    size_t idx2 = res.types[0] == SplittingType::of_partition({2}) ? 0 : 1;
    CHECK(res.rows[0].abs_error[idx2] > 0.05);
    CHECK(res.rows[1].abs_error[idx2] < 0.02);
}
