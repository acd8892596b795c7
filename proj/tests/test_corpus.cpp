// Regression corpus: every fixture germ is analyzed and compared field by
// field against its frozen .expected.json sidecar.
#include "test_helpers.hpp"

#include <filesystem>
#include <fstream>

using namespace axialcurv;
using namespace testutil;

namespace {

nlohmann::json load(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

void check_vector(const nlohmann::json& expect, const Vec& got, double tol,
                  const std::string& what) {
    REQUIRE_MESSAGE(expect.size() == static_cast<std::size_t>(got.size()), what);
    for (int i = 0; i < got.size(); ++i)
        CHECK_MESSAGE(std::fabs(expect[i].get<double>() - got(i)) <= tol, what, "[", i, "]");
}

} // namespace

TEST_CASE("analysis reproduces every frozen fixture sidecar") {
    const std::filesystem::path dir = AXIALCURV_FIXTURE_DIR;
    int covered = 0;
    std::vector<std::filesystem::path> germs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > 14 && name.ends_with(".expected.json")) continue;
        if (name.ends_with(".json")) germs.push_back(entry.path());
    }
    std::sort(germs.begin(), germs.end());
    REQUIRE(germs.size() >= 20);

    for (const auto& germ_path : germs) {
        CAPTURE(germ_path.string());
        const std::filesystem::path sidecar =
            germ_path.parent_path() /
            (germ_path.stem().string() + ".expected.json");
        REQUIRE_MESSAGE(std::filesystem::exists(sidecar), "missing sidecar for ",
                        germ_path.string());
        const nlohmann::json expect = load(sidecar);

        const Analysis a = analyze(parse_germ_file(germ_path.string()));
        ++covered;

        CHECK(orbit_name(a.orbit.orbit) == expect["orbit"].get<std::string>());
        CHECK(a.shape.tag == expect["locus"].get<std::string>());
        CHECK(a.shape.detail == expect["locus_detail"].get<std::string>());
        CHECK(a.frame.case_tag == expect["frame_case"].get<std::string>());
        CHECK(a.frame.unique == expect["frame_unique"].get<bool>());

        const auto& fv = expect["frame_vectors"];
        REQUIRE(fv.size() == static_cast<std::size_t>(a.frame.l));
        for (int c = 0; c < a.frame.l; ++c)
            check_vector(fv[c], a.frame.v.col(c), 1e-9, "frame v" + std::to_string(c + 1));

        const auto& ax = expect["axial"];
        REQUIRE(ax.size() == a.axial.directions.size());
        for (std::size_t i = 0; i < ax.size(); ++i) {
            const DirectionalReport& d = a.axial.directions[i];
            check_vector(ax[i]["v"], d.v, 1e-9, "axial v");
            const auto& vals = ax[i]["values"];
            REQUIRE_MESSAGE(vals.size() == d.values.size(), "value count for direction ",
                            i + 1);
            for (std::size_t j = 0; j < d.values.size(); ++j) {
                CHECK(std::fabs(vals[j].get<double>() - d.values[j].value) <= 1e-9);
                CHECK(ax[i]["types"][j].get<std::string>() == d.values[j].type);
            }
        }
        CHECK(a.axial.total_count == expect["axial_total"].get<int>());

        if (expect["umbilic"].is_null()) {
            CHECK_FALSE(a.umbilic.has_value());
        } else {
            REQUIRE(a.umbilic.has_value());
            CHECK(std::fabs(*a.umbilic - expect["umbilic"].get<double>()) <= 1e-9);
        }

        if (expect["extended_vector"].is_null()) {
            CHECK_FALSE(a.extended.has_value());
        } else {
            REQUIRE(a.extended.has_value());
            check_vector(expect["extended_vector"]["v"], a.extended->v, 1e-9, "extended v");
            CHECK(std::fabs(a.extended->kappa -
                            expect["extended_vector"]["kappa"].get<double>()) <= 1e-9);
        }

        for (const CheckResult& c : a.checks) {
            REQUIRE_MESSAGE(expect["checks"].contains(c.name), "unexpected check ", c.name);
            CHECK_MESSAGE(c.status == expect["checks"][c.name].get<std::string>(),
                          c.name, ": ", c.detail);
        }

        const auto& warn = expect["warnings"];
        REQUIRE_MESSAGE(warn.size() == a.warnings.size(), "warning count");
        for (std::size_t i = 0; i < a.warnings.size(); ++i)
            CHECK(a.warnings[i] == warn[i].get<std::string>());
    }
    CHECK(covered >= 20);
}
