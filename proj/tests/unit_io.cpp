#include <doctest.h>

#include <fstream>

#include "waveset/io.hpp"
#include "waveset/svg.hpp"

using namespace waveset;

namespace {

json minimal_config() {
    return json{
        {"command", "verify"},
        {"lattice", {{"basis", json::array({json::array({1.0, 0.0}), json::array({0.0, 1.0})})}}},
        {"regions",
         {{"omega", json::array({json::array({json::array({0.0, 0.0}), json::array({1.0, 0.0}),
                                              json::array({1.0, 1.0}),
                                              json::array({0.0, 1.0})})})}}},
        {"tolerances", {{"additive", 1e-6}}},
        {"seed", 7}};
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("round trip is byte-identical for canonical input") {
        const JobConfig cfg = parse_config(minimal_config());
        const std::string canonical = serialize_config(cfg);
        const JobConfig reloaded = parse_config(json::parse(canonical));
        CHECK(serialize_config(reloaded) == canonical);
    }
    SUBCASE("missing lattice names the key") {
        json j = minimal_config();
        j.erase("lattice");
        try {
            parse_config(j);
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("lattice") != std::string::npos);
        }
    }
    SUBCASE("negative tolerance is rejected") {
        json j = minimal_config();
        j["tolerances"]["additive"] = -1.0;
        CHECK_THROWS_AS(parse_config(j), config_error);
    }
    SUBCASE("unknown command is rejected") {
        json j = minimal_config();
        j["command"] = "explode";
        CHECK_THROWS_AS(parse_config(j), config_error);
    }
    SUBCASE("nonconvex region literal fails with its key path") {
        json j = minimal_config();
        j["regions"]["omega"] = json::array(
            {json::array({json::array({0.0, 0.0}), json::array({2.0, 0.0}),
                          json::array({2.0, 2.0}), json::array({1.0, 0.5}),
                          json::array({0.0, 2.0})})});
        try {
            parse_config(j);
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("regions.omega") != std::string::npos);
        }
    }
    SUBCASE("dilation spec round trip") {
        DilationSpec spec;
        spec.rotation_order = 4;
        spec.expansive_base = Mat2::diag(2, 3);
        spec.n_min = -8;
        spec.n_max = 8;
        const DilationSpec back =
            dilation_spec_from_json(dilation_spec_to_json(spec), "dilation");
        CHECK(back.rotation_order == 4);
        CHECK(back.n_min == -8);
        CHECK(frobenius_distance(back.expansive_base, spec.expansive_base) == 0.0);
    }
}

TEST_CASE("sig12 rounds report masses") {
    CHECK(sig12(0.0) == 0.0);
    CHECK(sig12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-12));
    CHECK(sig12(123456789012345.0) == doctest::Approx(1.23456789012e14).epsilon(1e-11));
}

TEST_CASE("svg rendering") {
    SUBCASE("one polygon element per convex piece") {
        const Region r = region_subtract(Region::rect(0, 0, 2, 2), Region::rect(0.5, 0.5, 1, 1));
        const std::string doc = render_svg_string({{r, "test"}});
        std::size_t count = 0;
        for (std::size_t pos = doc.find("<polygon"); pos != std::string::npos;
             pos = doc.find("<polygon", pos + 1)) {
            ++count;
        }
        CHECK(count == r.piece_count());
        CHECK(doc.find("viewBox") != std::string::npos);
    }
    SUBCASE("empty layer list is an error") {
        CHECK_THROWS_AS(render_svg_string({}), error);
    }
    SUBCASE("unwritable path is an error") {
        CHECK_THROWS_AS(render_svg({{Region::rect(0, 0, 1, 1), ""}},
                                   "/nonexistent-dir-waveset/out.svg"),
                        error);
    }
}
