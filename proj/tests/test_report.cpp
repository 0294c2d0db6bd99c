#include "hmlab/report.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hmlab/quadratic.hpp"

using hmlab::Json;
using hmlab::Quadratic;

TEST_CASE("scalar formatting") {
    CHECK(hmlab::str_of(mpz_class(-12)) == "-12");
    CHECK(hmlab::str_of(mpq_class(11, 4)) == "11/4");
    CHECK(hmlab::str_of(mpq_class(5)) == "5");
    CHECK(hmlab::str_of(Quadratic(mpq_class(7, 2))) == "7/2");
    std::string s = hmlab::str_of(Quadratic(mpq_class(1), mpq_class(-1, 2), 2));
    CHECK(s.find("sqrt(2)") != std::string::npos);
}

TEST_CASE("envelope carries the schema tag and echoes its inputs") {
    Json params = Json::object();
    params["n"] = 3;
    Json result = Json::object();
    result["ok"] = true;
    Json env = hmlab::envelope("demo", params, result);
    CHECK(env.at("schema") == hmlab::kSchemaTag);
    CHECK(env.at("command") == "demo");
    CHECK(env.at("params").at("n") == 3);
    CHECK(env.at("result").at("ok") == true);
    // Key order is part of the output contract.
    CHECK(env.dump().rfind("{\"schema\":\"hm-lab/1\",\"command\":\"demo\"", 0) ==
          0);
}

TEST_CASE("json serialization is stable across repeated dumps") {
    hmlab::Enclosure e = Quadratic(mpq_class(1), mpq_class(-1, 2), 2).enclose(96);
    Json j = hmlab::json_of(e);
    CHECK(j.dump() == hmlab::json_of(e).dump());
    CHECK(j.contains("lo"));
    CHECK(j.contains("hi"));
    CHECK(j.contains("log2_width"));
}

TEST_CASE("csv emitters produce a header and one line per row") {
    hmlab::ContinuedFraction cf = hmlab::expand(
        hmlab::RealScalar(Quadratic(mpq_class(1), mpq_class(-1, 2), 2)), 6);
    hmlab::ConvergentTable table(cf);
    std::string csv = hmlab::table_csv(table);
    std::istringstream in(csv);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++lines;
        if (lines == 1) {
            CHECK(line == "n,a,p,q");
        } else {
            CHECK(std::count(line.begin(), line.end(), ',') == 3);
        }
    }
    CHECK(lines == table.rows().size() + 1);

    std::string u = hmlab::useq_csv({{0, mpz_class(0)}, {1, mpz_class(2)}});
    CHECK(u == "m,u\n0,0\n1,2\n");
}
