#include "gc/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "gc");
    std::ostringstream out, err;
    const int code = gc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(GC_DATA_DIR) + "/" + name; }

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("hom and iso")
{
    auto r = run({"hom", data("K3.str"), data("K2.str")});
    CHECK(r.code == 0);
    CHECK(json_of(r)["verdict"] == false);
    r = run({"hom", "--count", data("K2.str"), data("K3.str")});
    CHECK(json_of(r)["value"] == 6);
    r = run({"hom", data("K2.str"), data("K3.str")});
    CHECK(json_of(r)["witness"] == nlohmann::json{{"a", "a"}, {"b", "b"}});
    CHECK(json_of(run({"iso", data("C6.str"), data("C3C3.str")}))["verdict"] == false);
}

TEST_CASE("coalgebra numbers and parameters")
{
    auto r = run({"coalg-number", "--comonad", "ef", data("K3.str")});
    CHECK(json_of(r)["value"] == 3);
    CHECK(json_of(run({"coalg-number", "--comonad", "pebble", data("C4.str")}))["value"] == 3);
    CHECK(run({"treedepth", data("P4.str")}).out == "3\n");
    CHECK(run({"treewidth", data("K4.str")}).out == "3\n");
    r = run({"coalg-number", "--comonad", "ef", "--max-k", "2", data("K3.str")});
    CHECK(json_of(r)["value"].is_null());
}

TEST_CASE("games")
{
    auto r = run({"ef", "--k", "2", "--mode", "ep", data("L3.str"), data("L2.str")});
    CHECK(r.out == "{\"winner\":\"Spoiler\",\"witness\":\"(exists x (and (exists y (< y x)) (exists y (< x y))))\"}\n");
    r = run({"ef", "--k", "1", "--mode", "ep", data("L3.str"), data("L2.str")});
    auto j = json_of(r);
    CHECK(j["winner"] == "Duplicator");
    CHECK(j["witness"]["table"].size() == 3);
    CHECK(json_of(run({"pebble", "--k", "3", "--mode", "ep", data("K3.str"), data("K2.str")}))["winner"] == "Spoiler");
    CHECK(json_of(run({"pebble", "--k", "2", "--mode", "count", "--serial", data("C3C3.str"), data("C6.str")}))["winner"] ==
          "Duplicator");
    j = json_of(run({"modal", "--k", "1", "--mode", "count", data("K_one.str"), data("K_two.str")}));
    CHECK(j["winner"] == "Spoiler");
    CHECK(j["witness"].is_string());
    // output is deterministic
    CHECK(run({"pebble", "--k", "2", "--mode", "full", data("C4.str"), data("C6.str")}).out ==
          run({"pebble", "--k", "2", "--mode", "full", data("C4.str"), data("C6.str")}).out);
}

TEST_CASE("forest output and the path game")
{
    auto r = run({"gk", "--k", "2", data("K2.str")});
    CHECK(r.code == 0);
    CHECK(r.out.find("parent") != std::string::npos);
    const auto tmp = std::filesystem::temp_directory_path() / "gc_gk.forest";
    std::ofstream(tmp) << r.out;
    CHECK(run({"fmt", tmp.string()}).out == r.out);
    CHECK(json_of(run({"arb", tmp.string(), tmp.string()}))["winner"] == "Duplicator");
    std::filesystem::remove(tmp);
    CHECK(run({"unravel", "--k", "3", data("K2_chain.str")}).code == 0);
    CHECK(run({"pk", "--k", "1", "--n", "2", data("L2.str")}).code == 0);
}

TEST_CASE("modal equivalence, evaluation, profiles")
{
    auto j = json_of(run({"modal-eq", "--k", "2", "--mode", "graded", data("K_one.str"), data("K_two.str")}));
    CHECK(j["verdict"] == false);
    j = json_of(run({"modal-eq", "--k", "2", "--mode", "plain", data("K_one.str"), data("K_two.str")}));
    CHECK(j["verdict"] == true);
    j = json_of(run({"eval", "--formula", "(exists x (E x y))", "--assign", "y=a", data("K3.str")}));
    CHECK(j["verdict"] == true);
    j = json_of(run({"eval", "--modal", "--formula", "(gdia 2 R P)", data("K_two.str")}));
    CHECK(j["verdict"] == true);
    j = json_of(run({"lovasz", "--max-size", "3", data("C3C3.str"), data("C6.str")}));
    CHECK(j["verdict"] == "distinguished");
    CHECK(j["counts"] == nlohmann::json::array({12, 0}));
    j = json_of(run({"profile", "--k", "1", "--max-size", "2", data("K2.str")}));
    CHECK(j["value"].size() == 5);
    j = json_of(run({"--timing", "hom", data("K3.str"), data("K2.str")}));
    CHECK(j.contains("timing_ms"));
}

TEST_CASE("error handling and exit codes")
{
    auto r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(run({"hom", "--bogus", data("K3.str"), data("K2.str")}).code == 2);
    CHECK(run({"hom", data("K3.str"), data("missing.str")}).code == 3);
    CHECK(run({"eval", "--formula", "(exists x", data("K3.str")}).code == 2);
    CHECK(run({"pebble", "--k", "0", data("K3.str"), data("K2.str")}).code == 3);
    CHECK(run({"hom", data("K3.str"), data("L3.str")}).code == 3);
    CHECK(run({}).code == 2);
}

TEST_CASE("fmt is idempotent")
{
    for (const char* f : {"K3.str", "L3.str", "K_two.str"}) {
        const auto once = run({"fmt", data(f)});
        REQUIRE(once.code == 0);
        const auto tmp = std::filesystem::temp_directory_path() / ("gc_fmt_" + std::string(f));
        std::ofstream(tmp) << once.out;
        CHECK(run({"fmt", tmp.string()}).out == once.out);
        std::filesystem::remove(tmp);
    }
}

}
