#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "slk/error.hpp"
#include "slk/forest.hpp"
#include "slk/query.hpp"

using namespace slk;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("SLK_TEST_TMP");
    fs::path dir = fs::path(base ? base : fs::temp_directory_path().string()) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Query make(std::string cmd) {
    Query q;
    q.command = std::move(cmd);
    return q;
}

}  // namespace

TEST_CASE("census rows of d_4 under 1 x Sigma_3 through the query layer") {
    Query q = make("trees");
    q.n = 4;
    q.k = 2;
    q.group = "sigma3-fixing-1";
    const auto r = run_query(q);
    const auto j = nlohmann::json::parse(r.document);
    CHECK(j["orbits"].size() == 4);
    CHECK(j["dims"]["-2"] == 4);
    CHECK(j["prime"] == 3);
    CHECK(j.contains("certified"));
    CHECK(j.contains("truncated"));
    CHECK(j.contains("labels"));
    CHECK(j["policy"] == "rational");
}

TEST_CASE("layer and poincare examples") {
    Query q = make("layer");
    q.n = 3;
    q.sphere = 3;
    q.max_degree = 20;
    const auto r = run_query(q);
    CHECK(r.dims.support() == std::vector<int>{9, 10, 13, 14, 17, 18});
    CHECK(r.dims.certified);

    Query pq = make("poincare");
    pq.gens = "x:2";
    pq.prime = 5;
    pq.max_degree = 3;
    CHECK(run_query(pq).dims.dims == std::map<int, std::size_t>{{2, 1}, {3, 1}});
}

TEST_CASE("json key order is fixed") {
    Query q = make("basis");
    q.n = 3;
    q.sphere = 3;
    q.max_degree = 14;
    const std::string doc = run_query(q).document;
    std::size_t last = 0;
    for (const char* key : {"\"prime\"", "\"object\"", "\"policy\"", "\"dims\"", "\"labels\"", "\"certified\"",
                            "\"truncated\""}) {
        const std::size_t at = doc.find(key);
        REQUIRE(at != std::string::npos);
        CHECK(at >= last);
        last = at;
    }
    CHECK(doc.find("bQ^2 i(3)") != std::string::npos);
}

TEST_CASE("csv and text renderings") {
    Query q = make("poincare");
    q.gens = "x:2";
    q.max_degree = 3;
    q.format = "csv";
    const std::string csv = run_query(q).document;
    CHECK(csv.rfind("prime,object,policy,certified,truncated,degree,rank,label\n", 0) == 0);
    CHECK(csv.find(",3,1,\"[x,x]\"") != std::string::npos);
    q.format = "text";
    CHECK(run_query(q).document.find("degree") != std::string::npos);
    q.format = "xml";
    CHECK_THROWS_AS(run_query(q), UsageError);
}

TEST_CASE("usage and scope errors carry their kinds") {
    Query q = make("layer");
    q.n = 3;
    q.sphere = 1;
    q.prime = 4;
    CHECK_THROWS_AS(run_query(q), UsageError);
    q.prime = 3;
    q.policy = "loose";
    CHECK_THROWS_AS(run_query(q), UsageError);
    q.policy = "rational";
    q.min_degree = 10;
    q.max_degree = 5;
    CHECK_THROWS_AS(run_query(q), UsageError);
    q.min_degree.reset();
    q.n = 9;
    CHECK_THROWS_AS(run_query(q), UnsupportedError);
    CHECK_THROWS_AS(run_query(make("frobnicate")), UsageError);
    Query missing = make("layer");
    missing.sphere = 1;
    CHECK_THROWS_AS(run_query(missing), UsageError);
}

TEST_CASE("ehp routing") {
    Query q = make("ehp");
    q.n = 3;
    q.sphere = 2;
    q.max_degree = 40;
    const auto j = nlohmann::json::parse(run_query(q).document);
    CHECK(j["report"]["first_discrepancy"] == 4);
    CHECK(j["report"]["agree"] == false);
    q.n = 2;
    q.sphere = 4;
    const auto e = nlohmann::json::parse(run_query(q).document);
    CHECK(e["report"]["agree"] == true);
    CHECK(e["report"]["offset"] == -2);
}

TEST_CASE("complex export") {
    Query q = make("complex");
    q.n = 3;
    const auto j = nlohmann::json::parse(run_query(q).document);
    CHECK(j["dims"]["-2"] == 2);
    CHECK(j["complex"]["cells"]["-1"].size() == 1);
    CHECK(j["complex"]["cells"]["-2"].size() == 3);
    CHECK(j["complex"]["differentials"][0]["entries"].size() == 3);
}

TEST_CASE("tree cache: cold, warm and corrupt") {
    const fs::path dir = scratch("cache");
    CHECK_FALSE(warm_tree_cache(dir.string(), 5));
    const fs::path file = dir / "trees-n5.slk";
    REQUIRE(fs::exists(file));
    const std::string body = slurp(file);
    CHECK(body.rfind("SLK1 n=5\n", 0) == 0);
    CHECK(body.find("END 236\n") != std::string::npos);
    CHECK(warm_tree_cache(dir.string(), 5));
    CHECK(slurp(file) == body);

    // Bad header.
    {
        std::ofstream out(file, std::ios::trunc);
        out << "SLK0 n=5\n(1,2,3,4,5)\nEND 1\n";
    }
    CHECK_FALSE(warm_tree_cache(dir.string(), 5));
    CHECK(slurp(file) == body);
    // Truncated file.
    {
        std::ofstream out(file, std::ios::trunc);
        out << body.substr(0, body.size() / 2);
    }
    CHECK_FALSE(warm_tree_cache(dir.string(), 5));
    CHECK(slurp(file) == body);
    // A tree replaced by a duplicate keeps the count but fails validation.
    {
        std::string bad = body;
        const std::size_t second = bad.find('\n', bad.find('\n') + 1) + 1;
        const std::size_t third = bad.find('\n', second) + 1;
        bad.replace(second, third - second, bad.substr(bad.find('\n') + 1, second - bad.find('\n') - 1));
        std::ofstream out(file, std::ios::trunc);
        out << bad;
    }
    CHECK_FALSE(warm_tree_cache(dir.string(), 5));
    CHECK(slurp(file) == body);
    CHECK(enumerate_all_trees(5).size() == 236);
}

TEST_CASE("documents are identical with and without the cache") {
    const fs::path dir = scratch("same");
    Query q = make("census");
    q.n = 5;
    const std::string cold = run_query(q).document;
    q.cache_dir = dir.string();
    const std::string first = run_query(q).document;
    const std::string second = run_query(q).document;
    CHECK(first == cold);
    CHECK(second == cold);
}
