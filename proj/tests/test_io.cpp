#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "shadowkit/generators.hpp"
#include "shadowkit/io.hpp"

using namespace shadowkit;

namespace {

std::string data(const std::string& name) { return std::string(SHADOWKIT_DATA_DIR) + "/" + name; }

void expect_parse_error(const std::string& text, const std::string& fragment) {
    try {
        parse_document(text);
        FAIL() << "accepted: " << text;
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Parse, FourCycle) {
    const HypergraphDocument doc = parse_document(R"({"n":4,"r":2,"edges":[[0,1],[1,2],[2,3],[3,0]],"name":"c4"})");
    EXPECT_EQ(doc.name, "c4");
    EXPECT_EQ(doc.graph.n(), 4);
    EXPECT_EQ(doc.graph.r(), 2);
    EXPECT_EQ(doc.graph.size(), 4u);
    EXPECT_TRUE(doc.graph.has_edge(from_members({0, 3})));
}

TEST(Parse, EmptyGraph) {
    const KGraph g = parse_hypergraph(R"({"n":5,"r":3,"edges":[]})");
    EXPECT_TRUE(g.empty());
    EXPECT_EQ(g.n(), 5);
}

TEST(Parse, Errors) {
    expect_parse_error(R"({"n":4,"r":2,"edges":[[0,1],[1,2,3]]})", "edges[1]: edge size != r");
    expect_parse_error(R"({"n":4,"r":2,"edges":[[0,1],[1,0]]})", "edges[1]: duplicate edge");
    expect_parse_error(R"({"n":4,"r":2,"edges":[[0,4]]})", "edges[0]: vertex out of range");
    expect_parse_error(R"({"n":4,"r":2,"edges":[[1,1]]})", "repeated vertex");
    expect_parse_error(R"({"n":4,"r":2,"edges":[[0,"1"]]})", "vertex must be an integer");
    expect_parse_error(R"({"n":4,"r":2,"edges":[3]})", "edge must be an array");
    expect_parse_error(R"({"n":4,"r":2,"edges":[[0,1])", "malformed document");
    expect_parse_error(R"([1,2])", "document must be an object");
    expect_parse_error(R"({"r":2,"edges":[]})", "missing field 'n'");
    expect_parse_error(R"({"n":4.5,"r":2,"edges":[]})", "field 'n' must be an integer");
    expect_parse_error(R"({"n":65,"r":2,"edges":[]})", "field 'n' must lie in [0, 64]");
    expect_parse_error(R"({"n":4,"r":5,"edges":[]})", "field 'r' must lie in [0, n]");
    expect_parse_error(R"({"n":4,"r":2})", "field 'edges' must be an array");
    expect_parse_error(R"({"n":4,"r":2,"edges":[],"name":3})", "field 'name' must be a string");
}

TEST(Serialize, CanonicalOrder) {
    const KGraph g = parse_hypergraph(R"({"n":4,"r":2,"edges":[[3,2],[1,0],[2,0]]})");
    EXPECT_EQ(serialize(g), R"({"edges":[[0,1],[0,2],[2,3]],"n":4,"r":2})");
}

TEST(Serialize, RoundTrip) {
    std::mt19937_64 rng(91);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(n, 5) + 1));
        const KGraph g = gen_random(n, r, rng() % (std::min<Count>(binomial(n, r), 40) + 1), rng());
        const std::string text = serialize(g);
        EXPECT_EQ(parse_hypergraph(text), g);
        EXPECT_EQ(serialize(parse_hypergraph(text)), text);
        const HypergraphDocument named{g, "x"};
        EXPECT_EQ(parse_document(serialize(named)).name, "x");
    }
}

TEST(Load, Fixtures) {
    EXPECT_EQ(load_document(data("c4.json")).graph.size(), 4u);
    EXPECT_EQ(load_document(data("triangle.json")).graph.size(), 3u);
    EXPECT_EQ(load_document(data("star_6_2.json")).graph, gen_star(6, 2, 0));
    EXPECT_EQ(load_document(data("star_minus_edge_6_2.json")).graph.size(), 4u);
    EXPECT_EQ(load_document(data("k3_5.json")).graph, complete_graph(5, 3));
}

TEST(Load, Errors) {
    EXPECT_THROW(load_document(data("bad_edge_size.json")), parse_error);
    EXPECT_THROW(load_document(data("does_not_exist.json")), parse_error);
}

TEST(Load, WrittenFile) {
    const std::string path = ::testing::TempDir() + "/shadowkit_io_roundtrip.json";
    const KGraph g = gen_star_perturbed(8, 3, 2, 3, 1, 7);
    std::ofstream(path) << serialize(g);
    EXPECT_EQ(load_document(path).graph, g);
}
