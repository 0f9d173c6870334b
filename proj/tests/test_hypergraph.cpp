#include <catch2/catch_amalgamated.hpp>

#include "kmpspectra/hypergraph.hpp"
#include "kmpspectra/json_io.hpp"

using namespace kmpspectra;

namespace {

Hypergraph<Rational> path3() {
    Hypergraph<Rational> g(3);
    g.add_weight(0b011, Rational(1));  // {1,2}
    g.add_weight(0b110, Rational(1));  // {2,3}
    return g;
}

} // namespace

TEST_CASE("validate flags negative weights and acknowledges the zero hypergraph") {
    Hypergraph<Rational> g(3);
    g.add_weight(0b011, Rational(-1));
    auto rep = validate(g);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);

    Hypergraph<Rational> zero(3);
    CHECK(validate(zero).ok);

    CHECK(validate(path3()).ok);
}

TEST_CASE("validate notes inert small edges") {
    Hypergraph<Rational> g(3);
    g.add_weight(0b001, Rational(2));  // singleton
    auto rep = validate(g);
    CHECK(rep.ok);
    CHECK(rep.notes.size() == 1);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(path3()));

    Hypergraph<Rational> g(3);
    g.add_weight(0b011, Rational(1));
    CHECK_FALSE(is_connected(g));  // vertex 3 isolated

    Hypergraph<Rational> full(4);
    full.add_weight(0b1111, Rational(1));
    CHECK(is_connected(full));

    // singleton weights do not connect anything
    Hypergraph<Rational> singles(2);
    singles.add_weight(0b01, Rational(1));
    singles.add_weight(0b10, Rational(1));
    CHECK_FALSE(is_connected(singles));
}

TEST_CASE("phi profile") {
    auto p = phi(path3());
    CHECK(p.per_vertex == std::vector<Rational>{Rational(1), Rational(2), Rational(1)});
    CHECK(p.minimum == Rational(1));

    Hypergraph<Rational> zero(3);
    auto pz = phi(zero);
    CHECK(pz.per_vertex == std::vector<Rational>(3, Rational(0)));
    CHECK(pz.minimum == Rational(0));

    // all pairs weight 1 on 3 vertices: every vertex sits in 2 pairs
    std::vector<Rational> c = {Rational(0), Rational(0), Rational(1), Rational(0)};
    auto pm = phi(mean_field(3, c));
    CHECK(pm.per_vertex == std::vector<Rational>(3, Rational(2)));
}

TEST_CASE("mean_field generator") {
    std::vector<Rational> c = {Rational(0), Rational(0), Rational(1), Rational(0)};
    auto g = mean_field(3, c);
    CHECK(g.weights.size() == 3);
    for (const auto& [mask, w] : g.weights) {
        CHECK(popcount32(mask) == 2);
        CHECK(w == Rational(1));
    }

    std::vector<Rational> c4 = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)};
    CHECK(mean_field(4, c4).weights.size() == 4);

    std::vector<Rational> c5(6, Rational(0));
    c5[5] = Rational(1);
    auto g5 = mean_field(5, c5);
    REQUIRE(g5.weights.size() == 1);
    CHECK(g5.weights.begin()->first == 0b11111u);

    std::vector<Rational> bad = {Rational(0), Rational(-1), Rational(0), Rational(0)};
    CHECK_THROWS_AS(mean_field(3, bad), std::invalid_argument);
}

TEST_CASE("mean_field weights are invariant under vertex relabeling") {
    std::vector<Rational> c = {Rational(0), Rational(2), Rational(1), Rational(0), Rational(3)};
    auto g = mean_field(4, c);
    // relabeling permutes bitmask bits; mean-field weight depends only on size
    for (const auto& [mask, w] : g.weights) CHECK(w == c[popcount32(mask)]);
    // connectivity iff some c_l > 0 with l >= 2
    CHECK(is_connected(g));
    std::vector<Rational> only_small = {Rational(1), Rational(5), Rational(0), Rational(0),
                                        Rational(0)};
    CHECK_FALSE(is_connected(mean_field(4, only_small)));
}

TEST_CASE("codim1 generator") {
    std::vector<Rational> c = {Rational(1), Rational(0), Rational(1)};
    auto g = codim1(3, c);
    REQUIRE(g.weights.size() == 2);
    CHECK(g.weight(0b110) == Rational(1));  // [3]\{1} = {2,3}
    CHECK(g.weight(0b011) == Rational(1));  // [3]\{3} = {1,2}
    // this is exactly the 3-path
    CHECK(g.weights == path3().weights);

    auto g4 = codim1(4, std::vector<Rational>(4, Rational(1)));
    CHECK(g4.weights.size() == 4);
    for (const auto& [mask, w] : g4.weights) CHECK(popcount32(mask) == 3);

    CHECK(codim1(3, std::vector<Rational>(3, Rational(0))).weights.empty());
}

TEST_CASE("codim1 phi identity: phi_x = total - c_x") {
    std::vector<Rational> c = {make_rational(3, 7), Rational(2), Rational(0), make_rational(5, 2)};
    auto g = codim1(4, c);
    auto p = phi(g);
    Rational total = Rational(0);
    for (const auto& w : c) total += w;
    for (int x = 0; x < 4; ++x) CHECK(p.per_vertex[x] == total - c[x]);
}

TEST_CASE("random hypergraph determinism and edge probability extremes") {
    auto a = random_hypergraph<Rational>(4, 0.6, WeightLaw::Uniform01, 42);
    auto b = random_hypergraph<Rational>(4, 0.6, WeightLaw::Uniform01, 42);
    CHECK(a.weights == b.weights);

    auto zero = random_hypergraph<Rational>(4, 0.0, WeightLaw::Unit, 1);
    CHECK(zero.weights.empty());

    auto full = random_hypergraph<Rational>(3, 1.0, WeightLaw::Unit, 7);
    CHECK(full.weights.size() == 4);  // all subsets of size >= 2 on 3 vertices
    for (const auto& [mask, w] : full.weights) CHECK(w == Rational(1));

    // float- and exact-mode generation see the same instance
    auto fd = random_hypergraph<double>(4, 0.6, WeightLaw::Exponential, 42);
    auto fr = random_hypergraph<Rational>(4, 0.6, WeightLaw::Exponential, 42);
    REQUIRE(fd.weights.size() == fr.weights.size());
    auto it = fr.weights.begin();
    for (const auto& [mask, w] : fd.weights) {
        CHECK(mask == it->first);
        CHECK(rational_from_double(w) == it->second);
        ++it;
    }
}

TEST_CASE("hypergraph json round trip and schema rules") {
    json j = json::parse(R"({"n": 3, "edges": [{"B": [1,2], "w": "1"}, {"B": [2,3], "w": "1"}]})");
    auto g = hypergraph_from_json<Rational>(j);
    CHECK(g.weights == path3().weights);

    // duplicates summed
    json dup = json::parse(R"({"n": 2, "edges": [{"B": [1,2], "w": "1/3"}, {"B": [2,1], "w": "1/6"}]})");
    auto gd = hypergraph_from_json<Rational>(dup);
    CHECK(gd.weight(0b11) == make_rational(1, 2));

    // float weight rejected in exact mode, accepted in float mode
    json fl = json::parse(R"({"n": 2, "edges": [{"B": [1,2], "w": 0.5}]})");
    CHECK_THROWS_AS(hypergraph_from_json<Rational>(fl), parse_error);
    auto gf = hypergraph_from_json<double>(fl);
    CHECK(gf.weight(0b11) == 0.5);

    // integers are exact either way
    json iw = json::parse(R"({"n": 2, "edges": [{"B": [1,2], "w": 2}]})");
    CHECK(hypergraph_from_json<Rational>(iw).weight(0b11) == Rational(2));

    // out-of-range vertex
    json oor = json::parse(R"({"n": 2, "edges": [{"B": [1,3], "w": 1}]})");
    CHECK_THROWS_AS(hypergraph_from_json<Rational>(oor), parse_error);

    // round trip
    auto back = hypergraph_from_json<Rational>(hypergraph_to_json(g));
    CHECK(back.weights == g.weights);
}
