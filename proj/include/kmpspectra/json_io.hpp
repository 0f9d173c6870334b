#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kmpspectra/hypergraph.hpp"
#include "kmpspectra/polynomial.hpp"
#include "kmpspectra/spectrum.hpp"

namespace kmpspectra {

using nlohmann::json;

/// File schema: {"n": 3, "edges": [{"B": [1,2], "w": "1"}, ...]}.
/// Vertices are 1-based in files. Weights may be JSON numbers or exact
/// strings "p/q"; duplicate subsets are summed. In exact mode non-integer
/// JSON numbers are rejected rather than silently rounded.
template <typename S>
Hypergraph<S> hypergraph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw parse_error("hypergraph json: expected object with 'n' and 'edges'");
    int n = 0;
    try {
        n = j.at("n").get<int>();
    } catch (const json::exception&) {
        throw parse_error("hypergraph json: 'n' must be an integer");
    }
    Hypergraph<S> g(n);
    for (const auto& edge : j.at("edges")) {
        if (!edge.contains("B") || !edge.contains("w"))
            throw parse_error("hypergraph json: edge needs 'B' and 'w'");
        uint32_t mask = 0;
        for (const auto& v : edge.at("B")) {
            int vertex = 0;
            try {
                vertex = v.get<int>();
            } catch (const json::exception&) {
                throw parse_error("hypergraph json: vertex must be an integer");
            }
            if (vertex < 1 || vertex > n)
                throw parse_error("hypergraph json: vertex " + std::to_string(vertex) +
                                  " out of range 1.." + std::to_string(n));
            mask |= 1u << (vertex - 1);
        }
        const auto& w = edge.at("w");
        S weight;
        if (w.is_string()) {
            Rational q = parse_rational(w.get<std::string>());
            if (sgn(q) < 0) throw parse_error("hypergraph json: negative weight");
            weight = scalar_traits<S>::from_rational(q);
        } else if (w.is_number_integer()) {
            long v = w.get<long>();
            if (v < 0) throw parse_error("hypergraph json: negative weight");
            weight = scalar_traits<S>::from_fraction(v, 1);
        } else if (w.is_number_float()) {
            if constexpr (is_exact_scalar_v<S>)
                throw parse_error(
                    "hypergraph json: float weight in exact mode; use \"p/q\" strings");
            else
                weight = static_cast<S>(w.get<double>());
            if (scalar_traits<S>::sign(weight) < 0)
                throw parse_error("hypergraph json: negative weight");
        } else {
            throw parse_error("hypergraph json: weight must be a number or \"p/q\" string");
        }
        g.add_weight(mask, weight);
    }
    return g;
}

template <typename S>
Hypergraph<S> load_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error("malformed JSON in " + path + ": " + e.what());
    }
    return hypergraph_from_json<S>(j);
}

template <typename S>
json hypergraph_to_json(const Hypergraph<S>& g) {
    json edges = json::array();
    for (const auto& [mask, w] : g.weights) {
        json edge;
        edge["B"] = json::array();
        for (int v = 1; v <= g.n; ++v)
            if (mask & (1u << (v - 1))) edge["B"].push_back(v);
        if constexpr (is_exact_scalar_v<S>)
            edge["w"] = rational_to_string(w);
        else
            edge["w"] = w;
        edges.push_back(edge);
    }
    return json{{"n", g.n}, {"edges", edges}};
}

inline std::string format_double(double v, int digits = 15) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

inline json spectrum_to_json(const FloatSpectrum& s) {
    json eig = json::array();
    for (const auto& c : s.clusters)
        eig.push_back(json{{"value", c.value}, {"multiplicity", c.multiplicity}});
    return json{{"operator", s.operator_desc}, {"mode", "float"}, {"eigenvalues", eig}};
}

inline json spectrum_to_json(const ExactSpectrum& s) {
    json eig = json::array();
    for (const auto& [v, m] : s.rational_part)
        eig.push_back(json{{"value", rational_to_string(v)},
                           {"multiplicity", m},
                           {"approx", to_double(v)}});
    json out{{"operator", s.operator_desc}, {"mode", "exact"}, {"eigenvalues", eig}};
    if (!s.residual.empty() && poly::degree(s.residual) > 0) {
        json coeffs = json::array();
        for (const auto& c : s.residual) coeffs.push_back(rational_to_string(c));
        out["unfactored_charpoly_coefficients"] = coeffs;  // lowest degree first
    }
    return out;
}

} // namespace kmpspectra
