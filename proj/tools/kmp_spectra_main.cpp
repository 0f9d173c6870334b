// Command-line front end: spectra of the hypergraph operators, verification
// suites, conjecture sweeps, and Weingarten tables.
//
// Exit codes: 0 ok, 1 usage/input error, 2 resource guard, 3 internal
// invariant breach.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kmpspectra/codim1.hpp"
#include "kmpspectra/json_io.hpp"
#include "kmpspectra/kmp.hpp"
#include "kmpspectra/meanfield.hpp"
#include "kmpspectra/sweep.hpp"
#include "kmpspectra/symgroup.hpp"
#include "kmpspectra/weingarten.hpp"

using namespace kmpspectra;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << text << std::endl;
    }
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find('.') != std::string::npos || item.find('e') != std::string::npos)
            out.push_back(rational_from_double(std::stod(item)));
        else
            out.push_back(parse_rational(item));
    }
    return out;
}

struct RepSpec {
    std::string kind;
    int k = 0, m = 0;
};

RepSpec parse_rep_spec(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad --rep, expected kind:k (e.g. kmp:2)");
    RepSpec spec;
    spec.kind = s.substr(0, colon);
    std::string args = s.substr(colon + 1);
    auto comma = args.find(',');
    try {
        if (comma == std::string::npos) {
            spec.k = std::stoi(args);
        } else {
            spec.k = std::stoi(args.substr(0, comma));
            spec.m = std::stoi(args.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad --rep parameters in '" + s + "'");
    }
    return spec;
}

/// Reads off the codimension-1 weights c_1..c_n; rejects other support.
std::vector<Rational> codim1_weights_of(const Hypergraph<Rational>& g) {
    std::vector<Rational> c(g.n, Rational(0));
    uint32_t full = (1u << g.n) - 1;
    for (const auto& [mask, w] : g.weights) {
        if (sgn(w) == 0) continue;
        if (popcount32(mask) != g.n - 1)
            throw std::invalid_argument("graph is not supported on codimension-1 subsets");
        uint32_t missing = full ^ mask;
        int x = __builtin_ctz(missing) + 1;
        c[x - 1] += w;
    }
    return c;
}

json spectrum_json_for(const Hypergraph<Rational>& g, const RepSpec& spec, bool exact) {
    auto exact_json_of = [&](const Operator<Rational>& op) {
        if (exact) return spectrum_to_json(exact_spectrum(op));
        Operator<double> od;
        od.mat = to_double_matrix(op.mat);
        od.space = op.space;
        od.symmetric = op.symmetric;
        return spectrum_to_json(float_spectrum(od));
    };
    if (spec.kind == "kmp") return exact_json_of(kmp_laplacian(g, spec.k));
    if (spec.kind == "sym-z") return exact_json_of(laplacian_zk(g, spec.k));
    if (spec.kind == "unitary-R") return exact_json_of(laplacian_rkm(g, spec.k, spec.m));
    if (spec.kind == "pure") {
        Poly cp = pure_block_charpoly(g, spec.k);
        if (exact)
            return spectrum_to_json(
                exact_spectrum_of_charpoly(cp, "pure:" + std::to_string(spec.k)));
        FloatSpectrum fs;
        fs.operator_desc = "pure:" + std::to_string(spec.k);
        Operator<double> L = kmp_laplacian(to_double_hypergraph(g), spec.k);
        Matrix<double> U = pure_basis_orthonormal(g.n, spec.k);
        fs.values = symmetric_eigenvalues(U.transpose() * (L.mat * U));
        fs.clusters = cluster_eigenvalues(fs.values, L.mat.max_abs());
        return spectrum_to_json(fs);
    }
    if (spec.kind == "torinv-S") {
        // built through the Haar-integral route, not the particle process
        size_t dim = static_cast<size_t>(multiset_count(g.n, spec.k));
        Operator<Rational> L;
        L.space = "torinv-S:" + std::to_string(spec.k);
        L.symmetric = true;
        L.mat = Matrix<Rational>(dim, dim);
        for (const auto& [mask, w] : g.weights) {
            if (sgn(w) == 0) continue;
            auto pb = projection_torinv_skk<Rational>(mask, g.n, spec.k);
            L.mat += (Matrix<Rational>::identity(dim) - pb.mat).scaled(w);
        }
        return exact_json_of(L);
    }
    if (spec.kind == "codim1-M") {
        Codim1Instance<Rational> inst(g.n, codim1_weights_of(g));
        auto mk = m_k_matrix(inst, spec.k);
        Poly cp = charpoly::berkowitz(mk.mat);
        if (exact) return spectrum_to_json(exact_spectrum_of_charpoly(cp, mk.space));
        FloatSpectrum fs;
        fs.operator_desc = mk.space;
        fs.values = general_real_eigenvalues(to_double_matrix(mk.mat));
        fs.clusters = cluster_eigenvalues(fs.values, mk.mat.max_abs());
        return spectrum_to_json(fs);
    }
    throw std::invalid_argument("unknown --rep kind '" + spec.kind +
                                "' (expected kmp, pure, codim1-M, sym-z, unitary-R, torinv-S)");
}

json verify_path_example() {
    Hypergraph<Rational> g(3);
    g.add_weight(0b011, Rational(1));
    g.add_weight(0b110, Rational(1));
    auto walk = exact_spectrum(kmp_laplacian(g, 1));
    std::vector<std::pair<Rational, int>> walk_expect = {
        {Rational(0), 1}, {make_rational(1, 2), 1}, {make_rational(3, 2), 1}};
    bool walk_ok = walk.rational_part == walk_expect && walk.residual.size() <= 1;

    auto block = exact_spectrum_of_charpoly(pure_block_charpoly(g, 2), "pure:2");
    std::vector<std::pair<Rational, int>> block_expect = {
        {make_rational(2, 3), 1}, {make_rational(4, 3), 1}, {Rational(2), 1}};
    bool block_ok = block.rational_part == block_expect && block.residual.size() <= 1;

    json out;
    out["suite"] = "path-example";
    out["walk_spectrum"] = spectrum_to_json(walk);
    out["two_particle_new_block"] = spectrum_to_json(block);
    out["verdict"] = (walk_ok && block_ok) ? "pass" : "fail";
    return out;
}

json verify_weingarten_suite(int k, long d) {
    auto table = wg_table(k, d);
    Rational sum(0), signed_sum(0);
    for (const auto& cls : partitions_of(k)) {
        CycleType c(cls);
        Rational cs(c.class_size());
        sum += cs * table.at(cls.parts);
        signed_sum += cs * Rational(c.sign()) * table.at(cls.parts);
    }
    Rational rising(1), falling(1);
    for (int i = 0; i < k; ++i) {
        rising *= Rational(static_cast<long>(d + i));
        falling *= Rational(static_cast<long>(d - i));
    }
    bool sum_ok = sum == Rational(1) / rising;
    bool signed_ok = d >= k ? signed_sum == Rational(1) / falling : sgn(signed_sum) == 0;
    json out;
    out["suite"] = "weingarten";
    out["k"] = k;
    out["d"] = d;
    out["sum"] = rational_to_string(sum);
    out["signed_sum"] = rational_to_string(signed_sum);
    out["sum_identity_ok"] = sum_ok;
    out["signed_sum_identity_ok"] = signed_ok;
    bool closed_ok = true;
    if (k == 2 && d >= 2) {
        closed_ok = table.at({1, 1}) == make_rational(1, d * d - 1) &&
                    table.at({2}) == make_rational(-1, d * d * d - d);
        out["order2_closed_forms_ok"] = closed_ok;
    }
    out["verdict"] = (sum_ok && signed_ok && closed_ok) ? "pass" : "fail";
    return out;
}

json verify_kmp_equiv(const std::optional<Hypergraph<Rational>>& graph, int n, int k) {
    std::vector<uint32_t> masks;
    if (graph) {
        n = graph->n;
        for (const auto& [mask, w] : graph->weights)
            if (sgn(w) != 0) masks.push_back(mask);
    } else {
        for (uint32_t mask = 0; mask < (1u << n); ++mask) masks.push_back(mask);
    }
    json out;
    out["suite"] = "kmp-equiv";
    out["n"] = n;
    out["k"] = k;
    json checked = json::array();
    bool all_ok = true;
    for (uint32_t mask : masks) {
        auto raw = projection_torinv_skk<Rational>(mask, n, k);
        auto particle = n_b_operator<Rational>(n, k, mask);
        bool equal = raw.mat == particle.mat;
        all_ok = all_ok && equal;
        checked.push_back(json{{"B", mask_to_string(mask, n)}, {"entrywise_equal", equal}});
    }
    out["edges"] = checked;
    out["verdict"] = all_ok ? "pass" : "fail";
    return out;
}

json verify_sn_containment(const Hypergraph<Rational>& g, int k, bool exact, double tol) {
    json out;
    out["suite"] = "sn-containment";
    out["n"] = g.n;
    out["k"] = k;
    Operator<Rational> small = laplacian_zk(g, k);
    Operator<Rational> big = laplacian_rkm(g, k, k);
    if (exact) {
        Poly ps = charpoly::of_matrix(small.mat);
        TensorBasis basis(g.n, k, k);
        Poly pb = charpoly::by_invariant_blocks(big.mat, tensor_weight_labels(basis));
        bool ok = spectra_contains_exact(ps, pb);
        out["mode"] = "exact";
        out["divides"] = ok;
        out["verdict"] = ok ? "pass" : "fail";
    } else {
        auto es = symmetric_eigenvalues(to_double_matrix(small.mat));
        auto eb = symmetric_eigenvalues(to_double_matrix(big.mat));
        auto rep = spectra_contains_float(es, eb, tol);
        out["mode"] = "float";
        out["tolerance"] = tol;
        json matches = json::array();
        for (auto [v, r] : rep.matches) matches.push_back(json{{"value", v}, {"residual", r}});
        out["matches"] = matches;
        out["unmatched"] = rep.unmatched;
        out["verdict"] = rep.contained ? "pass" : "fail";
    }
    return out;
}

json verify_codim1_suite(int n, const std::vector<Rational>& c, int k_max, bool exact) {
    Codim1Instance<Rational> inst(n, c);
    json out;
    out["suite"] = "codim1";
    out["n"] = n;
    json spectra = json::array();
    std::vector<Poly> polys;
    for (int k = 1; k <= k_max; ++k) {
        Poly cp = charpoly::berkowitz(m_k_matrix(inst, k).mat);
        polys.push_back(cp);
        json entry;
        entry["k"] = k;
        if (exact) {
            entry["spectrum"] = spectrum_to_json(
                exact_spectrum_of_charpoly(cp, "codim1-M:" + std::to_string(k)));
        } else {
            FloatSpectrum fs;
            fs.operator_desc = "codim1-M:" + std::to_string(k);
            fs.values = general_real_eigenvalues(to_double_matrix(m_k_matrix(inst, k).mat));
            fs.clusters = cluster_eigenvalues(fs.values, 1.0);
            entry["spectrum"] = spectrum_to_json(fs);
        }
        spectra.push_back(entry);
    }
    out["m_k_spectra"] = spectra;
    // parity ordering of the smallest eigenvalues
    bool odd_ok = true, even_ok = true;
    for (int k = 1; k + 2 <= k_max; ++k) {
        int cmp = poly::compare_smallest_roots(polys[static_cast<size_t>(k - 1)],
                                               polys[static_cast<size_t>(k + 1)]);
        if (k % 2 == 1 && cmp > 0) odd_ok = false;
        if (k % 2 == 0 && cmp > 0) even_ok = false;
    }
    out["odd_chain_ordered"] = odd_ok;
    out["even_chain_ordered"] = even_ok;
    out["verdict"] = (odd_ok && even_ok) ? "pass" : "fail";
    return out;
}

json verify_mean_field_suite(int n, const std::vector<Rational>& c, int k_max) {
    auto rep = verify_mean_field(n, c, k_max);
    json out;
    out["suite"] = "mean-field";
    out["n"] = n;
    json cj = json::array();
    for (const auto& x : c) cj.push_back(rational_to_string(x));
    out["coefficients"] = cj;
    out["formula_value"] = rational_to_string(rep.formula_value);
    out["min_matches_formula"] = rep.min_matches_formula;
    out["argmin_blocks"] = rep.argmin_blocks;
    out["v0_is_eigenvector"] = rep.v0_is_eigenvector;
    out["v0_residual"] = rational_to_string(rep.v0_residual);
    bool two_attains = std::find(rep.argmin_blocks.begin(), rep.argmin_blocks.end(), 2) !=
                       rep.argmin_blocks.end();
    out["verdict"] =
        (rep.min_matches_formula && two_attains && rep.v0_is_eigenvector) ? "pass" : "fail";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra of hypergraph reshuffling processes and their unitary counterparts"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    // ---- spectrum ----
    auto* sc_spectrum = app.add_subcommand("spectrum", "spectrum of one operator");
    std::string graph_path, rep_string;
    bool exact = false;
    sc_spectrum->add_option("--graph", graph_path, "hypergraph JSON file")->required();
    sc_spectrum
        ->add_option("--rep", rep_string,
                     "operator: kmp:k | pure:k | codim1-M:k | sym-z:k | unitary-R:k,m | torinv-S:k")
        ->required();
    sc_spectrum->add_flag("--exact", exact, "exact rational mode");

    // ---- verify ----
    auto* sc_verify = app.add_subcommand("verify", "verification suites");
    std::string suite;
    sc_verify
        ->add_option("suite", suite,
                     "one of: mean-field, codim1, kmp-equiv, sn-containment, weingarten, "
                     "path-example")
        ->required();
    int v_n = 3, v_k = 2, v_kmax = 4;
    long v_d = 3;
    double v_tol = 1e-7;
    std::string v_graph, v_coeffs, v_weights;
    bool v_exact = false;
    sc_verify->add_option("--n", v_n, "vertex count");
    sc_verify->add_option("--k", v_k, "particle count / tensor order");
    sc_verify->add_option("--k-max", v_kmax, "largest particle count");
    sc_verify->add_option("--d", v_d, "unitary dimension (weingarten suite)");
    sc_verify->add_option("--graph", v_graph, "hypergraph JSON file");
    sc_verify->add_option("--coeffs", v_coeffs, "c_0,...,c_n (mean-field suite)");
    sc_verify->add_option("--weights", v_weights, "c_1,...,c_n (codim1 suite)");
    sc_verify->add_option("--tol", v_tol, "float matching tolerance");
    sc_verify->add_flag("--exact", v_exact, "exact rational mode");

    // ---- sweep ----
    auto* sc_sweep = app.add_subcommand("sweep", "randomized conjecture sweep");
    SweepConfig cfg;
    std::string law = "uniform01", format = "json";
    sc_sweep->add_option("--n", cfg.n, "vertex count");
    sc_sweep->add_option("--k-max", cfg.k_max, "largest particle count");
    sc_sweep->add_option("--trials", cfg.trials, "number of instances");
    sc_sweep->add_option("--seed", cfg.seed, "PRNG seed");
    sc_sweep->add_option("--p", cfg.edge_probability, "edge inclusion probability");
    sc_sweep->add_option("--weight-law", law, "unit | uniform01 | exponential");
    sc_sweep->add_option("--tol", cfg.tolerance, "verdict tolerance (float mode)");
    sc_sweep->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    bool sweep_exact = false;
    sc_sweep->add_flag("--exact", sweep_exact, "exact rational mode");
    sc_sweep->add_option("--format", format, "json | csv");

    // ---- wg ----
    auto* sc_wg = app.add_subcommand("wg", "Weingarten table");
    int wg_k = 2;
    long wg_d = 4;
    sc_wg->add_option("--k", wg_k, "order")->required();
    sc_wg->add_option("--d", wg_d, "unitary dimension")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sc_spectrum) {
            auto spec = parse_rep_spec(rep_string);
            auto g = exact ? load_hypergraph<Rational>(graph_path)
                           : to_rational_hypergraph(load_hypergraph<double>(graph_path));
            emit(spectrum_json_for(g, spec, exact).dump(2), out_path);
        } else if (*sc_verify) {
            json report;
            if (suite == "path-example") {
                report = verify_path_example();
            } else if (suite == "weingarten") {
                report = verify_weingarten_suite(v_k, v_d);
            } else if (suite == "kmp-equiv") {
                std::optional<Hypergraph<Rational>> g;
                if (!v_graph.empty()) g = load_hypergraph<Rational>(v_graph);
                report = verify_kmp_equiv(g, v_n, v_k);
            } else if (suite == "sn-containment") {
                if (v_graph.empty()) throw std::invalid_argument("sn-containment requires --graph");
                auto g = v_exact ? load_hypergraph<Rational>(v_graph)
                                 : to_rational_hypergraph(load_hypergraph<double>(v_graph));
                report = verify_sn_containment(g, v_k, v_exact, v_tol);
            } else if (suite == "codim1") {
                if (v_weights.empty()) throw std::invalid_argument("codim1 requires --weights");
                report = verify_codim1_suite(v_n, parse_rational_list(v_weights), v_kmax, v_exact);
            } else if (suite == "mean-field") {
                if (v_coeffs.empty()) throw std::invalid_argument("mean-field requires --coeffs");
                report = verify_mean_field_suite(v_n, parse_rational_list(v_coeffs), v_kmax);
            } else {
                throw std::invalid_argument("unknown verify suite: " + suite);
            }
            emit(report.dump(2), out_path);
            if (report["verdict"] != "pass") return 3;
        } else if (*sc_sweep) {
            cfg.weight_law = weight_law_from_string(law);
            cfg.exact_mode = sweep_exact;
            auto result = sweep(cfg);
            if (format == "csv")
                emit(sweep_to_csv(cfg, result), out_path);
            else if (format == "json")
                emit(sweep_to_json(cfg, result).dump(2), out_path);
            else
                throw std::invalid_argument("unknown format: " + format);
        } else if (*sc_wg) {
            auto table = wg_table(wg_k, wg_d);
            json values;
            for (const auto& [cycle_type, value] : table.values) {
                std::string key;
                for (size_t i = 0; i < cycle_type.size(); ++i)
                    key += (i ? "," : "") + std::to_string(cycle_type[i]);
                values["(" + key + ")"] = rational_to_string(value);
            }
            emit(json{{"k", wg_k}, {"d", wg_d}, {"values", values}}.dump(2), out_path);
        }
    } catch (const resource_error& e) {
        std::cerr << "resource guard: " << e.what() << std::endl;
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal invariant breach: " << e.what() << std::endl;
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 3;
    }
    return 0;
}
