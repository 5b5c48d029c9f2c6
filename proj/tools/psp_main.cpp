#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psp/cluster.hpp"
#include "psp/errors.hpp"
#include "psp/generators.hpp"
#include "psp/graph_io.hpp"
#include "psp/oracle.hpp"
#include "psp/oracle_io.hpp"
#include "psp/query.hpp"
#include "psp/shortest_paths.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerifyFailed = 3;

struct GenerateOptions {
    std::string grid;
    std::string tri_grid;
    std::string uniform;
    bool unit = false;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "edge-list";
};

struct PreprocessOptions {
    std::string input;
    std::string output;
    std::uint64_t k = 0;  // 0 = ceil(sqrt(n))
    unsigned workers = 1;
    std::uint64_t seed = 0;
    std::string format = "edge-list";
};

struct QueryOptions {
    std::string input;
    std::string pairs_file;
    std::uint64_t random_pairs = 0;
    std::vector<std::uint32_t> inline_pairs;
    unsigned workers = 1;
    std::uint64_t seed = 0;
};

struct VerifyOptions {
    std::string input;
    std::string oracle;
    std::uint64_t random_pairs = 1000;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::string format = "edge-list";
};

struct BenchOptions {
    std::string input;
    std::string output;
    std::string sweep_k;
    unsigned workers = 1;
    std::uint64_t random_pairs = 1000;
    std::uint64_t seed = 0;
    std::string format = "edge-list";
};

psp::FileFormat parse_format(const std::string& name) {
    if (name == "edge-list") return psp::FileFormat::EdgeList;
    if (name == "dimacs") return psp::FileFormat::DimacsGr;
    throw std::invalid_argument("unknown graph format: " + name);
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& dims) {
    const std::size_t split = dims.find('x');
    if (split == std::string::npos) {
        throw std::invalid_argument("grid size must look like ROWSxCOLS, got: " + dims);
    }
    std::size_t rows = 0, cols = 0;
    try {
        std::size_t used = 0;
        rows = std::stoull(dims.substr(0, split), &used);
        if (used != split) throw std::invalid_argument(dims);
        cols = std::stoull(dims.substr(split + 1), &used);
        if (used != dims.size() - split - 1) throw std::invalid_argument(dims);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid size must look like ROWSxCOLS, got: " + dims);
    }
    return {rows, cols};
}

std::uint32_t default_k(std::size_t n) {
    return static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

std::vector<std::pair<psp::VertexId, psp::VertexId>> random_pairs(std::size_t n,
                                                                  std::uint64_t count,
                                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<psp::VertexId, psp::VertexId>> pairs;
    pairs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        auto v1 = static_cast<psp::VertexId>(rng() % n);
        auto v2 = static_cast<psp::VertexId>(rng() % n);
        pairs.emplace_back(v1, v2);
    }
    return pairs;
}

std::string format_distance(double d) {
    return d == psp::kUnreachable ? "inf" : psp::format_weight(d);
}

void apply_query_placement(psp::Oracle& o, unsigned workers) {
    const std::uint32_t p = std::min<std::uint32_t>(workers, o.k);
    if (p > 1) o.placement = psp::place_components(o.k, p);
}

int cmd_generate(const GenerateOptions& opt) {
    psp::WeightModel weights = psp::WeightModel::unit();
    if (!opt.uniform.empty()) {
        const std::size_t split = opt.uniform.find(':');
        if (split == std::string::npos) {
            throw std::invalid_argument("--uniform expects LO:HI, got: " + opt.uniform);
        }
        weights = psp::WeightModel::uniform(std::stod(opt.uniform.substr(0, split)),
                                            std::stod(opt.uniform.substr(split + 1)));
    }

    psp::Graph g;
    if (!opt.grid.empty()) {
        auto [rows, cols] = parse_dims(opt.grid);
        g = psp::generate_grid(rows, cols, weights, opt.seed);
    } else {
        auto [rows, cols] = parse_dims(opt.tri_grid);
        g = psp::generate_triangulated_grid(rows, cols, weights, opt.seed);
    }
    psp::save_graph(g, opt.output, parse_format(opt.format));
    return kExitOk;
}

int cmd_preprocess(const PreprocessOptions& opt) {
    psp::Graph g = psp::load_graph(opt.input, parse_format(opt.format));
    const std::uint32_t k =
        opt.k == 0 ? default_k(g.num_vertices()) : static_cast<std::uint32_t>(opt.k);
    psp::BuildStats stats;
    psp::Oracle o = psp::build_oracle(g, k, opt.workers, opt.seed, &stats);
    psp::save_oracle(o, opt.output);

    ordered_json j;
    j["n"] = o.n;
    j["k"] = o.k;
    j["p"] = opt.workers;
    j["boundary_total"] = stats.boundary_total;
    j["bg_edges"] = stats.bg_edges;
    j["partition_ms"] = stats.partition_ms;
    j["component_apsp_ms"] = stats.component_apsp_ms;
    j["boundary_ms"] = stats.boundary_ms;
    j["stored_entries"] = stats.stored_entries;
    j["peak_table_entries_per_worker"] = stats.peak_table_entries_per_worker;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

std::vector<std::pair<psp::VertexId, psp::VertexId>> load_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw psp::IoError(path + ": cannot open");
    std::vector<std::pair<psp::VertexId, psp::VertexId>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::uint64_t v1 = 0, v2 = 0;
        if (!(fields >> v1 >> v2)) {
            throw psp::ParseError(path, lineno, "expected two vertex ids");
        }
        std::string extra;
        if (fields >> extra) throw psp::ParseError(path, lineno, "trailing tokens");
        pairs.emplace_back(static_cast<psp::VertexId>(v1), static_cast<psp::VertexId>(v2));
    }
    return pairs;
}

int cmd_query(const QueryOptions& opt) {
    psp::Oracle o = psp::load_oracle(opt.input);
    apply_query_placement(o, opt.workers);

    std::vector<std::pair<psp::VertexId, psp::VertexId>> pairs;
    if (!opt.pairs_file.empty()) {
        pairs = load_pairs(opt.pairs_file);
    } else if (opt.random_pairs > 0) {
        pairs = random_pairs(o.n, opt.random_pairs, opt.seed);
    } else {
        if (opt.inline_pairs.empty() || opt.inline_pairs.size() % 2 != 0) {
            throw std::invalid_argument(
                "provide vertex pairs inline (v1 v2 ...), via --pairs, or --random-pairs");
        }
        for (std::size_t i = 0; i < opt.inline_pairs.size(); i += 2) {
            pairs.emplace_back(opt.inline_pairs[i], opt.inline_pairs[i + 1]);
        }
    }

    std::vector<psp::QueryResult> results = psp::batch_query(o, pairs, opt.workers);
    std::ostringstream out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out << pairs[i].first << ' ' << pairs[i].second << ' '
            << format_distance(results[i].distance) << ' ' << results[i].stats.minplus_ops
            << ' ' << results[i].stats.transfer_entries << '\n';
    }
    std::cout << out.str();
    return kExitOk;
}

int cmd_verify(const VerifyOptions& opt) {
    psp::Graph g = psp::load_graph(opt.input, parse_format(opt.format));
    psp::Oracle o = psp::load_oracle(opt.oracle);
    if (o.n != g.num_vertices()) {
        throw std::invalid_argument("oracle was built for a different graph (vertex counts " +
                                    std::to_string(o.n) + " vs " +
                                    std::to_string(g.num_vertices()) + ")");
    }

    const std::size_t n = g.num_vertices();
    std::size_t pairs_checked = 0;
    std::size_t mismatches = 0;
    if (opt.exhaustive) {
        for (psp::VertexId u = 0; u < n; ++u) {
            const std::vector<double> truth = psp::dijkstra_sssp(g, u);
            for (psp::VertexId v = 0; v < n; ++v) {
                ++pairs_checked;
                if (psp::query(o, u, v).distance != truth[v]) ++mismatches;
            }
        }
    } else {
        auto pairs = random_pairs(n, opt.random_pairs, opt.seed);
        std::sort(pairs.begin(), pairs.end());
        std::vector<double> truth;
        psp::VertexId truth_source = 0;
        bool have_truth = false;
        for (const auto& [u, v] : pairs) {
            if (!have_truth || truth_source != u) {
                truth = psp::dijkstra_sssp(g, u);
                truth_source = u;
                have_truth = true;
            }
            ++pairs_checked;
            if (psp::query(o, u, v).distance != truth[v]) ++mismatches;
        }
    }

    // Boundary-pair exactness: distances through the boundary tables must
    // reproduce full-graph distances whenever the check is affordable.
    const bool boundary_affordable = o.b() <= 2000;
    std::size_t boundary_pairs = 0;
    std::size_t boundary_violations = 0;
    if (boundary_affordable) {
        for (std::size_t bi = 0; bi < o.b(); ++bi) {
            const std::uint32_t c = o.partition.assignment[o.boundary_vertex[bi]];
            const double* row = o.boundary_tables[c].row(bi - o.boundary_offset[c]);
            const psp::VertexId src = o.inverse_permutation[o.boundary_vertex[bi]];
            const std::vector<double> truth = psp::dijkstra_sssp(g, src);
            for (std::size_t bj = 0; bj < o.b(); ++bj) {
                ++boundary_pairs;
                if (row[bj] != truth[o.inverse_permutation[o.boundary_vertex[bj]]]) {
                    ++boundary_violations;
                }
            }
        }
    }

    const bool ok = mismatches == 0 && boundary_violations == 0;
    ordered_json j;
    j["pairs_checked"] = pairs_checked;
    j["mismatches"] = mismatches;
    j["boundary_pairs_checked"] = boundary_affordable ? ordered_json(boundary_pairs) : ordered_json(nullptr);
    j["boundary_violations"] = boundary_affordable ? ordered_json(boundary_violations) : ordered_json(nullptr);
    j["ok"] = ok;
    std::cout << j.dump() << "\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(const BenchOptions& opt) {
    psp::Graph g = psp::load_graph(opt.input, parse_format(opt.format));
    const std::size_t n = g.num_vertices();

    std::vector<std::uint64_t> sweep;
    {
        std::istringstream fields(opt.sweep_k);
        std::string token;
        while (std::getline(fields, token, ',')) {
            if (token.empty()) continue;
            std::size_t used = 0;
            const std::uint64_t k = std::stoull(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument("--sweep-k expects a comma-separated integer list");
            }
            sweep.push_back(k);
        }
    }

    std::ostringstream csv;
    csv << "k,p,n,boundary_total,partition_ms,component_apsp_ms,boundary_ms,"
           "stored_entries,mean_minplus_ops,mean_query_us,transfer_bytes,status\n";
    for (std::uint64_t k : sweep) {
        try {
            psp::BuildStats stats;
            psp::Oracle o =
                psp::build_oracle(g, static_cast<std::uint32_t>(std::min<std::uint64_t>(
                                         k, 0xffffffffull)),
                                  opt.workers, opt.seed, &stats);
            apply_query_placement(o, opt.workers);

            auto pairs = random_pairs(n, opt.random_pairs, opt.seed);
            const auto start = std::chrono::steady_clock::now();
            const std::vector<psp::QueryResult> results =
                psp::batch_query(o, pairs, opt.workers);
            const double elapsed_us =
                std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() -
                                                          start)
                    .count();

            double ops = 0.0;
            std::size_t transfer_bytes = 0;
            for (const psp::QueryResult& r : results) {
                ops += static_cast<double>(r.stats.minplus_ops);
                transfer_bytes += 8 * r.stats.transfer_entries;
            }
            const double denom = results.empty() ? 1.0 : static_cast<double>(results.size());
            csv << k << ',' << opt.workers << ',' << n << ',' << stats.boundary_total << ','
                << stats.partition_ms << ',' << stats.component_apsp_ms << ','
                << stats.boundary_ms << ',' << stats.stored_entries << ',' << ops / denom << ','
                << elapsed_us / denom << ',' << transfer_bytes << ",ok\n";
        } catch (const std::invalid_argument& e) {
            std::string reason = e.what();
            for (char& ch : reason) {
                if (ch == ',' || ch == '\n') ch = ';';
            }
            csv << k << ',' << opt.workers << ',' << n << ",0,0,0,0,0,0,0,0,error: " << reason
                << "\n";
        }
    }

    if (opt.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(opt.output, std::ios::trunc);
        if (!out) throw psp::IoError(opt.output + ": cannot open for writing");
        out << csv.str();
        if (!out.flush()) throw psp::IoError(opt.output + ": write failed");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level distance oracle for planar graphs: partition-based "
                 "preprocessing and boundary-stitching queries"};
    app.require_subcommand(1);

    GenerateOptions gen;
    CLI::App* sub_gen = app.add_subcommand("generate", "Write a synthetic graph file");
    CLI::Option* grid_opt = sub_gen->add_option("--grid", gen.grid, "grid ROWSxCOLS");
    CLI::Option* tri_opt =
        sub_gen->add_option("--tri-grid", gen.tri_grid, "triangulated grid ROWSxCOLS");
    grid_opt->excludes(tri_opt);
    tri_opt->excludes(grid_opt);
    CLI::Option* unit_opt = sub_gen->add_flag("--unit", gen.unit, "unit edge weights (default)");
    CLI::Option* uniform_opt = sub_gen->add_option(
        "--uniform", gen.uniform, "uniform edge weights LO:HI on a 1/1024 lattice");
    unit_opt->excludes(uniform_opt);
    uniform_opt->excludes(unit_opt);
    sub_gen->add_option("--seed", gen.seed, "random seed");
    sub_gen->add_option("--output,-o", gen.output, "output path")->required();
    sub_gen->add_option("--format", gen.format, "edge-list|dimacs");

    PreprocessOptions pre;
    CLI::App* sub_pre =
        app.add_subcommand("preprocess", "Build a distance oracle and report stats as JSON");
    sub_pre->add_option("--input,-i", pre.input, "graph file")->required();
    sub_pre->add_option("--output,-o", pre.output, "oracle file")->required();
    sub_pre->add_option("--k", pre.k, "component count (default ceil(sqrt(n)))");
    sub_pre->add_option("--workers,-p", pre.workers, "preprocessing workers")
        ->check(CLI::Range(1u, 1u << 20));
    sub_pre->add_option("--seed", pre.seed, "partitioning seed");
    sub_pre->add_option("--format", pre.format, "edge-list|dimacs");

    QueryOptions qry;
    CLI::App* sub_qry = app.add_subcommand(
        "query", "Answer distance queries; prints v1 v2 distance minplus_ops transfer_entries");
    sub_qry->add_option("--input,-i", qry.input, "oracle file")->required();
    CLI::Option* pairs_opt = sub_qry->add_option("--pairs", qry.pairs_file, "pair list file");
    CLI::Option* rand_opt =
        sub_qry->add_option("--random-pairs", qry.random_pairs, "number of random pairs");
    pairs_opt->excludes(rand_opt);
    rand_opt->excludes(pairs_opt);
    sub_qry->add_option("vertices", qry.inline_pairs, "inline pairs: v1 v2 [v1 v2 ...]");
    sub_qry->add_option("--workers,-p", qry.workers, "query workers and placement size")
        ->check(CLI::Range(1u, 1u << 20));
    sub_qry->add_option("--seed", qry.seed, "random pair seed");

    VerifyOptions ver;
    CLI::App* sub_ver = app.add_subcommand(
        "verify", "Check oracle answers against fresh Dijkstra runs; JSON report");
    sub_ver->add_option("--input,-i", ver.input, "graph file")->required();
    sub_ver->add_option("--oracle", ver.oracle, "oracle file")->required();
    sub_ver->add_option("--random-pairs", ver.random_pairs, "sampled pair count");
    sub_ver->add_flag("--exhaustive", ver.exhaustive, "check all n^2 pairs");
    sub_ver->add_option("--seed", ver.seed, "random pair seed");
    sub_ver->add_option("--format", ver.format, "edge-list|dimacs");

    BenchOptions ben;
    CLI::App* sub_ben =
        app.add_subcommand("bench", "Sweep k and emit per-configuration CSV rows");
    sub_ben->add_option("--input,-i", ben.input, "graph file")->required();
    sub_ben->add_option("--output,-o", ben.output, "CSV path (default stdout)");
    sub_ben->add_option("--sweep-k", ben.sweep_k, "comma-separated k values");
    sub_ben->add_option("--workers,-p", ben.workers, "workers per configuration")
        ->check(CLI::Range(1u, 1u << 20));
    sub_ben->add_option("--random-pairs", ben.random_pairs, "queries per configuration");
    sub_ben->add_option("--seed", ben.seed, "seed for partitioning and pairs");
    sub_ben->add_option("--format", ben.format, "edge-list|dimacs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sub_gen->parsed()) {
            if (gen.grid.empty() && gen.tri_grid.empty()) {
                throw std::invalid_argument("generate needs --grid or --tri-grid");
            }
            return cmd_generate(gen);
        }
        if (sub_pre->parsed()) return cmd_preprocess(pre);
        if (sub_qry->parsed()) return cmd_query(qry);
        if (sub_ver->parsed()) return cmd_verify(ver);
        if (sub_ben->parsed()) return cmd_bench(ben);
    } catch (const psp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const psp::GraphInvariantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const psp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
