#include "psp/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "psp/errors.hpp"

namespace psp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Splits on runs of spaces/tabs.
std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view tok, const std::string& name, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(name, line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
    }
    return value;
}

Graph parse_edge_list(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0, m = 0;
    bool have_header = false;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        auto toks = tokens(body);
        if (!have_header) {
            if (toks.size() != 2) throw ParseError(name, lineno, "header must be 'n m'");
            n = parse_number<std::size_t>(toks[0], name, lineno, "vertex count");
            m = parse_number<std::size_t>(toks[1], name, lineno, "edge count");
            have_header = true;
            edges.reserve(m);
            continue;
        }
        if (toks.size() != 3) throw ParseError(name, lineno, "edge line must be 'u v w'");
        auto u = parse_number<std::uint64_t>(toks[0], name, lineno, "vertex id");
        auto v = parse_number<std::uint64_t>(toks[1], name, lineno, "vertex id");
        auto w = parse_number<double>(toks[2], name, lineno, "weight");
        if (u >= n || v >= n) throw ParseError(name, lineno, "vertex id out of range");
        if (w < 0.0) throw ParseError(name, lineno, "negative weight");
        if (std::isnan(w) || std::isinf(w)) throw ParseError(name, lineno, "non-finite weight");
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
        if (edges.size() > m) throw ParseError(name, lineno, "more edges than declared in header");
    }
    if (!have_header) throw ParseError(name, lineno ? lineno : 1, "missing 'n m' header");
    if (edges.size() != m) {
        throw ParseError(name, lineno ? lineno : 1,
                         "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    try {
        return Graph(n, edges);
    } catch (const GraphInvariantError& e) {
        // Edge-list files must list each undirected edge exactly once.
        throw ParseError(name, lineno ? lineno : 1, e.what());
    }
}

Graph parse_dimacs(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0, m = 0;
    bool have_header = false;
    std::size_t arcs_seen = 0;
    // Arc merge keeps the minimum weight per unordered pair.
    std::map<std::pair<VertexId, VertexId>, double> merged;

    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == 'c') continue;
        auto toks = tokens(body);
        if (body.front() == 'p') {
            if (have_header) throw ParseError(name, lineno, "duplicate problem line");
            if (toks.size() != 4 || toks[1] != "sp") throw ParseError(name, lineno, "problem line must be 'p sp n m'");
            n = parse_number<std::size_t>(toks[2], name, lineno, "vertex count");
            m = parse_number<std::size_t>(toks[3], name, lineno, "arc count");
            have_header = true;
            continue;
        }
        if (body.front() == 'a') {
            if (!have_header) throw ParseError(name, lineno, "arc line before problem line");
            if (toks.size() != 4) throw ParseError(name, lineno, "arc line must be 'a u v w'");
            auto u = parse_number<std::uint64_t>(toks[1], name, lineno, "vertex id");
            auto v = parse_number<std::uint64_t>(toks[2], name, lineno, "vertex id");
            auto w = parse_number<double>(toks[3], name, lineno, "weight");
            if (u < 1 || u > n || v < 1 || v > n) throw ParseError(name, lineno, "vertex id out of range (ids are 1-based)");
            if (w < 0.0) throw ParseError(name, lineno, "negative weight");
            if (std::isnan(w) || std::isinf(w)) throw ParseError(name, lineno, "non-finite weight");
            ++arcs_seen;
            if (u == v) continue;  // self-loop arcs are dropped on normalization
            auto a = static_cast<VertexId>(u - 1);
            auto b = static_cast<VertexId>(v - 1);
            if (a > b) std::swap(a, b);
            auto [it, inserted] = merged.try_emplace({a, b}, w);
            if (!inserted && w < it->second) it->second = w;
            continue;
        }
        throw ParseError(name, lineno, "unrecognized line type '" + std::string(1, body.front()) + "'");
    }
    if (!have_header) throw ParseError(name, lineno ? lineno : 1, "missing 'p sp n m' line");
    if (arcs_seen != m) {
        throw ParseError(name, lineno ? lineno : 1,
                         "declared " + std::to_string(m) + " arcs, found " + std::to_string(arcs_seen));
    }
    std::vector<Edge> edges;
    edges.reserve(merged.size());
    for (const auto& [pair, w] : merged) edges.push_back({pair.first, pair.second, w});
    return Graph(n, edges);
}

}  // namespace

std::string format_weight(double w) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, ptr);
}

Graph read_graph(std::istream& in, FileFormat format, const std::string& name) {
    return format == FileFormat::EdgeList ? parse_edge_list(in, name) : parse_dimacs(in, name);
}

Graph load_graph(const std::string& path, FileFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_graph(in, format, path);
}

void write_graph(const Graph& g, std::ostream& out, FileFormat format) {
    auto edges = g.edge_list();
    if (format == FileFormat::EdgeList) {
        out << g.num_vertices() << ' ' << edges.size() << '\n';
        for (const Edge& e : edges) {
            out << e.u << ' ' << e.v << ' ' << format_weight(e.weight) << '\n';
        }
    } else {
        // Both arc directions, matching common DIMACS usage.
        out << "p sp " << g.num_vertices() << ' ' << edges.size() * 2 << '\n';
        for (const Edge& e : edges) {
            out << "a " << e.u + 1 << ' ' << e.v + 1 << ' ' << format_weight(e.weight) << '\n';
            out << "a " << e.v + 1 << ' ' << e.u + 1 << ' ' << format_weight(e.weight) << '\n';
        }
    }
}

void save_graph(const Graph& g, const std::string& path, FileFormat format) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_graph(g, out, format);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace psp
