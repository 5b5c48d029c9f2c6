#pragma once

#include <iosfwd>
#include <string>

#include "psp/graph.hpp"

namespace psp {

enum class FileFormat {
    EdgeList,  // "n m" header, then one "u v w" line per undirected edge
    DimacsGr,  // "p sp n m" header, "a u v w" arc lines, 1-based ids
};

// Parses a graph file. Edge-list input is strict (each undirected edge listed
// once, no self-loops); DIMACS input is normalized: duplicate arcs are merged
// keeping the minimum weight, arcs are symmetrized, self-loop arcs dropped.
Graph load_graph(const std::string& path, FileFormat format);
Graph read_graph(std::istream& in, FileFormat format, const std::string& name = "<stream>");

void save_graph(const Graph& g, const std::string& path, FileFormat format = FileFormat::EdgeList);
void write_graph(const Graph& g, std::ostream& out, FileFormat format = FileFormat::EdgeList);

// Shortest decimal form that parses back to the identical double ("3", "0.5").
std::string format_weight(double w);

}  // namespace psp
