#pragma once

#include "fsgl/graph.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

namespace fsgl::io {

/// Edge list CSV with header `m,n,w`, 0-indexed, m < n, lexicographic order.
void write_edge_list(std::ostream& os, const WeightedGraph& g);
void write_edge_list(const std::string& path, const WeightedGraph& g);

/// Node count is max(min_nodes, largest index + 1).
WeightedGraph read_edge_list(std::istream& is, int min_nodes = 0);
WeightedGraph read_edge_list(const std::string& path, int min_nodes = 0);

/// Dense numeric CSV without header; one matrix row per line.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& is);

/// Matrix Market `coordinate` or `array` real matrices; `symmetric` is mirrored.
Eigen::MatrixXd read_matrix_market(std::istream& is);

/// Dispatches on extension: `.mtx` is Matrix Market, anything else dense CSV.
Eigen::MatrixXd read_matrix(const std::string& path);

/// Reads a graph from an edge-list CSV or a Matrix Market adjacency.
WeightedGraph read_graph(const std::string& path, int min_nodes = 0);

} // namespace fsgl::io
