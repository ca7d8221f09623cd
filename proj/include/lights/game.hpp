#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lights/formulas.hpp"
#include "lights/matrix.hpp"

namespace lights {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
  using Edge = std::pair<std::size_t, std::size_t>; // first < second

  explicit Graph(std::size_t vertex_count = 0) : n_(vertex_count) {}

  /// Throws std::invalid_argument on loops, duplicates or out-of-range endpoints.
  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::size_t n_;
  std::set<Edge> edges_;
};

class GraphParseError : public std::runtime_error {
public:
  GraphParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Text format: first line `n`, then one `u v` edge per line with u < v.
/// `#` starts a comment; blank lines are ignored.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

/// path:n, cycle:n, star:n (n vertices, center 0), complete:n, grid:MxN,
/// petersen, file:PATH. Throws std::invalid_argument for malformed specs and
/// GraphParseError / std::runtime_error for bad files.
Graph build_family(std::string_view spec);

/// G x H with vertex (i, j) at index j*m + i, where m = |V(G)|.
Graph cartesian_product(const Graph& g, const Graph& h);

Matrix adjacency_matrix(const Graph& g, FieldSpec field = FieldSpec{2});
/// A_G (open) or A_G + I (closed).
Matrix switching_matrix(const Graph& g, SwitchMode mode, FieldSpec field = FieldSpec{2});

struct LightsInstance {
  Graph graph;
  SwitchMode mode = SwitchMode::open;
  Vector config; // 1 = light on

  /// Throws std::invalid_argument if the configuration length is wrong or
  /// contains entries other than 0/1.
  LightsInstance(Graph g, SwitchMode m, Vector b);
};

struct PressSolution {
  Vector presses;              // one particular press set
  std::vector<Vector> kernel;  // adding any combination keeps the lights off
};

bool is_solvable(const LightsInstance& inst);
std::optional<PressSolution> solve_presses(const LightsInstance& inst);

struct CountExponents {
  std::size_t rank = 0;    // 2^rank solvable configurations
  std::size_t nullity = 0; // 2^nullity press sets for each
};

CountExponents count_exponents(const Graph& g, SwitchMode mode);

/// Solves AX - XB = C through the vectorized system. Throws
/// std::invalid_argument on dimension or field mismatch.
std::optional<Matrix> sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c);

} // namespace lights
