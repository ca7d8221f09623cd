#include "lights/game.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace lights {

namespace {

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw std::invalid_argument("malformed graph spec '" + std::string(spec) + "'");
  return v;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

} // namespace

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (u >= n_ || v >= n_)
    throw std::invalid_argument("edge endpoint out of range for " + std::to_string(n_) + " vertices");
  if (u > v) std::swap(u, v);
  if (!edges_.emplace(u, v).second)
    throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return edges_.count({u, v}) != 0;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Graph parse_graph(std::string_view text) {
  std::optional<Graph> g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    ++line_no;
    start = stop + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::pair<std::size_t, std::size_t>> tokens; // (value, column)
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      const std::size_t col = pos + 1;
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
      if (ec != std::errc() || (ptr != line.data() + line.size() &&
                                !std::isspace(static_cast<unsigned char>(*ptr))))
        throw GraphParseError("expected a nonnegative integer", line_no, col);
      tokens.emplace_back(value, col);
      pos = static_cast<std::size_t>(ptr - line.data());
    }
    if (tokens.empty()) continue;

    if (!g) {
      if (tokens.size() != 1)
        throw GraphParseError("first line must hold only the vertex count", line_no, tokens[1].second);
      g.emplace(tokens[0].first);
      continue;
    }
    if (tokens.size() != 2)
      throw GraphParseError("edge line must hold exactly two vertices", line_no,
                            tokens.size() > 2 ? tokens[2].second : tokens[0].second);
    const auto [u, ucol] = tokens[0];
    const auto [v, vcol] = tokens[1];
    if (u >= v) throw GraphParseError("edge must satisfy u < v", line_no, ucol);
    if (v >= g->vertex_count()) throw GraphParseError("vertex out of range", line_no, vcol);
    if (g->has_edge(u, v)) throw GraphParseError("duplicate edge", line_no, ucol);
    g->add_edge(u, v);
  }
  if (!g) throw GraphParseError("missing vertex count", line_no == 0 ? 1 : line_no, 1);
  return *g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

Graph build_family(std::string_view spec) {
  if (spec == "petersen") return petersen();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("malformed graph spec '" + std::string(spec) + "'");
  const std::string_view family = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);

  if (family == "file") {
    std::ifstream in{std::string(arg)};
    if (!in) throw std::runtime_error("cannot read graph file '" + std::string(arg) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
  }
  if (family == "grid") {
    const auto x = arg.find('x');
    if (x == std::string_view::npos)
      throw std::invalid_argument("malformed graph spec '" + std::string(spec) + "'");
    const std::size_t m = parse_count(arg.substr(0, x), spec);
    const std::size_t n = parse_count(arg.substr(x + 1), spec);
    if (m == 0 || n == 0) throw std::invalid_argument("grid dimensions must be positive");
    return cartesian_product(path_graph(m), path_graph(n));
  }

  const std::size_t n = parse_count(arg, spec);
  if (n == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (family == "path") return path_graph(n);
  if (family == "cycle") {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(0, n - 1);
    return g;
  }
  if (family == "star") {
    Graph g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
  }
  if (family == "complete") {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }
  throw std::invalid_argument("unknown graph family '" + std::string(family) + "'");
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t m = g.vertex_count();
  const std::size_t n = h.vertex_count();
  Graph out(m * n);
  for (std::size_t j = 0; j < n; ++j)
    for (auto [u, v] : g.edges()) out.add_edge(j * m + u, j * m + v);
  for (std::size_t i = 0; i < m; ++i)
    for (auto [u, v] : h.edges()) out.add_edge(u * m + i, v * m + i);
  return out;
}

Matrix adjacency_matrix(const Graph& g, FieldSpec field) {
  Matrix a(g.vertex_count(), g.vertex_count(), field);
  for (auto [u, v] : g.edges()) {
    a.set(u, v, 1);
    a.set(v, u, 1);
  }
  return a;
}

Matrix switching_matrix(const Graph& g, SwitchMode mode, FieldSpec field) {
  Matrix a = adjacency_matrix(g, field);
  if (mode == SwitchMode::closed)
    for (std::size_t i = 0; i < g.vertex_count(); ++i) a.set(i, i, 1);
  return a;
}

LightsInstance::LightsInstance(Graph g, SwitchMode m, Vector b)
    : graph(std::move(g)), mode(m), config(std::move(b)) {
  if (config.size() != graph.vertex_count())
    throw std::invalid_argument("configuration has " + std::to_string(config.size()) +
                                " lights, graph has " + std::to_string(graph.vertex_count()) +
                                " vertices");
  for (auto v : config)
    if (v > 1) throw std::invalid_argument("configuration entries must be 0 or 1");
}

bool is_solvable(const LightsInstance& inst) {
  return solve(switching_matrix(inst.graph, inst.mode), inst.config).has_value();
}

std::optional<PressSolution> solve_presses(const LightsInstance& inst) {
  const Matrix m = switching_matrix(inst.graph, inst.mode);
  auto x = solve(m, inst.config);
  if (!x) return std::nullopt;
  return PressSolution{std::move(*x), kernel_basis(m)};
}

CountExponents count_exponents(const Graph& g, SwitchMode mode) {
  const auto profile = rank_nullity(switching_matrix(g, mode));
  return {profile.rank, profile.nullity};
}

std::optional<Matrix> sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c) {
  if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows())
    throw std::invalid_argument("sylvester_solve: expected A m x m, B n x n, C m x n");
  if (!(c.field() == a.field()))
    throw std::invalid_argument("sylvester_solve: field mismatch");
  auto x = solve(sylvester_operator(a, b), vec(c));
  if (!x) return std::nullopt;
  return unvec(*x, c.rows(), c.cols(), c.field());
}

} // namespace lights
