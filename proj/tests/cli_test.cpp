#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lights/cli.hpp"
#include "lights/game.hpp"

using namespace lights;
using lights::cli::run;

namespace {

ordered_json row_with(const Report& r, const std::string& key, const std::string& value) {
  for (const auto& row : r.rows)
    if (row.at(key) == value) return row;
  return nullptr;
}

bool has_note(const Report& r, const std::string& text) {
  for (const auto& n : r.notes)
    if (n.find(text) != std::string::npos) return true;
  return false;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

TEST_CASE("nullity of the Petersen self-product") {
  const auto out = run({"nullity", "--g", "petersen", "--h", "petersen", "--mode", "open"});
  REQUIRE(out.exit_code == cli::kExitOk);
  REQUIRE(out.report);
  for (const char* method : {"snf_product", "theorem_sum", "snf_self", "oracle"}) {
    const auto row = row_with(*out.report, "method", method);
    REQUIRE_FALSE(row.is_null());
    CHECK(row.at("value") == 42);
    CHECK(row.at("match") == true);
  }
  CHECK(out.report->violations.empty());
}

TEST_CASE("snf and counts examples") {
  const auto snf = run({"snf", "--g", "star:5", "--p", "2"});
  REQUIRE(snf.exit_code == cli::kExitOk);
  CHECK(has_note(*snf.report, "invariant factors: 1, 1, x, x, x^3"));
  CHECK(snf.report->rows.size() == 5);
  CHECK(snf.out.find("x^3") != std::string::npos);

  const auto counts = run({"counts", "--g", "grid:5x5", "--mode", "closed"});
  REQUIRE(counts.exit_code == cli::kExitOk);
  CHECK(counts.report->rows.at(0).at("rank") == 23);
  CHECK(counts.report->rows.at(0).at("nullity") == 2);

  const auto charpoly = run({"charpoly", "--g", "petersen"});
  REQUIRE(charpoly.exit_code == cli::kExitOk);
  CHECK(charpoly.report->rows.at(0).at("factored") == "x^4 * (x + 1)^6");
  CHECK(charpoly.report->rows.at(0).at("match") == true);
}

TEST_CASE("solve verb") {
  const auto single = run({"solve", "--g", "path:3", "101"});
  REQUIRE(single.exit_code == cli::kExitOk);
  CHECK(row_with(*single.report, "item", "presses").at("value") == "010");

  const auto stuck = run({"solve", "--g", "path:3", "100"});
  REQUIRE(stuck.exit_code == cli::kExitOk);
  CHECK(row_with(*stuck.report, "item", "solvable").at("value") == false);

  const auto product = run({"solve", "--g", "path:2", "--h", "path:2", "1111"});
  REQUIRE(product.exit_code == cli::kExitOk);
  CHECK(row_with(*product.report, "item", "kernel_dimension").at("value") == 2);

  const auto all_on = run({"solve", "--g", "grid:3x3", "--mode", "closed"});
  REQUIRE(all_on.exit_code == cli::kExitOk);
  CHECK(row_with(*all_on.report, "item", "solvable").at("value") == true);
}

TEST_CASE("usage errors exit with 2") {
  const std::vector<std::vector<std::string>> bad = {
      {"nullity", "--g", "petersen", "--h", "petersen", "--bogus"},
      {"nullity", "--g", "hex:3", "--h", "petersen"},
      {"nullity", "--g", "petersen", "--h", "petersen", "--p", "4"},
      {"nullity", "--g", "petersen"},
      {"snf", "--g", "star:5", "--mode", "half"},
      {"solve", "--g", "path:3", "--p", "3"},
      {"solve", "--g", "path:3", "10x"},
      {"solve", "--g", "path:3", "10"},
      {"verify", "everything"},
      {"verify"},
      {"sweep", "--g", "wheel:1..3"},
      {"sweep", "--g", "random:0:5"},
      {"snf", "--g", "file:/nonexistent/graph.txt"},
      {},
      {"frobnicate"},
  };
  for (const auto& args : bad) {
    const auto out = run(args);
    CAPTURE(args.size() > 0 ? args[0] : "");
    CHECK(out.exit_code == cli::kExitUsage);
    CHECK_FALSE(out.report);
  }
  CHECK(run({"--help"}).exit_code == cli::kExitOk);
}

TEST_CASE("graph file errors name the line and column") {
  const auto path = std::filesystem::temp_directory_path() / "lights_cli_test_bad_graph.txt";
  {
    std::ofstream out(path);
    out << "3\n0 1\n2 1\n";
  }
  const auto out = run({"snf", "--g", "file:" + path.string()});
  std::filesystem::remove(path);
  CHECK(out.exit_code == cli::kExitUsage);
  CHECK(out.err.find("line 3, column 1") != std::string::npos);
}

TEST_CASE("violations exit with 1") {
  Report clean;
  CHECK(cli::exit_code_for(clean) == cli::kExitOk);
  Report bad;
  bad.add_violation("formula disagrees with oracle", {{"oracle", 3}, {"formula", 4}});
  CHECK(cli::exit_code_for(bad) == cli::kExitViolation);
}

TEST_CASE("JSON output round-trips") {
  const auto out = run({"sweep", "--g", "star:3..7/2", "--json"});
  REQUIRE(out.exit_code == cli::kExitOk);
  const auto doc = ordered_json::parse(out.out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("command").at("verb") == "sweep");
  const Report back = Report::from_json(doc);
  CHECK(back == *out.report);
  CHECK(back.to_json() == doc);

  const auto seeded = run({"verify", "lemma", "--seed", "9", "--json"});
  CHECK(ordered_json::parse(seeded.out).at("seed") == 9);
  CHECK(Report::from_json(ordered_json::parse(seeded.out)) == *seeded.report);

  CHECK_THROWS_AS(Report::from_json(ordered_json{{"schema", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Report::from_json(ordered_json::parse("[1]")), std::invalid_argument);
}

TEST_CASE("CSV and JSON carry the same table") {
  const auto path = std::filesystem::temp_directory_path() / "lights_cli_test_table.csv";
  const auto out = run({"sweep", "--g", "cycle:3..5", "--h", "petersen", "--csv", path.string()});
  REQUIRE(out.exit_code == cli::kExitOk);
  const auto table = parse_csv(read_file(path));
  std::filesystem::remove(path);
  const Report& r = *out.report;
  REQUIRE(table.size() == r.rows.size() + 1);
  CHECK(table[0] == r.columns);
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    for (std::size_t c = 0; c < r.columns.size(); ++c)
      CHECK(table[i + 1][c] == cell_text(r.rows[i].at(r.columns[c])));

  Report quoted;
  quoted.columns = {"a", "b"};
  quoted.rows.push_back({{"a", "x, \"y\""}, {"b", 3}});
  const auto cells = parse_csv(quoted.to_csv());
  CHECK(cells.at(1) == std::vector<std::string>{"x, \"y\"", "3"});
}

TEST_CASE("sweeps") {
  const auto empty = run({"sweep", "--g", "path:5..3"});
  CHECK(empty.exit_code == cli::kExitOk);
  CHECK(empty.report->rows.empty());

  const auto stars = run({"sweep", "--g", "star:3..9/2"});
  REQUIRE(stars.exit_code == cli::kExitOk);
  REQUIRE(stars.report->rows.size() == 16);
  for (const auto& row : stars.report->rows) {
    const auto n = std::stoi(row.at("g").get<std::string>().substr(5));
    const auto m = std::stoi(row.at("h").get<std::string>().substr(5));
    CHECK(row.at("oracle") == (m - 2) * (n - 2) + 2);
    CHECK(row.at("formula") == (m - 2) * (n - 2) + 2);
  }

  const auto random = run({"sweep", "--g", "random:8:500", "--seed", "1"});
  REQUIRE(random.exit_code == cli::kExitOk);
  CHECK(random.report->rows.size() == 500);
  CHECK(random.report->seed == 1u);
  for (const auto& row : random.report->rows) CHECK(row.at("formula_match") == true);
  // reproducible from the echoed command
  CHECK(run(random.report->argv).report == random.report);

  const auto capped = run({"sweep", "--g", "petersen", "--max-oracle", "50"});
  REQUIRE(capped.exit_code == cli::kExitOk);
  CHECK(capped.report->rows.at(0).at("status") == "skipped");
  CHECK(capped.report->rows.at(0).at("formula") == 42);
}

TEST_CASE("products over other primes") {
  SweepRng rng(51);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldSpec field(p);
    for (int trial = 0; trial < 30; ++trial) {
      Graph g(rng.uniform(1, 5)), h(rng.uniform(1, 5));
      for (Graph* x : {&g, &h})
        for (std::size_t u = 0; u < x->vertex_count(); ++u)
          for (std::size_t v = u + 1; v < x->vertex_count(); ++v)
            if (rng.coin()) x->add_edge(u, v);
      for (SwitchMode mode : {SwitchMode::open, SwitchMode::closed}) {
        const auto e = cli::evaluate_pair(g, h, mode, field, kDefaultOracleCap);
        const std::size_t truth = rank_nullity(switching_matrix(cartesian_product(g, h), mode, field)).nullity;
        CHECK(e.formula == truth);
        REQUIRE(e.oracle);
        CHECK(*e.oracle == truth);
        CHECK(e.lower_bound <= truth);
      }
    }
  }
}

TEST_CASE("verify targets") {
  for (const char* target : {"conjecture-open", "conjecture-closed"}) {
    const auto out = run({"verify", target});
    CHECK(out.exit_code == cli::kExitOk);
    REQUIRE(out.report);
    CHECK(out.report->violations.empty());
    CHECK(out.report->rows.size() > 500);
  }

  const auto lemma = run({"verify", "lemma"});
  CHECK(lemma.exit_code == cli::kExitOk);
  const auto& summary = lemma.report->rows.at(0);
  CHECK(summary.at("trials") == 10000);
  CHECK(summary.at("bound_violations") == 0);
  CHECK(summary.at("corrected_condition_agreement") == 10000);

  const auto ex2 = run({"verify", "example2"});
  CHECK(ex2.exit_code == cli::kExitOk);
  REQUIRE(ex2.report->rows.size() == 36);
  for (const auto& row : ex2.report->rows) {
    CHECK(row.at("snf_path") == row.at("oracle"));
    CHECK(row.at("snf_product") == row.at("oracle"));
    CHECK(row.at("path_nullity").get<int>() <= 1);
  }
  // with k the multiplicity of x in c_{P_m}, the truth is (n - 3) min(k, 1) + min(k, 3)
  CHECK(has_note(*ex2.report, "oracle supports: swapped_multiplicity"));
}

TEST_CASE("star_path_piecewise as written") {
  CHECK(cli::star_path_piecewise(0, 7) == 0);
  CHECK(cli::star_path_piecewise(1, 7) == 5);
  CHECK(cli::star_path_piecewise(3, 7) == 7);
  CHECK(cli::star_path_piecewise(5, 7) == 7);
  CHECK(cli::star_path_piecewise(1, 1) == -1);
}
