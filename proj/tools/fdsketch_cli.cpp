// Command-line driver: synthetic matrix generation, streaming sketching,
// accuracy measurement, and the benchmark grid.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdsketch/bench.hpp"
#include "fdsketch/datagen.hpp"
#include "fdsketch/matrix.hpp"
#include "fdsketch/matrix_io.hpp"

namespace {

using namespace fdsketch;

int cmd_gen(std::size_t n, std::size_t m, std::size_t d, double zeta,
            std::uint64_t seed, const std::string& out) {
  const Matrix a = generate({n, m, d, zeta, seed});
  write_matrix(out, a);
  std::printf("wrote %zux%zu matrix to %s\n", a.rows(), a.cols(), out.c_str());
  return 0;
}

int cmd_sketch(const std::string& method, std::size_t ell, double c,
               std::uint64_t seed, const std::string& in,
               const std::string& out) {
  RowStream stream(in);
  StreamSketcher sketcher(method, ell, stream.cols(), c, seed);
  std::vector<double> row;
  std::size_t rows = 0;
  while (stream.next(row)) {
    sketcher.append(row);
    ++rows;
  }
  const Matrix b = sketcher.finalize();
  write_matrix(out, b);
  std::printf("sketched %zu rows into %zux%zu (%s) -> %s\n", rows, b.rows(),
              b.cols(), method.c_str(), out.c_str());
  return 0;
}

int cmd_accuracy(const std::string& in, const std::string& sketch_path) {
  // Accumulate AᵀA from the row stream; the input is never materialized.
  RowStream stream(in);
  const std::size_t m = stream.cols();
  Matrix a_gram(m, m);
  std::vector<double> row;
  while (stream.next(row)) {
    for (std::size_t i = 0; i < m; ++i) {
      const double ri = row[i];
      if (ri == 0.0) continue;
      double* g_row = a_gram.data() + i * m;
      for (std::size_t j = i; j < m; ++j) g_row[j] += ri * row[j];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) a_gram(j, i) = a_gram(i, j);
  }

  const Matrix b = read_matrix(sketch_path);
  std::printf("%.12g\n", measure_accuracy(a_gram, b));
  return 0;
}

int cmd_bench(const std::string& grid_path, const std::string& out) {
  const GridConfig config = GridConfig::from_file(grid_path);
  const std::vector<BenchRecord> records = run_bench(config);
  write_records_csv(out, records);

  std::string median_path = out;
  const auto dot = median_path.rfind('.');
  if (dot != std::string::npos) median_path.erase(dot);
  median_path += "_median.csv";
  write_medians_csv(median_path, median_records(records));

  std::printf("wrote %zu records to %s (medians: %s)\n", records.size(),
              out.c_str(), median_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming matrix sketching benchmark suite"};
  app.require_subcommand(1);

  std::size_t n = 2000, m = 200, d = 10, ell = 50;
  double zeta = 10.0, c = 1.0 / 3.0;
  std::uint64_t seed = 1;
  std::string in, out, method = "fd", grid, sketch_path;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic matrix A = SDU + N/zeta");
  gen->add_option("--n", n, "rows")->required();
  gen->add_option("--m", m, "columns")->required();
  gen->add_option("--d", d, "signal dimension")->required();
  gen->add_option("--zeta", zeta, "signal-to-noise ratio")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output path (.csv for CSV, FDMX otherwise)")
      ->required();

  auto* sketch = app.add_subcommand("sketch", "Stream a matrix file into a sketch");
  sketch->add_option("--method", method,
                     "one of: fd, fd-fast, naive, brute, sample, hash, project")
      ->check(CLI::Validator(
          [](std::string& v) {
            return fdsketch::StreamSketcher::is_known_method(v)
                       ? std::string{}
                       : "unknown method: " + v;
          },
          "METHOD"))
      ->required();
  sketch->add_option("--ell", ell, "sketch rows")->required();
  sketch->add_option("--c", c, "fd-fast shrink fraction in [0.1, 0.9]");
  sketch->add_option("--seed", seed, "seed for randomized methods");
  sketch->add_option("--in", in, "input matrix (FDMX or CSV)")->required();
  sketch->add_option("--out", out, "output sketch path")->required();

  auto* accuracy = app.add_subcommand(
      "accuracy", "Print ||A'A - B'B|| for a matrix and its sketch");
  accuracy->add_option("--in", in, "input matrix")->required();
  accuracy->add_option("--sketch", sketch_path, "sketch matrix")->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark grid");
  bench->add_option("--grid", grid, "grid config file (key=value)")->required();
  bench->add_option("--out", out, "raw results CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(n, m, d, zeta, seed, out);
    if (sketch->parsed()) return cmd_sketch(method, ell, c, seed, in, out);
    if (accuracy->parsed()) return cmd_accuracy(in, grid);
    if (bench->parsed()) return cmd_bench(grid, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
