#include "fdsketch/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fdsketch/datagen.hpp"
#include "fdsketch/linalg.hpp"
#include "fdsketch/rng.hpp"

namespace fdsketch {

namespace {

constexpr std::uint64_t kAccuracySeed = 0xACC;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::runtime_error("bad integer for config key '" + key + "': " + value);
  }
  return out;
}

double parse_double(const std::string& value, const std::string& key) {
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::runtime_error("bad number for config key '" + key + "': " + value);
  }
  return out;
}

}  // namespace

GridConfig GridConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid config: " + path);
  GridConfig config;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("bad config line (expected key=value): " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "n") {
      config.n = parse_u64(value, key);
    } else if (key == "m") {
      config.m = parse_u64(value, key);
    } else if (key == "ell") {
      config.ells.clear();
      for (const auto& item : split_list(value)) {
        config.ells.push_back(parse_u64(item, key));
      }
    } else if (key == "d") {
      config.ds.clear();
      for (const auto& item : split_list(value)) {
        config.ds.push_back(parse_u64(item, key));
      }
    } else if (key == "zeta") {
      config.zetas.clear();
      for (const auto& item : split_list(value)) {
        config.zetas.push_back(parse_double(item, key));
      }
    } else if (key == "methods") {
      config.methods = split_list(value);
    } else if (key == "repetitions") {
      config.repetitions = parse_u64(value, key);
    } else if (key == "base_seed") {
      config.base_seed = parse_u64(value, key);
    } else if (key == "c") {
      config.c = parse_double(value, key);
    } else if (key == "threads") {
      config.threads = parse_u64(value, key);
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  for (const auto& method : config.methods) {
    if (!StreamSketcher::is_known_method(method)) {
      throw std::runtime_error("unknown method in config: " + method);
    }
  }
  return config;
}

StreamSketcher::StreamSketcher(const std::string& method, std::size_t ell,
                               std::size_t cols, double c, std::uint64_t seed)
    : method_(method) {
  if (method == "fd") {
    fd_ = std::make_unique<FdSketch>(ell, cols);
  } else if (method == "fd-fast") {
    fd_ = std::make_unique<FdSketch>(ell, cols, c);
  } else {
    baseline_ = make_sketcher(baseline_from_name(method), ell, cols, seed);
  }
}

void StreamSketcher::append(std::span<const double> row) {
  if (fd_) {
    fd_->append(row);
  } else {
    baseline_->append(row, index_);
  }
  ++index_;
}

Matrix StreamSketcher::finalize() const {
  return fd_ ? fd_->sketch() : baseline_->finalize();
}

bool StreamSketcher::is_known_method(const std::string& method) {
  if (method == "fd" || method == "fd-fast") return true;
  try {
    baseline_from_name(method);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

double measure_accuracy(const Matrix& a_gram, const Matrix& b) {
  if (a_gram.rows() != a_gram.cols() || b.cols() != a_gram.cols()) {
    throw std::invalid_argument("measure_accuracy dimension mismatch");
  }
  return spectral_norm_sym(a_gram - gram(b), 1e-6, 20000, kAccuracySeed);
}

double fd_error_bound(std::size_t ell, double c, double frob_sq) {
  return frob_sq / (c * static_cast<double>(ell));
}

namespace {

struct CellTask {
  std::size_t d = 0;
  double zeta = 0.0;
  std::size_t repetition = 0;
};

std::vector<BenchRecord> run_cell(const GridConfig& config,
                                  const CellTask& task) {
  const std::uint64_t matrix_seed =
      rng::mix(config.base_seed, rng::kStreamBenchCell,
               rng::mix(task.d, std::bit_cast<std::uint64_t>(task.zeta),
                        task.repetition));
  const Matrix a = generate(
      {config.n, config.m, task.d, task.zeta, matrix_seed});
  const Matrix a_gram = gram(a);
  const double frob_sq = frobenius_sq(a);

  std::vector<BenchRecord> records;
  bool any_fd = false;
  double bound_c = 1.0;
  for (std::size_t ell : config.ells) {
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      const std::string& method = config.methods[mi];
      const std::uint64_t method_seed =
          rng::mix(matrix_seed, rng::kStreamMethodSeed, mi, ell);

      const auto start = std::chrono::steady_clock::now();
      StreamSketcher sketcher(method, ell, config.m, config.c, method_seed);
      for (std::size_t i = 0; i < a.rows(); ++i) sketcher.append(a.row(i));
      const Matrix b = sketcher.finalize();
      const auto stop = std::chrono::steady_clock::now();
      const double seconds =
          std::chrono::duration<double>(stop - start).count();

      records.push_back({method, ell, task.d, task.zeta, matrix_seed,
                         task.repetition, measure_accuracy(a_gram, b),
                         seconds});
      if (method == "fd-fast") {
        any_fd = true;
        bound_c = config.c;
      } else if (method == "fd" && !any_fd) {
        any_fd = true;
        bound_c = 1.0;
      }
    }
    if (any_fd) {
      records.push_back({"fd-bound", ell, task.d, task.zeta, matrix_seed,
                         task.repetition, fd_error_bound(ell, bound_c, frob_sq),
                         0.0});
    }
  }
  return records;
}

}  // namespace

std::vector<BenchRecord> run_bench(const GridConfig& config) {
  std::vector<CellTask> tasks;
  for (std::size_t d : config.ds) {
    for (double zeta : config.zetas) {
      for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        tasks.push_back({d, zeta, rep});
      }
    }
  }

  std::vector<std::vector<BenchRecord>> slots(tasks.size());
  std::size_t threads = config.threads != 0
                            ? config.threads
                            : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        slots[i] = run_cell(config, tasks[i]);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "bench cell d=%zu zeta=%g rep=%zu failed: %s\n",
                     tasks[i].d, tasks[i].zeta, tasks[i].repetition, e.what());
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<BenchRecord> records;
  for (auto& slot : slots) {
    records.insert(records.end(), slot.begin(), slot.end());
  }
  return records;
}

void write_records_csv(const std::string& path,
                       const std::vector<BenchRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "method,ell,d,zeta,seed,repetition,accuracy,seconds\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.17g,%llu,%zu,%.17g,%.9f\n",
                  r.method.c_str(), r.ell, r.d, r.zeta,
                  static_cast<unsigned long long>(r.seed), r.repetition,
                  r.accuracy, r.seconds);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<BenchRecord> median_records(
    const std::vector<BenchRecord>& records) {
  // Group by (method, ell, d, zeta), preserving first-seen order.
  using Key = std::tuple<std::string, std::size_t, std::size_t, double>;
  std::map<Key, std::size_t> index;
  std::vector<BenchRecord> medians;
  std::vector<std::vector<double>> accuracies;
  std::vector<std::vector<double>> times;

  for (const auto& r : records) {
    const Key key{r.method, r.ell, r.d, r.zeta};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, medians.size()).first;
      medians.push_back({r.method, r.ell, r.d, r.zeta, 0, 0, 0.0, 0.0});
      accuracies.emplace_back();
      times.emplace_back();
    }
    accuracies[it->second].push_back(r.accuracy);
    times[it->second].push_back(r.seconds);
  }

  const auto median_of = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
  };
  for (std::size_t i = 0; i < medians.size(); ++i) {
    medians[i].accuracy = median_of(accuracies[i]);
    medians[i].seconds = median_of(times[i]);
    medians[i].repetition = accuracies[i].size();
  }
  return medians;
}

void write_medians_csv(const std::string& path,
                       const std::vector<BenchRecord>& medians) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "method,ell,d,zeta,accuracy,seconds\n";
  char buf[160];
  for (const auto& r : medians) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.17g,%.17g,%.9f\n",
                  r.method.c_str(), r.ell, r.d, r.zeta, r.accuracy, r.seconds);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fdsketch
