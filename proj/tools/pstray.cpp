// pstray: build and query parameterized suffix tray indexes.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "pstray/error.hpp"
#include "pstray/index_io.hpp"
#include "pstray/oracle.hpp"
#include "pstray/tray.hpp"
#include "pstray/workload.hpp"

using namespace pstray;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// A text file's final line break is not part of the text.
std::string strip_final_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

PText read_text(const std::string& text_path, const std::string& alphabet_path) {
  const AlphabetSpec spec = parse_alphabet_spec(read_file(alphabet_path));
  return ingest(strip_final_newline(read_file(text_path)), spec);
}

void print_stats(std::ostream& out, const QueryStats& s) {
  out << "symbol_comparisons=" << s.symbol_comparisons << "\n"
      << "nodes_visited=" << s.nodes_visited << "\n"
      << "parray_lookups=" << s.parray_lookups << "\n"
      << "psa_probes=" << s.psa_probes << "\n"
      << "max_range_searched=" << s.max_range_searched << "\n";
}

void print_structure(std::ostream& out, const StructureReport& r) {
  const std::size_t branching_bound = r.n / r.threshold;
  out << "n=" << r.n << "\n"
      << "pi=" << r.pi << "\n"
      << "sigma=" << r.sigma << "\n"
      << "threshold=" << r.threshold << "\n"
      << "nodes=" << r.nodes << "\n"
      << "leaves=" << r.leaves << "\n"
      << "pnodes=" << r.pnodes << "\n"
      << "branching_pnodes=" << r.branching << "\n"
      << "branching_bound=" << branching_bound << "\n"
      << "branching_margin=" << static_cast<long long>(branching_bound) - static_cast<long long>(r.branching) << "\n"
      << "heavy_links=" << r.heavy_links << "\n"
      << "parray_cells=" << r.parray_cells << "\n"
      << "parray_cell_bound=" << 2 * r.n << "\n"
      << "parray_cell_margin=" << static_cast<long long>(2 * r.n) - static_cast<long long>(r.parray_cells) << "\n"
      << "rmq=" << (r.rmq ? 1 : 0) << "\n";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

int run_build(const std::string& text_path, const std::string& alphabet_path, const std::string& out_path,
              bool no_rmq) {
  PSTrayIndex index = assemble(read_text(text_path, alphabet_path), !no_rmq);
  save(index, out_path);
  const StructureReport r = structure(index);
  std::cout << "n=" << r.n << "\npi=" << r.pi << "\nsigma=" << r.sigma << "\nnodes=" << r.nodes
            << "\npnodes=" << r.pnodes << "\nbranching_pnodes=" << r.branching
            << "\nparray_cells=" << r.parray_cells << "\n";
  return 0;
}

int run_query(const std::string& index_path, std::string pattern, bool stats, bool oracle_check) {
  const PSTrayIndex index = load(index_path);
  if (!pattern.empty() && pattern.front() == '@') pattern = strip_final_newline(read_file(pattern.substr(1)));
  const auto tokens = split_input(pattern, index.text.spec.mode);
  const QueryResult result = query_tokens(index, tokens);
  for (auto p : result.positions) std::cout << p + 1 << "\n";
  if (stats) print_stats(std::cerr, result.stats);
  if (oracle_check) {
    const auto encoded = encode_pattern(tokens, index.text);
    const auto expected =
        encoded ? oracle::naive_ppm(index.text.symbols, *encoded, index.text.pi_count) : std::vector<std::uint32_t>{};
    if (expected != result.positions) {
      std::cerr << "oracle mismatch: index reported " << result.positions.size() << " occurrences, naive scan "
                << expected.size() << "\n";
      return 3;
    }
  }
  return 0;
}

int run_stats(const std::string& index_path) {
  print_structure(std::cout, structure(load(index_path)));
  return 0;
}

int run_bench(const std::string& index_path, const std::string& patterns_path, const std::string& csv_path) {
  using clock = std::chrono::steady_clock;
  constexpr int kRepeats = 16;
  const PSTrayIndex index = load(index_path);
  const auto lines = read_lines(patterns_path);

  std::ofstream csv_file;
  if (!csv_path.empty()) {
    csv_file.open(csv_path);
    if (!csv_file) throw Error(ErrorKind::Input, "cannot write '" + csv_path + "'");
  }
  std::ostream& csv = csv_path.empty() ? std::cout : csv_file;
  csv << "pattern_id,m,occ,comparisons_tray,comparisons_psa,max_range,micros_tray,micros_psa\n";

  const auto time_it = [&](auto&& fn) {
    const auto start = clock::now();
    for (int r = 0; r < kRepeats; ++r) fn();
    return std::chrono::duration<double, std::micro>(clock::now() - start).count() / kRepeats;
  };

  std::uint64_t total_tray = 0;
  std::uint64_t total_psa = 0;
  for (std::size_t id = 0; id < lines.size(); ++id) {
    const auto tokens = split_input(lines[id], index.text.spec.mode);
    if (tokens.empty()) continue;
    const auto encoded = encode_pattern(tokens, index.text);
    QueryResult tray;
    QueryResult psa;
    double micros_tray = 0;
    double micros_psa = 0;
    if (encoded) {
      tray = query(index, *encoded);
      psa = query_psa_only(index, *encoded);
      if (tray.positions != psa.positions)
        throw Error(ErrorKind::Query, "tray and PSA disagree on pattern " + std::to_string(id));
      micros_tray = time_it([&] { (void)query(index, *encoded); });
      micros_psa = time_it([&] { (void)query_psa_only(index, *encoded); });
    }
    total_tray += tray.stats.symbol_comparisons;
    total_psa += psa.stats.symbol_comparisons;
    csv << id << "," << tokens.size() << "," << tray.positions.size() << "," << tray.stats.symbol_comparisons
        << "," << psa.stats.symbol_comparisons << "," << tray.stats.max_range_searched << "," << micros_tray << ","
        << micros_psa << "\n";
  }
  if (!csv_path.empty())
    std::cout << "patterns=" << lines.size() << "\ncomparisons_tray=" << total_tray << "\ncomparisons_psa=" << total_psa
              << "\n";
  return 0;
}

int run_self_check(const std::string& text_path, const std::string& alphabet_path, std::size_t trials,
                   std::uint64_t seed) {
  const PSTrayIndex index = assemble(read_text(text_path, alphabet_path));
  int failures = 0;
  if (auto problem = check_index(index)) {
    std::cout << "structure: " << *problem << "\n";
    ++failures;
  }
  if (index.size() <= 5000) {
    const auto [psa, plcp] = oracle::naive_psa(index.text);
    if (psa != index.sa.psa || plcp != index.sa.plcp) {
      std::cout << "psa: differs from the materialized-suffix sort\n";
      ++failures;
    }
  }
  if (index.text.pi_count <= oracle::kMaxSpeParams) {
    for (NodeId v = 0; v < index.tree.size(); ++v) {
      if (!index.ann.is_branching(v)) continue;
      const auto expected = oracle::naive_parray(index, v);
      const auto got = index.ann.parray(v);
      if (!std::equal(expected.begin(), expected.end(), got.begin(), got.end())) {
        std::cout << "parray: node " << v << " differs from the definitional p-array\n";
        ++failures;
      }
    }
  }
  if (trials == 0) return failures == 0 ? 0 : 1;

  workload::Rng rng(seed);
  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto pattern = workload::mixed_pattern(index.text, rng, std::min<std::size_t>(50, index.size()));
    const auto got = query(index, pattern).positions;
    const auto expected = oracle::naive_ppm(index.text.symbols, pattern, index.text.pi_count);
    if (got != expected) {
      ++mismatches;
      std::cout << "query: trial " << t << " reported " << got.size() << " occurrences, naive scan "
                << expected.size() << "\n";
    }
  }
  std::cout << "trials=" << trials << " mismatches=" << mismatches << " seed=" << seed << "\n";
  return failures == 0 && mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameterized suffix tray index: build, query and check"};
  app.require_subcommand(1);

  std::string text_path;
  std::string alphabet_path;
  std::string index_path;
  std::string out_path;
  std::string pattern;
  std::string patterns_path;
  std::string csv_path;
  bool no_rmq = false;
  bool stats = false;
  bool oracle_check = false;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;

  auto* build = app.add_subcommand("build", "Build an index and save it");
  build->add_option("--text", text_path, "Text file")->required();
  build->add_option("--alphabet", alphabet_path, "Alphabet spec file")->required();
  build->add_option("--out", out_path, "Output index file")->required();
  build->add_flag("--no-rmq", no_rmq, "Disable the range-minimum acceleration");

  auto* q = app.add_subcommand("query", "Print 1-based p-match positions, one per line");
  q->add_option("--index", index_path, "Index file")->required();
  q->add_option("--pattern", pattern, "Pattern, or @file")->required();
  q->add_flag("--stats", stats, "Print query counters to stderr");
  q->add_flag("--oracle-check", oracle_check, "Cross-check against a naive scan");

  auto* st = app.add_subcommand("stats", "Structural report");
  st->add_option("--index", index_path, "Index file")->required();

  auto* bench = app.add_subcommand("bench", "Compare tray and PSA-only search per pattern");
  bench->add_option("--index", index_path, "Index file")->required();
  bench->add_option("--patterns", patterns_path, "One pattern per line")->required();
  bench->add_option("--csv", csv_path, "Write per-pattern CSV here instead of stdout");

  auto* check = app.add_subcommand("self-check", "Randomized oracle-equivalence suite");
  check->add_option("--text", text_path, "Text file")->required();
  check->add_option("--alphabet", alphabet_path, "Alphabet spec file")->required();
  check->add_option("--trials", trials, "Number of random patterns");
  check->add_option("--seed", seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return run_build(text_path, alphabet_path, out_path, no_rmq);
    if (*q) return run_query(index_path, pattern, stats, oracle_check);
    if (*st) return run_stats(index_path);
    if (*bench) return run_bench(index_path, patterns_path, csv_path);
    if (*check) return run_self_check(text_path, alphabet_path, trials, seed);
  } catch (const std::exception& e) {
    std::cerr << "pstray: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
