// Command-line front end: partition, gen, eval, oracle, bench.
//
// Exit codes: 0 success, 1 invalid input, 2 refused (oracle size guard),
// 3 internal invariant violation.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rectpart/rectpart.hpp"

namespace {

using namespace rectpart;

enum ExitCode { kOk = 0, kInvalidInput = 1, kRefused = 2, kInternal = 3 };

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << bytes;
}

Layout run_algorithm(const std::string& algo, const Instance& inst) {
  Layout layout = algo == "mdc" ? partition_mdc(inst) : partition_dc(inst);
  const LayoutDiagnostics diag = validate_layout(inst, layout);
  if (!diag.ok()) throw InvariantViolation("produced layout failed validation");
  return layout;
}

struct PartitionArgs {
  std::string algo = "dc";
  std::string input, output, svg, report_path;
  std::string labels = "index";
  bool normalize = false;
};

int cmd_partition(const PartitionArgs& a) {
  const Instance inst = parse_instance(read_file(a.input), a.normalize ? Instance::Normalize::Yes
                                                                       : Instance::Normalize::No);
  const Layout layout = run_algorithm(a.algo, inst);
  write_output(a.output, serialize_layout(layout, !a.report_path.empty()));
  if (!a.svg.empty()) {
    SvgOptions opts;
    opts.labels = a.labels == "none" ? SvgLabels::None
                  : a.labels == "full" ? SvgLabels::Full
                                       : SvgLabels::Index;
    write_output(a.svg, render_svg(layout, inst, opts));
  }
  if (!a.report_path.empty()) write_output(a.report_path, serialize_report(report(inst, layout)));
  return kOk;
}

struct GenArgs {
  std::size_t n = 0;
  std::string family = "uniform";
  double q = 0.5;
  std::uint64_t seed = 0;
  double width = 1.0, height = 1.0;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  GenSpec spec;
  spec.n = a.n;
  spec.family = a.family == "geo" ? Family::Geometric : Family::Uniform;
  spec.q = a.q;
  spec.seed = a.seed;
  spec.container = Rect{0.0, 0.0, a.width, a.height};
  write_output(a.output, serialize_instance(generate(spec)));
  return kOk;
}

struct EvalArgs {
  std::string instance, layout, output;
  bool normalize = false;
};

int cmd_eval(const EvalArgs& a) {
  const Instance inst = parse_instance(read_file(a.instance), a.normalize ? Instance::Normalize::Yes
                                                                          : Instance::Normalize::No);
  const LayoutDocument doc = parse_layout(read_file(a.layout));
  if (doc.rects.size() != inst.size()) {
    throw ParseError("layout has " + std::to_string(doc.rects.size()) + " rects, instance has " +
                         std::to_string(inst.size()) + " areas",
                     0);
  }
  const LayoutDiagnostics diag = validate_layout(inst, doc.rects);
  if (!diag.ok()) {
    std::string msg = "layout does not match instance:";
    if (!diag.area_ok()) msg += " area mismatch at " + std::to_string(diag.area_mismatch.size()) + " indices;";
    if (!diag.tiling_ok()) msg += " tiling failure (" + std::to_string(diag.overlapping.size()) + " overlaps);";
    if (!diag.containment_ok()) msg += " " + std::to_string(diag.outside.size()) + " rects outside the container;";
    throw ParseError(msg, 0);
  }

  std::optional<LayoutTree> tree = doc.tree;
  if (tree && leaf_rects(*tree, inst.size()) != doc.rects) {
    throw ParseError("layout tree disagrees with its rects", 0);
  }
  if (!tree) tree = reconstruct_tree(inst.container(), doc.rects);
  const QualityReport rep = tree ? report(inst, Layout{doc.rects, *tree}) : report_flat(inst, doc.rects);
  write_output(a.output, serialize_report(rep));
  return kOk;
}

struct OracleArgs {
  std::string input, output;
  std::size_t max_n = 8;
};

int cmd_oracle(const OracleArgs& a) {
  const Instance inst = parse_instance(read_file(a.input));
  const OracleResult r = optimal_guillotine(inst, a.max_n);
  std::string out = serialize_layout(r.layout);
  // Prepend the optimum so the document reads {"optimum": v, "rects": ...}.
  out.insert(2, "  \"optimum\": " + format_number(r.value) + ",\n");
  write_output(a.output, out);
  return kOk;
}

struct BenchArgs {
  std::string n_list;
  std::size_t repeats = 11;
  std::string algo = "dc";
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(a.n_list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != tok.size() || v == 0) throw ParseError("bad --n-list entry: " + tok, 0);
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty() || a.repeats == 0) throw ParseError("bench needs sizes and repeats >= 1", 0);

  std::cout << "n,median_ms,mean_ms\n";
  for (std::size_t n : sizes) {
    const Instance inst = generate(GenSpec{n, Family::Uniform, 0.5, a.seed});
    std::vector<double> ms;
    for (std::size_t r = 0; r < a.repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const Layout layout = a.algo == "mdc" ? partition_mdc(inst) : partition_dc(inst);
      const auto t1 = std::chrono::steady_clock::now();
      if (layout.rects.size() != n) throw InvariantViolation("bench: wrong layout size");
      ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(ms.begin(), ms.end());
    const double median = ms.size() % 2 ? ms[ms.size() / 2]
                                        : 0.5 * (ms[ms.size() / 2 - 1] + ms[ms.size() / 2]);
    const double mean = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
    char line[96];
    std::snprintf(line, sizeof line, "%zu,%.6f,%.6f\n", n, median, mean);
    std::cout << line;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rectangle partitioning into prescribed areas with small total perimeter"};
  app.require_subcommand(1);

  PartitionArgs pa;
  auto* partition = app.add_subcommand("partition", "Partition a container into the given areas");
  partition->add_option("--algo", pa.algo, "dc (approximation) or mdc (threshold bundling)")
      ->check(CLI::IsMember({"dc", "mdc"}));
  partition->add_option("--input", pa.input, "Instance JSON")->required();
  partition->add_option("--output", pa.output, "Layout JSON (default: stdout)");
  partition->add_option("--svg", pa.svg, "Write an SVG rendering");
  partition->add_option("--labels", pa.labels, "SVG labels: none, index, full")
      ->check(CLI::IsMember({"none", "index", "full"}));
  partition->add_flag("--normalize", pa.normalize, "Rescale areas to fill the container");
  partition->add_option("--report", pa.report_path, "Write a quality report JSON");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--n", ga.n, "Number of areas")->required()->check(CLI::PositiveNumber);
  gen->add_option("--family", ga.family, "uniform or geo")->check(CLI::IsMember({"uniform", "geo"}));
  gen->add_option("--q", ga.q, "Decay rate of the geo family, in (0, 1]");
  gen->add_option("--seed", ga.seed, "Seed")->required();
  gen->add_option("--width", ga.width, "Container width")->required();
  gen->add_option("--height", ga.height, "Container height")->required();
  gen->add_option("--output", ga.output, "Instance JSON (default: stdout)");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Quality report for an existing layout");
  eval->add_option("--instance", ea.instance, "Instance JSON")->required();
  eval->add_option("--layout", ea.layout, "Layout JSON")->required();
  eval->add_option("--output", ea.output, "Report JSON (default: stdout)");
  eval->add_flag("--normalize", ea.normalize, "Rescale areas to fill the container");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Exact guillotine optimum for small instances");
  oracle->add_option("--input", oa.input, "Instance JSON")->required();
  oracle->add_option("--max-n", oa.max_n, "Refuse instances with more areas than this");
  oracle->add_option("--output", oa.output, "Layout JSON with the optimum (default: stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Wall-clock timing as CSV");
  bench->add_option("--n-list", ba.n_list, "Comma-separated sizes, e.g. 1000,2000")->required();
  bench->add_option("--repeats", ba.repeats, "Runs per size")->required();
  bench->add_option("--algo", ba.algo, "dc or mdc")->check(CLI::IsMember({"dc", "mdc"}));
  bench->add_option("--seed", ba.seed, "Instance seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kInvalidInput;
  }

  try {
    if (*partition) return cmd_partition(pa);
    if (*gen) return cmd_gen(ga);
    if (*eval) return cmd_eval(ea);
    if (*oracle) return cmd_oracle(oa);
    if (*bench) return cmd_bench(ba);
  } catch (const RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const ParseError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInvalidInput;
}
