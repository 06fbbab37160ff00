#include "brel/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "brel/container.hpp"
#include "brel/edge_list.hpp"
#include "brel/naive_relation.hpp"
#include "brel/space.hpp"
#include "brel/telemetry.hpp"

namespace brel::cli {

namespace {

EdgeList read_edges(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input: " + path);
  return parse_edge_list(in);
}

StoredRelation read_structure(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open structure: " + path);
  return StoredRelation::load(in);
}

bool is_brel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  return in.read(magic, 4) && std::string_view(magic, 4) == "BREL";
}

std::vector<uint64_t> sample_args(std::mt19937_64& rng, Op op,
                                  const RelationDims& d) {
  std::vector<uint64_t> args;
  for (ArgKind k : op_args(op)) {
    switch (k) {
      case ArgKind::label: args.push_back(rng() % (d.sigma + 2)); break;
      case ArgKind::object: args.push_back(rng() % (d.n + 2)); break;
      case ArgKind::ordinal: args.push_back(1 + rng() % (d.t + 2)); break;
    }
  }
  return args;
}

int cmd_build(const std::string& input, const std::string& output,
              const std::string& repr, uint64_t arity, const std::string& bands,
              std::ostream& out) {
  const auto tag = tag_from_name(repr);
  if (!tag) throw CLI::ValidationError("--repr", "unknown representation: " + repr);
  const auto mode = bands == "full" ? BandMode::full : BandMode::prefix;
  const EdgeList edges = read_edges(input);
  auto rel = build_relation(*tag, edges.pairs, edges.n, edges.sigma, arity, mode);
  std::ofstream os(output, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output: " + output);
  rel.save(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + output);
  const auto d = rel.dims();
  out << "repr=" << tag_name(*tag) << " n=" << d.n << " sigma=" << d.sigma
      << " t=" << d.t << " payload_bits=" << rel.payload_bits() << "\n";
  return 0;
}

int cmd_query(const std::string& structure, const std::string& opname,
              const std::vector<uint64_t>& args, std::ostream& out,
              std::ostream& err) {
  const auto op = op_from_name(opname);
  if (!op) {
    err << "unknown operation: " << opname << "\n";
    return 2;
  }
  if (args.size() != op_args(*op).size()) {
    err << opname << " expects " << op_args(*op).size() << " arguments\n";
    return 2;
  }
  const auto rel = read_structure(structure);
  QueryEngine engine(rel.backend());
  const auto result = run_op(engine, *op, args);
  const std::string text = result_to_string(result);
  if (!text.empty()) out << text << "\n";
  return 0;
}

int cmd_verify(const std::string& input, std::vector<std::string> reprs,
               const std::vector<std::string>& structures, uint64_t seed,
               uint64_t rounds, uint64_t arity, std::ostream& out,
               std::ostream& err) {
  const EdgeList edges = read_edges(input);
  NaiveRelation oracle(edges.pairs, edges.n, edges.sigma);
  QueryEngine reference(oracle);

  struct Target {
    std::string name;
    StoredRelation rel;
  };
  std::vector<Target> targets;
  if (structures.empty()) {
    if (reprs.empty()) reprs = {"str", "wt", "gwt", "brwt"};
    for (const auto& name : reprs) {
      const auto tag = tag_from_name(name);
      if (!tag) throw CLI::ValidationError("--reprs", "unknown representation: " + name);
      targets.push_back(
          {name, build_relation(*tag, edges.pairs, edges.n, edges.sigma, arity)});
    }
  } else {
    for (const auto& path : structures)
      targets.push_back({path, read_structure(path)});
  }

  std::vector<QueryEngine> engines;
  engines.reserve(targets.size());
  for (const auto& t : targets) engines.emplace_back(t.rel.backend());

  std::mt19937_64 rng(seed);
  std::vector<uint64_t> passes(kOpCount, 0);
  for (uint64_t round = 0; round < rounds; ++round) {
    const Op op = static_cast<Op>(rng() % kOpCount);
    const auto args = sample_args(rng, op, oracle.dims());
    const auto expect = run_op(reference, op, args);
    for (size_t i = 0; i < targets.size(); ++i) {
      const auto got = run_op(engines[i], op, args);
      if (got != expect) {
        err << "MISMATCH " << targets[i].name << " op=" << op_name(op);
        for (uint64_t a : args) err << " " << a;
        err << "\n  expected: " << result_to_string(expect)
            << "\n  got:      " << result_to_string(got) << "\n  relation:\n";
        EdgeList dump{oracle.dims().n, oracle.dims().sigma, true,
                      oracle.pairs_label_major()};
        write_edge_list(err, dump);
        return 1;
      }
    }
    ++passes[static_cast<int>(op)];
  }
  for (int o = 0; o < kOpCount; ++o) {
    out << op_name(static_cast<Op>(o)) << ": " << passes[o] << " ok\n";
  }
  out << "all " << rounds << " rounds passed on " << targets.size()
      << " structure(s)\n";
  return 0;
}

int cmd_stats(const std::string& path, std::ostream& out) {
  if (is_brel_file(path)) {
    const auto rel = read_structure(path);
    const auto pairs = rel.decode();
    std::vector<space::ReprSpace> reprs{{std::string(tag_name(rel.tag())),
                                         rel.payload_bits(),
                                         rel.directory_bits()}};
    const Brwt* brwt = nullptr;
    Brwt rebuilt;
    if (rel.tag() == ReprTag::brwt) {
      rebuilt = Brwt(pairs, rel.dims().n, rel.dims().sigma);
      brwt = &rebuilt;
    }
    const auto report = space::make_report(pairs, rel.dims(), reprs, brwt);
    space::print_text(out, report);
    space::print_kv(out, report);
    return 0;
  }
  const EdgeList edges = read_edges(path);
  BinRelStr str(edges.pairs, edges.n, edges.sigma);
  BinRelWt wt(edges.pairs, edges.n, edges.sigma);
  BinRelGwt gwt(edges.pairs, edges.n, edges.sigma, 8);
  Brwt brwt(edges.pairs, edges.n, edges.sigma);
  const std::vector<space::ReprSpace> reprs{
      {"str", str.payload_bits(), str.directory_bits()},
      {"wt", wt.payload_bits(), wt.directory_bits()},
      {"gwt", gwt.payload_bits(), gwt.directory_bits()},
      {"brwt", brwt.payload_bits(), brwt.directory_bits()},
  };
  const auto report =
      space::make_report(str.decode(), str.dims(), reprs, &brwt);
  space::print_text(out, report);
  space::print_kv(out, report);
  return 0;
}

int cmd_bench(const std::string& structure, const std::string& opname,
              uint64_t count, uint64_t seed, std::ostream& out,
              std::ostream& err) {
  const auto op = op_from_name(opname);
  if (!op) {
    err << "unknown operation: " << opname << "\n";
    return 2;
  }
  const auto rel = read_structure(structure);
  QueryEngine engine(rel.backend());
  std::mt19937_64 rng(seed);
  auto& tc = telemetry::counters();
  uint64_t max_visits = 0, total_visits = 0;
  const auto start = std::chrono::steady_clock::now();
  for (uint64_t q = 0; q < count; ++q) {
    const auto args = sample_args(rng, *op, rel.dims());
    tc.reset();
    (void)run_op(engine, *op, args);
    const uint64_t visits = tc.wt_nodes + tc.gwt_nodes + tc.brwt_nodes;
    total_visits += visits;
    max_visits = std::max(max_visits, visits);
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start);
  out << "op=" << opname << " queries=" << count;
  if (count > 0) {
    out << " mean_visits=" << static_cast<double>(total_visits) / count
        << " max_visits=" << max_visits << " total_ms=" << elapsed.count();
  }
  out << "\n";
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"compact binary relation structures"};
  app.require_subcommand(1);

  std::string input, output, repr = "wt", bands = "prefix", opname;
  std::vector<uint64_t> opargs;
  std::vector<std::string> reprs, structures;
  uint64_t arity = 8, seed = 1, rounds = 200, count = 1000;

  auto* build = app.add_subcommand("build", "build a structure from an edge list");
  build->add_option("input", input, "edge list file")->required();
  build->add_option("output", output, "output .brel file")->required();
  build->add_option("-r,--repr", repr, "representation: str|wt|gwt|brwt");
  auto* arity_opt =
      build->add_option("--arity", arity, "fan-out, gwt only")->check(CLI::Range(2, 64));
  auto* bands_opt =
      build->add_option("--band-mode", bands, "gwt band directories: prefix|full")
          ->check(CLI::IsMember({"prefix", "full"}));

  auto* query = app.add_subcommand("query", "answer one operation");
  query->add_option("structure", input, ".brel file")->required();
  query->add_option("op", opname, "operation name")->required();
  query->add_option("args", opargs, "operation arguments");

  auto* verify = app.add_subcommand("verify", "randomized oracle equivalence");
  verify->add_option("input", input, "edge list file")->required();
  verify->add_option("--reprs", reprs, "representations to check")->delimiter(',');
  verify->add_option("--structure", structures, "prebuilt .brel files to check");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--rounds", rounds, "number of random queries");
  verify->add_option("--arity", arity, "fan-out for gwt")->check(CLI::Range(2, 64));

  auto* stats = app.add_subcommand("stats", "entropy and space report");
  stats->add_option("path", input, "edge list or .brel file")->required();

  auto* bench = app.add_subcommand("bench", "node visits and wall time");
  bench->add_option("structure", input, ".brel file")->required();
  bench->add_option("op", opname, "operation name")->required();
  bench->add_option("--count", count, "number of queries");
  bench->add_option("--seed", seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (build->parsed()) {
      if ((arity_opt->count() || bands_opt->count()) && repr != "gwt")
        throw CLI::ValidationError("--arity/--band-mode apply to gwt only");
      return cmd_build(input, output, repr, arity, bands, out);
    }
    if (query->parsed()) return cmd_query(input, opname, opargs, out, err);
    if (verify->parsed())
      return cmd_verify(input, reprs, structures, seed, rounds, arity, out, err);
    if (stats->parsed()) return cmd_stats(input, out);
    if (bench->parsed()) return cmd_bench(input, opname, count, seed, out, err);
  } catch (const CLI::Error& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace brel::cli
