#include "psifock/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "psifock/feynman.hpp"
#include "psifock/floors.hpp"
#include "psifock/fock.hpp"
#include "psifock/io.hpp"
#include "psifock/verify.hpp"

namespace psifock {

namespace {

struct RunOptions {
  std::string spec_path;
  std::string method;
  std::string oracle;
  std::string format;
  std::string dot_dir;
  bool connected = false;
  bool disconnected = false;
  std::optional<int> t_max, u_max, w_max;
  bool unsafe = false;
};

struct VerifyOptions {
  std::string suite = "all";
  std::vector<std::string> spec_paths;
  GridBounds grid;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
};

VertexOracle make_oracle(const std::string& text) {
  if (text.empty() || text == "formal") return VertexOracle::formal();
  if (text == "builtin") return VertexOracle::builtin();
  if (text.rfind("table:", 0) == 0) return read_oracle_table(text.substr(6));
  throw CLI::ValidationError("--oracle", "expected formal, builtin or table:<path>, got '" + text + "'");
}

std::string pick(const std::string& flag, const SpecFile& spec, const std::string& key, const std::string& fallback) {
  if (!flag.empty()) return flag;
  auto it = spec.options.find(key);
  return it == spec.options.end() ? fallback : it->second;
}

struct Problem {
  DiscreteData data;
  VertexOracle oracle;
  std::string method;
  std::string format;
};

Problem load(const RunOptions& o) {
  SpecFile spec = read_spec(o.spec_path);
  Problem p;
  p.data = spec.data;
  if (o.connected) p.data.connected = true;
  if (o.disconnected) p.data.connected = false;
  p.oracle = make_oracle(pick(o.oracle, spec, "oracle", "formal"));
  p.method = pick(o.method, spec, "method", "floor");
  p.format = pick(o.format, spec, "format", "human");
  if (p.method != "floor" && p.method != "fock" && p.method != "both")
    throw CLI::ValidationError("--method", "expected floor, fock or both, got '" + p.method + "'");
  if (p.format != "human" && p.format != "records")
    throw CLI::ValidationError("--format", "expected human or records, got '" + p.format + "'");
  require_valid(p.data);
  return p;
}

FormalValue floor_value(const Problem& p, const RunOptions& o) {
  EnumerationOptions options;
  if (o.w_max) options.max_weight = *o.w_max;
  return invariant(p.data, p.oracle, options);
}

FormalValue fock_value(const Problem& p, const RunOptions& o) {
  if (p.data.connected) {
    // the matrix element is the disconnected count; connected graphs come from the Feynman expansion
    return feynman_invariant(p.data, p.oracle);
  }
  std::optional<Bounds> bounds;
  if (o.t_max || o.u_max || o.w_max) {
    Bounds b = default_bounds(p.data);
    if (o.t_max) b.t_max = *o.t_max;
    if (o.u_max) b.u_max = *o.u_max;
    if (o.w_max) b.w_max = *o.w_max;
    bounds = b;
  }
  return matrix_element(p.data, p.oracle, bounds, o.unsafe);
}

int cmd_invariant(const RunOptions& o, std::ostream& out) {
  Problem p = load(o);
  auto print = [&](const std::string& label, const FormalValue& v) {
    if (p.format == "records")
      out << (label.empty() ? "value" : label) << ' ' << v.to_string() << '\n';
    else if (label.empty())
      out << v.to_string() << '\n';
    else
      out << label << ": " << v.to_string() << '\n';
  };
  if (p.method == "floor") {
    print("", floor_value(p, o));
    return kExitOk;
  }
  if (p.method == "fock") {
    print("", fock_value(p, o));
    return kExitOk;
  }
  FormalValue floor = floor_value(p, o);
  FormalValue fock = fock_value(p, o);
  FormalValue difference = floor - fock;
  print("floor", floor);
  print("fock", fock);
  print("difference", difference);
  return difference.is_zero() ? kExitOk : kExitFailure;
}

void print_human(std::ostream& out, std::size_t index, const FloorDiagram& d, const FormalValue& m) {
  out << "diagram " << index << "  multiplicity " << m.to_string() << '\n';
  out << "  vertices";
  for (const auto& v : d.vertices) out << " (" << v.psi << ',' << v.size << ',' << v.genus << ')';
  out << '\n';
  for (const auto& e : d.edges)
    out << "  edge " << e.left << "-" << e.right << " weight " << e.weight << " thick at "
        << (e.thick == Direction::Left ? e.left : e.right) << '\n';
  for (const auto& e : d.ends)
    out << "  end " << to_string(e.label) << " at " << e.vertex << (e.direction == Direction::Left ? " from left" : " to right")
        << " weight " << e.weight << (e.thick ? " thick" : "") << '\n';
  for (const auto& t : d.through)
    out << "  through " << to_string(t.negative) << " -> " << to_string(t.positive) << " weight " << t.weight << '\n';
}

int cmd_diagrams(const RunOptions& o, std::ostream& out) {
  Problem p = load(o);
  EnumerationOptions options;
  if (o.w_max) options.max_weight = *o.w_max;
  auto diagrams = enumerate(p.data, options);
  if (!o.dot_dir.empty()) std::filesystem::create_directories(o.dot_dir);
  FormalValue total;
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    FormalValue m = multiplicity(diagrams[i], p.oracle);
    total += m;
    if (p.format == "records")
      out << format_records(diagrams[i], m);
    else
      print_human(out, i + 1, diagrams[i], m);
    if (!o.dot_dir.empty()) {
      std::ostringstream name;
      name << "diagram_" << std::setw(4) << std::setfill('0') << i + 1 << ".dot";
      std::ofstream file(std::filesystem::path(o.dot_dir) / name.str());
      if (!file) throw std::runtime_error("cannot write into " + o.dot_dir);
      file << to_dot(diagrams[i]);
    }
  }
  if (p.format == "human") out << diagrams.size() << " diagrams, total " << total.to_string() << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  DataSource source;
  if (!o.spec_paths.empty()) {
    std::vector<DiscreteData> items;
    for (const auto& path : o.spec_paths) {
      auto d = read_spec(path).data;
      d.connected = false;
      require_valid(d);
      items.push_back(d);
    }
    source = list_source(items);
  } else {
    source = grid_source(o.grid);
  }
  std::vector<SuiteReport> reports;
  const bool all = o.suite == "all";
  if (all || o.suite == "wick") reports.push_back(verify_wick(o.count, o.seed));
  if (all || o.suite == "identity") reports.push_back(verify_identity(source));
  if (all || o.suite == "bijection") reports.push_back(verify_bijection(source));
  if (all || o.suite == "degeneration")
    reports.push_back(verify_degeneration(source, o.spec_paths.empty() ? 2 : 0));
  bool ok = true;
  for (const auto& r : reports) {
    out << (r.ok() ? "pass " : "FAIL ") << summary(r) << '\n';
    ok = ok && r.ok();
  }
  return ok ? kExitOk : kExitFailure;
}

void add_run_options(CLI::App* cmd, RunOptions& o, bool with_bounds) {
  cmd->add_option("spec", o.spec_path, "problem specification file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--oracle", o.oracle, "formal, builtin or table:<path>");
  auto* c = cmd->add_flag("--connected", o.connected, "count connected diagrams only");
  auto* d = cmd->add_flag("--disconnected", o.disconnected, "count disconnected diagrams too");
  c->excludes(d);
  cmd->add_option("--format", o.format, "human or records");
  cmd->add_option("--w-max", o.w_max, "largest edge weight considered");
  if (with_bounds) {
    cmd->add_option("--method", o.method, "floor, fock or both");
    cmd->add_option("--t-max", o.t_max, "truncation of the t-grading");
    cmd->add_option("--u-max", o.u_max, "truncation of the u-grading");
    cmd->add_flag("--unsafe-bounds", o.unsafe, "accept truncation bounds below the safe defaults");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary descendant invariants of Hirzebruch surfaces via floor diagrams and Fock space"};
  app.name("psifock");
  app.require_subcommand(1);

  RunOptions run;
  auto* inv = app.add_subcommand("invariant", "compute an invariant");
  add_run_options(inv, run, true);
  auto* dia = app.add_subcommand("diagrams", "list floor diagrams with multiplicities");
  add_run_options(dia, run, false);
  dia->add_option("--dot", run.dot_dir, "write one Graphviz file per diagram into this directory");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", ver.suite, "wick, identity, bijection, degeneration or all")
      ->check(CLI::IsMember({"wick", "identity", "bijection", "degeneration", "all"}));
  verify->add_option("--spec", ver.spec_paths, "check these specs instead of the grid");
  verify->add_option("--count", ver.count, "number of random words for the wick suite");
  verify->add_option("--seed", ver.seed, "random seed for the wick suite");
  verify->add_option("--k-max", ver.grid.k_max, "largest k");
  verify->add_option("--a-max", ver.grid.a_max, "largest a");
  verify->add_option("--g-min", ver.grid.g_min, "smallest genus");
  verify->add_option("--g-max", ver.grid.g_max, "largest genus");
  verify->add_option("--n-min", ver.grid.n_min, "fewest points");
  verify->add_option("--n-max", ver.grid.n_max, "most points");
  verify->add_option("--entry-max", ver.grid.entry_max, "largest |phi_i|, |mu_i|");
  verify->add_option("--psi-sum-max", ver.grid.psi_sum_max, "largest total psi power");
  verify->add_option("--phi-length-max", ver.grid.phi_length_max, "longest phi");
  verify->add_option("--mu-length-max", ver.grid.mu_length_max, "longest mu");
  verify->add_option("--ends-max", ver.grid.ends_max, "cap on len(phi) + len(mu)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (inv->parsed()) return cmd_invariant(run, out);
    if (dia->parsed()) return cmd_diagrams(run, out);
    return cmd_verify(ver, out);
  } catch (const InvalidData& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const BoundsError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBounds;
  } catch (const ResourceLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBounds;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace psifock
