#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psifock/core.hpp"
#include "psifock/floors.hpp"
#include "psifock/formal.hpp"

namespace psifock {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line) : std::runtime_error(format(what, line)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string format(const std::string& what, int line) {
    return line > 0 ? "line " + std::to_string(line) + ": " + what : what;
  }
  int line_;
};

/// Flat `key = value` text, one spec per file. `#` starts a comment.
/// Keys k, g, a, psi, phi, mu, connected describe the data; any other key is
/// kept verbatim in `options`.
struct SpecFile {
  DiscreteData data;
  std::map<std::string, std::string> options;
};

SpecFile parse_spec(std::string_view text);
SpecFile read_spec(const std::filesystem::path& path);
/// Inverse of parse_spec for the data keys; output parses back to equal data.
std::string format_spec(const DiscreteData& data);

/// `<(phi-),(mu-)|tau_k|(phi+),(mu+)>_g`, the VertexSymbol::to_string format.
VertexSymbol parse_symbol(std::string_view text);

/// Lines `<symbol> = p/q`; comments and blank lines allowed.
std::map<VertexSymbol, FormalValue> parse_oracle_table(std::string_view text);
VertexOracle read_oracle_table(const std::filesystem::path& path);

/// Line records:
///   diagram
///   vertex <k> <s> <g>
///   edge <u> <v> <w> thick=L|R
///   end <v> L|R <w> thick|plain phi:<i>|mu:<i>
///   through <label> <label> <w>
///   multiplicity <value>      (optional)
///   done
std::string format_records(const FloorDiagram& d, const std::optional<FormalValue>& multiplicity = std::nullopt);
std::vector<FloorDiagram> parse_records(std::string_view text);

/// Graphviz rendering: thick half-edges bold, vertex label "k_V, s_V, g_V".
std::string to_dot(const FloorDiagram& d);

}  // namespace psifock
