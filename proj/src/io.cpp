#include "psifock/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace psifock {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, int line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
  return value;
}

std::vector<int> parse_list(std::string_view s, int line) {
  s = trim(s);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(parse_int(s.substr(start, comma - start), line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_bool(std::string_view s, int line) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ParseError("expected true or false, got '" + std::string(s) + "'", line);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class Visit>
void for_each_line(std::string_view text, Visit&& visit) {
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) visit(line, number);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

PartLabel parse_label(std::string_view s, int line) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError("bad part label '" + std::string(s) + "'", line);
  auto kind = s.substr(0, colon);
  PartLabel label;
  if (kind == "phi")
    label.kind = PartKind::Phi;
  else if (kind == "mu")
    label.kind = PartKind::Mu;
  else
    throw ParseError("bad part label '" + std::string(s) + "'", line);
  label.index = parse_int(s.substr(colon + 1), line);
  return label;
}

Direction parse_direction(std::string_view s, int line) {
  if (s == "L") return Direction::Left;
  if (s == "R") return Direction::Right;
  throw ParseError("expected L or R, got '" + std::string(s) + "'", line);
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
  SpecFile spec;
  bool seen_psi = false;
  for_each_line(text, [&](std::string_view line, int number) {
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", number);
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "k")
      spec.data.k = parse_int(value, number);
    else if (key == "g")
      spec.data.g = parse_int(value, number);
    else if (key == "a")
      spec.data.a = parse_int(value, number);
    else if (key == "psi") {
      spec.data.psi = parse_list(value, number);
      seen_psi = true;
    } else if (key == "n") {
      // n alone means n primary points
      if (!seen_psi) spec.data.psi.assign(parse_int(value, number), 0);
    } else if (key == "phi")
      spec.data.phi = parse_list(value, number);
    else if (key == "mu")
      spec.data.mu = parse_list(value, number);
    else if (key == "connected")
      spec.data.connected = parse_bool(value, number);
    else
      spec.options[key] = std::string(value);
  });
  return spec;
}

SpecFile read_spec(const std::filesystem::path& path) { return parse_spec(read_file(path)); }

std::string format_spec(const DiscreteData& d) {
  std::ostringstream os;
  os << "k = " << d.k << "\ng = " << d.g << "\na = " << d.a << "\npsi = " << join(d.psi) << "\nphi = " << join(d.phi)
     << "\nmu = " << join(d.mu) << "\nconnected = " << (d.connected ? "true" : "false") << '\n';
  return os.str();
}

VertexSymbol parse_symbol(std::string_view text) {
  std::string_view s = trim(text);
  auto fail = [&] { return ParseError("malformed vertex symbol '" + std::string(text) + "'", 0); };
  if (s.size() < 2 || s.front() != '<') throw fail();
  auto bar1 = s.find('|');
  auto bar2 = s.find('|', bar1 + 1);
  auto close = s.find(">_");
  if (bar1 == std::string_view::npos || bar2 == std::string_view::npos || close == std::string_view::npos) throw fail();
  auto pair = [&](std::string_view p) {
    p = trim(p);
    auto mid = p.find("),(");
    if (p.size() < 5 || p.front() != '(' || p.back() != ')' || mid == std::string_view::npos) throw fail();
    return std::pair{parse_list(p.substr(1, mid - 1), 0), parse_list(p.substr(mid + 3, p.size() - mid - 4), 0)};
  };
  auto [phi_minus, mu_minus] = pair(s.substr(1, bar1 - 1));
  auto tau = trim(s.substr(bar1 + 1, bar2 - bar1 - 1));
  if (tau.substr(0, 4) != "tau_") throw fail();
  int psi = parse_int(tau.substr(4), 0);
  auto [phi_plus, mu_plus] = pair(s.substr(bar2 + 1, close - bar2 - 1));
  int genus = parse_int(s.substr(close + 2), 0);
  auto v = VertexSymbol::make(genus, psi, phi_minus, mu_minus, phi_plus, mu_plus);
  if (!v.is_canonical()) throw fail();
  return v;
}

std::map<VertexSymbol, FormalValue> parse_oracle_table(std::string_view text) {
  std::map<VertexSymbol, FormalValue> entries;
  for_each_line(text, [&](std::string_view line, int number) {
    auto eq = line.rfind('=');
    if (eq == std::string_view::npos) throw ParseError("expected <symbol> = value", number);
    VertexSymbol v;
    try {
      v = parse_symbol(line.substr(0, eq));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
    Rational value;
    try {
      value = parse_rational(line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), number);
    }
    if (!entries.emplace(v, FormalValue(value)).second)
      throw ParseError("duplicate entry for " + v.to_string(), number);
  });
  return entries;
}

VertexOracle read_oracle_table(const std::filesystem::path& path) {
  return VertexOracle::table(parse_oracle_table(read_file(path)));
}

std::string format_records(const FloorDiagram& d, const std::optional<FormalValue>& multiplicity) {
  std::ostringstream os;
  os << "diagram\n";
  for (const auto& v : d.vertices) os << "vertex " << v.psi << ' ' << v.size << ' ' << v.genus << '\n';
  for (const auto& e : d.edges)
    os << "edge " << e.left << ' ' << e.right << ' ' << e.weight << " thick=" << (e.thick == Direction::Left ? 'L' : 'R')
       << '\n';
  for (const auto& e : d.ends)
    os << "end " << e.vertex << ' ' << (e.direction == Direction::Left ? 'L' : 'R') << ' ' << e.weight << ' '
       << (e.thick ? "thick" : "plain") << ' ' << to_string(e.label) << '\n';
  for (const auto& t : d.through)
    os << "through " << to_string(t.negative) << ' ' << to_string(t.positive) << ' ' << t.weight << '\n';
  if (multiplicity) os << "multiplicity " << multiplicity->to_string() << '\n';
  os << "done\n";
  return os.str();
}

std::vector<FloorDiagram> parse_records(std::string_view text) {
  std::vector<FloorDiagram> out;
  std::optional<FloorDiagram> current;
  for_each_line(text, [&](std::string_view line, int number) {
    auto w = words(line);
    auto expect = [&](std::size_t count) {
      if (w.size() != count) throw ParseError("wrong field count in '" + std::string(line) + "'", number);
    };
    if (w[0] == "diagram") {
      if (current) throw ParseError("nested diagram record", number);
      current.emplace();
      return;
    }
    if (!current) throw ParseError("record outside a diagram", number);
    if (w[0] == "vertex") {
      expect(4);
      current->vertices.push_back({parse_int(w[3], number), parse_int(w[2], number), parse_int(w[1], number)});
    } else if (w[0] == "edge") {
      expect(5);
      if (w[4].substr(0, 6) != "thick=") throw ParseError("expected thick=L|R", number);
      current->edges.push_back({parse_int(w[1], number), parse_int(w[2], number), parse_int(w[3], number),
                                parse_direction(w[4].substr(6), number)});
    } else if (w[0] == "end") {
      expect(6);
      if (w[4] != "thick" && w[4] != "plain") throw ParseError("expected thick or plain", number);
      current->ends.push_back({parse_int(w[1], number), parse_direction(w[2], number), parse_int(w[3], number),
                               w[4] == "thick", parse_label(w[5], number)});
    } else if (w[0] == "through") {
      expect(4);
      current->through.push_back({parse_label(w[1], number), parse_label(w[2], number), parse_int(w[3], number)});
    } else if (w[0] == "multiplicity") {
      // informational
    } else if (w[0] == "done") {
      out.push_back(std::move(*current));
      current.reset();
    } else {
      throw ParseError("unknown record '" + std::string(w[0]) + "'", number);
    }
  });
  if (current) throw ParseError("unterminated diagram record", 0);
  return out;
}

std::string to_dot(const FloorDiagram& d) {
  std::ostringstream os;
  os << "graph floor {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const auto& v = d.vertices[i];
    os << "  v" << i << " [label=\"" << v.psi << ", " << v.size << ", " << v.genus << "\"];\n";
  }
  // a half-edge is drawn from its endpoint to the edge midpoint
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    os << "  e" << i << " [shape=point, xlabel=\"" << e.weight << "\"];\n";
    os << "  v" << e.left << " -- e" << i << (e.thick == Direction::Left ? " [penwidth=3]" : "") << ";\n";
    os << "  e" << i << " -- v" << e.right << (e.thick == Direction::Right ? " [penwidth=3]" : "") << ";\n";
  }
  for (std::size_t i = 0; i < d.ends.size(); ++i) {
    const auto& e = d.ends[i];
    os << "  x" << i << " [shape=plaintext, label=\"" << to_string(e.label) << "\"];\n";
    std::string style = "label=\"" + std::to_string(e.weight) + "\"" + (e.thick ? ", penwidth=3" : "");
    if (e.direction == Direction::Left)
      os << "  x" << i << " -- v" << e.vertex << " [" << style << "];\n";
    else
      os << "  v" << e.vertex << " -- x" << i << " [" << style << "];\n";
  }
  for (std::size_t i = 0; i < d.through.size(); ++i) {
    const auto& t = d.through[i];
    os << "  t" << i << "a [shape=plaintext, label=\"" << to_string(t.negative) << "\"];\n";
    os << "  t" << i << "b [shape=plaintext, label=\"" << to_string(t.positive) << "\"];\n";
    os << "  t" << i << "a -- t" << i << "b [label=\"" << t.weight << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace psifock
