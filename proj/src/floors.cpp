#include "psifock/floors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "combinatorics.hpp"

namespace psifock {

std::string to_string(PartLabel label) {
  return (label.kind == PartKind::Phi ? "phi:" : "mu:") + std::to_string(label.index);
}

void FloorDiagram::canonicalize() {
  std::sort(edges.begin(), edges.end());
  std::sort(ends.begin(), ends.end(), [](const End& x, const End& y) { return x.label < y.label; });
  std::sort(through.begin(), through.end());
}

FloorDiagram FloorDiagram::canonical() const {
  FloorDiagram copy = *this;
  copy.canonicalize();
  return copy;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

int vertex_components(const FloorDiagram& d) {
  int n = static_cast<int>(d.vertices.size());
  UnionFind uf(n);
  for (const auto& e : d.edges) uf.unite(e.left, e.right);
  int count = 0;
  for (int v = 0; v < n; ++v) count += uf.find(v) == v;
  return count;
}

}  // namespace

int FloorDiagram::components() const {
  return vertex_components(*this) + static_cast<int>(through.size());
}

int FloorDiagram::betti_number() const {
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + vertex_components(*this);
}

int FloorDiagram::genus() const {
  int vertex_genus = 0;
  for (const auto& v : vertices) vertex_genus += v.genus;
  return betti_number() + vertex_genus - components() + 1;
}

long FloorDiagram::automorphisms() const {
  std::vector<CompactEdge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  long result = 1;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    for (std::size_t f = 2; f <= j - i; ++f) result *= static_cast<long>(f);
    i = j;
  }
  return result;
}

VertexSymbol FloorDiagram::vertex_symbol(int v) const {
  std::vector<int> phi_minus, mu_minus, phi_plus, mu_plus;
  auto add = [&](Direction dir, bool thick, int w) {
    if (dir == Direction::Left)
      (thick ? mu_minus : phi_minus).push_back(w);
    else
      (thick ? mu_plus : phi_plus).push_back(w);
  };
  for (const auto& e : edges) {
    if (e.left == v) add(Direction::Right, e.thick == Direction::Left, e.weight);
    if (e.right == v) add(Direction::Left, e.thick == Direction::Right, e.weight);
  }
  for (const auto& end : ends)
    if (end.vertex == v) add(end.direction, end.thick, end.weight);
  const auto& vert = vertices.at(v);
  return VertexSymbol::make(vert.genus, vert.psi, std::move(phi_minus), std::move(mu_minus),
                            std::move(phi_plus), std::move(mu_plus));
}

bool FloorReport::has(FloorCondition c) const {
  return std::find(violations.begin(), violations.end(), c) != violations.end();
}

std::string FloorReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i)
    os << (i ? "," : "violated conditions: ") << static_cast<int>(violations[i]);
  return os.str();
}

FloorReport is_valid(const FloorDiagram& d, const DiscreteData& data) {
  const int n = static_cast<int>(d.vertices.size());
  for (const auto& e : d.edges)
    if (e.left < 0 || e.left >= n || e.right < 0 || e.right >= n)
      throw std::out_of_range("compact edge refers to a missing vertex");
  for (const auto& end : d.ends)
    if (end.vertex < 0 || end.vertex >= n) throw std::out_of_range("end refers to a missing vertex");

  FloorReport report;
  auto flag = [&](FloorCondition c) {
    if (!report.has(c)) report.violations.push_back(c);
  };

  for (const auto& v : d.vertices)
    if (v.genus < 0 || v.size < 0 || v.psi < 0) flag(FloorCondition::Decorations);
  for (const auto& e : d.edges) {
    if (e.left >= e.right) flag(FloorCondition::Structure);
    if (e.thick != Direction::Left && e.thick != Direction::Right) flag(FloorCondition::EdgeThickening);
    if (e.weight <= 0) flag(FloorCondition::Weights);
  }
  for (const auto& end : d.ends)
    if (end.weight <= 0) flag(FloorCondition::Weights);
  for (const auto& t : d.through)
    if (t.weight <= 0) flag(FloorCondition::Weights);

  std::vector<int> thick(n, 0);
  std::vector<long> balance(n, 0);
  for (const auto& e : d.edges) {
    if (e.left == e.right) continue;
    balance[e.left] += e.weight;
    balance[e.right] -= e.weight;
    thick[e.thick == Direction::Left ? e.left : e.right] += 1;
  }
  for (const auto& end : d.ends) {
    balance[end.vertex] += end.direction == Direction::Left ? -end.weight : end.weight;
    if (end.thick) thick[end.vertex] += 1;
  }
  for (int v = 0; v < n; ++v) {
    const auto& vert = d.vertices[v];
    if (thick[v] != vert.psi + 2 - 2 * vert.size - vert.genus) flag(FloorCondition::ThickCount);
    if (balance[v] != -static_cast<long>(data.k) * vert.size) flag(FloorCondition::Balancing);
  }

  // degree: realized signed weights by thickness, and label bookkeeping
  std::vector<int> phi_realized, mu_realized;
  std::vector<int> phi_hits(data.phi.size(), 0), mu_hits(data.mu.size(), 0);
  auto realize = [&](PartLabel label, long signed_weight, bool thick_flag) {
    bool is_mu = label.kind == PartKind::Mu;
    if (is_mu != thick_flag) flag(FloorCondition::Degree);
    (thick_flag ? mu_realized : phi_realized).push_back(static_cast<int>(signed_weight));
    const auto& parts = is_mu ? data.mu : data.phi;
    auto& hits = is_mu ? mu_hits : phi_hits;
    if (label.index < 0 || label.index >= static_cast<int>(parts.size())) {
      flag(FloorCondition::EndLabels);
      return;
    }
    hits[label.index] += 1;
    if (parts[label.index] != signed_weight) flag(FloorCondition::EndLabels);
  };
  for (const auto& end : d.ends)
    realize(end.label, end.direction == Direction::Left ? -end.weight : end.weight, end.thick);
  for (const auto& t : d.through) {
    if (t.negative.kind == t.positive.kind) flag(FloorCondition::Degree);
    realize(t.negative, -t.weight, t.negative.kind == PartKind::Mu);
    realize(t.positive, t.weight, t.positive.kind == PartKind::Mu);
  }
  std::sort(phi_realized.begin(), phi_realized.end());
  std::sort(mu_realized.begin(), mu_realized.end());
  if (phi_realized != data.phi || mu_realized != data.mu) flag(FloorCondition::Degree);
  for (int h : phi_hits)
    if (h != 1) flag(FloorCondition::EndLabels);
  for (int h : mu_hits)
    if (h != 1) flag(FloorCondition::EndLabels);

  if (data.connected && !d.is_connected()) flag(FloorCondition::Structure);
  if (d.genus() != data.g) flag(FloorCondition::Genus);
  int total_size = 0;
  for (const auto& v : d.vertices) total_size += v.size;
  if (total_size != data.a) flag(FloorCondition::TotalSize);
  std::vector<int> psi;
  for (const auto& v : d.vertices) psi.push_back(v.psi);
  if (psi != data.psi) flag(FloorCondition::PsiPowers);

  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

long cut_flux(const FloorDiagram& d, int cut) {
  long flux = 0;
  for (const auto& e : d.edges)
    if (e.left < cut && cut <= e.right) flux += e.weight;
  return flux;
}

namespace {

struct Label {
  PartLabel label;
  int weight;  // absolute value of the part
  bool thick;  // mu parts are thick
};

struct OpenGroup {
  int origin;
  int weight;
  bool thick_left;
  int count;
};

class Enumerator {
 public:
  Enumerator(const DiscreteData& data, const std::function<void(const FloorDiagram&)>& visit,
             const EnumerationOptions& options)
      : data_(data), visit_(visit), options_(options) {
    max_weight_ = options.max_weight >= 0 ? options.max_weight : data.flux_bound();
    n_ = data.n();
    for (int i = 0; i < static_cast<int>(data.phi.size()); ++i) {
      int x = data.phi[i];
      (x < 0 ? negatives_ : positives_).push_back({{PartKind::Phi, i}, std::abs(x), false});
    }
    for (int i = 0; i < static_cast<int>(data.mu.size()); ++i) {
      int x = data.mu[i];
      (x < 0 ? negatives_ : positives_).push_back({{PartKind::Mu, i}, std::abs(x), true});
    }
    neg_used_.assign(negatives_.size(), false);
    pos_used_.assign(positives_.size(), false);
    // capacity of the vertices from i onward
    suffix_thick_.assign(n_ + 1, 0);
    suffix_size_.assign(n_ + 1, 0);
    for (int i = n_ - 1; i >= 0; --i) {
      suffix_thick_[i] = suffix_thick_[i + 1] + data.psi[i] + 2;
      suffix_size_[i] = suffix_size_[i + 1] + (data.psi[i] + 2) / 2;
    }
    diagram_.vertices.resize(n_);
  }

  void run() {
    if (data_.connected) {
      vertex_step(0);
    } else {
      through_step(0);
    }
  }

 private:
  // Pair negative parts with positive parts of the other kind and equal weight.
  void through_step(std::size_t neg) {
    if (neg == negatives_.size()) {
      vertex_step(0);
      return;
    }
    through_step(neg + 1);
    const auto& x = negatives_[neg];
    for (std::size_t p = 0; p < positives_.size(); ++p) {
      const auto& y = positives_[p];
      if (pos_used_[p] || y.thick == x.thick || y.weight != x.weight) continue;
      neg_used_[neg] = pos_used_[p] = true;
      diagram_.through.push_back({x.label, y.label, x.weight});
      through_step(neg + 1);
      diagram_.through.pop_back();
      neg_used_[neg] = pos_used_[p] = false;
    }
  }

  int thick_demand() const {
    int demand = 0;
    for (const auto& g : open_)
      if (!g.thick_left) demand += g.count;
    for (std::size_t i = 0; i < negatives_.size(); ++i)
      if (!neg_used_[i] && negatives_[i].thick) ++demand;
    for (std::size_t i = 0; i < positives_.size(); ++i)
      if (!pos_used_[i] && positives_[i].thick) ++demand;
    return demand;
  }

  bool feasible_from(int i) const {
    if (remaining_size_ > suffix_size_[i]) return false;
    if (i == n_) {
      if (remaining_size_ != 0) return false;
      if (std::any_of(open_.begin(), open_.end(), [](const OpenGroup& g) { return g.count != 0; })) return false;
      return std::all_of(neg_used_.begin(), neg_used_.end(), [](bool b) { return b; }) &&
             std::all_of(pos_used_.begin(), pos_used_.end(), [](bool b) { return b; });
    }
    return thick_demand() <= suffix_thick_[i] - 2 * remaining_size_;
  }

  void vertex_step(int i) {
    if (i == 0) {
      remaining_size_ = data_.a;
      if (!feasible_from(0)) return;
    }
    if (i == n_) {
      emit();
      return;
    }
    int psi = data_.psi[i];
    for (int s = 0; s <= remaining_size_ && 2 * s <= psi + 2; ++s) {
      for (int g = 0; g <= psi + 2 - 2 * s; ++g) {
        diagram_.vertices[i] = {g, s, psi};
        remaining_size_ -= s;
        Pick pick{i, psi + 2 - 2 * s - g, -static_cast<long>(data_.k) * s};
        terminate_step(pick, 0);
        remaining_size_ += s;
      }
    }
  }

  struct Pick {
    int vertex;
    int thick_left;  // thick half-edges still to place at this vertex
    long flux;       // outgoing weight still to be placed: -k s + incoming - right ends
  };

  // Close some of the open edges at this vertex, group by group.
  void terminate_step(Pick pick, std::size_t group) {
    if (group == open_.size()) {
      attach_left_step(pick, 0);
      return;
    }
    // deeper calls may grow open_, so no reference into it is held
    const OpenGroup g = open_[group];
    const int available = g.count;
    const bool last = pick.vertex == n_ - 1;
    for (int c = last ? available : 0; c <= available; ++c) {
      int thick_here = g.thick_left ? 0 : c;
      if (thick_here > pick.thick_left) break;
      open_[group].count = available - c;
      for (int j = 0; j < c; ++j)
        diagram_.edges.push_back({g.origin, pick.vertex, g.weight,
                                  g.thick_left ? Direction::Left : Direction::Right});
      terminate_step({pick.vertex, pick.thick_left - thick_here, pick.flux + static_cast<long>(c) * g.weight},
                     group + 1);
      diagram_.edges.resize(diagram_.edges.size() - c);
    }
    open_[group].count = available;
  }

  void attach_left_step(Pick pick, std::size_t idx) {
    if (idx == negatives_.size()) {
      attach_right_step(pick, 0);
      return;
    }
    if (neg_used_[idx]) {
      attach_left_step(pick, idx + 1);
      return;
    }
    const bool last = pick.vertex == n_ - 1;
    if (!last) attach_left_step(pick, idx + 1);
    const auto& x = negatives_[idx];
    if (x.thick && pick.thick_left == 0) return;
    neg_used_[idx] = true;
    diagram_.ends.push_back({pick.vertex, Direction::Left, x.weight, x.thick, x.label});
    attach_left_step({pick.vertex, pick.thick_left - (x.thick ? 1 : 0), pick.flux + x.weight}, idx + 1);
    diagram_.ends.pop_back();
    neg_used_[idx] = false;
  }

  void attach_right_step(Pick pick, std::size_t idx) {
    if (idx == positives_.size()) {
      new_edges_step(pick);
      return;
    }
    if (pos_used_[idx]) {
      attach_right_step(pick, idx + 1);
      return;
    }
    const bool last = pick.vertex == n_ - 1;
    if (!last) attach_right_step(pick, idx + 1);
    const auto& y = positives_[idx];
    if (y.thick && pick.thick_left == 0) return;
    if (pick.flux < y.weight) return;
    pos_used_[idx] = true;
    diagram_.ends.push_back({pick.vertex, Direction::Right, y.weight, y.thick, y.label});
    attach_right_step({pick.vertex, pick.thick_left - (y.thick ? 1 : 0), pick.flux - y.weight}, idx + 1);
    diagram_.ends.pop_back();
    pos_used_[idx] = false;
  }

  void new_edges_step(Pick pick) {
    const int i = pick.vertex;
    const long flux = pick.flux;
    const int thick = pick.thick_left;
    if (flux < 0) return;
    if (i == n_ - 1) {
      if (flux == 0 && thick == 0) close_vertex(i, {}, {});
      return;
    }
    const int total = static_cast<int>(flux);
    const int max_thick_sum = thick == 0 ? 0 : total;
    // every plain edge needs a thick slot further right
    const int max_plain = suffix_thick_[i + 1] - 2 * remaining_size_ - thick_demand();
    std::vector<int> thick_parts, plain_parts;
    for (int thick_sum = thick; thick_sum <= max_thick_sum; ++thick_sum) {
      int plain_sum = total - thick_sum;
      detail::partitions(thick_sum, thick, max_weight_, thick_parts, [&](const std::vector<int>& tp) {
        if (plain_sum == 0) {
          close_vertex(i, tp, {});
          return;
        }
        for (int count = 1; count <= std::min(plain_sum, max_plain); ++count)
          detail::partitions(plain_sum, count, max_weight_, plain_parts,
                     [&](const std::vector<int>& pp) { close_vertex(i, tp, pp); });
      });
    }
  }

  void close_vertex(int i, const std::vector<int>& thick_parts, const std::vector<int>& plain_parts) {
    // new open groups: thick_left == true for edges thickened at this vertex
    const std::size_t saved = open_.size();
    auto add_groups = [&](const std::vector<int>& parts, bool thick_left) {
      for (std::size_t j = 0; j < parts.size();) {
        std::size_t e = j;
        while (e < parts.size() && parts[e] == parts[j]) ++e;
        open_.push_back({i, parts[j], thick_left, static_cast<int>(e - j)});
        j = e;
      }
    };
    add_groups(thick_parts, true);
    add_groups(plain_parts, false);
    if (feasible_from(i + 1)) vertex_step(i + 1);
    open_.resize(saved);
  }

  void emit() {
    if (data_.connected && !diagram_.is_connected()) return;
    if (++emitted_ > options_.max_diagrams)
      throw ResourceLimitExceeded("floor diagram enumeration exceeded " +
                                  std::to_string(options_.max_diagrams) + " diagrams");
    FloorDiagram out = diagram_;
    out.canonicalize();
    visit_(out);
  }

  const DiscreteData& data_;
  const std::function<void(const FloorDiagram&)>& visit_;
  EnumerationOptions options_;
  int max_weight_ = 0;
  int n_ = 0;
  std::vector<Label> negatives_, positives_;
  std::vector<bool> neg_used_, pos_used_;
  std::vector<int> suffix_thick_, suffix_size_;
  std::vector<OpenGroup> open_;
  int remaining_size_ = 0;
  FloorDiagram diagram_;
  std::size_t emitted_ = 0;
};

}  // namespace

void for_each_diagram(const DiscreteData& data, const std::function<void(const FloorDiagram&)>& visit,
                      const EnumerationOptions& options) {
  require_valid(data);
  if (options.max_weight >= 0 && options.max_weight < data.flux_bound())
    throw ResourceLimitExceeded("edge weight bound " + std::to_string(options.max_weight) +
                                " is below the flux bound " + std::to_string(data.flux_bound()));
  Enumerator(data, visit, options).run();
}

std::vector<FloorDiagram> enumerate(const DiscreteData& data, const EnumerationOptions& options) {
  std::vector<FloorDiagram> out;
  for_each_diagram(data, [&](const FloorDiagram& d) { out.push_back(d); }, options);
  std::sort(out.begin(), out.end());
  return out;
}

FormalValue multiplicity(const FloorDiagram& d, const VertexOracle& oracle) {
  Rational scalar = 1;
  for (const auto& e : d.edges) scalar *= e.weight;
  for (const auto& t : d.through) scalar /= t.weight;
  scalar /= d.automorphisms();
  FormalValue value(scalar);
  for (int v = 0; v < static_cast<int>(d.vertices.size()) && !value.is_zero(); ++v)
    value *= oracle.evaluate(d.vertex_symbol(v));
  return value;
}

FormalValue invariant(const DiscreteData& data, const VertexOracle& oracle,
                      const EnumerationOptions& options) {
  FormalValue total;
  for_each_diagram(data, [&](const FloorDiagram& d) { total += multiplicity(d, oracle); }, options);
  return total;
}

}  // namespace psifock
