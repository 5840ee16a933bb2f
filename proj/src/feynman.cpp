#include "psifock/feynman.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "combinatorics.hpp"

namespace psifock {

Germ germ_of(Generator g) {
  if (g.index == 0) throw std::invalid_argument("zero-index generator has no germ");
  return {g.index < 0 ? Direction::Left : Direction::Right, std::abs(g.index), g.family == Family::B, {}};
}

FockWord FockProduct::word() const {
  FockWord w;
  w.ops = plus;
  for (const auto& block : blocks) w.ops.insert(w.ops.end(), block.begin(), block.end());
  w.ops.insert(w.ops.end(), minus.begin(), minus.end());
  return w;
}

FockProduct boundary_product(const DiscreteData& data) {
  FockProduct p;
  auto add_plus = [&](PartKind kind, const std::vector<int>& parts) {
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
      if (parts[i] >= 0) continue;
      p.plus.push_back({kind == PartKind::Mu ? Family::A : Family::B, -parts[i]});
      p.plus_labels.push_back({kind, i});
    }
  };
  auto add_minus = [&](PartKind kind, const std::vector<int>& parts) {
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
      if (parts[i] <= 0) continue;
      p.minus.push_back({kind == PartKind::Mu ? Family::A : Family::B, -parts[i]});
      p.minus_labels.push_back({kind, i});
    }
  };
  add_plus(PartKind::Mu, data.mu);
  add_plus(PartKind::Phi, data.phi);
  add_minus(PartKind::Mu, data.mu);
  add_minus(PartKind::Phi, data.phi);
  return p;
}

FeynmanFragment fragment(const FockProduct& product) {
  auto labelled = [](const std::vector<Generator>& ops, const std::vector<PartLabel>& labels, bool positive,
                     const char* name) {
    if (!labels.empty() && labels.size() != ops.size())
      throw std::invalid_argument(std::string("label count does not match the ") + name + " block");
    std::vector<Germ> germs;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if ((ops[i].index > 0) != positive || ops[i].index == 0)
        throw std::invalid_argument(std::string("the ") + name + " block must only hold " +
                                    (positive ? "positive" : "negative") + " indices");
      Germ g = germ_of(ops[i]);
      if (!labels.empty()) g.label = labels[i];
      germs.push_back(g);
    }
    return germs;
  };
  FeynmanFragment f;
  if (product.plus.empty() && product.blocks.empty() && product.minus.empty()) return f;
  f.blocks.push_back(labelled(product.plus, product.plus_labels, true, "m+"));
  for (const auto& block : product.blocks) {
    std::vector<Germ> germs;
    bool seen_positive = false;
    for (auto g : block) {
      if (g.index == 0) throw std::invalid_argument("zero-index generator in a vertex block");
      if (g.index > 0) seen_positive = true;
      if (g.index < 0 && seen_positive)
        throw std::invalid_argument("vertex block is not normally ordered: " + to_string(block));
      germs.push_back(germ_of(g));
    }
    f.blocks.push_back(std::move(germs));
  }
  f.blocks.push_back(labelled(product.minus, product.minus_labels, false, "m-"));
  return f;
}

FeynmanFragment word_fragment(const std::vector<Generator>& word) {
  FockProduct p;
  for (auto g : word) p.blocks.push_back({g});
  if (word.empty()) p.blocks.emplace_back();
  return fragment(p);
}

bool FeynmanGraph::is_complete() const {
  std::size_t total = 0;
  for (const auto& b : fragment.blocks) total += b.size();
  return 2 * edges.size() == total;
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

}  // namespace

int FeynmanGraph::components() const {
  const auto& blocks = fragment.blocks;
  if (blocks.empty()) return 0;
  const int n = fragment.vertex_count();
  const int last = static_cast<int>(blocks.size()) - 1;
  // vertex blocks are nodes 0..n-1, boundary germs follow
  std::map<GermRef, int> boundary_node;
  int next = n;
  for (int i = 0; i < static_cast<int>(blocks[0].size()); ++i) boundary_node[{0, i}] = next++;
  for (int i = 0; i < static_cast<int>(blocks[last].size()); ++i) boundary_node[{last, i}] = next++;
  auto node = [&](GermRef r) { return (r.block == 0 || r.block == last) ? boundary_node.at(r) : r.block - 1; };
  UnionFind uf(next);
  for (const auto& e : edges) uf.unite(node(e.right), node(e.left));
  int count = 0;
  for (int v = 0; v < next; ++v) count += uf.find(v) == v;
  return count;
}

long FeynmanGraph::weight_product() const {
  long product = 1;
  for (const auto& e : edges) product *= e.weight;
  return product;
}

namespace {

class CompletionSearch {
 public:
  explicit CompletionSearch(const FeynmanFragment& f) : fragment_(f) {
    for (int b = 0; b < static_cast<int>(f.blocks.size()); ++b)
      for (int i = 0; i < static_cast<int>(f.blocks[b].size()); ++i) order_.push_back({b, i});
  }

  std::vector<FeynmanGraph> run() {
    step(0);
    return std::move(out_);
  }

 private:
  const Germ& germ(GermRef r) const { return fragment_.blocks[r.block][r.index]; }

  void step(std::size_t at) {
    if (at == order_.size()) {
      if (open_count_ == 0) out_.push_back({fragment_, edges_});
      return;
    }
    GermRef ref = order_[at];
    const Germ& g = germ(ref);
    if (g.direction == Direction::Right) {
      open_.push_back({ref, false});
      ++open_count_;
      step(at + 1);
      --open_count_;
      open_.pop_back();
      return;
    }
    for (std::size_t j = 0; j < open_.size(); ++j) {
      const auto [partner, used] = open_[j];
      if (used || partner.block >= ref.block) continue;
      const Germ& p = germ(partner);
      if (p.weight != g.weight || p.thick == g.thick) continue;
      open_[j].second = true;
      --open_count_;
      edges_.push_back({partner, ref, g.weight});
      step(at + 1);
      edges_.pop_back();
      ++open_count_;
      open_[j].second = false;
    }
  }

  const FeynmanFragment& fragment_;
  std::vector<GermRef> order_;
  std::vector<std::pair<GermRef, bool>> open_;
  int open_count_ = 0;
  std::vector<GluedEdge> edges_;
  std::vector<FeynmanGraph> out_;
};

}  // namespace

std::vector<FeynmanGraph> completions(const FeynmanFragment& f) { return CompletionSearch(f).run(); }

FormalValue wick_sum(const FeynmanFragment& f) {
  // open germ types (weight, thick) -> count, kept as a sorted map key
  using OpenTypes = std::map<std::pair<int, bool>, int>;
  std::map<OpenTypes, Rational> states;
  states[{}] = 1;
  for (const auto& block : f.blocks) {
    std::vector<Germ> rights;
    for (const auto& g : block) {
      if (g.direction == Direction::Right) {
        rights.push_back(g);
        continue;
      }
      std::map<OpenTypes, Rational> next;
      for (const auto& [open, value] : states) {
        auto it = open.find({g.weight, !g.thick});
        if (it == open.end()) continue;
        OpenTypes reduced = open;
        int count = it->second;
        if (count == 1)
          reduced.erase({g.weight, !g.thick});
        else
          reduced[{g.weight, !g.thick}] = count - 1;
        next[reduced] += value * count * g.weight;
      }
      states = std::move(next);
    }
    if (!rights.empty()) {
      std::map<OpenTypes, Rational> next;
      for (const auto& [open, value] : states) {
        OpenTypes grown = open;
        for (const auto& g : rights) ++grown[{g.weight, g.thick}];
        next[grown] += value;
      }
      states = std::move(next);
    }
  }
  auto it = states.find({});
  return it == states.end() ? FormalValue() : FormalValue(it->second);
}

FloorDiagram to_floor_diagram(const FeynmanGraph& graph, const std::vector<VertexDecoration>& decorations) {
  if (!graph.is_complete()) throw std::invalid_argument("Feynman graph has unglued germs");
  const int n = graph.fragment.vertex_count();
  if (static_cast<int>(decorations.size()) != n)
    throw std::invalid_argument("one decoration per vertex block is required");
  const int last = n + 1;
  FloorDiagram d;
  for (const auto& dec : decorations) d.vertices.push_back({dec.genus, dec.size, dec.psi});
  auto germ = [&](GermRef r) -> const Germ& { return graph.fragment.blocks[r.block][r.index]; };
  auto label = [&](GermRef r) {
    const auto& g = germ(r);
    if (!g.label) throw std::invalid_argument("boundary germ without a part label");
    return *g.label;
  };
  for (const auto& e : graph.edges) {
    const Germ& right = germ(e.right);
    const Germ& left = germ(e.left);
    bool from_boundary = e.right.block == 0;
    bool to_boundary = e.left.block == last;
    if (from_boundary && to_boundary) {
      d.through.push_back({label(e.right), label(e.left), e.weight});
    } else if (from_boundary) {
      d.ends.push_back({e.left.block - 1, Direction::Left, e.weight, left.thick, label(e.right)});
    } else if (to_boundary) {
      d.ends.push_back({e.right.block - 1, Direction::Right, e.weight, right.thick, label(e.left)});
    } else {
      d.edges.push_back(
          {e.right.block - 1, e.left.block - 1, e.weight, right.thick ? Direction::Left : Direction::Right});
    }
  }
  d.canonicalize();
  return d;
}

namespace {

using GermType = std::pair<int, bool>;  // weight, thick

class ProductSearch {
 public:
  ProductSearch(const DiscreteData& data, const VertexOracle& oracle,
                const std::function<void(const ContributingProduct&)>& visit)
      : data_(data), oracle_(oracle), visit_(visit), h_(data.u_degree()), w_max_(data.flux_bound()) {
    boundary_ = boundary_product(data);
    std::vector<GermType> open;
    for (auto g : boundary_.plus) open.push_back({g.index, g.family == Family::B});
    for (auto g : boundary_.minus) demand_.push_back({-g.index, g.family != Family::B});
    std::sort(open.begin(), open.end());
    std::sort(demand_.begin(), demand_.end());
    current_.product = boundary_;
    current_.coefficient = FormalValue(1);
    vertex(0, open, 0, 0);
  }

 private:
  void vertex(int i, const std::vector<GermType>& open, int t, int u) {
    const int n = data_.n();
    if (i == n) {
      if (t == data_.a && u == h_ && open == demand_) visit_(current_);
      return;
    }
    const int l = data_.psi[i];
    for (int s = 0; t + s <= data_.a && 2 * s <= l + 2; ++s) {
      for (int g = 0; g <= l + 2 - 2 * s; ++g) {
        const int nb = l + 2 - 2 * s - g;
        // groups of identical open germs
        std::vector<std::pair<GermType, int>> groups;
        for (const auto& x : open) {
          if (!groups.empty() && groups.back().first == x)
            ++groups.back().second;
          else
            groups.push_back({x, 1});
        }
        std::vector<GermType> chosen;
        choose_negatives(i, open, t, u, s, g, nb, groups, 0, chosen);
      }
    }
  }

  void choose_negatives(int i, const std::vector<GermType>& open, int t, int u, int s, int g, int nb,
                        const std::vector<std::pair<GermType, int>>& groups, std::size_t at,
                        std::vector<GermType>& chosen) {
    if (at == groups.size()) {
      positives(i, open, t, u, s, g, nb, chosen);
      return;
    }
    auto [type, count] = groups[at];
    int thick_negatives = 0;
    for (const auto& c : chosen) thick_negatives += c.second ? 0 : 1;
    int c = 0;
    for (;; ++c) {
      choose_negatives(i, open, t, u, s, g, nb, groups, at + 1, chosen);
      // a non-thick open germ is glued to a thick (b) creator
      if (c == count || (!type.second && thick_negatives + c + 1 > nb)) break;
      chosen.push_back(type);
    }
    chosen.resize(chosen.size() - c);
  }

  void positives(int i, const std::vector<GermType>& open, int t, int u, int s, int g, int nb,
                 const std::vector<GermType>& negatives) {
    const int n = data_.n();
    const int remaining = n - 1 - i;
    const int next_u = u + g - 1 + static_cast<int>(negatives.size());
    if (next_u - remaining > h_) return;
    if (remaining == 0 && next_u != h_) return;
    if (remaining == 0 && t + s != data_.a) return;
    std::vector<int> bs, as;
    long neg_total = 0;
    int b_neg = 0;
    for (const auto& [w, open_thick] : negatives) {
      neg_total += w;
      if (open_thick) {
        as.push_back(-w);
      } else {
        bs.push_back(-w);
        ++b_neg;
      }
    }
    const int b_pos = nb - b_neg;
    const long total = -static_cast<long>(data_.k) * s + neg_total;
    if (total < 0 || (total == 0 && b_pos > 0)) return;
    std::vector<GermType> rest = open;
    for (const auto& x : negatives) rest.erase(std::lower_bound(rest.begin(), rest.end(), x));

    std::vector<int> bparts, aparts;
    const int T = static_cast<int>(total);
    for (int b_sum = b_pos; b_sum <= T; ++b_sum) {
      if (b_pos == 0 && b_sum > 0) break;
      const int a_sum = T - b_sum;
      detail::partitions(b_sum, b_pos, w_max_, bparts, [&](const std::vector<int>& bp) {
        auto emit = [&](const std::vector<int>& ap) {
          std::vector<int> word_b = bs, word_a = as;
          word_b.insert(word_b.end(), bp.begin(), bp.end());
          word_a.insert(word_a.end(), ap.begin(), ap.end());
          std::vector<Generator> ops;
          for (int z : word_b) ops.push_back(gen_b(z));
          for (int z : word_a) ops.push_back(gen_a(z));
          ops = canonical_normal_form(std::move(ops));
          FormalValue value = oracle_value(word_symbol(data_.psi[i], g, word_b, word_a));
          if (value.is_zero()) return;
          value *= word_normalization(ops);
          std::vector<GermType> next_open = rest;
          for (int w : bp) next_open.push_back({w, true});
          for (int w : ap) next_open.push_back({w, false});
          std::sort(next_open.begin(), next_open.end());

          FormalValue saved = current_.coefficient;
          current_.coefficient = saved * value;
          current_.product.blocks.push_back(ops);
          current_.decorations.push_back({data_.psi[i], s, g});
          vertex(i + 1, next_open, t + s, next_u);
          current_.decorations.pop_back();
          current_.product.blocks.pop_back();
          current_.coefficient = std::move(saved);
        };
        if (a_sum == 0) {
          emit({});
          return;
        }
        for (int count = 1; count <= a_sum; ++count) detail::partitions(a_sum, count, w_max_, aparts, emit);
      });
    }
  }

  const FormalValue& oracle_value(const VertexSymbol& v) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, oracle_.evaluate(v)).first;
    return it->second;
  }

  const DiscreteData& data_;
  const VertexOracle& oracle_;
  const std::function<void(const ContributingProduct&)>& visit_;
  int h_;
  int w_max_;
  FockProduct boundary_;
  std::vector<GermType> demand_;
  ContributingProduct current_;
  std::map<VertexSymbol, FormalValue> cache_;
};

Rational boundary_weight(const DiscreteData& data) {
  Rational r = 1;
  for (int x : data.phi) r /= std::abs(x);
  for (int x : data.mu) r /= std::abs(x);
  return r;
}

}  // namespace

void for_each_contributing_product(const DiscreteData& data, const VertexOracle& oracle,
                                   const std::function<void(const ContributingProduct&)>& visit) {
  require_valid(data);
  ProductSearch(data, oracle, visit);
}

std::map<FloorDiagram, FormalValue> feynman_floor_images(const DiscreteData& data, const VertexOracle& oracle) {
  std::map<FloorDiagram, FormalValue> images;
  const Rational scale = boundary_weight(data);
  for_each_contributing_product(data, oracle, [&](const ContributingProduct& p) {
    for (const auto& graph : completions(fragment(p.product))) {
      if (data.connected && !graph.is_connected()) continue;
      FormalValue w = p.coefficient * FormalValue(scale * graph.weight_product());
      images[to_floor_diagram(graph, p.decorations)] += w;
    }
  });
  for (auto it = images.begin(); it != images.end();) it = it->second.is_zero() ? images.erase(it) : std::next(it);
  return images;
}

FormalValue feynman_invariant(const DiscreteData& data, const VertexOracle& oracle) {
  FormalValue total;
  const Rational scale = boundary_weight(data);
  for_each_contributing_product(data, oracle, [&](const ContributingProduct& p) {
    auto frag = fragment(p.product);
    if (!data.connected) {
      total += p.coefficient * wick_sum(frag) * FormalValue(scale);
      return;
    }
    long connected = 0;
    for (const auto& graph : completions(frag))
      if (graph.is_connected()) connected += graph.weight_product();
    total += p.coefficient * FormalValue(scale * connected);
  });
  return total;
}

std::string to_dot(const FeynmanGraph& graph) {
  std::ostringstream os;
  os << "graph feynman {\n  rankdir=LR;\n  node [shape=point];\n";
  const auto& blocks = graph.fragment.blocks;
  const int last = static_cast<int>(blocks.size()) - 1;
  for (int b = 0; b <= last; ++b) {
    os << "  subgraph cluster_" << b << " {\n    label=\"";
    if (b == 0)
      os << "m+";
    else if (b == last)
      os << "m-";
    else
      os << "m" << b;
    os << "\";\n";
    for (int i = 0; i < static_cast<int>(blocks[b].size()); ++i) {
      const Germ& g = blocks[b][i];
      os << "    g" << b << '_' << i << " [xlabel=\"" << (g.direction == Direction::Left ? "<" : ">") << g.weight;
      if (g.label) os << ' ' << to_string(*g.label);
      os << "\"" << (g.thick ? ", width=0.12" : "") << "];\n";
    }
    os << "  }\n";
  }
  for (const auto& e : graph.edges) {
    const Germ& r = blocks[e.right.block][e.right.index];
    os << "  g" << e.right.block << '_' << e.right.index << " -- g" << e.left.block << '_' << e.left.index
       << " [style=dashed, label=\"" << e.weight << "\"" << (r.thick ? ", taillabel=\"b\"" : ", headlabel=\"b\"")
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace psifock
