#include "psifock/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <sstream>

#include "psifock/degeneration.hpp"
#include "psifock/feynman.hpp"
#include "psifock/floors.hpp"
#include "psifock/io.hpp"

namespace psifock {

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void record_failure(SuiteReport& r, const std::string& what) {
  ++r.failed;
  if (!r.first_failure) r.first_failure = what;
}

std::string one_line(const DiscreteData& d) {
  std::string s = format_spec(d);
  std::replace(s.begin(), s.end(), '\n', ';');
  return s;
}

}  // namespace

std::string summary(const SuiteReport& r) {
  std::ostringstream os;
  os << r.name << ": " << r.checked << " checked, " << r.failed << " failed, " << r.seconds << " s, slowest instance " << r.slowest << " s";
  if (r.first_failure) os << "\n  first failure: " << *r.first_failure;
  return os.str();
}

DataSource grid_source(const GridBounds& bounds) {
  return [bounds](const DataVisitor& visit) { for_each_grid_point(bounds, visit); };
}

DataSource list_source(std::vector<DiscreteData> items) {
  return [items = std::move(items)](const DataVisitor& visit) {
    for (const auto& d : items) visit(d);
  };
}

std::vector<Generator> random_word(std::mt19937_64& rng, int length, int max_index) {
  std::uniform_int_distribution<int> magnitude(1, max_index);
  std::uniform_int_distribution<int> coin(0, 1);
  auto random_generator = [&] {
    int i = magnitude(rng) * (coin(rng) ? 1 : -1);
    return coin(rng) ? gen_a(i) : gen_b(i);
  };
  std::vector<Generator> word;
  if (coin(rng)) {
    while (static_cast<int>(word.size()) + 2 <= length) {
      Generator x = random_generator();
      word.push_back(x);
      word.push_back({x.family == Family::A ? Family::B : Family::A, -x.index});
    }
    if (static_cast<int>(word.size()) < length && coin(rng)) word.push_back(random_generator());
    std::shuffle(word.begin(), word.end(), rng);
  } else {
    for (int i = 0; i < length; ++i) word.push_back(random_generator());
  }
  return word;
}

SuiteReport verify_wick(std::size_t count, std::uint64_t seed, int max_length, int max_index) {
  SuiteReport r;
  r.name = "wick";
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(0, max_length);
  for (std::size_t i = 0; i < count; ++i) {
    auto word = random_word(rng, length(rng), max_index);
    Timer one;
    FockWord w;
    w.ops = word;
    FormalValue algebraic = vacuum_expectation(w);
    FormalValue pairing = wick_sum(word_fragment(word));
    r.slowest = std::max(r.slowest, one.seconds());
    ++r.checked;
    if (!(algebraic == pairing))
      record_failure(r, to_string(word) + ": commutators give " + algebraic.to_string() + ", pairings give " +
                            pairing.to_string());
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteReport verify_identity(const DataSource& source) {
  SuiteReport r;
  r.name = "identity";
  Timer timer;
  const auto oracle = VertexOracle::formal();
  source([&](const DiscreteData& input) {
    DiscreteData d = input;
    d.connected = false;
    Timer one;
    FormalValue floor = invariant(d, oracle);
    FormalValue fock = matrix_element(d, oracle);
    r.slowest = std::max(r.slowest, one.seconds());
    ++r.checked;
    if (!(floor == fock)) record_failure(r, one_line(d) + " difference " + (floor - fock).to_string());
  });
  r.seconds = timer.seconds();
  return r;
}

SuiteReport verify_bijection(const DataSource& source) {
  SuiteReport r;
  r.name = "bijection";
  Timer timer;
  const auto oracle = VertexOracle::formal();
  source([&](const DiscreteData& input) {
    DiscreteData d = input;
    d.connected = false;
    Timer one;
    std::map<FloorDiagram, FormalValue> floors;
    for_each_diagram(d, [&](const FloorDiagram& diagram) { floors[diagram] += multiplicity(diagram, oracle); });
    auto images = feynman_floor_images(d, oracle);
    r.slowest = std::max(r.slowest, one.seconds());
    ++r.checked;
    if (floors.size() != images.size()) {
      record_failure(r, one_line(d) + " " + std::to_string(floors.size()) + " floor diagrams, " +
                            std::to_string(images.size()) + " Feynman images");
      return;
    }
    for (auto it = floors.begin(), jt = images.begin(); it != floors.end(); ++it, ++jt) {
      if (!(it->first == jt->first) || !(it->second == jt->second)) {
        record_failure(r, one_line(d) + " first differing diagram:\n" + format_records(it->first, it->second));
        return;
      }
    }
  });
  r.seconds = timer.seconds();
  return r;
}

SuiteReport verify_degeneration(const DataSource& source, int min_points) {
  SuiteReport r;
  r.name = "degeneration";
  Timer timer;
  const auto oracle = VertexOracle::formal();
  // sub-data recur across neighbouring grid points; keep them until the budget is spent
  constexpr std::size_t kCachedTerms = 4'000'000;
  std::map<std::string, std::shared_ptr<const FormalValue>> cache;
  std::size_t cached_terms = 0;
  auto cached = [&](const DiscreteData& d) {
    auto key = format_spec(d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto v = std::make_shared<const FormalValue>(matrix_element(d, oracle));
    if (cached_terms + v->size() > kCachedTerms) {
      cache.clear();
      cached_terms = 0;
    }
    cached_terms += v->size() + 1;
    cache.emplace(std::move(key), v);
    return v;
  };
  source([&](const DiscreteData& input) {
    if (input.n() < min_points) return;
    DiscreteData d = input;
    d.connected = false;
    for (int split = 0; split <= d.n(); ++split) {
      Timer one;
      auto report = degeneration_check(d, split, oracle, cached);
      r.slowest = std::max(r.slowest, one.seconds());
      ++r.checked;
      if (!report.holds())
        record_failure(r, one_line(d) + " split " + std::to_string(split) + " difference " +
                              report.difference.to_string());
    }
  });
  r.seconds = timer.seconds();
  return r;
}

}  // namespace psifock
