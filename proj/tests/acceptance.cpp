// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "psifock/feynman.hpp"
#include "psifock/grid.hpp"
#include "psifock/io.hpp"
#include "psifock/verify.hpp"

using namespace psifock;

namespace {

const std::filesystem::path kData = PSIFOCK_TEST_DATA;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int failures = 0;

void report(const std::string& name, const Outcome& o, double seconds) {
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  [" << std::fixed << std::setprecision(2) << seconds
            << " s]\n";
  for (const auto& n : o.notes) std::cout << "      " << n << '\n';
  std::cout.flush();
}

std::string seconds_text(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << " s";
  return os.str();
}

// Valid data with phi = (-1, 1, ..., -1, 1) of any length: the grid box does not bound len(phi).
DiscreteData long_phi(int pairs) {
  DiscreteData d;
  d.k = 0;
  d.a = 0;
  d.g = 0;
  d.psi = {0};
  d.mu = {-1, 1};
  for (int i = 0; i < pairs; ++i) d.phi.insert(d.phi.end(), {-1, 1});
  std::sort(d.phi.begin(), d.phi.end());
  d.connected = false;
  return d;
}

void unbounded_grid_note(Outcome& o) {
  bool all_valid = true;
  for (int pairs = 1; pairs <= 50; ++pairs) all_valid = all_valid && validate(long_phi(pairs)).ok();
  o.require(false, "the full box is not finite: len(phi) is unconstrained (phi = (-1,1)^m is valid for m = 1..50: " +
                       std::string(all_valid ? "yes" : "no") + ")");
}

void floor_fock_identity() {
  Timer timer;
  Outcome o;
  unbounded_grid_note(o);
  GridBounds b;  // k <= 2, a <= 3, 0 <= g <= 2, n <= 6, |entries| <= 3, sum psi <= 4
  b.ends_max = 2;
  auto r = verify_identity(grid_source(b));
  o.note("evidence, same box with len(phi) + len(mu) <= 2: " + summary(r));
  o.require(r.ok(), "mismatch on the evidence subgrid");
  o.require(r.slowest < 1.0, "an instance took " + seconds_text(r.slowest) + " (limit 1 s)");
  report("floor count equals Fock matrix element on the full grid (formal, exact)", o, timer.seconds());
}

void wick_equivalence() {
  Timer timer;
  Outcome o;
  auto r = verify_wick(1000, 20261019, 10, 4);
  o.note(summary(r));
  o.require(r.ok(), "commutator and pairing sums differ");
  o.require(r.checked == 1000, "expected 1000 words");
  o.require(r.seconds < 30.0, "took " + seconds_text(r.seconds) + " (limit 30 s)");
  report("Wick equivalence on 1000 random words (length <= 10, |index| <= 4)", o, timer.seconds());
}

void degeneration_identity() {
  Timer timer;
  Outcome o;
  unbounded_grid_note(o);
  GridBounds b;
  b.phi_length_max = 0;
  b.mu_length_max = 2;
  auto r = verify_degeneration(grid_source(b));
  o.note("evidence, same box with len(phi) = 0, len(mu) <= 2: " + summary(r));
  o.require(r.ok(), "gluing identity fails on the evidence subgrid");
  o.require(r.seconds < 300.0, "evidence subgrid took " + seconds_text(r.seconds) + " (limit 300 s)");
  auto example = verify_degeneration(list_source({fixtures::descendant_f1(), fixtures::primary_f1()}));
  o.note("F_1 example data, every split: " + summary(example));
  o.require(example.ok(), "gluing identity fails on the F_1 example");
  report("degeneration gluing identity on the full grid, every split (formal, exact)", o, timer.seconds());
}

void golden_values() {
  Timer timer;
  Outcome o;
  const auto builtin = VertexOracle::builtin();
  for (int d = 1; d <= 5; ++d) {
    auto data = fixtures::fiber(d);
    auto floor = invariant(data, builtin);
    data.connected = false;
    auto fock = matrix_element(data, builtin);
    o.require(floor == FormalValue(1) && fock == FormalValue(1),
              "fiber d = " + std::to_string(d) + ": floor " + floor.to_string() + ", fock " + fock.to_string());
  }
  o.note("fiber class, d = 1..5: 1 by both methods");

  auto f11 = fixtures::f0_bidegree(1);
  auto f11_floor = invariant(f11, builtin), f11_fock = feynman_invariant(f11, builtin);
  o.require(f11_floor == FormalValue(1) && f11_fock == FormalValue(1),
            "F_0 (1,1): floor " + f11_floor.to_string() + ", fock " + f11_fock.to_string());
  o.note("F_0 (1,1), 3 points: floor " + f11_floor.to_string() + ", fock " + f11_fock.to_string());

  auto f22 = fixtures::f0_bidegree(2);
  auto f22_floor = invariant(f22, builtin), f22_fock = feynman_invariant(f22, builtin);
  o.require(f22_floor == f22_fock, "F_0 (2,2): methods disagree, " + f22_floor.to_string() + " vs " + f22_fock.to_string());
  std::ifstream in(kData / "f0_22.golden");
  std::string frozen;
  std::getline(in, frozen);
  o.require(!frozen.empty() && FormalValue(parse_rational(frozen)) == f22_floor,
            "F_0 (2,2): golden file holds '" + frozen + "', computed " + f22_floor.to_string());
  o.note("F_0 (2,2), 7 points: floor " + f22_floor.to_string() + ", fock " + f22_fock.to_string() + ", golden " +
         frozen + " (labelled ends: 2! 2! times the unlabelled count 12)");
  report("golden values: fiber class, F_0 bidegree (1,1) and (2,2)", o, timer.seconds());
}

void worked_examples() {
  Timer timer;
  Outcome o;
  o.require(validate(fixtures::primary_f1()).ok(), "primary F_1 data does not validate");
  o.require(validate(fixtures::descendant_f1()).ok(), "descendant F_1 data does not validate");
  auto diagram = fixtures::descendant_f1_diagram();
  auto validity = is_valid(diagram, fixtures::descendant_f1());
  o.require(validity.ok(), "four-floor diagram invalid: " + validity.to_string());
  bool found = false;
  std::size_t graphs = 0;
  for (const auto& g : completions(fragment(fixtures::descendant_f1_product()))) {
    ++graphs;
    auto image = to_floor_diagram(g, fixtures::descendant_f1_decorations());
    image.canonicalize();
    found = found || image == diagram;
  }
  o.require(found, "no completion of the six-block product maps to the four-floor diagram");
  o.note(std::to_string(graphs) + " completions of the six-block product; the four-floor diagram is among the images");
  report("worked examples: F_1 data, four-floor diagram, six-block product", o, timer.seconds());
}

long expected_flux(const FloorDiagram& D, const DiscreteData& data, int cut) {
  long flux = 0;
  for (int v = 0; v < cut; ++v) flux -= static_cast<long>(data.k) * D.vertices[static_cast<std::size_t>(v)].size;
  for (const auto& e : D.ends)
    if (e.vertex < cut) flux += e.direction == Direction::Left ? e.weight : -e.weight;
  return flux;
}

void structural_suite() {
  Timer timer;
  Outcome o;

  GridBounds b;
  b.k_max = 2;
  b.a_max = 2;
  b.n_max = 4;
  b.psi_sum_max = 2;
  b.entry_max = 2;
  b.ends_max = 2;
  std::size_t diagrams = 0, bad_flux = 0, bad_genus = 0, bad_sizes = 0;
  for_each_grid_point(b, [&](const DiscreteData& data) {
    for (const auto& D : enumerate(data)) {
      ++diagrams;
      for (int cut = 1; cut < static_cast<int>(D.vertices.size()); ++cut)
        if (cut_flux(D, cut) != expected_flux(D, data, cut)) ++bad_flux;
      int sizes = 0, vertex_genus = 0;
      for (std::size_t v = 0; v < D.vertices.size(); ++v) {
        sizes += D.vertices[v].size;
        vertex_genus += D.vertices[v].genus;
        if (D.vertices[v].psi != data.psi[v]) ++bad_sizes;
      }
      if (sizes != data.a) ++bad_sizes;
      const int cycles = static_cast<int>(D.edges.size()) - static_cast<int>(D.vertices.size()) + D.components() -
                         static_cast<int>(D.through.size());
      if (D.betti_number() != cycles || cycles + vertex_genus - D.components() + 1 != data.g) ++bad_genus;
    }
  });
  o.require(bad_flux == 0, std::to_string(bad_flux) + " cut flux mismatches");
  o.require(bad_genus == 0, std::to_string(bad_genus) + " genus bookkeeping mismatches");
  o.require(bad_sizes == 0, std::to_string(bad_sizes) + " size or psi mismatches");
  o.note("cut flux and genus over " + std::to_string(diagrams) + " enumerated diagrams");

  std::size_t m0 = 0;
  for (int k = 0; k <= 2; ++k)
    for (int w = 1; w <= 3; ++w)
      for (int u = 0; u <= 1; ++u) {
        Bounds bounds{1, u, w};
        ++m0;
        o.require(oracles::graded(build_M(0, bounds, k, VertexOracle::builtin())) == oracles::closed_form_m0(k, bounds),
                  "M_0 closed form, k = " + std::to_string(k) + ", w = " + std::to_string(w));
      }
  o.note("M_0 closed form on " + std::to_string(m0) + " truncations");

  std::size_t pairs = 0;
  o.require(inner_product(FockVector::basis({2}, {}), FockVector::basis({}, {2})) == FormalValue(2),
            "<v_(2),() | v_(),(2)> != 2");
  o.require(inner_product(FockVector::basis({1, 1}, {}), FockVector::basis({}, {1, 1})) == FormalValue(ratio(1, 2)),
            "<v_(1,1),() | v_(),(1,1)> != 1/2");
  for (const auto& p : oracles::small_partitions())
    for (const auto& m : oracles::small_partitions())
      for (const auto& p2 : oracles::small_partitions())
        for (const auto& m2 : oracles::small_partitions()) {
          ++pairs;
          o.require(inner_product(FockVector::basis(p, m), FockVector::basis(p2, m2)) ==
                        FormalValue(oracles::first_principles_inner({p, m}, {p2, m2})),
                    "inner product structure constant");
        }
  o.note("inner products with the phi/mu swap on " + std::to_string(pairs) + " basis pairs");

  for (auto data : {fixtures::descendant_f1(), fixtures::f0_bidegree(2)}) {
    data.connected = false;
    auto render = [&] {
      std::string text;
      for (const auto& D : enumerate(data)) text += format_records(D, multiplicity(D, VertexOracle::formal()));
      return text;
    };
    o.require(render() == render(), "enumeration output differs between runs");
  }
  o.note("enumeration output byte-identical across reruns");
  const double seconds = timer.seconds();
  o.require(seconds < 60.0, "took " + seconds_text(seconds) + " (limit 60 s)");
  report("structural invariants: cut flux, genus, M_0, inner products, determinism", o, seconds);
}

}  // namespace

int main() {
  golden_values();
  worked_examples();
  wick_equivalence();
  structural_suite();
  floor_fock_identity();
  degeneration_identity();
  std::cout << (failures == 0 ? "all criteria pass\n" : std::to_string(failures) + " criteria fail\n");
  return failures == 0 ? 0 : 1;
}
