// Scalability harness: FiSH and Exact wall-clock on the seeded reference
// instance while varying m, plus a beam-width sweep at the reference m.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "fish/error.hpp"
#include "fish/exact.hpp"
#include "fish/fish.hpp"
#include "fish/synth.hpp"

namespace {

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FiSH vs Exact scalability harness", "fish-bench"};
  fish::ReferenceInstance ref;
  std::size_t k = 5, tau = 5, b = 5;
  std::vector<std::size_t> ms = {15, 20, 25, 30, 35, 40};
  std::vector<std::size_t> bs = {5, 10, 15, 20};
  std::size_t b_sweep_m = 20;
  int repeats = 3;
  unsigned threads = 1;
  std::string output;
  app.add_option("--seed", ref.seed)->capture_default_str();
  app.add_option("--objects", ref.n_objects)->capture_default_str();
  app.add_option("--clusters", ref.n_clusters)->capture_default_str();
  app.add_option("-k", k)->capture_default_str();
  app.add_option("--tau", tau)->capture_default_str();
  app.add_option("-b", b)->capture_default_str();
  app.add_option("--m-values", ms, "m sweep")->capture_default_str();
  app.add_option("--b-values", bs, "beam width sweep")->capture_default_str();
  app.add_option("--b-sweep-m", b_sweep_m)->capture_default_str();
  app.add_option("--repeats", repeats, "Timing repeats (best kept)")->capture_default_str();
  app.add_option("--threads", threads)->capture_default_str();
  app.add_option("-o,--output", output, "CSV output (default stdout)");
  CLI11_PARSE(app, argc, argv);

  try {
    const std::uint64_t guard = fish::candidate_guard_from_env();
    const fish::Dataset ds = fish::generate_synthetic(ref.seed, ref.n_objects, ref.n_clusters, ref.spec);
    const std::size_t max_m = std::max(*std::max_element(ms.begin(), ms.end()), b_sweep_m);
    const fish::RankedHotSpotList all = fish::scan_circular(ds, {0.5, max_m, threads});
    if (all.m() < max_m) {
      std::cerr << "scan produced only " << all.m() << " hot spots\n";
      return 3;
    }

    std::ofstream file;
    std::ostream& out = output.empty() ? std::cout : (file.open(output), file);
    out << std::setprecision(6);
    out << "sweep,m,k,tau,b,candidates,fish_seconds,exact_seconds\n";
    for (std::size_t m : ms) {
      const auto spots = all.top(m);
      const double t_fish = best_of(repeats, [&] {
        fish::fish_search(spots, ds, k, tau, b, {threads});
      });
      const std::uint64_t total = fish::binomial(m, k);
      out << "m," << m << ',' << k << ',' << tau << ',' << b << ',' << total << ',' << t_fish << ',';
      if (total <= guard) {
        out << best_of(std::min(repeats, 1 + static_cast<int>(1'000'000 / std::max<std::uint64_t>(total, 1))), [&] {
          fish::exact_tau_dpe(spots, ds, k, tau, {guard, threads});
        });
      } else {
        out << "refused";
      }
      out << '\n';
    }

    const auto spots = all.top(b_sweep_m);
    std::vector<double> times, work;
    std::size_t widest = 0;
    for (std::size_t bw : bs) {
      times.push_back(best_of(repeats, [&] { fish::fish_search(spots, ds, k, tau, bw, {threads}); }));
      std::size_t generated = 0;
      for (const auto& level : fish::beam_trace(spots, ds, k, tau, bw, {threads})) {
        generated += level.candidates.size();
        if (level.level < k) widest = std::max(widest, level.selected.size());
      }
      work.push_back(static_cast<double>(generated));
      out << "b," << b_sweep_m << ',' << k << ',' << tau << ',' << bw << ',' << generated << ','
          << times.back() << ",\n";
    }
    // Time should track the candidates generated, which grow linearly in b
    // until the level frontiers are narrower than the beam.
    bool linear = true;
    for (std::size_t i = 1; i < bs.size(); ++i) {
      const double expected = work[i] / work[0];
      const double ratio = times[i] / times[0];
      linear = linear && ratio >= expected / 3.0 && ratio <= expected * 3.0;
    }
    std::cerr << "b sweep " << (linear ? "within" : "OUTSIDE")
              << " the linear factor-of-3 band (widest level beam " << widest << ")\n";
    return 0;
  } catch (const fish::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
