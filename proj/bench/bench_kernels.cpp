// Times the parallel kernels against their serial reference counterparts on a
// synthetic dataset. Usage: coord_bench [background_users] [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "coord/backbone.hpp"
#include "coord/netmetrics.hpp"
#include "coord/reference.hpp"
#include "coord/simnet.hpp"
#include "coord/synth.hpp"

namespace {

double best_ms(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* kernel, double parallel_ms, double reference_ms) {
  std::printf("%-14s parallel %10.2f ms  reference %10.2f ms  speedup %6.2fx\n", kernel, parallel_ms, reference_ms,
              reference_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  coord::SynthConfig cfg;
  cfg.n_background_users = argc > 1 ? std::atoi(argv[1]) : 1500;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  cfg.groups.assign(5, coord::PlantedGroup{});
  const auto data = coord::generate(cfg);

  coord::Population population = coord::select_superspreaders(data.records, 1.0);
  const auto vectors = coord::build_user_vectors(data.records, population);
  std::printf("threads=%d users=%zu records=%zu\n", omp_get_max_threads(), vectors.users.size(),
              data.records.size());

  coord::SimilarityGraph network;
  const double sim_par = best_ms(repeats, [&] { network = coord::build_similarity_graph(vectors); });
  const double sim_ref = best_ms(repeats, [&] { (void)coord::reference::dense_similarity_graph(vectors); });
  report("similarity", sim_par, sim_ref);
  std::printf("network nodes=%zu edges=%zu\n", network.node_count(), network.edge_count());

  const coord::BackboneConfig bb;
  coord::SimilarityGraph backbone;
  const double bb_par = best_ms(repeats, [&] { backbone = coord::disparity_filter(network, bb); });
  const double bb_ref = best_ms(repeats, [&] { (void)coord::reference::disparity_reference(network, bb); });
  report("backbone", bb_par, bb_ref);

  const double cl_par = best_ms(repeats, [&] { (void)coord::avg_clustering(backbone); });
  const double cl_ref = best_ms(repeats, [&] { (void)coord::reference::avg_clustering_reference(backbone); });
  report("clustering", cl_par, cl_ref);
  return 0;
}
