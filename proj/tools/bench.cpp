// Compares the serial reference kernels against the OpenMP paths:
// circle-mean quadrature and the flat-disc falsification search.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pshlab/certify.hpp"
#include "pshlab/means.hpp"

using namespace pshlab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled (serial build)\n");
#endif

  NormedSpace space = lp_space(Field::complex_, Exponent::finite(1.5), 4);
  DiscMap gamma = sample_disc(space, 5, 42);
  ScalarFunction f = ScalarFunction::log_norm(space);

  const int reps = 200;
  const int nodes = 8192;

  auto t0 = std::chrono::steady_clock::now();
  double acc = 0.0;
  for (int i = 0; i < reps; ++i) acc += circle_mean_serial(f, gamma, nodes).value;
  double serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  double acc2 = 0.0;
  for (int i = 0; i < reps; ++i) acc2 += circle_mean(f, gamma, nodes).value;
  double parallel = seconds_since(t0);

  std::printf("circle_mean %d nodes x %d reps: serial %.3fs, parallel %.3fs (x%.2f), agree=%d\n",
              nodes, reps, serial, parallel, serial / parallel, acc == acc2);

  NormedSpace l1 = lp_space(Field::complex_, Exponent::finite(1.0), 2);
  t0 = std::chrono::steady_clock::now();
  Verdict v = flat_disc_search(l1, 3, 64, 7);
  double search = seconds_since(t0);
  std::printf("flat_disc_search l1_2 deg 3 x 64 restarts: %.3fs, min flatness %.3e\n", search,
              v.flatness);
  return 0;
}
