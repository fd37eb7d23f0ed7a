// Compares the OpenMP kernel entry points against their serial reference
// twins: wall time, speedup, and the max absolute difference (which must
// be zero, since both paths accumulate in the same order).

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rnn/kernels.hpp"
#include "rnn/mlrnn.hpp"
#include "rnn/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& name, double serial_s, double parallel_s, double max_diff) {
  std::cout << std::left << std::setw(26) << name << std::right << std::fixed
            << std::setprecision(4) << std::setw(10) << serial_s * 1e3 << " ms" << std::setw(10)
            << parallel_s * 1e3 << " ms" << std::setprecision(2) << std::setw(8)
            << serial_s / parallel_s << "x   max|diff| = " << std::scientific
            << std::setprecision(1) << max_diff << '\n';
  std::cout.unsetf(std::ios::fixed | std::ios::scientific);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n\n";
#else
  std::cout << "OpenMP not enabled; both columns run serial code\n\n";
#endif
  std::cout << std::left << std::setw(26) << "kernel" << std::right << std::setw(13) << "serial"
            << std::setw(13) << "parallel" << std::setw(9) << "speedup" << '\n';

  rnn::Rng rng(42);
  const int reps = quick ? 1 : 3;

  {
    const std::size_t n = quick ? 96 : 448;
    const rnn::Matrix a = rng.uniform_matrix(n, n), b = rng.uniform_matrix(n, n);
    rnn::Matrix out_serial, out_parallel;
    const double ts = time_best_of(reps, [&] { out_serial = rnn::kernels::reference::matmul(a, b); });
    const double tp = time_best_of(reps, [&] { out_parallel = rnn::kernels::matmul(a, b); });
    report("matmul " + std::to_string(n) + "^3", ts, tp, rnn::max_abs_diff(out_serial, out_parallel));
  }
  {
    const std::size_t n = quick ? 128 : 1024;
    const rnn::Matrix img = rng.uniform_matrix(n, n), k = rng.uniform_matrix(7, 7);
    rnn::Matrix out_serial, out_parallel;
    const double ts =
        time_best_of(reps, [&] { out_serial = rnn::kernels::reference::conv2d_valid(img, k); });
    const double tp = time_best_of(reps, [&] { out_parallel = rnn::kernels::conv2d_valid(img, k); });
    report("conv2d " + std::to_string(n) + "^2 * 7^2", ts, tp,
           rnn::max_abs_diff(out_serial, out_parallel));
  }
  {
    // Inference path: forward() is matmul-bound, so this shows end-to-end
    // benefit on a trained-sized model.
    const std::size_t instances = quick ? 64 : 512, attrs = 64;
    rnn::LabeledDataset data;
    data.x = rng.uniform_matrix(instances, attrs);
    data.y = rnn::Matrix(instances, 4);
    for (std::size_t i = 0; i < instances; ++i) data.y(i, i % 4) = 1.0;
    rnn::TrainConfig cfg;
    cfg.hidden_layer_sizes = {quick ? std::size_t(32) : std::size_t(64),
                              quick ? std::size_t(64) : std::size_t(256)};
    cfg.fista.max_iter = 10;
    const rnn::MlrnnModel model = rnn::train(data, cfg);
    rnn::Matrix out;
    const double tp = time_best_of(reps, [&] { out = rnn::forward(model, data.x); });
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    rnn::Matrix out1;
    const double ts = time_best_of(reps, [&] { out1 = rnn::forward(model, data.x); });
    omp_set_num_threads(saved);
    report("mlrnn forward", ts, tp, rnn::max_abs_diff(out, out1));
#else
    report("mlrnn forward", tp, tp, 0.0);
#endif
  }
  return 0;
}
