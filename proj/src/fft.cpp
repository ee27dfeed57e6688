#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "configdensity/error.hpp"

namespace configdensity::detail {

namespace {
// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex planner_mutex;
}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data,
                 const std::array<std::size_t, 3>& shape, int dim, int sign) {
  int n[3];
  for (int a = 0; a < dim; ++a) n[a] = static_cast<int>(shape[a]);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft(dim, n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("fft_failure", "FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace configdensity::detail
