// Copyright 2026 The RFA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rfa/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace rfa::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  template <typename MakePlan>
  explicit Plan(MakePlan make) {
    std::lock_guard lock(planner_mutex());
    plan_ = make();
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

std::vector<Complex> complex_dft(std::span<const Complex> in, int sign) {
  std::vector<Complex> buf(in.begin(), in.end());
  if (buf.empty()) return buf;
  const int n = static_cast<int>(buf.size());
  Plan plan([&] {
    return fftw_plan_dft_1d(n, as_fftw(buf.data()), as_fftw(buf.data()), sign,
                            FFTW_ESTIMATE);
  });
  plan.execute();
  return buf;
}

}  // namespace

std::vector<Complex> forward(std::span<const Complex> in) {
  return complex_dft(in, FFTW_FORWARD);
}

std::vector<Complex> inverse(std::span<const Complex> in) {
  auto out = complex_dft(in, FFTW_BACKWARD);
  const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<Complex> real_forward(std::span<const double> in, std::size_t n) {
  if (n == 0) return {};
  std::vector<double> time(n, 0.0);
  std::copy_n(in.begin(), std::min(n, in.size()), time.begin());
  std::vector<Complex> spec(n / 2 + 1);
  Plan plan([&] {
    return fftw_plan_dft_r2c_1d(static_cast<int>(n), time.data(),
                                as_fftw(spec.data()), FFTW_ESTIMATE);
  });
  plan.execute();
  return spec;
}

}  // namespace rfa::fft
