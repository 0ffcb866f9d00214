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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin wrapper over FFTW. Planning is serialized internally so these calls
// are safe from any number of threads.
namespace rfa::fft {

using Complex = std::complex<double>;

/// Forward DFT of `in`, length preserved.
std::vector<Complex> forward(std::span<const Complex> in);

/// Inverse DFT scaled by 1/n, so inverse(forward(x)) == x.
std::vector<Complex> inverse(std::span<const Complex> in);

/// Real-input DFT of `in` zero-padded (or truncated) to `n`; returns the
/// n/2 + 1 non-negative frequency bins.
std::vector<Complex> real_forward(std::span<const double> in, std::size_t n);

}  // namespace rfa::fft
