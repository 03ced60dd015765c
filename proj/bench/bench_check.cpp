/*
 *   Copyright 2026 The suparg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Compares the serial reference checker with the OpenMP checker on
// integral certificates of growing size.

#include <cmath>
#include <map>
#include <stdexcept>
#include <variant>

#include <benchmark/benchmark.h>

#include "suparg/certificate.hpp"
#include "suparg/expr.hpp"
#include "suparg/theorems.hpp"

namespace {

using namespace suparg;

constexpr const char *kFunction = "exp(sin(3*x))*cos(x) + log(1 + x^2)";
constexpr double kA = 0, kB = 8;

// Certificate for eps = 10^-digits, built once per size.
const certs::Certificate &certificate(int digits) {
	static std::map<int, certs::Certificate> cache;
	auto it = cache.find(digits);
	if (it == cache.end()) {
		const auto res = theorems::prove_integral(kFunction, kA, kB, std::pow(10.0, -digits));
		const auto *c = std::get_if<certs::Certificate>(&res);
		if (!c)
			throw std::runtime_error("benchmark certificate did not prove");
		it = cache.emplace(digits, *c).first;
	}
	return it->second;
}

template <bool Parallel> void bm_check(benchmark::State &state) {
	const auto &cert = certificate(static_cast<int>(state.range(0)));
	const auto f = expr::parse(cert.function);
	for (auto _ : state) {
		const auto r = Parallel ? certs::check(cert, f, kA, kB) : certs::check_serial(cert, f, kA, kB);
		if (!r.valid)
			state.SkipWithError("certificate rejected");
		benchmark::DoNotOptimize(r);
	}
	const auto pieces = static_cast<double>(std::get<certs::IntegralCert>(cert.body).partition.piece_count());
	state.counters["pieces"] = pieces;
	state.counters["pieces/s"] = benchmark::Counter(pieces, benchmark::Counter::kIsIterationInvariantRate);
}

} // namespace

BENCHMARK(bm_check<false>)->Name("check_serial")->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_check<true>)->Name("check_openmp")->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
