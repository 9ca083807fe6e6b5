#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "alt/dataset.hpp"
#include "alt/model.hpp"
#include "alt/rng.hpp"
#include "alt/transform.hpp"

namespace {

alt::TimeSeriesDataset synthetic(std::size_t per_class, std::size_t length) {
    alt::SplitMix64 rng(1234);
    std::vector<std::vector<std::vector<double>>> values;
    std::vector<int> labels;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int y = static_cast<int>(i % 2) + 1;
        std::vector<double> s(length);
        const double omega = 0.1 * static_cast<double>(y + 1);
        for (std::size_t t = 0; t < length; ++t)
            s[t] = std::sin(omega * static_cast<double>(t)) +
                   1e-3 * static_cast<double>(rng.next() >> 40);
        values.push_back({std::move(s)});
        labels.push_back(y);
    }
    return {std::move(values), std::move(labels), {"1", "2"}};
}

void BM_train_bank(benchmark::State& state) {
    const auto ds = synthetic(5, 150);
    std::vector<std::size_t> learn;
    for (std::size_t i = 0; i < ds.num_instances(); ++i) learn.push_back(i);
    const std::vector<alt::WindowConfig> configs{{25, 4, 1}};
    for (auto _ : state) {
        auto bank = alt::train_bank(ds, learn, configs,
                                    static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(bank);
    }
}
BENCHMARK(BM_train_bank)->Arg(1)->Arg(4);

void BM_transform_set(benchmark::State& state) {
    const auto ds = synthetic(5, 150);
    std::vector<std::size_t> learn;
    for (std::size_t i = 0; i < ds.num_instances(); ++i) learn.push_back(i);
    const auto bank = alt::train_bank(ds, learn, {{25, 4, 1}}, 1);
    const auto methods = alt::parse_methods("mean_all,mean@0.05");

    const auto queries = synthetic(40, 150);
    std::vector<std::vector<std::vector<double>>> instances;
    for (std::size_t i = 0; i < queries.num_instances(); ++i)
        instances.push_back(queries.instance(i));

    for (auto _ : state) {
        auto table = alt::transform_set(instances, bank, methods, {},
                                        static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_transform_set)->Arg(1)->Arg(4);

void BM_eig_symmetric(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    alt::SplitMix64 rng(7);
    alt::Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            s(i, j) = s(j, i) = static_cast<double>(rng.next() >> 40);
    for (auto _ : state) {
        auto e = alt::eig_symmetric(s);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_eig_symmetric)->Arg(4)->Arg(16)->Arg(27);

}  // namespace

BENCHMARK_MAIN();
