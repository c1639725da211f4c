#include <benchmark/benchmark.h>

#include "pgld/designs.hpp"

namespace {

pgld::Field field_for(std::int64_t q) {
  switch (q) {
    case 25: return pgld::Field::make(5, 2);
    case 49: return pgld::Field::make(7, 2);
    case 81: return pgld::Field::make(3, 4);
    default: return pgld::Field::make(static_cast<std::uint32_t>(q), 1);
  }
}

void BM_EnumeratePGL(benchmark::State& state) {
  const auto field = field_for(state.range(0));
  for (auto _ : state) {
    auto group = pgld::enumerate_group(field, pgld::GroupKind::PGL);
    benchmark::DoNotOptimize(group.data());
  }
  state.SetItemsProcessed(state.iterations() * pgld::group_order(field, pgld::GroupKind::PGL));
}
BENCHMARK(BM_EnumeratePGL)->Arg(13)->Arg(49)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_StabilizerScan(benchmark::State& state) {
  const auto field = field_for(state.range(0));
  const auto group = pgld::enumerate_group(field, pgld::GroupKind::PGL);
  const auto block = pgld::build_block(field, {pgld::Family::SubgroupZero, 1});
  for (auto _ : state) {
    auto stab = pgld::stabilizer_of_block(field, group, block);
    benchmark::DoNotOptimize(stab.elements.data());
  }
  state.SetItemsProcessed(state.iterations() * group.size());
}
BENCHMARK(BM_StabilizerScan)->Arg(13)->Arg(49)->Arg(81)->Unit(benchmark::kMillisecond);

// Small blocks give the largest orbits.
void BM_OrbitClosure(benchmark::State& state) {
  const auto field = field_for(state.range(0));
  const auto gens = pgld::group_generators(field, pgld::GroupKind::PGL);
  const auto block = pgld::build_block(field, {pgld::Family::SubgroupZero, (field.q() - 1) / 4});
  for (auto _ : state) {
    auto orbit = pgld::orbit_of_block(field, gens, block, pgld::GroupKind::PGL);
    benchmark::DoNotOptimize(orbit.blocks.data());
  }
}
BENCHMARK(BM_OrbitClosure)->Arg(13)->Arg(49)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_TripleCount(benchmark::State& state) {
  const auto field = field_for(state.range(0));
  const auto gens = pgld::group_generators(field, pgld::GroupKind::PGL);
  const auto block = pgld::build_block(field, {pgld::Family::SubgroupOnly, 2});
  const auto orbit = pgld::orbit_of_block(field, gens, block, pgld::GroupKind::PGL);
  for (auto _ : state) {
    auto params = pgld::verify_design(orbit, field);
    benchmark::DoNotOptimize(params.lambda);
  }
}
BENCHMARK(BM_TripleCount)->Arg(13)->Arg(49)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto field = field_for(state.range(0));
  const auto group = pgld::enumerate_group(field, pgld::GroupKind::PGL);
  const auto block = pgld::build_block(field, {pgld::Family::SubgroupZero, 1});
  const auto stab = pgld::stabilizer_of_block(field, group, block);
  for (auto _ : state) {
    auto type = pgld::classify_subgroup(field, stab.elements);
    benchmark::DoNotOptimize(type.order);
  }
}
BENCHMARK(BM_Classify)->Arg(13)->Arg(49)->Arg(81)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
