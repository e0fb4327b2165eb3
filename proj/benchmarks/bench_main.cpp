#include <benchmark/benchmark.h>

#include "hopflat/groups.hpp"
#include "hopflat/tensor_net.hpp"

using namespace hopflat;

namespace {

const char* kAlgebras[] = {"z2-group", "z3-group", "s3-group", "s3-fun"};

void vertex_apply(benchmark::State& state) {
    const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra(kAlgebras[state.range(0)]));
    const GraphHandle graph = builtin_graph("torus-2x1");
    const LatticeOperator op = vertex_operator(la, graph, graph->default_vertex_site(0), la->base()->haar());
    const Mat block = probe_states(op.space_dim(), 4, 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(block));
    state.SetLabel(kAlgebras[state.range(0)]);
}

void face_apply(benchmark::State& state) {
    const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra(kAlgebras[state.range(0)]));
    const GraphHandle graph = builtin_graph("torus-2x1");
    const LatticeOperator op = face_operator(la, graph, *graph->default_face_site(0), la->base()->haar());
    const Mat block = probe_states(op.space_dim(), 4, 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(block));
    state.SetLabel(kAlgebras[state.range(0)]);
}

void trace_haar(benchmark::State& state) {
    const LatticeAlgebraHandle la = LatticeAlgebra::create(builtin_algebra(kAlgebras[state.range(0)]));
    const GraphHandle graph = builtin_graph("torus-2x1");
    const TensorNetworkSpec spec = uniform_spec(graph, la->dual()->haar(), la->base()->haar());
    for (auto _ : state) benchmark::DoNotOptimize(tensor_trace(*la->dual(), spec));
    state.SetLabel(kAlgebras[state.range(0)]);
}

void ground_state_triangle(benchmark::State& state) {
    const ModelSpec model =
        make_model(LatticeAlgebra::create(builtin_algebra(kAlgebras[state.range(0)])), builtin_graph("triangle"));
    for (auto _ : state) benchmark::DoNotOptimize(ground_state(model));
    state.SetLabel(kAlgebras[state.range(0)]);
}

}  // namespace

BENCHMARK(vertex_apply)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(face_apply)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(trace_haar)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(ground_state_triangle)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
