#include <benchmark/benchmark.h>

#include "fracvisco/fem.hpp"
#include "fracvisco/stepper.hpp"

using namespace fracvisco;

static void BM_AssembleSystem(benchmark::State& state) {
  const auto kind = state.range(1) == 0 ? MeshKind::Triangular : MeshKind::Quadrilateral;
  const Mesh mesh = Mesh::build(kind, static_cast<int>(state.range(0)));
  const DofMap dofs = DofMap::build(mesh);
  const Material mat = Material::experiment(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(System::build(mesh, dofs, mat, 1e-3).lhs.nnz());
}
BENCHMARK(BM_AssembleSystem)->Args({32, 0})->Args({32, 1})->Args({64, 0})->Args({64, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_CgSolve(benchmark::State& state) {
  const Mesh mesh = Mesh::build(MeshKind::Quadrilateral, static_cast<int>(state.range(0)));
  const DofMap dofs = DofMap::build(mesh);
  const System sys = System::build(mesh, dofs, Material::experiment(0.5), 1.0 / 4096);
  const Vector rhs(dofs.n_dofs(), 1.0);
  for (auto _ : state) {
    Vector x(dofs.n_dofs(), 0.0);
    benchmark::DoNotOptimize(cg_solve(sys.lhs, rhs, x, 1e-10));
  }
}
BENCHMARK(BM_CgSolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
