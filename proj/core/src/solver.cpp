#include "lovewave/solver.hpp"

namespace lovewave {

LoveWaveResult solve_love_wave(const WaveContext& ctx, const SolveOptions& options) {
  LoveWaveResult out;
  out.triple = build_scaled_triple(ctx, options.coupling);
  const auto sys = out.triple.system();
  out.limiting = limiting_speed(sys, options.limiting);
  out.secular = solve_secular(sys, out.limiting.v_hat, options.secular);
  out.impedance = impedance_matrix(sys, out.secular.v0, options.secular.quad);
  out.solution = make_solution(out.triple, ctx.params, out.impedance, options.singular_tol);
  return out;
}

}  // namespace lovewave
