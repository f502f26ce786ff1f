#pragma once

#include "lovewave/limiting.hpp"
#include "lovewave/material.hpp"
#include "lovewave/modes.hpp"
#include "lovewave/operators.hpp"
#include "lovewave/riccati.hpp"
#include "lovewave/secular.hpp"

namespace lovewave {

struct SolveOptions {
  CurvatureCoupling coupling = CurvatureCoupling::Quadratic;
  LimitingSpeedOptions limiting;
  SecularOptions secular;
  double singular_tol = 1e-8;
};

struct LoveWaveResult {
  OperatorTriple triple;
  LimitingSpeedResult limiting;
  SecularSolveResult secular;
  ImpedanceResult<3> impedance;  // at v0
  SurfaceWaveSolution solution;
};

// Full chain: operators, limiting speed, secular root, impedance at the root,
// null vector and decay matrix.
LoveWaveResult solve_love_wave(const WaveContext& ctx, const SolveOptions& options = {});

}  // namespace lovewave
