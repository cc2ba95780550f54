#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddh/field.hpp"
#include "ddh/grid.hpp"
#include "ddh/operators.hpp"

namespace ddh {

enum class NormMethod { kExactSvd, kPowerIteration, kRandomSearch };

std::string to_string(NormMethod m);

struct NormEstimate {
  double p = 2.0;
  double value = 0.0;
  NormMethod method = NormMethod::kPowerIteration;
  int iterations = 0;
  double residual = 0.0;
  std::uint64_t seed = 0;
};

/// (4^{-n} sum |f|^p)^{1/p}; p = infinity gives max |f|. Requires p >= 1.
double lp_norm(const GridFunction& f, double p);

/// Largest singular value of f -> apply_hv(f, v) by power iteration on
/// A^T A from a seeded random start. Stops when the relative Rayleigh
/// change drops below tol or after maxiter steps. The Rayleigh sequence is
/// non-decreasing; callers can capture it through `trace`.
NormEstimate opnorm_l2(const DirectionField& v, int maxiter, double tol, std::uint64_t seed,
                       std::vector<double>* trace = nullptr);

/// Largest singular value from the densely assembled 4^n x 4^n matrix.
/// Only for n <= 3.
NormEstimate opnorm_exact(const DirectionField& v);

/// Lower bound on ||A||_p -> p by seeded random starts with coordinate-wise
/// perturbation ascent, plus direct evaluation of the sampled tensor Haar
/// functions as explicit witnesses. Requires 1 < p < infinity.
NormEstimate opnorm_lp_lower(const DirectionField& v, double p, int budget, std::uint64_t seed);

struct AdversarialResult {
  NormEstimate estimate;
  /// Greedy pointwise selection k*(cell) = argmax_k |D_k f*(cell)| (smallest
  /// k on ties); realizes ||apply_hv(f*, v*)||_2 equal to the estimate.
  DirectionField field;
  GridFunction maximizer;
};

/// Maximizes ||Vf||_2 / ||f||_2 where Vf(cell) = max_k |D_k f(cell)|, the
/// best ratio any pointwise selection of scales can achieve. Ascent
/// alternates the greedy selection with one power step on the selected
/// operator, which never decreases the ratio. The returned field is
/// generally NOT Lipschitz-valid.
AdversarialResult adversarial_selection_norm(int n, int budget, std::uint64_t seed,
                                             const GridFunction* warm_start = nullptr);

/// adversarial_selection_norm across increasing resolutions, warm-starting
/// each level with the refined maximizer of the previous one, so reported
/// values are non-decreasing up to roundoff.
std::vector<AdversarialResult> adversarial_growth_sweep(const std::vector<int>& resolutions,
                                                        int budget, std::uint64_t seed);

struct Lemma21Witness {
  DyadicInterval i;       // x-axis interval
  DyadicInterval j;       // y-axis interval
  std::uint32_t x = 0;    // x-cell in I
  std::uint32_t y_holds = 0;  // y-cell in J where the eccentricity bound holds
  std::uint32_t y_fails = 0;  // y-cell in J where it fails
};

struct FeffermanSteinRow {
  double p = 0.0;
  double maximal_norm = 0.0;  // ||(sum_J |M_1(<f,h_J>_2 h_J)|^2)^{1/2}||_p
  double plain_norm = 0.0;    // same without M_1
  double ratio = 0.0;         // empirical constant, never asserted
};

struct VerifierReport {
  /// For every rectangle I x J and x-cell in I: if some y in J meets the
  /// eccentricity bound then all y in J do. Exhaustive.
  bool lemma21_pass = false;
  std::optional<Lemma21Witness> lemma21_witness;

  /// Upward-closedness of every interval_set. Holds for every field.
  bool convexity_pass = false;

  /// Max abs deviation between the pointwise-selected scale-J Haar sum and
  /// the difference of the two telescoped martingale averages, over random
  /// f. Zero (to roundoff) on valid fields.
  double telescoping_max_error = 0.0;

  std::vector<FeffermanSteinRow> fefferman_stein;

  int trials = 0;
};

/// Brute-force verifiers for the combinatorial steps behind apply_hv's
/// boundedness on valid fields. `trials` random functions drive the
/// telescoping and maximal-inequality statistics.
VerifierReport run_verifiers(const DirectionField& v, int trials, std::uint64_t seed);

}  // namespace ddh
