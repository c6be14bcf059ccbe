#pragma once

#include <iosfwd>
#include <vector>

#include "ceor/rh_search.hpp"

namespace ceor {

struct TileReport {
  StripRegion tile;          // unit height, sigma (0, 1)
  RegionCount region_count;  // independent scan + formula count
  std::vector<double> ceor_zeros;  // refined ordinates inside [t_lo, t_hi)
  bool match = false;  // |ceor_zeros| == n_online, all inside the tile
};

struct SweepReport {
  double t_lo = 0.0;
  double t_hi = 0.0;
  CeParams params;  // per-tile seeds derive from params.seed and the ordinal
  Tolerances tolerances;
  RhSearchOptions options;
  std::vector<TileReport> tiles;
  long long total_online = 0;
  long long total_formula = 0;
  // Every tile matches and total_online equals the one-shot scan count.
  bool consistent = false;
};

// floor(t_hi - t_lo) unit-height tiles [t_lo + k, t_lo + k + 1) partitioning
// [t_lo, t_hi). The span must be a positive integer (NonIntegerSpanError).
std::vector<StripRegion> tile_strip(double t_lo, double t_hi);

// One tile's counts and CEOR run. The ordinal keys the tile's RNG seed, so
// tiles are order-independent and extension-stable.
TileReport run_tile(const StripRegion& tile, std::size_t ordinal,
                    const CeParams& params, const Tolerances& tol,
                    const RhSearchOptions& options = {});

SweepReport sweep_region(double t_lo, double t_hi, const CeParams& params,
                         const Tolerances& tol,
                         const RhSearchOptions& options = {});

// Appends extra_tiles unit tiles above report.t_hi, reusing every prior
// TileReport unchanged, and recomputes the totals and consistency flag.
SweepReport extend_sweep(const SweepReport& report, int extra_tiles,
                         const CeParams& params, const Tolerances& tol,
                         const RhSearchOptions& options = {});

// CSV with header `tile_lo,tile_hi,n_online,n_formula,ceor_found,match`.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace ceor
