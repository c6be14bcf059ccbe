#include "ceor/strip_sweep.hpp"

#include <cmath>
#include <ostream>

#include "ceor/complex_text.hpp"
#include "ceor/rng.hpp"

namespace ceor {

namespace {

long long integer_span(double t_lo, double t_hi) {
  if (!std::isfinite(t_lo) || !std::isfinite(t_hi))
    throw NonIntegerSpanError("tile_strip: non-finite bounds");
  const double span = t_hi - t_lo;
  const double rounded = std::round(span);
  if (!(span > 0.5) || std::abs(span - rounded) > 1e-9)
    throw NonIntegerSpanError("tile_strip: span must be a positive integer");
  return static_cast<long long>(rounded);
}

}  // namespace

std::vector<StripRegion> tile_strip(double t_lo, double t_hi) {
  const long long n = integer_span(t_lo, t_hi);
  std::vector<StripRegion> tiles;
  tiles.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k)
    tiles.push_back(StripRegion{0.0, 1.0, t_lo + static_cast<double>(k),
                                t_lo + static_cast<double>(k + 1)});
  return tiles;
}

TileReport run_tile(const StripRegion& tile, std::size_t ordinal,
                    const CeParams& params, const Tolerances& tol,
                    const RhSearchOptions& options) {
  TileReport report;
  report.tile = tile;
  report.region_count = count_zeros_region(tile.t_lo, tile.t_hi);

  CeParams tile_params = params;
  tile_params.seed = mix_keys(params.seed, ordinal);
  const CeorReport ceor = run_ceor(tile, tile_params, tol, options);
  for (const ZeroRecord& rec : ceor.zeros) {
    // Refinement can converge to an ordinate just outside the sampled tile;
    // those belong to the neighbour, per the half-open partition.
    if (rec.t >= tile.t_lo && rec.t < tile.t_hi)
      report.ceor_zeros.push_back(rec.t);
  }
  report.match = static_cast<long long>(report.ceor_zeros.size()) ==
                 report.region_count.n_online;
  return report;
}

SweepReport sweep_region(double t_lo, double t_hi, const CeParams& params,
                         const Tolerances& tol,
                         const RhSearchOptions& options) {
  SweepReport report;
  report.t_lo = t_lo;
  report.t_hi = t_hi;
  report.params = params;
  report.tolerances = tol;
  report.options = options;

  const std::vector<StripRegion> tiles = tile_strip(t_lo, t_hi);
  report.tiles.reserve(tiles.size());
  for (std::size_t k = 0; k < tiles.size(); ++k)
    report.tiles.push_back(run_tile(tiles[k], k, params, tol, options));

  bool all_match = true;
  for (const TileReport& tile : report.tiles) {
    report.total_online += tile.region_count.n_online;
    report.total_formula += tile.region_count.n_formula;
    all_match = all_match && tile.match;
  }
  report.consistent =
      all_match && report.total_online == count_zeros_online(t_lo, t_hi);
  return report;
}

SweepReport extend_sweep(const SweepReport& report, int extra_tiles,
                         const CeParams& params, const Tolerances& tol,
                         const RhSearchOptions& options) {
  if (extra_tiles < 1)
    throw ConfigError("extend_sweep: extra_tiles must be >= 1");

  SweepReport extended;
  extended.t_lo = report.t_lo;
  extended.t_hi = report.t_hi + extra_tiles;
  extended.params = params;
  extended.tolerances = tol;
  extended.options = options;
  extended.tiles = report.tiles;  // prior tiles byte-identical

  const std::vector<StripRegion> fresh =
      tile_strip(report.t_hi, extended.t_hi);
  for (std::size_t i = 0; i < fresh.size(); ++i)
    extended.tiles.push_back(
        run_tile(fresh[i], report.tiles.size() + i, params, tol, options));

  bool all_match = true;
  for (const TileReport& tile : extended.tiles) {
    extended.total_online += tile.region_count.n_online;
    extended.total_formula += tile.region_count.n_formula;
    all_match = all_match && tile.match;
  }
  extended.consistent =
      all_match && extended.total_online ==
                       count_zeros_online(extended.t_lo, extended.t_hi);
  return extended;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "tile_lo,tile_hi,n_online,n_formula,ceor_found,match\n";
  for (const TileReport& tile : report.tiles)
    out << format_double(tile.tile.t_lo) << ','
        << format_double(tile.tile.t_hi) << ',' << tile.region_count.n_online
        << ',' << tile.region_count.n_formula << ',' << tile.ceor_zeros.size()
        << ',' << (tile.match ? "true" : "false") << '\n';
}

}  // namespace ceor
