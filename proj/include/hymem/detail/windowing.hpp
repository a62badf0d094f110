#pragma once
#include <functional>

#include "hymem/hybrid_time.hpp"

namespace hymem::detail {

/// Interpolated evaluation inside one segment grid (exact at samples).
State eval_segment(const SegmentSamples& g, Interp interp, double t);

/// Shared core of the memory operator: builds A^Delta_{[t,j]} from segment
/// metadata plus an accessor for per-segment sample grids.
MemoryArc window_impl(const std::vector<Segment>& segs,
                      const std::function<const SegmentSamples&(long)>& samples_of, Interp interp,
                      double t, long j, double delta);

}  // namespace hymem::detail
