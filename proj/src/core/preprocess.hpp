#ifndef CONNSEG_PREPROCESS_HPP
#define CONNSEG_PREPROCESS_HPP

#include <cstdint>
#include <vector>

#include "volume.hpp"

namespace connseg {

struct HUWindow {
    float lo = -1000.0f;
    float hi = 600.0f;
    float out_lo = 0.0f;
    float out_hi = 255.0f;
};

struct LungExtractParams {
    double smooth_sigma = 1.0;
    float air_threshold = -600.0f;   // voxels strictly below count as air
    double hull_ratio = 1.5;         // replace slice by hull when hull_area >= ratio * area
    double min_component_frac = 0.001;
};

struct Components {
    std::vector<int32_t> labels;     // 0 = background, components 1..count
    int32_t count = 0;
    std::vector<size_t> sizes;       // sizes[k-1] = voxel count of component k
};

// Per-axial-slice 2-D Gaussian, kernel truncated at radius ceil(3*sigma) and
// renormalized; borders handled by reflection.
Volume gaussian_smooth_slices(const Volume& v, double sigma);

// out[p] = 1 iff v[p] < thr. Air and lung tissue sit below the threshold.
BinaryMask threshold_binarize(const Volume& v, float thr);

// 26-connected components, labeled 1..K in first-scan order.
Components connected_components_3d(const BinaryMask& m);

// Filled discrete convex hull of the set pixels; the slice is replaced only
// when hull_area >= ratio * region_area. Output is always a superset of the
// input.
Mask2D convex_hull_repair_slice(const Mask2D& m2d, double ratio = 1.5);

// Exact Euclidean distance (voxel units) from each in-mask voxel to the
// nearest background voxel. Everything outside the volume counts as
// background, so border-touching masks get finite distances.
Volume distance_transform(const BinaryMask& m);

// Squared-distance variant; values are exact integers stored in doubles.
std::vector<double> distance_transform_squared(const BinaryMask& m);

// clamp to [lo,hi], then map linearly onto [out_lo,out_hi]
Volume clip_normalize(const Volume& ct, const HUWindow& w = {});

// Smooth, threshold, drop exterior air and dust, keep the largest two
// components, repair each slice by its convex hull, union.
BinaryMask extract_lung_mask(const Volume& ct, const LungExtractParams& p = {});

}  // namespace connseg

#endif
