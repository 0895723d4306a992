#ifndef CONNSEG_TILER_HPP
#define CONNSEG_TILER_HPP

#include <utility>
#include <vector>

#include "connectivity.hpp"
#include "rng.hpp"
#include "volume.hpp"

namespace connseg {

// half-open voxel box [lo, hi)
struct BBox {
    Shape3 lo;
    Shape3 hi;
    Shape3 extent() const { return {hi.z - lo.z, hi.y - lo.y, hi.x - lo.x}; }
    bool empty() const { return hi.z <= lo.z || hi.y <= lo.y || hi.x <= lo.x; }
};

BBox mask_bbox(const BinaryMask& m);

// Tile origins on a stride grid over the bounding box, deterministic order
// (Z, then H, then W). The last origin per axis is clamped so the tile ends
// exactly at the box edge; a box smaller than the cube yields a single tile
// clamped into the volume.
std::vector<Shape3> plan_tiles(Shape3 volume_shape, const BBox& bbox, Shape3 cube, Shape3 stride);

struct SamplePolicy {
    double bg_keep_prob = 0.25;  // keep probability for airway-free tiles
    double flip_prob = 0.0;      // horizontal (W axis) flip augmentation
};

struct Sample {
    Volume image;
    ConnectivityCube label;
    std::vector<Volume> aux;  // zc, yc, xc in [0,1] over the lung bbox, then distance
    Shape3 origin;
    bool flipped = false;
};

// Streams training samples tile by tile. Tiles containing at least one
// airway voxel are always emitted; airway-free tiles survive with
// probability bg_keep_prob from the seeded generator. Labels are encoded
// per tile from the cropped mask; with connectivity_labels=false the label
// is the raw 1-channel mask crop.
class TrainingSampler {
public:
    TrainingSampler(const Volume& image, const BinaryMask& airway, const BinaryMask& lung,
                    const Volume& distance, Shape3 cube, Shape3 stride,
                    const SamplePolicy& policy, uint64_t seed, bool connectivity_labels = true);

    bool next(Sample& out);
    size_t tiles_total() const { return origins_.size(); }
    const BBox& bbox() const { return bbox_; }

private:
    const Volume& image_;
    const BinaryMask& airway_;
    const Volume& distance_;
    Shape3 cube_;
    SamplePolicy policy_;
    bool connectivity_;
    BBox bbox_;
    float dist_scale_ = 0.0f;
    std::vector<Shape3> origins_;
    size_t pos_ = 0;
    Rng rng_;
};

// Per-voxel, per-channel mean over all covering tiles; voxels outside every
// tile are zero. Every voxel of the bbox must be covered.
ConnectivityCube stitch_predictions(const std::vector<std::pair<Shape3, ConnectivityCube>>& tiles,
                                    Shape3 full_shape, const BBox& bbox);

// crop helpers shared with the prediction path
Volume crop_volume(const Volume& v, Shape3 origin, Shape3 size);
BinaryMask crop_mask(const BinaryMask& m, Shape3 origin, Shape3 size);

}  // namespace connseg

#endif
