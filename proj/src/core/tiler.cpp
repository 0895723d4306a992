#include "tiler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace connseg {

BBox mask_bbox(const BinaryMask& m) {
    const Shape3& s = m.shape;
    BBox b{{s.z, s.y, s.x}, {0, 0, 0}};
    for (int z = 0; z < s.z; ++z)
        for (int y = 0; y < s.y; ++y)
            for (int x = 0; x < s.x; ++x)
                if (m.at(z, y, x)) {
                    b.lo.z = std::min(b.lo.z, z);
                    b.lo.y = std::min(b.lo.y, y);
                    b.lo.x = std::min(b.lo.x, x);
                    b.hi.z = std::max(b.hi.z, z + 1);
                    b.hi.y = std::max(b.hi.y, y + 1);
                    b.hi.x = std::max(b.hi.x, x + 1);
                }
    return b;
}

namespace {

std::vector<int> axis_origins(int lo, int len, int vol_len, int cube, int stride) {
    if (cube > vol_len) throw_invalid("tile cube exceeds volume extent");
    if (cube >= len) {
        // single tile covering the whole box, shifted to stay inside the volume
        return {std::min(lo, vol_len - cube)};
    }
    std::vector<int> out;
    int r = 0;
    for (;;) {
        out.push_back(lo + r);
        if (r + cube >= len) break;
        r = std::min(r + stride, len - cube);
    }
    return out;
}

}  // namespace

std::vector<Shape3> plan_tiles(Shape3 volume_shape, const BBox& bbox, Shape3 cube, Shape3 stride) {
    if (bbox.empty()) throw_invalid("plan_tiles: empty bounding box");
    if (bbox.lo.z < 0 || bbox.lo.y < 0 || bbox.lo.x < 0 || bbox.hi.z > volume_shape.z ||
        bbox.hi.y > volume_shape.y || bbox.hi.x > volume_shape.x)
        throw_invalid("plan_tiles: bounding box outside the volume");
    if (stride.z <= 0 || stride.y <= 0 || stride.x <= 0 || stride.z > cube.z ||
        stride.y > cube.y || stride.x > cube.x)
        throw_invalid("plan_tiles: stride must satisfy 0 < stride <= cube per axis");

    Shape3 ext = bbox.extent();
    std::vector<int> oz = axis_origins(bbox.lo.z, ext.z, volume_shape.z, cube.z, stride.z);
    std::vector<int> oy = axis_origins(bbox.lo.y, ext.y, volume_shape.y, cube.y, stride.y);
    std::vector<int> ox = axis_origins(bbox.lo.x, ext.x, volume_shape.x, cube.x, stride.x);

    std::vector<Shape3> origins;
    origins.reserve(oz.size() * oy.size() * ox.size());
    for (int z : oz)
        for (int y : oy)
            for (int x : ox) origins.push_back({z, y, x});
    return origins;
}

Volume crop_volume(const Volume& v, Shape3 origin, Shape3 size) {
    Volume out(size, v.spacing);
    for (int z = 0; z < size.z; ++z)
        for (int y = 0; y < size.y; ++y) {
            const float* src = &v.data[flat_index(v.shape, origin.z + z, origin.y + y, origin.x)];
            float* dst = &out.data[flat_index(size, z, y, 0)];
            std::copy(src, src + size.x, dst);
        }
    return out;
}

BinaryMask crop_mask(const BinaryMask& m, Shape3 origin, Shape3 size) {
    BinaryMask out(size);
    for (int z = 0; z < size.z; ++z)
        for (int y = 0; y < size.y; ++y) {
            const uint8_t* src = &m.data[flat_index(m.shape, origin.z + z, origin.y + y, origin.x)];
            uint8_t* dst = &out.data[flat_index(size, z, y, 0)];
            std::copy(src, src + size.x, dst);
        }
    return out;
}

namespace {

void flip_x(std::vector<float>& data, Shape3 s) {
    for (int z = 0; z < s.z; ++z)
        for (int y = 0; y < s.y; ++y) {
            float* row = &data[flat_index(s, z, y, 0)];
            std::reverse(row, row + s.x);
        }
}

void flip_x(BinaryMask& m) {
    for (int z = 0; z < m.shape.z; ++z)
        for (int y = 0; y < m.shape.y; ++y) {
            uint8_t* row = &m.data[flat_index(m.shape, z, y, 0)];
            std::reverse(row, row + m.shape.x);
        }
}

}  // namespace

TrainingSampler::TrainingSampler(const Volume& image, const BinaryMask& airway,
                                 const BinaryMask& lung, const Volume& distance, Shape3 cube,
                                 Shape3 stride, const SamplePolicy& policy, uint64_t seed,
                                 bool connectivity_labels)
    : image_(image),
      airway_(airway),
      distance_(distance),
      cube_(cube),
      policy_(policy),
      connectivity_(connectivity_labels),
      rng_(seed) {
    if (!(image.shape == airway.shape) || !(image.shape == lung.shape) ||
        !(image.shape == distance.shape))
        throw_invalid("training sampler requires matching grid shapes");
    bbox_ = mask_bbox(lung);
    if (bbox_.empty()) throw_invalid("training sampler: empty lung mask");
    origins_ = plan_tiles(image.shape, bbox_, cube, stride);
    float dmax = 0.0f;
    for (float d : distance.data) dmax = std::max(dmax, d);
    dist_scale_ = dmax > 0.0f ? 1.0f / dmax : 0.0f;
}

bool TrainingSampler::next(Sample& out) {
    while (pos_ < origins_.size()) {
        const Shape3 origin = origins_[pos_++];
        BinaryMask gt = crop_mask(airway_, origin, cube_);
        const bool has_airway = gt.count_set() > 0;
        if (!has_airway && !rng_.bernoulli(policy_.bg_keep_prob)) continue;

        out.origin = origin;
        out.image = crop_volume(image_, origin, cube_);
        out.aux.assign(4, Volume(cube_));
        const Shape3 ext = bbox_.extent();
        const float nz = ext.z > 1 ? 1.0f / (ext.z - 1) : 0.0f;
        const float ny = ext.y > 1 ? 1.0f / (ext.y - 1) : 0.0f;
        const float nx = ext.x > 1 ? 1.0f / (ext.x - 1) : 0.0f;
        for (int z = 0; z < cube_.z; ++z)
            for (int y = 0; y < cube_.y; ++y)
                for (int x = 0; x < cube_.x; ++x) {
                    size_t p = flat_index(cube_, z, y, x);
                    out.aux[0].data[p] = std::clamp((origin.z + z - bbox_.lo.z) * nz, 0.0f, 1.0f);
                    out.aux[1].data[p] = std::clamp((origin.y + y - bbox_.lo.y) * ny, 0.0f, 1.0f);
                    out.aux[2].data[p] = std::clamp((origin.x + x - bbox_.lo.x) * nx, 0.0f, 1.0f);
                }
        out.aux[3] = crop_volume(distance_, origin, cube_);
        for (float& d : out.aux[3].data) d *= dist_scale_;

        out.flipped = policy_.flip_prob > 0.0 && rng_.bernoulli(policy_.flip_prob);
        if (out.flipped) {
            // flip image, aux and the raw mask, then encode; flipping an
            // encoded cube would need a channel permutation instead
            flip_x(out.image.data, cube_);
            for (Volume& a : out.aux) flip_x(a.data, cube_);
            flip_x(gt);
        }

        if (connectivity_) {
            out.label = encode_connectivity(gt);
        } else {
            out.label = ConnectivityCube(1, cube_, CubeKind::label);
            for (size_t p = 0; p < gt.data.size(); ++p) out.label.data[p] = gt.data[p] ? 1.0f : 0.0f;
        }
        return true;
    }
    return false;
}

ConnectivityCube stitch_predictions(const std::vector<std::pair<Shape3, ConnectivityCube>>& tiles,
                                    Shape3 full_shape, const BBox& bbox) {
    if (tiles.empty()) throw_invalid("stitch_predictions: no tiles");
    const int channels = tiles.front().second.channels;
    for (const auto& [origin, cube] : tiles) {
        (void)origin;
        if (cube.channels != channels) throw_invalid("stitch_predictions: mixed channel counts");
    }

    ConnectivityCube out(channels, full_shape, CubeKind::probability);
    std::vector<double> sum(out.data.size(), 0.0);
    std::vector<uint32_t> cover(full_shape.count(), 0);

    for (const auto& [origin, cube] : tiles) {
        const Shape3& ts = cube.shape;
        if (origin.z < 0 || origin.y < 0 || origin.x < 0 || origin.z + ts.z > full_shape.z ||
            origin.y + ts.y > full_shape.y || origin.x + ts.x > full_shape.x)
            throw_invalid("stitch_predictions: tile outside the volume");
        for (int z = 0; z < ts.z; ++z)
            for (int y = 0; y < ts.y; ++y) {
                size_t dst0 = flat_index(full_shape, origin.z + z, origin.y + y, origin.x);
                uint32_t* cov = &cover[dst0];
                for (int x = 0; x < ts.x; ++x) ++cov[x];
                for (int c = 0; c < channels; ++c) {
                    const float* src = &cube.data[cube.channel_offset(c) + flat_index(ts, z, y, 0)];
                    double* dst = &sum[out.channel_offset(c) + dst0];
                    for (int x = 0; x < ts.x; ++x) dst[x] += src[x];
                }
            }
    }

    for (int z = bbox.lo.z; z < bbox.hi.z; ++z)
        for (int y = bbox.lo.y; y < bbox.hi.y; ++y)
            for (int x = bbox.lo.x; x < bbox.hi.x; ++x)
                if (cover[flat_index(full_shape, z, y, x)] == 0)
                    throw_invalid("stitch_predictions: coverage gap at voxel (" +
                                  std::to_string(z) + "," + std::to_string(y) + "," +
                                  std::to_string(x) + ")");

    const size_t n = full_shape.count();
    for (int c = 0; c < channels; ++c) {
        const double* src = &sum[out.channel_offset(c)];
        float* dst = &out.data[out.channel_offset(c)];
        for (size_t p = 0; p < n; ++p)
            if (cover[p]) dst[p] = static_cast<float>(src[p] / cover[p]);
    }
    return out;
}

}  // namespace connseg
