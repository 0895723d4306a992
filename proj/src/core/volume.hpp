#ifndef CONNSEG_VOLUME_HPP
#define CONNSEG_VOLUME_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "error.hpp"

namespace connseg {

// Axis order is (Z,H,W) everywhere: z is the slice index, y the row, x the
// column. Flat storage is C-order, x fastest.
struct Shape3 {
    int z = 0;
    int y = 0;
    int x = 0;

    size_t count() const {
        return static_cast<size_t>(z) * static_cast<size_t>(y) * static_cast<size_t>(x);
    }
    bool operator==(const Shape3&) const = default;
    bool contains(int pz, int py, int px) const {
        return pz >= 0 && pz < z && py >= 0 && py < y && px >= 0 && px < x;
    }
};

inline size_t flat_index(const Shape3& s, int z, int y, int x) {
    return (static_cast<size_t>(z) * s.y + y) * s.x + x;
}

struct Spacing {
    double z = 1.0;
    double y = 1.0;
    double x = 1.0;
    bool operator==(const Spacing&) const = default;
};

// Dense scalar grid: CT intensities, probabilities, or distances.
struct Volume {
    Shape3 shape;
    Spacing spacing;
    std::vector<float> data;

    Volume() = default;
    Volume(Shape3 s, Spacing sp = {}, float fill = 0.0f)
        : shape(s), spacing(sp), data(s.count(), fill) {
        if (s.z <= 0 || s.y <= 0 || s.x <= 0)
            throw_invalid("volume shape must be positive");
        if (sp.z <= 0 || sp.y <= 0 || sp.x <= 0)
            throw_invalid("voxel spacing must be positive");
    }

    float at(int z, int y, int x) const { return data[flat_index(shape, z, y, x)]; }
    float& at(int z, int y, int x) { return data[flat_index(shape, z, y, x)]; }
};

struct BinaryMask {
    Shape3 shape;
    std::vector<uint8_t> data;

    BinaryMask() = default;
    explicit BinaryMask(Shape3 s, uint8_t fill = 0) : shape(s), data(s.count(), fill) {
        if (s.z <= 0 || s.y <= 0 || s.x <= 0)
            throw_invalid("mask shape must be positive");
    }

    uint8_t at(int z, int y, int x) const { return data[flat_index(shape, z, y, x)]; }
    uint8_t& at(int z, int y, int x) { return data[flat_index(shape, z, y, x)]; }

    size_t count_set() const {
        size_t n = 0;
        for (uint8_t v : data) n += v;
        return n;
    }
    bool operator==(const BinaryMask&) const = default;
};

enum class CubeKind { label, probability };

// Channelled grid, stored (C,Z,H,W). The connectivity operations require 26
// channels; the direct-segmentation ablation flows a 1-channel variant through
// the same tiling and I/O paths.
struct ConnectivityCube {
    int channels = 26;
    Shape3 shape;
    CubeKind kind = CubeKind::label;
    std::vector<float> data;

    ConnectivityCube() = default;
    ConnectivityCube(int ch, Shape3 s, CubeKind k)
        : channels(ch), shape(s), kind(k), data(static_cast<size_t>(ch) * s.count(), 0.0f) {
        if (ch != 26 && ch != 1) throw_invalid("cube channel count must be 1 or 26");
    }

    size_t channel_offset(int c) const { return static_cast<size_t>(c) * shape.count(); }
    float at(int c, int z, int y, int x) const {
        return data[channel_offset(c) + flat_index(shape, z, y, x)];
    }
    float& at(int c, int z, int y, int x) {
        return data[channel_offset(c) + flat_index(shape, z, y, x)];
    }
};

// 2-D mask for per-slice operations, row-major (H,W).
struct Mask2D {
    int h = 0;
    int w = 0;
    std::vector<uint8_t> data;

    Mask2D() = default;
    Mask2D(int h_, int w_, uint8_t fill = 0) : h(h_), w(w_), data(static_cast<size_t>(h_) * w_, fill) {}

    uint8_t at(int y, int x) const { return data[static_cast<size_t>(y) * w + x]; }
    uint8_t& at(int y, int x) { return data[static_cast<size_t>(y) * w + x]; }
};

}  // namespace connseg

#endif
