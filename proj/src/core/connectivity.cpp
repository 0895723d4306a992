#include "connectivity.hpp"

#include <algorithm>
#include <string>

namespace connseg {

namespace {

void require_26(const ConnectivityCube& cube, const char* op) {
    if (cube.channels != 26)
        throw_invalid(std::string(op) + " requires a 26-channel cube");
}

}  // namespace

ConnectivityCube encode_connectivity(const BinaryMask& mask) {
    const Shape3& s = mask.shape;
    ConnectivityCube cube(26, s, CubeKind::label);
    const auto& scheme = NeighborScheme::instance();
    for (int i = 1; i <= 26; ++i) {
        const Offset& d = scheme.offset(i);
        float* ch = cube.data.data() + cube.channel_offset(i - 1);
        for (int z = 0; z < s.z; ++z) {
            int nz = z + d.dz;
            if (nz < 0 || nz >= s.z) continue;
            for (int y = 0; y < s.y; ++y) {
                int ny = y + d.dy;
                if (ny < 0 || ny >= s.y) continue;
                int x0 = std::max(0, -d.dx);
                int x1 = std::min(s.x, s.x - d.dx);
                const uint8_t* p = &mask.data[flat_index(s, z, y, x0)];
                const uint8_t* q = &mask.data[flat_index(s, nz, ny, x0 + d.dx)];
                float* out = ch + flat_index(s, z, y, x0);
                for (int x = x0; x < x1; ++x) out[x - x0] = (p[x - x0] & q[x - x0]) ? 1.0f : 0.0f;
            }
        }
    }
    return cube;
}

ConnectivityCube pairwise_agreement_filter(const ConnectivityCube& cube) {
    require_26(cube, "pairwise_agreement_filter");
    if (cube.kind != CubeKind::label)
        throw_invalid("pairwise_agreement_filter requires a hard-label cube");
    const Shape3& s = cube.shape;
    ConnectivityCube out(26, s, CubeKind::label);
    const auto& scheme = NeighborScheme::instance();
    for (int i = 1; i <= 26; ++i) {
        const Offset& d = scheme.offset(i);
        const int ci = NeighborScheme::complement_index(i);
        const float* self = cube.data.data() + cube.channel_offset(i - 1);
        const float* comp = cube.data.data() + cube.channel_offset(ci - 1);
        float* dst = out.data.data() + out.channel_offset(i - 1);
        for (int z = 0; z < s.z; ++z) {
            int nz = z + d.dz;
            for (int y = 0; y < s.y; ++y) {
                int ny = y + d.dy;
                for (int x = 0; x < s.x; ++x) {
                    size_t p = flat_index(s, z, y, x);
                    if (self[p] == 0.0f) continue;
                    int nx = x + d.dx;
                    // agreement needs the neighbor's complement bit
                    if (s.contains(nz, ny, nx) && comp[flat_index(s, nz, ny, nx)] != 0.0f)
                        dst[p] = 1.0f;
                }
            }
        }
    }
    return out;
}

BinaryMask decode_connectivity(const ConnectivityCube& cube, double threshold) {
    require_26(cube, "decode_connectivity");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw_invalid("decode threshold must lie in (0,1)");
    const Shape3& s = cube.shape;

    ConnectivityCube hard(26, s, CubeKind::label);
    const float t = static_cast<float>(threshold);
    for (size_t i = 0; i < cube.data.size(); ++i)
        hard.data[i] = cube.data[i] >= t ? 1.0f : 0.0f;

    ConnectivityCube kept = pairwise_agreement_filter(hard);

    BinaryMask mask(s);
    const size_t n = s.count();
    for (int c = 0; c < 26; ++c) {
        const float* ch = kept.data.data() + kept.channel_offset(c);
        for (size_t p = 0; p < n; ++p)
            if (ch[p] != 0.0f) mask.data[p] = 1;
    }
    return mask;
}

BinaryMask binarize_probability(const ConnectivityCube& cube, double threshold) {
    if (cube.channels != 1) throw_invalid("binarize_probability requires a 1-channel cube");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw_invalid("binarize threshold must lie in (0,1)");
    BinaryMask mask(cube.shape);
    const float t = static_cast<float>(threshold);
    for (size_t p = 0; p < mask.data.size(); ++p)
        mask.data[p] = cube.data[p] >= t ? 1 : 0;
    return mask;
}

BinaryMask has_neighbor(const BinaryMask& m) {
    const Shape3& s = m.shape;
    BinaryMask out(s);
    for (int z = 0; z < s.z; ++z)
        for (int y = 0; y < s.y; ++y)
            for (int x = 0; x < s.x; ++x) {
                if (!m.at(z, y, x)) continue;
                bool found = false;
                for (int dz = -1; dz <= 1 && !found; ++dz)
                    for (int dy = -1; dy <= 1 && !found; ++dy)
                        for (int dx = -1; dx <= 1 && !found; ++dx) {
                            if (dz == 0 && dy == 0 && dx == 0) continue;
                            int nz = z + dz, ny = y + dy, nx = x + dx;
                            if (s.contains(nz, ny, nx) && m.at(nz, ny, nx)) found = true;
                        }
                if (found) out.at(z, y, x) = 1;
            }
    return out;
}

}  // namespace connseg
