#include "neighbors.hpp"

#include <algorithm>

namespace connseg {

NeighborScheme::NeighborScheme() {
    int i = 0;
    for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dz == 0 && dy == 0 && dx == 0) continue;
                offsets_[i++] = Offset{dz, dy, dx};
            }
}

const NeighborScheme& NeighborScheme::instance() {
    static const NeighborScheme scheme;
    return scheme;
}

const Offset& NeighborScheme::offset(int i) const {
    if (i < 1 || i > 26) throw_invalid("neighbor index must be in 1..26");
    return offsets_[i - 1];
}

int NeighborScheme::complement_index(int i) {
    if (i < 1 || i > 26) throw_invalid("neighbor index must be in 1..26");
    return 27 - i;
}

BinaryMask shifted_lookup(const BinaryMask& mask, int i) {
    const Offset& d = NeighborScheme::instance().offset(i);
    const Shape3& s = mask.shape;
    BinaryMask out(s);
    for (int z = 0; z < s.z; ++z) {
        int nz = z + d.dz;
        if (nz < 0 || nz >= s.z) continue;
        for (int y = 0; y < s.y; ++y) {
            int ny = y + d.dy;
            if (ny < 0 || ny >= s.y) continue;
            int x0 = std::max(0, -d.dx);
            int x1 = std::min(s.x, s.x - d.dx);
            const uint8_t* src = &mask.data[flat_index(s, nz, ny, x0 + d.dx)];
            uint8_t* dst = &out.data[flat_index(s, z, y, x0)];
            for (int x = x0; x < x1; ++x) *dst++ = *src++;
        }
    }
    return out;
}

}  // namespace connseg
