#ifndef CONNSEG_NEIGHBORS_HPP
#define CONNSEG_NEIGHBORS_HPP

#include <array>

#include "volume.hpp"

namespace connseg {

struct Offset {
    int dz = 0;
    int dy = 0;
    int dx = 0;
    bool operator==(const Offset&) const = default;
};

// The fixed table of the 26 neighbor offsets, 1-indexed. Offsets are the
// nonzero triples of {-1,0,1}^3 in lexicographic order (dz, then dy, then dx,
// with -1 < 0 < 1). This ordering pairs channel i with channel 27-i as exact
// negations; in particular offset 13 is (0,0,-1) and offset 14 is (0,0,1).
class NeighborScheme {
public:
    static const NeighborScheme& instance();

    // i in 1..26
    const Offset& offset(int i) const;

    // 27 - i; throws on out-of-range input
    static int complement_index(int i);

    const std::array<Offset, 26>& offsets() const { return offsets_; }

private:
    NeighborScheme();
    std::array<Offset, 26> offsets_;
};

inline const NeighborScheme& neighbor_offsets() { return NeighborScheme::instance(); }
inline int complement_index(int i) { return NeighborScheme::complement_index(i); }

// out[p] = mask[p + offset(i)] where the neighbor is in bounds, else 0.
BinaryMask shifted_lookup(const BinaryMask& mask, int i);

}  // namespace connseg

#endif
