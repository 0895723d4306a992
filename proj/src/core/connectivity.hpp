#ifndef CONNSEG_CONNECTIVITY_HPP
#define CONNSEG_CONNECTIVITY_HPP

#include "neighbors.hpp"
#include "volume.hpp"

namespace connseg {

// Channel i marks voxel P iff P and its i-th neighbor are both foreground.
// Out-of-bounds neighbors count as background (zero-padded borders).
ConnectivityCube encode_connectivity(const BinaryMask& mask);

// Keeps a set bit on channel i at P only when the complement channel is set
// at P + offset(i). Idempotent; it never sets a bit. Requires a 26-channel
// hard-label cube.
ConnectivityCube pairwise_agreement_filter(const ConnectivityCube& cube);

// Binarize at t (value >= t), enforce pairwise agreement, then mark voxels
// whose channel-wise sum is nonzero. Requires a 26-channel cube, 0 < t < 1.
BinaryMask decode_connectivity(const ConnectivityCube& cube, double threshold);

// Plain thresholding of a 1-channel probability field; the decode path of the
// direct-segmentation ablation.
BinaryMask binarize_probability(const ConnectivityCube& cube, double threshold);

// Voxels of m with at least one 26-neighbor inside m. decode(encode(m), t)
// equals m AND has_neighbor(m).
BinaryMask has_neighbor(const BinaryMask& m);

}  // namespace connseg

#endif
