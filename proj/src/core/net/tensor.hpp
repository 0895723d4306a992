#ifndef CONNSEG_NET_TENSOR_HPP
#define CONNSEG_NET_TENSOR_HPP

#include <cstddef>
#include <vector>

#include "../volume.hpp"

namespace connseg {

// (N,C,Z,Y,X) dense tensor, C-order, x fastest.
template <class T>
struct Tensor {
    int n = 0, c = 0, z = 0, y = 0, x = 0;
    std::vector<T> v;

    Tensor() = default;
    Tensor(int n_, int c_, int z_, int y_, int x_)
        : n(n_), c(c_), z(z_), y(y_), x(x_), v(size()) {}
    Tensor(int n_, int c_, Shape3 s) : Tensor(n_, c_, s.z, s.y, s.x) {}

    size_t size() const {
        return static_cast<size_t>(n) * c * z * static_cast<size_t>(y) * x;
    }
    size_t spatial() const { return static_cast<size_t>(z) * y * x; }
    Shape3 spatial_shape() const { return {z, y, x}; }

    T* slab(int in, int ic) { return v.data() + (static_cast<size_t>(in) * c + ic) * spatial(); }
    const T* slab(int in, int ic) const {
        return v.data() + (static_cast<size_t>(in) * c + ic) * spatial();
    }

    void zero() { std::fill(v.begin(), v.end(), T(0)); }
    bool same_shape(const Tensor& o) const {
        return n == o.n && c == o.c && z == o.z && y == o.y && x == o.x;
    }
};

template <class T>
bool all_finite(const std::vector<T>& v);

template <class T>
bool all_finite(const Tensor<T>& t) {
    return all_finite(t.v);
}

// concatenate along the channel axis
template <class T>
Tensor<T> concat_channels(const Tensor<T>& a, const Tensor<T>& b);

// split a channel-axis gradient back into parts of ca and cb channels
template <class T>
void split_channels(const Tensor<T>& g, int ca, Tensor<T>& ga, Tensor<T>& gb);

}  // namespace connseg

#endif
