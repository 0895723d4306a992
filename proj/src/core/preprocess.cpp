#include "preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace connseg {

namespace {

// half-sample symmetric reflection: -1 -> 0, n -> n-1
int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

std::vector<double> gaussian_kernel_1d(double sigma) {
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (double(i) * i) / (sigma * sigma));
        sum += k[i + radius];
    }
    for (double& w : k) w /= sum;
    return k;
}

}  // namespace

Volume gaussian_smooth_slices(const Volume& v, double sigma) {
    if (!(sigma > 0.0)) throw_invalid("gaussian sigma must be > 0");
    const Shape3& s = v.shape;
    const std::vector<double> kern = gaussian_kernel_1d(sigma);
    const int radius = (static_cast<int>(kern.size()) - 1) / 2;

    Volume out(s, v.spacing);
    std::vector<double> row(std::max(s.y, s.x));
    std::vector<double> tmp(static_cast<size_t>(s.y) * s.x);

    for (int z = 0; z < s.z; ++z) {
        const float* slice = &v.data[flat_index(s, z, 0, 0)];
        // vertical pass
        for (int x = 0; x < s.x; ++x) {
            for (int y = 0; y < s.y; ++y) {
                double acc = 0.0;
                for (int t = -radius; t <= radius; ++t)
                    acc += kern[t + radius] * slice[static_cast<size_t>(reflect(y + t, s.y)) * s.x + x];
                tmp[static_cast<size_t>(y) * s.x + x] = acc;
            }
        }
        // horizontal pass
        float* dst = &out.data[flat_index(s, z, 0, 0)];
        for (int y = 0; y < s.y; ++y) {
            const double* src = &tmp[static_cast<size_t>(y) * s.x];
            for (int x = 0; x < s.x; ++x) {
                double acc = 0.0;
                for (int t = -radius; t <= radius; ++t)
                    acc += kern[t + radius] * src[reflect(x + t, s.x)];
                dst[static_cast<size_t>(y) * s.x + x] = static_cast<float>(acc);
            }
        }
    }
    return out;
}

BinaryMask threshold_binarize(const Volume& v, float thr) {
    BinaryMask m(v.shape);
    for (size_t i = 0; i < v.data.size(); ++i) m.data[i] = v.data[i] < thr ? 1 : 0;
    return m;
}

Components connected_components_3d(const BinaryMask& m) {
    const Shape3& s = m.shape;
    Components comps;
    comps.labels.assign(s.count(), 0);

    std::vector<size_t> stack;
    for (int z = 0; z < s.z; ++z)
        for (int y = 0; y < s.y; ++y)
            for (int x = 0; x < s.x; ++x) {
                size_t p0 = flat_index(s, z, y, x);
                if (!m.data[p0] || comps.labels[p0]) continue;
                const int32_t label = ++comps.count;
                size_t size = 0;
                comps.labels[p0] = label;
                stack.push_back(p0);
                while (!stack.empty()) {
                    size_t p = stack.back();
                    stack.pop_back();
                    ++size;
                    int pz = static_cast<int>(p / (static_cast<size_t>(s.y) * s.x));
                    int rem = static_cast<int>(p % (static_cast<size_t>(s.y) * s.x));
                    int py = rem / s.x;
                    int px = rem % s.x;
                    for (int dz = -1; dz <= 1; ++dz)
                        for (int dy = -1; dy <= 1; ++dy)
                            for (int dx = -1; dx <= 1; ++dx) {
                                if (dz == 0 && dy == 0 && dx == 0) continue;
                                int nz = pz + dz, ny = py + dy, nx = px + dx;
                                if (!s.contains(nz, ny, nx)) continue;
                                size_t q = flat_index(s, nz, ny, nx);
                                if (m.data[q] && !comps.labels[q]) {
                                    comps.labels[q] = label;
                                    stack.push_back(q);
                                }
                            }
                }
                comps.sizes.push_back(size);
            }
    return comps;
}

namespace {

struct Pt {
    int64_t x;
    int64_t y;
};

int64_t cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns the hull CCW without repeated endpoint.
// Collinear points are dropped, so degenerate inputs give 1- or 2-point hulls.
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Pt> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool inside_hull(const std::vector<Pt>& hull, const Pt& p) {
    const size_t n = hull.size();
    if (n == 1) return p.x == hull[0].x && p.y == hull[0].y;
    if (n == 2) {
        // on the segment, endpoints included
        if (cross(hull[0], hull[1], p) != 0) return false;
        return p.x >= std::min(hull[0].x, hull[1].x) && p.x <= std::max(hull[0].x, hull[1].x) &&
               p.y >= std::min(hull[0].y, hull[1].y) && p.y <= std::max(hull[0].y, hull[1].y);
    }
    for (size_t i = 0; i < n; ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % n];
        if (cross(a, b, p) < 0) return false;  // boundary counts as inside
    }
    return true;
}

}  // namespace

Mask2D convex_hull_repair_slice(const Mask2D& m2d, double ratio) {
    std::vector<Pt> pts;
    int64_t minx = m2d.w, maxx = -1, miny = m2d.h, maxy = -1;
    for (int y = 0; y < m2d.h; ++y)
        for (int x = 0; x < m2d.w; ++x)
            if (m2d.at(y, x)) {
                pts.push_back({x, y});
                minx = std::min<int64_t>(minx, x);
                maxx = std::max<int64_t>(maxx, x);
                miny = std::min<int64_t>(miny, y);
                maxy = std::max<int64_t>(maxy, y);
            }
    if (pts.empty()) return m2d;

    const size_t region_area = pts.size();
    const std::vector<Pt> hull = convex_hull(pts);

    Mask2D filled(m2d.h, m2d.w);
    size_t hull_area = 0;
    for (int64_t y = miny; y <= maxy; ++y)
        for (int64_t x = minx; x <= maxx; ++x)
            if (inside_hull(hull, {x, y})) {
                filled.at(static_cast<int>(y), static_cast<int>(x)) = 1;
                ++hull_area;
            }

    if (static_cast<double>(hull_area) >= ratio * static_cast<double>(region_area)) return filled;
    return m2d;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Felzenszwalb-Huttenlocher lower envelope of parabolas; d[p] = min_q (p-q)^2 + f[q].
// Parabolas at infinity never enter the envelope, so rows that are entirely
// foreground in one pass stay at infinity until a later pass resolves them.
void dt_1d(const double* f, double* d, int n, int* v, double* z) {
    int q0 = -1;
    for (int q = 0; q < n; ++q)
        if (f[q] != kInf) {
            q0 = q;
            break;
        }
    if (q0 < 0) {
        std::fill(d, d + n, kInf);
        return;
    }
    int k = 0;
    v[0] = q0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = q0 + 1; q < n; ++q) {
        if (f[q] == kInf) continue;
        double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        double dq = double(q) - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

}  // namespace

std::vector<double> distance_transform_squared(const BinaryMask& m) {
    // pad by one voxel of background so the volume border is at distance 1
    const Shape3 s{m.shape.z + 2, m.shape.y + 2, m.shape.x + 2};
    std::vector<double> g(s.count(), 0.0);
    for (int z = 0; z < m.shape.z; ++z)
        for (int y = 0; y < m.shape.y; ++y)
            for (int x = 0; x < m.shape.x; ++x)
                if (m.at(z, y, x)) g[flat_index(s, z + 1, y + 1, x + 1)] = kInf;

    const int nmax = std::max({s.z, s.y, s.x});
    std::vector<double> f(nmax), d(nmax), z(static_cast<size_t>(nmax) + 1);
    std::vector<int> v(nmax);

    // along x
    for (int zz = 0; zz < s.z; ++zz)
        for (int yy = 0; yy < s.y; ++yy) {
            double* row = &g[flat_index(s, zz, yy, 0)];
            dt_1d(row, d.data(), s.x, v.data(), z.data());
            std::copy(d.begin(), d.begin() + s.x, row);
        }
    // along y
    for (int zz = 0; zz < s.z; ++zz)
        for (int xx = 0; xx < s.x; ++xx) {
            for (int yy = 0; yy < s.y; ++yy) f[yy] = g[flat_index(s, zz, yy, xx)];
            dt_1d(f.data(), d.data(), s.y, v.data(), z.data());
            for (int yy = 0; yy < s.y; ++yy) g[flat_index(s, zz, yy, xx)] = d[yy];
        }
    // along z
    for (int yy = 0; yy < s.y; ++yy)
        for (int xx = 0; xx < s.x; ++xx) {
            for (int zz = 0; zz < s.z; ++zz) f[zz] = g[flat_index(s, zz, yy, xx)];
            dt_1d(f.data(), d.data(), s.z, v.data(), z.data());
            for (int zz = 0; zz < s.z; ++zz) g[flat_index(s, zz, yy, xx)] = d[zz];
        }

    std::vector<double> out(m.shape.count());
    for (int zz = 0; zz < m.shape.z; ++zz)
        for (int yy = 0; yy < m.shape.y; ++yy)
            for (int xx = 0; xx < m.shape.x; ++xx)
                out[flat_index(m.shape, zz, yy, xx)] = g[flat_index(s, zz + 1, yy + 1, xx + 1)];
    return out;
}

Volume distance_transform(const BinaryMask& m) {
    std::vector<double> sq = distance_transform_squared(m);
    Volume out(m.shape);
    for (size_t i = 0; i < sq.size(); ++i) out.data[i] = static_cast<float>(std::sqrt(sq[i]));
    return out;
}

Volume clip_normalize(const Volume& ct, const HUWindow& w) {
    if (!(w.lo < w.hi)) throw_invalid("HU window requires lo < hi");
    Volume out(ct.shape, ct.spacing);
    const float scale = (w.out_hi - w.out_lo) / (w.hi - w.lo);
    for (size_t i = 0; i < ct.data.size(); ++i) {
        float v = std::clamp(ct.data[i], w.lo, w.hi);
        out.data[i] = w.out_lo + (v - w.lo) * scale;
    }
    return out;
}

BinaryMask extract_lung_mask(const Volume& ct, const LungExtractParams& p) {
    const Shape3& s = ct.shape;
    Volume smoothed = gaussian_smooth_slices(ct, p.smooth_sigma);
    BinaryMask air = threshold_binarize(smoothed, p.air_threshold);
    Components comps = connected_components_3d(air);
    if (comps.count == 0) throw_empty("no air component found; cannot extract lungs");

    // exterior air: any component touching the axial (H,W) border
    std::vector<uint8_t> touches(static_cast<size_t>(comps.count) + 1, 0);
    for (int z = 0; z < s.z; ++z)
        for (int y = 0; y < s.y; ++y)
            for (int x = 0; x < s.x; ++x) {
                if (y != 0 && y != s.y - 1 && x != 0 && x != s.x - 1) continue;
                int32_t l = comps.labels[flat_index(s, z, y, x)];
                if (l) touches[l] = 1;
            }

    const size_t min_size = static_cast<size_t>(p.min_component_frac * static_cast<double>(s.count()));
    std::vector<int32_t> candidates;
    for (int32_t l = 1; l <= comps.count; ++l)
        if (!touches[l] && comps.sizes[l - 1] >= min_size) candidates.push_back(l);
    if (candidates.empty()) throw_empty("no lung candidate component after filtering");

    std::stable_sort(candidates.begin(), candidates.end(), [&](int32_t a, int32_t b) {
        return comps.sizes[a - 1] > comps.sizes[b - 1];
    });
    if (candidates.size() > 2) candidates.resize(2);

    BinaryMask lung(s);
    Mask2D slice(s.y, s.x);
    for (int32_t l : candidates) {
        for (int z = 0; z < s.z; ++z) {
            bool any = false;
            for (int y = 0; y < s.y; ++y)
                for (int x = 0; x < s.x; ++x) {
                    uint8_t on = comps.labels[flat_index(s, z, y, x)] == l ? 1 : 0;
                    slice.at(y, x) = on;
                    any |= on != 0;
                }
            if (!any) continue;
            Mask2D repaired = convex_hull_repair_slice(slice, p.hull_ratio);
            for (int y = 0; y < s.y; ++y)
                for (int x = 0; x < s.x; ++x)
                    if (repaired.at(y, x)) lung.at(z, y, x) = 1;
        }
    }
    return lung;
}

}  // namespace connseg
